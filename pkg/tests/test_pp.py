import pytest

from polyhom import io
from polyhom.algebra import all_points
from polyhom.pp import (
    PPFormula,
    eval_pp,
    mask_to_relation,
    preserves,
    project_out_last,
    qfpp_closure,
    relation_to_mask,
    substitution_instances,
)
from polyhom.errors import InputError


def test_mask_round_trip():
    size, n = 3, 2
    rel = frozenset({(0, 1), (2, 2), (1, 0)})
    mask = relation_to_mask(rel, size, n)
    assert mask_to_relation(mask, size, n) == rel


def test_substitution_instances_include_permutation_and_diagonal():
    size = 2
    rel = frozenset({(0, 1)})
    inst = substitution_instances(rel, 2, size, 2)
    # swapping the coordinates gives the transpose
    assert relation_to_mask(frozenset({(1, 0)}), size, 2) in inst
    # identifying both coordinates gives the (empty here) diagonal pullback
    assert 0 in inst


def test_qfpp_closure_intersection_closed_and_contains_full():
    alg = io.chain_semilattice(2)
    masks = qfpp_closure(alg, 2, "solution_sets")
    full = (1 << 4) - 1
    assert full in masks
    for a in masks:
        for b in masks:
            assert (a & b) in masks


def test_qfpp_graphs_subset_of_solution_sets():
    alg = io.chain_semilattice(2)
    for n in (2, 3):
        gr = qfpp_closure(alg, n, "graphs")
        so = qfpp_closure(alg, n, "solution_sets")
        assert gr <= so


def test_qfpp_unknown_mode():
    with pytest.raises(InputError):
        qfpp_closure(io.chain_semilattice(2), 2, "nonsense")


def test_semilattice_gap_relation_at_arity_three():
    alg = io.chain_semilattice(2)
    gap = frozenset(all_points(2, 3)) - {(1, 1, 0)}
    mask = relation_to_mask(gap, 2, 3)
    assert mask in qfpp_closure(alg, 3, "solution_sets")
    assert mask not in qfpp_closure(alg, 3, "graphs")


def test_preserves_meet_of_order_relation():
    alg = io.chain_semilattice(3)
    order = frozenset((a, b) for a in range(3) for b in range(3) if a <= b)
    meet = alg.op("meet")
    assert preserves(alg, meet.values, 2, order)
    not_order = frozenset({(0, 1), (1, 0), (2, 1)})
    assert not preserves(alg, meet.values, 2, not_order)


def test_eval_pp_conjunction():
    alg = io.chain_semilattice(2)
    order = frozenset({(0, 0), (0, 1), (1, 1)})
    # x1 <= x2 and x2 <= x1
    phi = PPFormula(2, 0, ((order, (0, 1)), (order, (1, 0))))
    assert eval_pp(alg, phi) == frozenset({(0, 0), (1, 1)})


def test_eval_pp_existential():
    alg = io.chain_semilattice(2)
    lt = frozenset({(0, 1)})
    # exists y with x1 < y: holds only for 0
    phi = PPFormula(1, 1, ((lt, (0, 1)),))
    assert eval_pp(alg, phi) == frozenset({(0,)})


def test_project_out_last():
    size, n = 2, 2
    rel = frozenset({(0, 1), (1, 1)})
    mask = relation_to_mask(rel, size, n)
    proj = project_out_last(mask, size, n)
    assert mask_to_relation(proj, size, n - 1) == frozenset({(0,), (1,)})
