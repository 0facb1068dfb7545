import pytest

from polyhom import io
from polyhom.algebra import (
    FiniteAlgebra,
    Limits,
    OperationTable,
    all_points,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    extend_homomorphism,
    generate_subuniverse,
    hom_defect,
    tuple_rank,
    unary_power,
)
from polyhom.errors import (
    ArityMismatchError,
    NotAHomomorphismError,
    OutOfRangeError,
    ResourceBoundExceeded,
    UnknownOperationError,
)


def test_tuple_rank_matches_lexicographic_enumeration():
    for size, k in ((2, 3), (3, 2), (4, 1)):
        pts = all_points(size, k)
        assert len(pts) == size**k
        assert pts == sorted(pts)
        for i, p in enumerate(pts):
            assert tuple_rank(p, size) == i


def test_operation_table_apply():
    meet = OperationTable("meet", 2, 2, (0, 0, 0, 1))
    assert meet.apply((1, 1)) == 1
    assert meet.apply((0, 1)) == 0
    with pytest.raises(ArityMismatchError):
        meet.apply((1,))


def test_operation_lookup_and_range_checks():
    alg = io.chain_semilattice(2)
    assert alg.op("meet").arity == 2
    with pytest.raises(UnknownOperationError):
        alg.op("join")
    with pytest.raises(OutOfRangeError):
        OperationTable("meet", 2, 2, (0, 0, 0, 2))


def test_bad_table_length_rejected():
    with pytest.raises(Exception):
        FiniteAlgebra("bad", 2, (OperationTable("f", 2, (0, 1, 0)),))


def test_generate_subuniverse_semilattice_square():
    alg = io.chain_semilattice(2)
    # (0,1) and (1,0) meet to (0,0)
    sub = generate_subuniverse(alg, 2, [(0, 1), (1, 0)])
    assert sub == frozenset({(0, 1), (1, 0), (0, 0)})


def test_enumerate_subuniverses_two_element_semilattice():
    alg = io.chain_semilattice(2)
    subs = set(enumerate_subuniverses(alg, 1))
    # every subset is meet-closed on a chain
    assert subs == {frozenset(), frozenset({(0,)}), frozenset({(1,)}),
                    frozenset({(0,), (1,)})}


def test_enumerate_homomorphisms_are_meet_preserving():
    alg = io.chain_semilattice(3)
    dom = all_points(3, 1)
    homs = list(enumerate_homomorphisms(alg, 1, dom))
    meet = alg.op("meet")
    for pop in homs:
        h = pop.as_dict()
        for a in range(3):
            for b in range(3):
                assert h[(meet.apply((a, b)),)] == meet.apply((h[(a,)], h[(b,)]))
    # monotone self-maps of the 3-chain
    assert len(homs) == 10


def test_hom_defect_flags_violations():
    alg = io.chain_semilattice(2)
    good = {(0,): 0, (1,): 1}
    assert hom_defect(alg, 1, good) is None
    bad = {(0,): 1, (1,): 0}
    assert hom_defect(alg, 1, bad) is not None


def test_extend_homomorphism_on_chain():
    alg = io.chain_semilattice(3)
    mapping = {(2,): 1}
    target = frozenset({(0,), (2,)})
    ext = extend_homomorphism(alg, 1, mapping, target)
    assert ext is not None and ext[(2,)] == 1
    with pytest.raises(NotAHomomorphismError):
        extend_homomorphism(alg, 1, {(0,): 1, (1,): 0}, frozenset(all_points(3, 1)))


def test_resource_limits_raise():
    alg = io.chain_semilattice(3)
    with pytest.raises(ResourceBoundExceeded):
        enumerate_subuniverses(alg, 5, limits=Limits(max_cells=10))


def test_unary_power_components_and_cycles():
    alg = io.monounary([1, 2, 0, 0])  # 3-cycle with a tail at 0
    up = unary_power(alg, 1)
    assert len(up.components) == 1
    comp = up.components[0]
    assert up.cycle_of(comp) == frozenset({(0,), (1,), (2,)})
    alg2 = io.monounary([0, 1, 2])  # identity: three fixed points
    up2 = unary_power(alg2, 1)
    assert len(up2.components) == 3


def test_unary_power_closed_subsets_contain_cycle():
    alg = io.monounary([1, 2, 0, 0])
    up = unary_power(alg, 1)
    comp = up.components[0]
    cycle = up.cycle_of(comp)
    for D in up.closed_subsets(comp, cycle):
        assert cycle <= D
        assert all(up.g[p] in D for p in D)
