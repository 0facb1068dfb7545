from polyhom import io
from polyhom.algebra import all_points
from polyhom.decide import (
    has_sdc_up_to,
    hom_homog_witness,
    is_cbullet_polhom_up_to,
    is_hom_homogeneous,
    is_injective_hsp,
    is_injective_spfin_up_to,
    is_pol_hom_up_to,
    sdc_gap_witness,
)


def test_two_element_semilattice_all_good():
    alg = io.chain_semilattice(2)
    for v in (is_pol_hom_up_to(alg, max_power=3),
              has_sdc_up_to(alg, max_arity=3),
              is_injective_spfin_up_to(alg, max_power=3)):
        assert v.value == "exact-true"
        assert v.witness is None


def test_two_element_semilattice_cbullet_fails_at_arity_three():
    alg = io.chain_semilattice(2)
    v = is_cbullet_polhom_up_to(alg, max_power=3, max_arity=3)
    assert v.value == "exact-false"
    assert v.witness.kind == "qfpp-gap-relation"
    assert v.witness.data["arity"] == 3
    rel = frozenset(v.witness.data["relation"])
    # the gap relation omits exactly one triple of the full cube
    assert rel == frozenset(all_points(2, 3)) - {(1, 1, 0)}


def test_three_chain_lattice_sdc_fails():
    alg = io.chain_lattice(3)
    v = has_sdc_up_to(alg, max_arity=2)
    assert v.value == "exact-false"
    assert v.witness is not None


def test_fork_semilattice_sdc_fails_quickly():
    alg = io.fork_semilattice()
    v = has_sdc_up_to(alg, max_arity=2)
    assert v.value == "exact-false"


def test_verdicts_record_bounds():
    alg = io.chain_semilattice(2)
    v = has_sdc_up_to(alg, max_arity=2)
    assert v.bounds["max_arity"] == 2


def test_abelian_hom_homogeneity_brute_force():
    assert is_hom_homogeneous(io.cyclic_group(6)).value == "exact-true"
    v = is_hom_homogeneous(io.builtin("product:cyclic:2,cyclic:4"))
    assert v.value == "exact-false"
    assert v.witness.kind == "non-extendable-homomorphism"


def test_hom_homog_witness_is_a_real_counterexample():
    alg = io.builtin("product:cyclic:2,cyclic:4")
    w = hom_homog_witness(alg, 1)
    assert w is not None
    domain, mapping = w
    assert set(mapping) == set(domain)
    # the witness map really is a homomorphism on its domain
    from polyhom.algebra import hom_defect
    assert hom_defect(alg, 1, mapping) is None


def test_monounary_fastpath_agrees_with_search():
    good = io.monounary([1, 2, 0, 0])
    bad = io.monounary([0, 0, 1, 0])
    assert is_pol_hom_up_to(good, max_power=2).value == "exact-true"
    v = is_pol_hom_up_to(bad, max_power=2)
    assert v.value == "exact-false"
    assert v.witness is not None
    assert has_sdc_up_to(bad, max_arity=2, sweep_cells=64).value == "exact-false"


def test_monounary_without_fastpath_same_verdict():
    bad = io.monounary([0, 0, 1, 0])
    with_fp = is_pol_hom_up_to(bad, max_power=2)
    without = is_pol_hom_up_to(bad, max_power=2, fastpath=False)
    assert with_fp.value == without.value == "exact-false"


def test_injectivity_hsp_needs_fixed_point():
    assert is_injective_hsp(io.monounary([0, 0, 1])).value == "exact-true"
    assert is_injective_hsp(io.monounary([1, 2, 0])).value == "exact-false"


def test_sdc_gap_witness_none_on_good_algebra():
    alg = io.chain_semilattice(2)
    assert sdc_gap_witness(alg, 2) is None


def test_unknown_verdict_when_no_theorem_and_bounds_hold():
    # three element algebra outside every classified family
    text = "algebra odd\nsize 3\nop f 2\n0 0 0 0 1 0 0 0 2\nend"
    alg = io.parse_algebra(text)
    v = has_sdc_up_to(alg, max_arity=2)
    assert v.value in ("exact-true", "exact-false", "true-up-to-bound", "unknown")
