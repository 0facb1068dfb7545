from polyhom import io
from polyhom.varieties import classify, meet_order, recognize


def test_recognize_builtins():
    assert recognize(io.chain_semilattice(2)) == "semilattice"
    assert recognize(io.chain_lattice(3)) == "lattice"
    assert recognize(io.cyclic_group(4)) == "abelian-group"
    assert recognize(io.monounary([1, 2, 0])) == "monounary"


def test_recognize_falls_back_to_unrecognized():
    text = "algebra odd\nsize 2\nop f 2\n1 1 1 0\nend"
    assert recognize(io.parse_algebra(text)) == "unrecognized"


def test_meet_order_of_chain():
    alg = io.chain_lattice(3)
    order = meet_order(alg.op("meet"), 3)
    assert order == {(a, b) for a in range(3) for b in range(3) if a <= b}


def test_two_element_semilattice_properties():
    rep = classify(io.chain_semilattice(2))
    assert rep.kind == "semilattice"
    # the order is a (distributive) lattice order
    assert rep.properties["sdc"] is True
    assert rep.properties["pol_homogeneous"] is True
    assert rep.properties["cbullet_pol_homogeneous"] is False


def test_fork_semilattice_is_not_a_lattice_order():
    rep = classify(io.fork_semilattice())
    assert rep.kind == "semilattice"
    assert rep.properties["sdc"] is False


def test_three_chain_lattice_not_boolean():
    rep = classify(io.chain_lattice(3))
    assert rep.kind == "lattice"
    assert rep.properties["sdc"] is False


def test_boolean_lattice_good():
    rep = classify(io.boolean_lattice(2))
    assert rep.kind == "lattice"
    assert rep.properties["sdc"] is True


def test_abelian_homocyclic_rule():
    good = ("cyclic:6", "product:cyclic:2,product:cyclic:2,cyclic:2")
    bad = ("product:cyclic:2,cyclic:4",)
    for spec in good:
        rep = classify(io.builtin(spec))
        assert rep.kind == "abelian-group"
        assert rep.properties["hom_homogeneous"] is True
    for spec in bad:
        rep = classify(io.builtin(spec))
        assert rep.kind == "abelian-group"
        assert rep.properties["hom_homogeneous"] is False


def test_abelian_properties_move_together():
    rep = classify(io.builtin("product:cyclic:2,cyclic:4"))
    vals = {rep.properties[k] for k in
            ("hom_homogeneous", "pol_homogeneous", "sdc", "injective_spfin", "injective_hsp", "cbullet_pol_homogeneous")}
    assert vals == {False}


def test_monounary_rules():
    # 3-cycle with uniform tails: condition (v), no fixed point, bijective? no
    rep = classify(io.monounary([1, 2, 0, 0]))
    assert rep.kind == "monounary"
    assert rep.properties["pol_homogeneous"] is True
    assert rep.properties["injective_hsp"] is False  # no fixed point
    assert rep.properties["cbullet_pol_homogeneous"] is False  # neither bijective nor constant
    # identity map: bijective and every point fixed
    rep2 = classify(io.monounary([0, 1, 2]))
    assert rep2.properties["cbullet_pol_homogeneous"] is True
    assert rep2.properties["injective_hsp"] is True
    # sources at different heights
    rep3 = classify(io.monounary([0, 0, 1, 0]))
    assert rep3.properties["pol_homogeneous"] is False


def test_two_element_unrecognized_still_good():
    text = "algebra nand\nsize 2\nop f 2\n1 1 1 0\nend"
    rep = classify(io.parse_algebra(text))
    assert rep.properties["sdc"] is True
    assert rep.properties["pol_homogeneous"] is True
    assert rep.properties["injective_spfin"] is True
    assert rep.properties["cbullet_pol_homogeneous"] is None
