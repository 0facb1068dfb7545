import itertools

import pytest

from polyhom import io
from polyhom.monounary import (
    Atom,
    Y,
    eliminate_quantifier,
    format_formula,
    iterate,
    make_formula,
    mono_relation,
    parse_formula,
    profile,
    psi_k,
    rewrite_step,
    weight,
)
from polyhom.errors import ConditionVError, ParseError


def test_profile_of_tailed_cycle():
    alg = io.monounary([1, 2, 0, 0])
    p = profile(alg)
    assert p.cyclic == frozenset({0, 1, 2})
    assert p.heights[3] == 1
    assert p.heights[0] == 0
    assert p.sources == frozenset({3})
    assert p.cycle_lcm == 3


def test_condition_v_detection():
    # all sources at equal height
    assert profile(io.monounary([1, 2, 0, 0])).condition_v
    # two sources at different heights
    assert not profile(io.monounary([0, 0, 1, 0])).condition_v


def test_parse_format_round_trip():
    phi = parse_formula("Ey. f^2(y)=x1 & f^1(y)=f^3(x2)")
    assert phi.quantified
    assert phi.n_free == 2
    again = parse_formula(format_formula(phi))
    assert again == phi


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_formula("Ey. f^2(y)=")
    with pytest.raises(ParseError):
        parse_formula("x1 & x2")


def test_atom_normalization_drops_trivial():
    assert Atom(2, 0, 2, 0).normalized() is None
    a = Atom(1, 0, 0, 1).normalized()
    assert a is not None and a.vars() == {0, 1}


def test_mono_relation_of_simple_equation():
    alg = io.monounary([1, 2, 0])
    phi = make_formula(2, False, (Atom(1, 0, 0, 1),))  # f(x1) = x2
    rel = mono_relation(alg, phi)
    assert rel == frozenset({(0, 1), (1, 2), (2, 0)})


def test_rewrite_step_decreases_weight():
    phi = parse_formula("Ey. f^1(y)=x1 & f^2(y)=x2 & f^3(y)=x1")
    steps = 0
    cur = phi
    while True:
        nxt = rewrite_step(cur)
        if nxt is None:
            break
        assert weight(nxt) < weight(cur)
        cur = nxt
        steps += 1
        assert steps < 100


def test_psi_k_defines_iterate_image():
    for image in ([1, 2, 0, 0], [0, 0, 1], [1, 2, 3, 0]):
        alg = io.monounary(image)
        f = alg.ops[0].values
        for k in range(6):
            r, s = psi_k(alg, k)
            defined = {a for a in range(alg.size)
                       if iterate(f, r, a) == iterate(f, s, a)}
            img = set(range(alg.size))
            for _ in range(k):
                img = {f[a] for a in img}
            assert defined == img


def test_eliminate_quantifier_preserves_relation():
    alg = io.monounary([1, 2, 0, 0])
    for text in (
        "Ey. f^2(y)=x1",
        "Ey. f^1(y)=x1 & f^1(y)=x2",
        "Ey. f^2(y)=f^1(x1) & f^3(y)=x2",
    ):
        phi = parse_formula(text)
        psi = eliminate_quantifier(alg, phi)
        assert not psi.quantified
        assert mono_relation(alg, psi) == mono_relation(alg, phi)


def test_eliminate_quantifier_needs_condition_v():
    alg = io.monounary([0, 0, 1, 0])  # sources at different heights
    phi = parse_formula("Ey. f^1(y)=x1")
    with pytest.raises(ConditionVError):
        eliminate_quantifier(alg, phi)


def test_quantifier_free_input_passes_through():
    alg = io.monounary([1, 2, 0])
    phi = parse_formula("f^1(x1)=x2")
    assert eliminate_quantifier(alg, phi) == phi
