import pytest

from polyhom import io
from polyhom.errors import ParseError, InputError

SAMPLE = """
# two element meet semilattice
algebra sl2
size 2
op meet 2
0 0
0 1
end
"""


def test_parse_algebra_basic():
    alg = io.parse_algebra(SAMPLE)
    assert alg.name == "sl2"
    assert alg.size == 2
    assert alg.op("meet").values == (0, 0, 0, 1)


def test_parse_serialize_round_trip():
    for spec in ("chain-semilattice:3", "boolean-lattice:2", "cyclic:4",
                 "monounary:1,2,0,0", "fork-semilattice"):
        alg = io.builtin(spec)
        again = io.parse_algebra(io.serialize_algebra(alg))
        assert again.size == alg.size
        assert again.signature == alg.signature
        for op in alg.ops:
            assert again.op(op.name).values == op.values


@pytest.mark.parametrize("text", [
    "size 2",                                  # missing algebra header
    "algebra a\nsize 2\nop f 1\n0\n",          # missing end
    "algebra a\nsize 2\nop f 1\n0 2\nend",     # value out of range
    "algebra a\nsize 2\nop f 1\n0 1 0\nend",   # too many values
    "algebra a\nsize 2\nop f 1\n0 1\nend\nx",  # trailing garbage
])
def test_parse_algebra_rejects(text):
    with pytest.raises(ParseError):
        io.parse_algebra(text)


def test_chain_builtins():
    sl = io.chain_semilattice(3)
    assert sl.op("meet").apply((1, 2)) == 1
    lat = io.chain_lattice(3)
    assert lat.op("join").apply((1, 2)) == 2
    assert lat.op("meet").apply((1, 2)) == 1


def test_boolean_lattice_is_bitwise():
    alg = io.boolean_lattice(2)
    assert alg.size == 4
    assert alg.op("meet").apply((1, 2)) == 0
    assert alg.op("join").apply((1, 2)) == 3


def test_fork_semilattice_meets():
    alg = io.fork_semilattice()
    m = alg.op("meet")
    assert m.apply((1, 2)) == 0
    assert m.apply((2, 2)) == 2


def test_cyclic_group_ops():
    alg = io.cyclic_group(4)
    assert alg.op("plus").apply((3, 2)) == 1
    assert alg.op("neg").apply((1,)) == 3
    assert alg.op("zero").values == (0,)


def test_product_of_groups():
    alg = io.builtin("product:cyclic:2,cyclic:4")
    assert alg.size == 8
    plus = alg.op("plus")
    # (1,3) + (1,2) = (0,1)
    assert plus.apply((1 * 4 + 3, 1 * 4 + 2)) == 1


def test_nested_product_spec():
    alg = io.builtin("product:cyclic:2,product:cyclic:2,cyclic:2")
    assert alg.size == 8


def test_product_requires_same_signature():
    with pytest.raises(InputError):
        io.builtin("product:cyclic:2,chain-semilattice:2")


def test_unknown_builtin():
    with pytest.raises(InputError):
        io.builtin("nope:3")
