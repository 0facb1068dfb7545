"""Line-oriented algebra files and the builtin algebra generators.

File grammar::

    algebra <name>
    size <n>
    op <name> <arity>
    <n**arity whitespace-separated values, any line breaks>
    ...more ops...
    end

'#' starts a comment anywhere on a line.  Unknown keywords, wrong value
counts and out-of-range entries are rejected.
"""

import itertools

from .algebra import FiniteAlgebra, OperationTable
from .errors import ParseError


def parse_algebra(text):
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        return tok

    def take_int(what):
        tok = take()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected {what}, got {tok!r}") from None

    if take() != "algebra":
        raise ParseError("file must start with 'algebra <name>'")
    name = take()
    if take() != "size":
        raise ParseError("expected 'size <n>' after the algebra name")
    size = take_int("size")
    if size < 1:
        raise ParseError("size must be at least 1")
    ops = []
    while True:
        kw = take()
        if kw == "end":
            break
        if kw != "op":
            raise ParseError(f"expected 'op' or 'end', got {kw!r}")
        op_name = take()
        arity = take_int("arity")
        if arity < 0:
            raise ParseError(f"operation {op_name!r}: negative arity")
        count = size**arity
        values = tuple(take_int("table value") for _ in range(count))
        for v in values:
            if not (0 <= v < size):
                raise ParseError(
                    f"operation {op_name!r}: value {v} outside 0..{size - 1}"
                )
        ops.append(OperationTable(op_name, arity, size, values))
    if pos != len(tokens):
        raise ParseError(f"trailing input after 'end': {tokens[pos]!r}")
    return FiniteAlgebra(name, size, tuple(ops))


def serialize_algebra(alg):
    lines = [f"algebra {alg.name}", f"size {alg.size}"]
    for op in alg.ops:
        lines.append(f"op {op.name} {op.arity}")
        row = alg.size if op.arity > 0 else 1
        vals = list(op.values)
        for i in range(0, len(vals), row):
            lines.append(" ".join(str(v) for v in vals[i:i + row]))
    lines.append("end")
    return "\n".join(lines) + "\n"


# --- builtins ---------------------------------------------------------

def chain_semilattice(n):
    """Meet on the n-element chain 0 < 1 < ... < n-1."""
    values = tuple(min(a, b) for a in range(n) for b in range(n))
    return FiniteAlgebra(
        f"chain-semilattice:{n}", n, (OperationTable("meet", 2, n, values),)
    )


def chain_lattice(n):
    meet = tuple(min(a, b) for a in range(n) for b in range(n))
    join = tuple(max(a, b) for a in range(n) for b in range(n))
    return FiniteAlgebra(
        f"chain-lattice:{n}",
        n,
        (OperationTable("meet", 2, n, meet), OperationTable("join", 2, n, join)),
    )


def boolean_lattice(k):
    """Lattice of subsets of a k-element set, elements coded as bitmasks."""
    n = 2**k
    meet = tuple(a & b for a in range(n) for b in range(n))
    join = tuple(a | b for a in range(n) for b in range(n))
    return FiniteAlgebra(
        f"boolean-lattice:{k}",
        n,
        (OperationTable("meet", 2, n, meet), OperationTable("join", 2, n, join)),
    )


def fork_semilattice():
    """Three-element meet-semilattice with two incomparable atoms."""
    n = 3
    values = tuple(a if a == b else 0 for a in range(n) for b in range(n))
    return FiniteAlgebra("fork-semilattice", n, (OperationTable("meet", 2, n, values),))


def cyclic_group(n):
    plus = tuple((a + b) % n for a in range(n) for b in range(n))
    neg = tuple((-a) % n for a in range(n))
    return FiniteAlgebra(
        f"cyclic:{n}",
        n,
        (
            OperationTable("plus", 2, n, plus),
            OperationTable("neg", 1, n, neg),
            OperationTable("zero", 0, n, (0,)),
        ),
    )


def monounary(image):
    """Single unary operation with the given value list."""
    n = len(image)
    if n == 0:
        raise ParseError("monounary image list must be nonempty")
    for v in image:
        if not (0 <= v < n):
            raise ParseError(f"monounary value {v} outside 0..{n - 1}")
    label = ",".join(str(v) for v in image)
    return FiniteAlgebra(
        f"monounary:{label}", n, (OperationTable("f", 1, n, tuple(image)),)
    )


def product(left, right):
    """Direct product of two algebras with the same signature."""
    if left.signature != right.signature:
        raise ParseError(
            f"product components have different signatures: "
            f"{left.signature} vs {right.signature}"
        )
    n1, n2 = left.size, right.size
    n = n1 * n2

    def code(a, b):
        return a * n2 + b

    ops = []
    for op1 in left.ops:
        op2 = right.op(op1.name)
        r = op1.arity
        values = []
        for args in itertools.product(range(n), repeat=r):
            la = tuple(x // n2 for x in args)
            ra = tuple(x % n2 for x in args)
            values.append(code(op1.apply(la), op2.apply(ra)))
        ops.append(OperationTable(op1.name, r, n, tuple(values)))
    return FiniteAlgebra(f"product:{left.name},{right.name}", n, tuple(ops))


def builtin(spec):
    """Build an algebra from a builtin spec string.

    Specs: chain-semilattice:<n>, chain-lattice:<n>, boolean-lattice:<k>,
    fork-semilattice, cyclic:<n>, monounary:<v0,v1,..>,
    product:<spec>,<spec>.
    """
    spec = spec.strip()
    if spec == "fork-semilattice":
        return fork_semilattice()
    if ":" not in spec:
        raise ParseError(f"unknown builtin {spec!r}")
    head, rest = spec.split(":", 1)
    if head == "product":
        # split at the comma that leaves two parseable specs
        for i, ch in enumerate(rest):
            if ch != ",":
                continue
            try:
                return product(builtin(rest[:i]), builtin(rest[i + 1:]))
            except ParseError:
                continue
        raise ParseError(f"cannot split product spec {rest!r}")
    try:
        if head == "chain-semilattice":
            return chain_semilattice(int(rest))
        if head == "chain-lattice":
            return chain_lattice(int(rest))
        if head == "boolean-lattice":
            return boolean_lattice(int(rest))
        if head == "cyclic":
            return cyclic_group(int(rest))
        if head == "monounary":
            return monounary([int(v) for v in rest.split(",")])
    except ValueError:
        raise ParseError(f"bad number in builtin spec {spec!r}") from None
    raise ParseError(f"unknown builtin {spec!r}")
