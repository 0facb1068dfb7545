"""Unary-signature algebras: structure profile and quantifier elimination.

Formulas are conjunctions of atoms f^r(u) = f^s(v) where u, v are free
variables x1..xn or the single bound variable y, optionally prefixed by
the existential quantifier Ey.  For algebras whose sources (elements
outside the image) all have the same height, or which have no sources at
all, the bound variable can always be eliminated by weight-decreasing
rewriting; the terminal single-atom case is resolved by an image-set
formula psi_k.
"""

from dataclasses import dataclass
import math
import re

from .errors import ConditionVError, InputError, ParseError

Y = -1  # variable code of the bound variable


@dataclass(frozen=True)
class Atom:
    """f^r(u) = f^s(v); u and v are free-variable indices or Y."""

    r: int
    u: int
    s: int
    v: int

    def normalized(self):
        r, u, s, v = self.r, self.u, self.s, self.v
        if u == v and r == s:
            return None  # trivially true
        if (v == Y and u != Y) or (u != Y and v != Y and (u, r) > (v, s)) or (
            u == Y and v == Y and r < s
        ):
            r, u, s, v = s, v, r, u
        if u == Y and v == Y and r == s:
            return None
        return Atom(r, u, s, v)

    def vars(self):
        return {self.u, self.v}


@dataclass(frozen=True)
class MonoFormula:
    n_free: int
    quantified: bool
    atoms: tuple
    empty_marker: bool = False

    def __post_init__(self):
        for a in self.atoms:
            for w in a.vars():
                if w == Y:
                    if not self.quantified:
                        raise InputError("bound variable used without quantifier")
                elif not (0 <= w < self.n_free):
                    raise InputError(f"free variable index {w} out of range")


def make_formula(n_free, quantified, atoms, empty_marker=False):
    """Normalize, deduplicate and sort atoms."""
    norm = []
    for a in atoms:
        na = a.normalized()
        if na is not None and na not in norm:
            norm.append(na)
    norm.sort(key=lambda a: (a.u != Y and a.v != Y, a.r + a.s, a.r, a.u, a.s, a.v))
    return MonoFormula(n_free, quantified, tuple(norm), empty_marker)


def weight(formula):
    """Sum of exponent+1 over every atom side holding the bound variable."""
    w = 0
    for a in formula.atoms:
        if a.u == Y:
            w += a.r + 1
        if a.v == Y:
            w += a.s + 1
    return w


# -- structure profile -------------------------------------------------

@dataclass(frozen=True)
class MonounaryProfile:
    size: int
    heights: tuple
    cyclic: frozenset
    sources: frozenset
    cycle_lcm: int
    source_height: int  # common height of the sources, 0 when none
    condition_v: bool
    has_fixed_point: bool


def _the_unary(alg):
    if len(alg.ops) != 1 or alg.ops[0].arity != 1:
        raise InputError(f"algebra {alg.name!r} is not monounary")
    return alg.ops[0].values


def profile(alg):
    f = _the_unary(alg)
    n = alg.size
    cyclic = set()
    for a in range(n):
        x, seen = a, set()
        while x not in seen:
            seen.add(x)
            x = f[x]
        # x is on a cycle; a is cyclic iff a is reached again
        y, cyc = x, {x}
        while f[y] != x:
            y = f[y]
            cyc.add(y)
        if a in cyc:
            cyclic.add(a)
    heights = [0] * n
    changed = True
    while changed:
        changed = False
        for a in range(n):
            if a in cyclic:
                continue
            h = heights[f[a]] + 1
            if heights[a] != h:
                heights[a] = h
                changed = True
    image = set(f)
    sources = frozenset(a for a in range(n) if a not in image)
    lengths = set()
    for a in sorted(cyclic):
        x, t = f[a], 1
        while x != a:
            x = f[x]
            t += 1
        lengths.add(t)
    ell = math.lcm(*lengths) if lengths else 1
    src_heights = {heights[a] for a in sources}
    cond_v = len(src_heights) <= 1
    return MonounaryProfile(
        size=n,
        heights=tuple(heights),
        cyclic=frozenset(cyclic),
        sources=sources,
        cycle_lcm=ell,
        source_height=min(src_heights) if src_heights else 0,
        condition_v=cond_v,
        has_fixed_point=any(f[a] == a for a in range(n)),
    )


def iterate(f, r, a):
    for _ in range(r):
        a = f[a]
    return a


# -- semantics ---------------------------------------------------------

def mono_relation(alg, formula):
    """The relation defined by the formula, by exhaustive evaluation."""
    import itertools

    f = _the_unary(alg)
    n = alg.size
    out = set()
    for free in itertools.product(range(n), repeat=formula.n_free):
        def holds(asg):
            def val(exp, var):
                return iterate(f, exp, asg[var] if var != Y else asg[Y])
            return all(val(a.r, a.u) == val(a.s, a.v) for a in formula.atoms)

        if formula.quantified:
            ok = any(holds({**dict(enumerate(free)), Y: b}) for b in range(n))
        else:
            ok = holds(dict(enumerate(free)))
        if ok:
            out.add(free)
    return frozenset(out)


# -- rewriting ---------------------------------------------------------

def _try_rule(a, b):
    """Apply the first matching rewrite rule to the ordered atom pair
    (a, b); returns (replace_a, replace_b) entries or None.

    Entries are either an Atom, None (keep), or 'drop'.
    """
    a_yx = a.u == Y and a.v != Y
    b_yx = b.u == Y and b.v != Y
    a_yy = a.u == Y and a.v == Y
    b_yy = b.u == Y and b.v == Y
    # rule 1: f^k(y)=f^l(xi) & f^m(y)=f^n(xj), k >= m
    if a_yx and b_yx and a.r >= b.r:
        k, l, xi, m, n_, xj = a.r, a.s, a.v, b.r, b.s, b.v
        return Atom(k - m + n_, xj, l, xi), None
    # rule 2: f^k(y)=f^l(xi) & f^m(y)=f^n(y), k >= m (m > n by normalization)
    if a_yx and b_yy and a.r >= b.r:
        k, l, xi, m, n_ = a.r, a.s, a.v, b.r, b.s
        return Atom(k - m + n_, Y, l, xi), None
    # rule 3: f^k(y)=f^l(xi) & f^m(y)=f^n(y), k < m
    if a_yx and b_yy and a.r < b.r:
        k, l, xi, m, n_ = a.r, a.s, a.v, b.r, b.s
        return None, Atom(n_, Y, m - k + l, xi)
    # rule 4: f^k(y)=f^l(y) & f^m(y)=f^n(y), k >= m (k > l, m > n normalized)
    if a_yy and b_yy and a.r >= b.r:
        k, l, m, n_ = a.r, a.s, b.r, b.s
        return Atom(k - m + n_, Y, l, Y), None
    return None


def rewrite_step(formula):
    """One weight-decreasing rewrite, or None when no rule applies.

    Scans atom pairs in index order, trying the rules on both role
    assignments of each pair.
    """
    atoms = formula.atoms
    ys = [i for i, a in enumerate(atoms) if Y in a.vars()]
    for ii in range(len(ys)):
        for jj in range(ii + 1, len(ys)):
            i, j = ys[ii], ys[jj]
            for first, second in ((i, j), (j, i)):
                res = _try_rule(atoms[first], atoms[second])
                if res is None:
                    continue
                new_a, new_b = res
                out = list(atoms)
                if new_a is not None:
                    out[first] = new_a
                if new_b is not None:
                    out[second] = new_b
                return make_formula(formula.n_free, True, out)
    return None


def psi_k(alg, k):
    """Defining atom of the image set f^k(A) as (r, s): f^r(x) = f^s(x).

    (0, 0) means trivially true.  Requires the sources (if any) to share
    a common height.
    """
    p = profile(alg)
    if not p.condition_v:
        raise ConditionVError(
            f"algebra {alg.name!r} has sources of different heights"
        )
    if not p.sources:
        return (0, 0)
    n_h = p.source_height
    ell = p.cycle_lcm
    if k >= n_h:
        return (0, ell)
    return (n_h - k, n_h - k + ell)


def eliminate_quantifier(alg, formula):
    """Equivalent quantifier-free formula over the same free variables.

    Requires the algebra to satisfy the common-source-height condition.
    Repeatedly rewrites until y occurs in at most one atom, then resolves
    the terminal cases; the unsatisfiable terminal case returns the empty
    relation marked by an unsatisfiable single-variable atom.
    """
    f = _the_unary(alg)
    p = profile(alg)
    if not p.condition_v:
        raise ConditionVError(f"algebra {alg.name!r} has sources of different heights")
    if not formula.quantified:
        return formula
    cur = make_formula(formula.n_free, True, formula.atoms)
    while True:
        ys = [a for a in cur.atoms if Y in a.vars()]
        if not ys:
            return make_formula(cur.n_free, False, cur.atoms)
        if len(ys) == 1:
            a = ys[0]
            rest = [b for b in cur.atoms if Y not in b.vars()]
            if a.u == Y and a.v == Y:
                if any(iterate(f, a.r, b) == iterate(f, a.s, b) for b in range(alg.size)):
                    return make_formula(cur.n_free, False, rest)
                n_free = max(cur.n_free, 1)
                return make_formula(
                    n_free, False, [Atom(a.r, 0, a.s, 0)], empty_marker=True
                )
            # f^k(y) = f^l(xi): y is eliminable iff f^l(xi) lies in f^k(A)
            r, s = psi_k(alg, a.r)
            if (r, s) != (0, 0):
                rest.append(Atom(r + a.s, a.v, s + a.s, a.v))
            return make_formula(cur.n_free, False, rest)
        w0 = weight(cur)
        nxt = rewrite_step(cur)
        if nxt is None:
            raise AssertionError("no rewrite rule applies with two atoms holding y")
        assert weight(nxt) < w0
        cur = nxt


# -- concrete syntax ---------------------------------------------------

_TERM = re.compile(r"^(?:f\^(\d+)\()?(x\d+|y)\)?$")


def parse_term(text):
    text = text.strip().replace(" ", "")
    m = _TERM.match(text)
    if not m:
        raise ParseError(f"bad term {text!r}")
    exp = int(m.group(1)) if m.group(1) else 0
    if ("(" in text) != (")" in text) or ("(" in text and m.group(1) is None):
        raise ParseError(f"bad term {text!r}")
    var = m.group(2)
    if var == "y":
        return exp, Y
    idx = int(var[1:]) - 1
    if idx < 0:
        raise ParseError(f"variable indices start at x1: {text!r}")
    return exp, idx


def parse_formula(text, n_free=None):
    text = text.strip()
    quantified = False
    if text.startswith("Ey."):
        quantified = True
        text = text[3:]
    atoms = []
    top = 0
    for part in text.split("&"):
        part = part.strip()
        if "=" not in part:
            raise ParseError(f"atom {part!r} has no '='")
        lhs, rhs = part.split("=", 1)
        r, u = parse_term(lhs)
        s, v = parse_term(rhs)
        atoms.append(Atom(r, u, s, v))
        for w in (u, v):
            if w != Y:
                top = max(top, w + 1)
            elif not quantified:
                raise ParseError("y used without the Ey. prefix")
    if n_free is None:
        n_free = max(top, 1)
    elif n_free < top:
        raise ParseError(f"formula uses x{top} but n_free={n_free}")
    return make_formula(n_free, quantified, atoms)


def format_term(exp, var):
    v = "y" if var == Y else f"x{var + 1}"
    return v if exp == 0 else f"f^{exp}({v})"


def format_formula(formula):
    if not formula.atoms:
        body = "x1=x1"
    else:
        body = " & ".join(
            f"{format_term(a.r, a.u)}={format_term(a.s, a.v)}" for a in formula.atoms
        )
    return ("Ey." if formula.quantified else "") + body
