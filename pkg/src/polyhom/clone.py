"""Term clone fragments, derived relations, and the two closure operators.

An n-ary term operation is stored as a flat value tuple over all n-tuples
in lexicographic order, together with one witnessing term string.
Relations of arity n are frozensets of n-tuples; internally the closure
code also uses bitmask encodings (bit i = i-th tuple in lexicographic
order) for speed.
"""

from dataclasses import dataclass
import functools
import itertools

from .algebra import (
    DEFAULT_LIMITS,
    _HomSearch,
    all_points,
    tuple_rank,
    unary_power,
)
from .errors import InputError, ResourceBoundExceeded, WellDefinednessError


@dataclass(frozen=True)
class TermOperation:
    arity: int
    values: tuple  # length size**arity
    term: str  # one witnessing term

    def apply(self, args, size):
        return self.values[tuple_rank(args, size)]


@functools.lru_cache(maxsize=128)
def clone_fragment(alg, n, limits=DEFAULT_LIMITS):
    """All n-ary term operations, as the composition fixpoint over the
    projections.  Returns a sorted tuple of TermOperation.  Cached: the
    sweeps in the deciders ask for the same fragment many times."""
    if n < 1:
        raise InputError("clone fragment arity must be >= 1")
    size = alg.size
    cells = size**n
    if cells > limits.max_cells:
        raise ResourceBoundExceeded(f"term tables need {cells} cells")
    points = all_points(size, n)
    members = {}
    for i in range(n):
        tab = tuple(p[i] for p in points)
        members[tab] = f"x{i + 1}"
    frontier = list(members)
    while frontier:
        new = []
        base = sorted(members)
        for op in alg.ops:
            if op.arity == 0:
                tab = (op.values[0],) * cells
                if tab not in members:
                    members[tab] = op.name
                    new.append(tab)
                continue
            for pos in range(op.arity):
                for fresh in frontier:
                    pools = [base] * op.arity
                    for args in itertools.product(*pools[:pos], [fresh], *pools[pos + 1:]):
                        tab = tuple(op.apply(col) for col in zip(*args))
                        if tab not in members:
                            parts = ", ".join(members[a] for a in args)
                            members[tab] = f"{op.name}({parts})"
                            new.append(tab)
                            if len(members) ** 2 * cells > limits.max_nodes:
                                raise ResourceBoundExceeded(
                                    f"clone fragment at arity {n} exceeds node budget"
                                )
        frontier = new
    return tuple(
        TermOperation(n, tab, members[tab]) for tab in sorted(members)
    )


def relation_fragment(alg, n, mode, limits=DEFAULT_LIMITS):
    """Derived relations of arity n.

    mode "graphs": graphs of (n-1)-ary term operations (the f-bullet
    relations).  mode "solution_sets": solution sets Sol(f,g) of pairs of
    n-ary term operations.  Returns a sorted tuple of frozensets.
    """
    size = alg.size
    if mode == "graphs":
        if n < 2:
            return ()
        rels = set()
        for f in clone_fragment(alg, n - 1, limits):
            rels.add(
                frozenset(args + (f.values[i],) for i, args in enumerate(all_points(size, n - 1)))
            )
        return tuple(sorted(rels, key=sorted))
    if mode == "solution_sets":
        terms = clone_fragment(alg, n, limits)
        points = all_points(size, n)
        if len(terms) ** 2 * len(points) > limits.max_nodes:
            raise ResourceBoundExceeded(
                f"solution sets over {len(terms)} terms exceed the node budget"
            )
        rels = set()
        for f, g in itertools.combinations_with_replacement(terms, 2):
            rels.add(
                frozenset(p for i, p in enumerate(points) if f.values[i] == g.values[i])
            )
        return tuple(sorted(rels, key=sorted))
    raise InputError(f"unknown relation mode {mode!r}")


def _check_relation(alg, S, n):
    for t in S:
        if len(t) != n:
            raise InputError(f"tuple {t} does not have arity {n}")
        for a in t:
            if not (0 <= a < alg.size):
                raise InputError(f"element {a} outside 0..{alg.size - 1}")


def algebraic_closure(alg, S, n, limits=DEFAULT_LIMITS):
    """Smallest algebraic set (solution set of a term-equation system)
    containing S, computed by partitioning the n-ary term operations by
    their restriction to S."""
    S = frozenset(tuple(t) for t in S)
    _check_relation(alg, S, n)
    terms = clone_fragment(alg, n, limits)
    rows = sorted(S)
    size = alg.size
    ranks = [tuple_rank(t, size) for t in rows]
    classes = {}
    for f in terms:
        key = tuple(f.values[r] for r in ranks)
        classes.setdefault(key, []).append(f)
    out = []
    for i, p in enumerate(all_points(size, n)):
        ok = True
        for cls in classes.values():
            if len({f.values[i] for f in cls}) != 1:
                ok = False
                break
        if ok:
            out.append(p)
    return frozenset(out)


def _total_hom_exists(alg, m, fixed, limits):
    """Is there a total homomorphism A^m -> A through the given
    point-value pairs?  fixed maps m-tuples to elements."""
    cells = alg.size**m
    if cells > limits.max_cells:
        raise ResourceBoundExceeded(
            f"centralizer membership test needs the full power A^{m} ({cells} points)"
        )
    if alg.unary_only and len(alg.ops) == 1:
        # decide exactly via the functional-graph decomposition: fixed
        # values force the whole forward orbit, components without fixed
        # points always admit a hom (a projection), and the rest reduce
        # to the per-component extension test
        up = unary_power(alg, m)
        f = alg.ops[0].values
        mapping = {}
        for p, v in fixed.items():
            q, w = tuple(p), v
            while q not in mapping:
                mapping[q] = w
                q, w = up.g[q], f[w]
            if mapping[q] != w:
                return False
        touched = {up.comp_of[p] for p in mapping}
        return all(
            up.extends(frozenset(q for q in mapping if q in comp), mapping, comp)
            for comp in touched
        )
    target = all_points(alg.size, m)
    search = _HomSearch(alg, m, target, limits)
    for _ in search.solutions(fixed=fixed):
        return True
    return False


def centralizer_fragment(alg, k, limits=DEFAULT_LIMITS):
    """All k-ary members of the centralizer clone: total homomorphisms
    A^k -> A, returned as TermOperation-style flat tables."""
    cells = alg.size**k
    if cells > limits.max_cells:
        raise ResourceBoundExceeded(f"centralizer fragment needs {cells} cells")
    target = all_points(alg.size, k)
    search = _HomSearch(alg, k, target, limits)
    out = []
    for vals in search.solutions():
        out.append(tuple(vals))
    return tuple(sorted(out))


def centralizer_closure(alg, S, n, limits=DEFAULT_LIMITS):
    """Smallest superset of S closed under every member of the
    centralizer clone.

    With rows s_1..s_m (sorted), a candidate tuple a is in the closure
    iff some total homomorphism A^m -> A maps the j-th column point
    (s_1j,..,s_mj) to a_j for every j.  Candidates are pre-filtered by
    the algebraic closure, which always contains the result.
    """
    S = frozenset(tuple(t) for t in S)
    _check_relation(alg, S, n)
    rows = sorted(S)
    m = len(rows)
    if m == 0:
        # homomorphisms from the empty power pick out elements a with
        # f(a,..,a) = a for every basic operation
        out = []
        for a in range(alg.size):
            if all(op.apply((a,) * op.arity) == a for op in alg.ops if op.arity > 0) and all(
                op.values[0] == a for op in alg.ops if op.arity == 0
            ):
                out.append((a,) * n)
        return frozenset(out)
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    out = set(S)
    for cand in sorted(algebraic_closure(alg, S, n, limits)):
        if cand in out:
            continue
        fixed = {}
        ok = True
        for j, c in enumerate(cols):
            if c in fixed and fixed[c] != cand[j]:
                ok = False
                break
            fixed[c] = cand[j]
        if ok and _total_hom_exists(alg, m, fixed, limits):
            out.add(cand)
    return frozenset(out)


def extend_to_generated(alg, k, mapping, limits=DEFAULT_LIMITS):
    """Extend a partial map on k-tuples to the subuniverse generated by
    its domain, by pushing values through term operations.

    With domain d_1..d_m, every generated point a has the form
    t(d_1,..,d_m) for a term t, and the extension sends it to
    t(h(d_1),..,h(d_m)).  Returns the extended dict; raises
    WellDefinednessError carrying the two separating terms when two terms
    agree on the domain but force different values.  That failure is
    exactly a solution-set relation the original map does not preserve.
    """
    dom = sorted(mapping)
    m = len(dom)
    if m == 0:
        return dict(mapping)
    terms = clone_fragment(alg, m, limits)
    size = alg.size
    out = {}
    seen = {}
    img = tuple(mapping[d] for d in dom)
    for f in terms:
        pt = tuple(f.values[tuple_rank(col, size)] for col in zip(*dom))
        val = f.values[tuple_rank(img, size)]
        if pt in seen and seen[pt][0] != val:
            raise WellDefinednessError(
                f"terms {seen[pt][1]} and {f.term} agree on the domain "
                f"but force different values",
                term_a=seen[pt][1],
                term_b=f.term,
            )
        if pt not in seen:
            seen[pt] = (val, f.term)
            out[pt] = val
    return out
