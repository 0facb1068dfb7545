"""Finite algebras as explicit operation tables.

Elements of an algebra of size n are the integers 0..n-1.  A k-ary
operation is stored as a flat value tuple of length n**k indexed by the
lexicographic rank of the argument tuple; all determinism in the package
rests on that fixed order.  Finite powers are handled either as
materialized algebras (``power``) or, for search routines, as sets of
k-tuples acted on componentwise.
"""

from dataclasses import dataclass
import functools
import itertools

from .errors import (
    ArityMismatchError,
    InputError,
    NotAHomomorphismError,
    OutOfRangeError,
    ResourceBoundExceeded,
    UnknownOperationError,
)

Point = tuple  # a k-tuple of elements


@dataclass(frozen=True)
class Limits:
    """Explicit resource budget.

    max_cells bounds the size of any materialized power domain or
    operation table; max_nodes bounds backtracking search nodes.
    """

    max_cells: int = 250_000
    max_nodes: int = 10_000_000


DEFAULT_LIMITS = Limits()


def tuple_rank(args, size):
    """Lexicographic rank of an argument tuple."""
    r = 0
    for a in args:
        r = r * size + a
    return r


def all_points(size, k):
    """All k-tuples over 0..size-1 in lexicographic order."""
    return list(itertools.product(range(size), repeat=k))


@dataclass(frozen=True)
class OperationTable:
    name: str
    arity: int
    size: int
    values: tuple

    def __post_init__(self):
        if self.arity < 0:
            raise InputError(f"operation {self.name!r}: negative arity")
        if self.size < 1:
            raise InputError(f"operation {self.name!r}: empty universe")
        if len(self.values) != self.size**self.arity:
            raise InputError(
                f"operation {self.name!r}: expected {self.size ** self.arity} "
                f"table entries, got {len(self.values)}"
            )
        for v in self.values:
            if not (0 <= v < self.size):
                raise OutOfRangeError(
                    f"operation {self.name!r}: table value {v} outside 0..{self.size - 1}"
                )

    def apply(self, args):
        if len(args) != self.arity:
            raise ArityMismatchError(
                f"operation {self.name!r} has arity {self.arity}, got {len(args)} arguments"
            )
        return self.values[tuple_rank(args, self.size)]


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    ops: tuple

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"algebra {self.name!r}: size must be >= 1")
        seen = set()
        for op in self.ops:
            if op.name in seen:
                raise InputError(f"algebra {self.name!r}: duplicate operation {op.name!r}")
            seen.add(op.name)
            if op.size != self.size:
                raise InputError(
                    f"algebra {self.name!r}: operation {op.name!r} built for size {op.size}"
                )

    def op(self, name):
        for op in self.ops:
            if op.name == name:
                return op
        raise UnknownOperationError(f"algebra {self.name!r} has no operation {name!r}")

    @property
    def unary_only(self):
        return all(op.arity == 1 for op in self.ops)

    @property
    def signature(self):
        return tuple((op.name, op.arity) for op in self.ops)


@dataclass(frozen=True)
class PartialOperation:
    """A partial map A^k -> A given by explicit (point, value) entries."""

    arity: int
    entries: tuple  # sorted ((point, value), ...)

    @classmethod
    def from_dict(cls, arity, mapping):
        return cls(arity, tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.entries)

    @property
    def domain(self):
        return tuple(p for p, _ in self.entries)


def evaluate(alg, op_name, args):
    """Apply a named basic operation; validates name, arity and range."""
    op = alg.op(op_name)
    for a in args:
        if not (0 <= a < alg.size):
            raise OutOfRangeError(f"element {a} outside 0..{alg.size - 1}")
    return op.apply(tuple(args))


class PowerDomain:
    """Componentwise action of an algebra's operations on k-tuples.

    Used by search routines so that powers never have to be materialized
    as integer-universe algebras.
    """

    def __init__(self, alg, k):
        if k < 0:
            raise InputError("power exponent must be >= 0")
        self.alg = alg
        self.k = k

    def apply(self, op, points):
        vals = op.values
        size = op.size
        if op.arity == 1:
            (p,) = points
            return tuple(vals[a] for a in p)
        return tuple(
            vals[tuple_rank(col, size)] for col in zip(*points)
        ) if points else (vals[0],) * self.k

    def constants(self):
        """Points forced into every subuniverse by nullary operations."""
        out = set()
        for op in self.alg.ops:
            if op.arity == 0:
                out.add((op.values[0],) * self.k)
        return out

    def closure(self, seed):
        """Smallest subset containing seed and closed under all operations."""
        elems = set(self.constants())
        elems.update(tuple(p) for p in seed)
        if not elems:
            return frozenset()
        frontier = list(elems)
        while frontier:
            new = []
            base = sorted(elems)
            for op in self.alg.ops:
                if op.arity == 0:
                    continue
                if op.arity == 1:
                    for p in frontier:
                        q = self.apply(op, (p,))
                        if q not in elems:
                            elems.add(q)
                            new.append(q)
                else:
                    # at least one argument from the frontier
                    for pos in range(op.arity):
                        for fresh in frontier:
                            rest = [base] * op.arity
                            for args in itertools.product(*rest[:pos], [fresh], *rest[pos + 1:]):
                                q = self.apply(op, args)
                                if q not in elems:
                                    elems.add(q)
                                    new.append(q)
            frontier = new
        return frozenset(elems)

    def subuniverses(self, limits=DEFAULT_LIMITS):
        """All subuniverses of the k-th power, sorted by (size, elements).

        Uses incremental generation (close seed + one new point) which
        yields exactly the same set as closing every subset.
        """
        total = self.alg.size**self.k
        if total > limits.max_cells:
            raise ResourceBoundExceeded(
                f"power has {total} points, limit {limits.max_cells}"
            )
        points = all_points(self.alg.size, self.k)
        base = self.closure(())
        found = {base}
        queue = [base]
        while queue:
            s = queue.pop()
            for p in points:
                if p in s:
                    continue
                t = self.closure(set(s) | {p})
                if t not in found:
                    found.add(t)
                    queue.append(t)
                    if len(found) > limits.max_cells:
                        raise ResourceBoundExceeded(
                            f"more than {limits.max_cells} subuniverses"
                        )
        return sorted(found, key=lambda s: (len(s), sorted(s)))


def power(alg, k, limits=DEFAULT_LIMITS):
    """The k-th direct power as a materialized algebra on 0..size**k-1."""
    n = alg.size**k
    if n > limits.max_cells:
        raise ResourceBoundExceeded(f"power universe has {n} elements, limit {limits.max_cells}")
    dom = PowerDomain(alg, k)
    points = all_points(alg.size, k)
    index = {p: i for i, p in enumerate(points)}
    ops = []
    for op in alg.ops:
        if n**op.arity > limits.max_cells * 64:
            raise ResourceBoundExceeded(
                f"power table for {op.name!r} would have {n ** op.arity} cells"
            )
        values = tuple(
            index[dom.apply(op, args)]
            for args in itertools.product(points, repeat=op.arity)
        )
        ops.append(OperationTable(op.name, op.arity, n, values))
    return FiniteAlgebra(f"{alg.name}^{k}", n, tuple(ops))


def generate_subuniverse(alg, k, seed, limits=DEFAULT_LIMITS):
    """Subuniverse of the k-th power generated by the given k-tuples."""
    for p in seed:
        if len(p) != k:
            raise InputError(f"seed tuple {p} is not a {k}-tuple")
        for a in p:
            if not (0 <= a < alg.size):
                raise OutOfRangeError(f"element {a} outside 0..{alg.size - 1}")
    return PowerDomain(alg, k).closure(seed)


def enumerate_subuniverses(alg, k, limits=DEFAULT_LIMITS):
    return PowerDomain(alg, k).subuniverses(limits)


class _HomSearch:
    """Backtracking over values of a map dom -> A subject to the
    homomorphism condition relative to the k-th power."""

    def __init__(self, alg, k, domain, limits):
        self.alg = alg
        self.size = alg.size
        self.limits = limits
        self.domain = sorted(domain)
        self.index = {p: i for i, p in enumerate(self.domain)}
        self.nodes = 0
        # Constraint triples (arg indices, result index, op): checked as
        # soon as every participating point has a value.
        self.by_last = [[] for _ in self.domain]
        dom = PowerDomain(alg, k)
        domset = set(self.domain)
        n_checks = sum(len(self.domain) ** op.arity for op in alg.ops if op.arity)
        if n_checks > limits.max_nodes:
            raise ResourceBoundExceeded(
                f"homomorphism constraint table needs {n_checks} entries"
            )
        for op in alg.ops:
            if op.arity == 0:
                p = (op.values[0],) * k
                if p in domset:
                    i = self.index[p]
                    self.by_last[i].append(((), i, op, True))
                continue
            for args in itertools.product(self.domain, repeat=op.arity):
                res = dom.apply(op, args)
                if res not in domset:
                    continue  # domain not closed under this application
                idxs = tuple(self.index[a] for a in args)
                last = max(idxs + (self.index[res],))
                self.by_last[last].append((idxs, self.index[res], op, False))

    def _consistent(self, vals, i):
        for idxs, res, op, is_const in self.by_last[i]:
            if is_const:
                if vals[res] != op.values[0]:
                    return False
                continue
            if op.apply(tuple(vals[j] for j in idxs)) != vals[res]:
                return False
        return True

    def solutions(self, fixed=None):
        """Yield homomorphisms as value lists, in lexicographic order."""
        fixed = fixed or {}
        self.nodes = 0
        vals = [None] * len(self.domain)
        preset = {}
        for p, v in fixed.items():
            preset[self.index[p]] = v

        def rec(i):
            if i == len(self.domain):
                yield tuple(vals)
                return
            self.nodes += 1
            if self.nodes > self.limits.max_nodes:
                raise ResourceBoundExceeded("homomorphism search node budget exhausted")
            choices = (preset[i],) if i in preset else range(self.size)
            for v in choices:
                vals[i] = v
                if self._consistent(vals, i):
                    yield from rec(i + 1)
            vals[i] = None

        yield from rec(0)


def enumerate_homomorphisms(alg, k, dom, limits=DEFAULT_LIMITS):
    """All homomorphisms from a subuniverse of the k-th power into the
    algebra, as PartialOperation values in lexicographic order."""
    search = _HomSearch(alg, k, dom, limits)
    out = []
    for vals in search.solutions():
        out.append(PartialOperation(k, tuple(zip(search.domain, vals))))
    return out


def hom_defect(alg, k, mapping):
    """Return a violated (op, args) pair if mapping is not a homomorphism
    on its domain, else None.  Only applications staying inside the domain
    are constraints."""
    dom = PowerDomain(alg, k)
    keys = list(mapping)
    domset = set(keys)
    for op in alg.ops:
        if op.arity == 0:
            p = (op.values[0],) * k
            if p in domset and mapping[p] != op.values[0]:
                return op.name, ()
            continue
        for args in itertools.product(keys, repeat=op.arity):
            res = dom.apply(op, args)
            if res in domset:
                if op.apply(tuple(mapping[a] for a in args)) != mapping[res]:
                    return op.name, args
    return None


def extend_homomorphism(alg, k, mapping, target, limits=DEFAULT_LIMITS):
    """Extend a homomorphism to a larger closed set, or None.

    mapping: dict from k-tuples to elements, a homomorphism on its
    (closed) domain.  target: closed superset of the domain.  Returns the
    lexicographically least extension as a dict, or None when no
    extension exists.
    """
    if not set(mapping) <= set(target):
        raise InputError("extension target does not contain the domain")
    bad = hom_defect(alg, k, mapping)
    if bad is not None:
        raise NotAHomomorphismError(f"map violates operation {bad[0]!r} at {bad[1]}")
    search = _HomSearch(alg, k, target, limits)
    for vals in search.solutions(fixed=mapping):
        return dict(zip(search.domain, vals))
    return None


class _UnaryPower:
    """Functional-graph view of the k-th power of a monounary algebra.

    The power decomposes into weakly connected components of the induced
    map g = f x .. x f; homomorphisms factor over components, and
    whether a homomorphism on a g-closed set extends depends only on its
    values at points with children outside the set.  This decides
    extension questions exactly without enumerating assignments.
    """

    def __init__(self, alg, k):
        self.alg = alg
        self.k = k
        self.f = alg.ops[0].values
        self.size = alg.size
        self.f_inv = [[] for _ in range(self.size)]
        for a in range(self.size):
            self.f_inv[self.f[a]].append(a)
        self.points = all_points(self.size, k)
        self.g = {p: tuple(self.f[a] for a in p) for p in self.points}
        self.children = {p: [] for p in self.points}
        for p in self.points:
            self.children[self.g[p]].append(p)
        self.components = self._components()
        self.comp_of = {}
        for comp in self.components:
            for p in comp:
                self.comp_of[p] = comp

    def _components(self):
        seen = set()
        comps = []
        for p in self.points:
            if p in seen:
                continue
            comp = set()
            stack = [p]
            while stack:
                q = stack.pop()
                if q in comp:
                    continue
                comp.add(q)
                stack.append(self.g[q])
                stack.extend(self.children[q])
            seen |= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=lambda c: sorted(c))

    def cycle_of(self, comp):
        p = min(comp)
        seen = set()
        while p not in seen:
            seen.add(p)
            p = self.g[p]
        cyc = {p}
        q = self.g[p]
        while q != p:
            cyc.add(q)
            q = self.g[q]
        return frozenset(cyc)

    def closed_subsets(self, comp, cycle):
        """All nonempty g-closed subsets of the component.  Every such
        subset contains the cycle, because forward orbits wrap it."""
        trees = sorted(comp - cycle, key=lambda p: (self._depth(p, cycle), p))
        out = [frozenset(cycle)]
        for p in trees:
            extra = []
            for d in out:
                if self.g[p] in d:
                    extra.append(d | {p})
            out.extend(extra)
        return out

    def _depth(self, p, cycle):
        d = 0
        while p not in cycle:
            p = self.g[p]
            d += 1
        return d

    def branch_ok(self, x, v, inside, memo):
        """Can the outside subtree above x be labeled when h(x) = v?"""
        key = (x, v)
        if key in memo:
            return memo[key]
        ok = True
        for y in self.children[x]:
            if y in inside or y not in self.restrict:
                continue
            if not any(self.branch_ok(y, u, inside, memo) for u in self.f_inv[v]):
                ok = False
                break
        memo[key] = ok
        return ok

    def extends(self, D, mapping, target):
        """Does the homomorphism on D extend to the closed superset
        target (within one component)?"""
        self.restrict = target
        memo = {}
        for b in sorted(D):
            for y in self.children[b]:
                if y in D or y not in target:
                    continue
                if not any(self.branch_ok(y, u, D, memo) for u in self.f_inv[mapping[b]]):
                    return False
        return True


@functools.lru_cache(maxsize=32)
def unary_power(alg, k):
    return _UnaryPower(alg, k)
