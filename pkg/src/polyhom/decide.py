"""Bounded deciders for the six extension/closure properties.

Each decider runs a definition-level search within explicit bounds and
returns a Verdict.  Brute force alone can only produce exact-false (with
a re-checkable witness) or true-up-to-bound; the classification
shortcuts upgrade to exact verdicts when a theorem applies, and the two
sources are kept separate in the certificate field so they cross-check
each other.
"""

from dataclasses import dataclass
import itertools

from .algebra import (
    DEFAULT_LIMITS,
    Limits,
    PowerDomain,
    _HomSearch,
    all_points,
    unary_power,
)
from .clone import algebraic_closure, centralizer_closure
from .errors import ResourceBoundExceeded
from .pp import mask_to_relation, project_out_last, qfpp_closure
from .varieties import classify

EXACT_TRUE = "exact-true"
EXACT_FALSE = "exact-false"
TRUE_UP_TO_BOUND = "true-up-to-bound"
UNKNOWN = "unknown"

# how far beyond the requested bound a decider may escalate when a
# classification theorem promises a counterexample
POWER_ESCALATION = 2
ARITY_ESCALATION = 1


@dataclass(frozen=True)
class Witness:
    kind: str  # non-extendable-homomorphism | non-algebraic-invariant-set | qfpp-gap-relation
    data: dict


@dataclass(frozen=True)
class Verdict:
    value: str
    bounds: dict
    witness: object
    certificate: str

    @property
    def holds(self):
        return self.value in (EXACT_TRUE, TRUE_UP_TO_BOUND)


def _hom_witness(k, domain, mapping, target=None):
    data = {
        "power": k,
        "domain": tuple(sorted(domain)),
        "mapping": tuple(sorted(mapping.items())),
    }
    if target is not None:
        data["target"] = tuple(sorted(target))
    return Witness("non-extendable-homomorphism", data)


# --- unary-signature decomposition -----------------------------------
#
# For a single unary basic operation the constraint graph of the k-th
# power decomposes into weakly connected components of the functional
# graph, homomorphisms factor over components, and extendability of a
# homomorphism h on a closed set D depends only on the values h takes at
# the points where outside trees attach.  This computes exactly the same
# witnesses as the generic search without enumerating the (possibly
# astronomically many) homomorphisms one by one.


def _iterate(f, r, a):
    for _ in range(r):
        a = f[a]
    return a


def _unary_hom_homog_witness(alg, k, limits, inj_target=False):
    """Least witness (domain, mapping[, target]) against extendability of
    subuniverse homomorphisms at power k of a monounary algebra, or
    None.  With inj_target the least failing closed superset is also
    reported (injectivity flavour).

    A homomorphism h on a closed set D fails to extend iff h takes a bad
    value at a boundary point (one with children outside D), where a
    value v is bad when some outside subtree cannot be labeled on top of
    it.  So instead of enumerating homomorphisms, enumerate the bad
    (point, value) pairs and search for one homomorphism realizing each.
    """
    up = unary_power(alg, k)
    f = alg.ops[0].values
    size = alg.size
    # images of the d-th iterate; the chain stabilizes at the eventual image
    imgs = [frozenset(range(size))]
    while True:
        nxt = frozenset(f[a] for a in imgs[-1])
        if nxt == imgs[-1]:
            break
        imgs.append(nxt)

    def image(d):
        return imgs[min(d, len(imgs) - 1)]

    candidates = []
    for comp in up.components:
        cycle = up.cycle_of(comp)
        for D in up.closed_subsets(comp, cycle):
            if D == comp:
                continue
            candidates.append((len(D), sorted(D), D, comp, cycle))
    candidates.sort(key=lambda t: (t[0], t[1]))
    memos = {}
    for _, _, D, comp, cycle in candidates:
        # outside subtrees never reach back into D, so the labelability
        # memo depends only on the component
        memo = memos.setdefault(comp, {})
        up.restrict = comp
        # longest g-chain inside D ending at each point; h(x) must lie in
        # the image of the corresponding iterate, and cycle points must
        # map to points that the cycle length fixes
        depth = _chain_depths(up, D, cycle, len(imgs) - 1)
        c = len(cycle)
        bad_pairs = []
        for x in sorted(D):
            outside = [y for y in up.children[x] if y not in D]
            if not outside:
                continue
            for v in range(size):
                if v not in image(depth[x]):
                    continue
                if x in cycle and _iterate(f, c, v) != v:
                    continue
                if all(
                    any(up.branch_ok(y, u, D, memo) for u in up.f_inv[v])
                    for y in outside
                ):
                    continue
                bad_pairs.append((x, v))
        if not bad_pairs:
            continue
        best = None
        search = _HomSearch(alg, k, D, limits)
        for x, v in bad_pairs:
            for vals in search.solutions(fixed={x: v}):
                if best is None or vals < best:
                    best = vals
                break
        if best is None:
            continue
        mapping = dict(zip(search.domain, best))
        if not inj_target:
            return D, mapping
        # least closed superset of D inside the component where the
        # extension fails
        supersets = sorted(
            (s for s in up.closed_subsets(comp, cycle) if D < s),
            key=lambda s: (len(s), sorted(s)),
        )
        for E in supersets:
            if not up.extends(D, mapping, E):
                return D, mapping, E
        return D, mapping, comp
    return None


def _chain_depths(up, D, cycle, cap):
    """Length of the longest g-chain within D ending at each point of D,
    capped; cycle points wrap and get the cap directly."""
    depth = {}

    def rec(x):
        if x in depth:
            return depth[x]
        if x in cycle:
            depth[x] = cap
            return cap
        d = 0
        for y in up.children[x]:
            if y in D:
                d = max(d, min(rec(y) + 1, cap))
        depth[x] = d
        return d

    for x in D:
        rec(x)
    return depth


# --- generic search ---------------------------------------------------

def _generic_hom_homog_witness(alg, k, limits, inj_target=False):
    pd = PowerDomain(alg, k)
    subs = pd.subuniverses(limits)
    full = frozenset(all_points(alg.size, k))
    full_search = _HomSearch(alg, k, sorted(full), limits)
    for B in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if B == full:
            continue
        search = _HomSearch(alg, k, B, limits)
        for vals in search.solutions():
            mapping = dict(zip(search.domain, vals))
            extendable = False
            for _ in full_search.solutions(fixed=mapping):
                extendable = True
                break
            if extendable:
                continue
            if not inj_target:
                return B, mapping
            for C in sorted(subs, key=lambda s: (len(s), sorted(s))):
                if not (B < C):
                    continue
                c_search = _HomSearch(alg, k, C, limits)
                hit = False
                for _ in c_search.solutions(fixed=mapping):
                    hit = True
                    break
                if not hit:
                    return B, mapping, C
            return B, mapping, full
    return None


def hom_homog_witness(alg, k, limits=DEFAULT_LIMITS, inj_target=False):
    """Least non-extendable homomorphism from a subuniverse of the k-th
    power, or None when every one extends."""
    if alg.unary_only and len(alg.ops) == 1:
        return _unary_hom_homog_witness(alg, k, limits, inj_target)
    return _generic_hom_homog_witness(alg, k, limits, inj_target)


# --- public deciders --------------------------------------------------

def is_hom_homogeneous(alg, limits=DEFAULT_LIMITS):
    """Exact: every homomorphism from a subalgebra into the algebra
    extends to a total endomorphism-like map (power 1 needs no bound)."""
    w = hom_homog_witness(alg, 1, limits)
    if w is None:
        return Verdict(EXACT_TRUE, {"power": 1}, None, "brute-force")
    return Verdict(
        EXACT_FALSE, {"power": 1}, _hom_witness(1, w[0], w[1]), "brute-force"
    )


def _merge_with_fastpath(brute, fast, bounds, certificate):
    """Combine a brute verdict with an exact classification claim."""
    if brute.value == EXACT_FALSE:
        return brute
    if fast is True:
        return Verdict(EXACT_TRUE, bounds, None, certificate + "+fastpath")
    if fast is False:
        # theorem says false but no witness found within bounds
        return Verdict(EXACT_FALSE, bounds, brute.witness, "fastpath")
    return brute

def is_pol_hom_up_to(alg, max_power=2, limits=DEFAULT_LIMITS, fastpath=True):
    report = classify(alg) if fastpath else None
    fast = report.properties["pol_homogeneous"] if report else None
    top = max_power + (POWER_ESCALATION if fast is False else 0)
    k = 0
    realized = 0
    for k in range(1, top + 1):
        try:
            w = hom_homog_witness(alg, k, limits)
        except ResourceBoundExceeded:
            if realized == 0:
                raise
            break
        realized = k
        if w is not None:
            return Verdict(
                EXACT_FALSE,
                {"max_power": realized},
                _hom_witness(k, w[0], w[1]),
                "brute-force",
            )
        if fast is not False and k >= max_power:
            break
    brute = Verdict(TRUE_UP_TO_BOUND, {"max_power": realized}, None, "brute-force")
    return _merge_with_fastpath(brute, fast, {"max_power": realized}, "brute-force")


def is_injective_spfin_up_to(alg, max_power=2, limits=DEFAULT_LIMITS, fastpath=True):
    """Injectivity with respect to embeddings inside finite powers,
    checked by its own quantification over pairs of subuniverses."""
    report = classify(alg) if fastpath else None
    fast = report.properties["injective_spfin"] if report else None
    top = max_power + (POWER_ESCALATION if fast is False else 0)
    realized = 0
    for k in range(1, top + 1):
        try:
            w = hom_homog_witness(alg, k, limits, inj_target=True)
        except ResourceBoundExceeded:
            if realized == 0:
                raise
            break
        realized = k
        if w is not None:
            return Verdict(
                EXACT_FALSE,
                {"max_power": realized},
                _hom_witness(k, w[0], w[1], target=w[2]),
                "brute-force",
            )
        if fast is not False and k >= max_power:
            break
    brute = Verdict(TRUE_UP_TO_BOUND, {"max_power": realized}, None, "brute-force")
    return _merge_with_fastpath(brute, fast, {"max_power": realized}, "brute-force")


def _sweep_cap(size, limit_cells):
    m = 0
    while size ** (m + 1) <= limit_cells:
        m += 1
    return m


def _subset_cap(alg, limits, sweep_cells):
    """Largest subset size |S| = m for which the centralizer membership
    test stays affordable: the constraint table of the total-hom search
    on A^m has size^(m * r) entries for a basic operation of arity r."""
    r = max((op.arity for op in alg.ops), default=1)
    r = max(r, 1)
    budget = min(limits.max_cells, 20_000)
    cap = _sweep_cap(alg.size, sweep_cells)
    while cap > 0 and (alg.size ** (cap * r) > budget or alg.size**cap > 64):
        cap -= 1
    return cap


def sdc_gap_witness(alg, n, limits=DEFAULT_LIMITS, sweep_cells=4096):
    """Search all subsets of A^n (size-capped) for a set whose
    centralizer closure is strictly below its algebraic closure.
    Returns (S, centralizer_closure(S)) or None."""
    cap = _subset_cap(alg, limits, sweep_cells)
    points = all_points(alg.size, n)
    # membership tests that fail exhaust their backtracking space, so
    # they get a tight private node budget and overruns are skipped
    cc_limits = Limits(
        max_cells=limits.max_cells, max_nodes=min(limits.max_nodes, 200_000)
    )
    for m in range(0, min(cap, len(points)) + 1):
        for S in itertools.combinations(points, m):
            S = frozenset(S)
            ac = algebraic_closure(alg, S, n, limits)
            if ac == S:
                continue
            try:
                cc = centralizer_closure(alg, S, n, cc_limits)
            except ResourceBoundExceeded:
                # skip sets whose membership test exceeds the budget;
                # the verdict stays bounded, never falsely exact
                continue
            if cc != ac:
                return S, cc
    return None


def sdc_projection_witness(alg, n, limits=DEFAULT_LIMITS):
    """A relation pp-definable with one quantifier over solution sets but
    not quantifier-free definable, if one exists at arity n."""
    try:
        upper = qfpp_closure(alg, n + 1, "solution_sets", limits)
        lower = qfpp_closure(alg, n, "solution_sets", limits)
    except ResourceBoundExceeded:
        return None
    for mask in sorted(upper):
        proj = project_out_last(mask, alg.size, n + 1)
        if proj not in lower:
            return mask_to_relation(proj, alg.size, n)
    return None


def has_sdc_up_to(alg, max_arity=2, limits=DEFAULT_LIMITS, fastpath=True, sweep_cells=4096):
    """Do algebraic and centralizer closure coincide on every swept set?

    Sweeps subsets of A^n for n <= max_arity (subset size capped so the
    membership tests stay within the cell budget) and additionally scans
    one-quantifier projections of the solution-set fragments for escapes
    from the quantifier-free fragment; both searches produce sound
    exact-false witnesses.
    """
    report = classify(alg) if fastpath else None
    fast = report.properties["sdc"] if report else None
    top = max_arity + (ARITY_ESCALATION if fast is False else 0)
    bounds = {"max_arity": 0, "max_subset_size": _subset_cap(alg, limits, sweep_cells)}
    for n in range(1, top + 1):
        # the projection scan is far cheaper than the subset sweep
        rel = sdc_projection_witness(alg, n, limits)
        if rel is not None:
            witness = Witness(
                "non-algebraic-invariant-set",
                {"arity": n, "relation": tuple(sorted(rel)), "from_set": None},
            )
            bounds["max_arity"] = n
            return Verdict(EXACT_FALSE, bounds, witness, "brute-force")
        got = sdc_gap_witness(alg, n, limits, sweep_cells)
        if got is not None:
            S, cc = got
            witness = Witness(
                "non-algebraic-invariant-set",
                {
                    "arity": n,
                    "relation": tuple(sorted(cc)),
                    "from_set": tuple(sorted(S)),
                    "algebraic_closure": tuple(
                        sorted(algebraic_closure(alg, S, n, limits))
                    ),
                },
            )
            bounds["max_arity"] = n
            return Verdict(EXACT_FALSE, bounds, witness, "brute-force")
        bounds["max_arity"] = n
        if fast is not False and n >= max_arity:
            break
    brute = Verdict(TRUE_UP_TO_BOUND, dict(bounds), None, "brute-force")
    return _merge_with_fastpath(brute, fast, dict(bounds), "brute-force")


def cbullet_gap_witness(alg, n, limits=DEFAULT_LIMITS):
    """A relation quantifier-free definable over solution sets but not
    over graphs, at arity n; None if the fragments coincide."""
    sol = qfpp_closure(alg, n, "solution_sets", limits)
    gr = qfpp_closure(alg, n, "graphs", limits)
    gap = sol - gr
    if not gap:
        return None
    best = max(gap, key=lambda m: (bin(m).count("1"), -m))
    return mask_to_relation(best, alg.size, n)


def is_cbullet_polhom_up_to(alg, max_power=2, max_arity=2, limits=DEFAULT_LIMITS, fastpath=True):
    """Extension property of the expanded structure carrying the graph
    relations of all term operations.

    Fails iff the base extension property fails or some relation is
    quantifier-free definable from solution sets but not from graphs.
    """
    report = classify(alg) if fastpath else None
    fast = report.properties["cbullet_pol_homogeneous"] if report else None
    top = max_arity + (ARITY_ESCALATION if fast is False else 0)
    realized = 0
    for n in range(1, top + 1):
        try:
            rel = cbullet_gap_witness(alg, n, limits)
        except ResourceBoundExceeded:
            if realized == 0:
                raise
            break
        realized = n
        if rel is not None:
            witness = Witness(
                "qfpp-gap-relation", {"arity": n, "relation": tuple(sorted(rel))}
            )
            return Verdict(
                EXACT_FALSE, {"max_arity": realized}, witness, "brute-force"
            )
        if fast is not False and n >= max_arity:
            break
    base = is_pol_hom_up_to(alg, max_power, limits, fastpath)
    bounds = {"max_power": max_power, "max_arity": realized}
    if base.value == EXACT_FALSE:
        return Verdict(EXACT_FALSE, bounds, base.witness, base.certificate)
    brute = Verdict(TRUE_UP_TO_BOUND, bounds, None, "brute-force")
    return _merge_with_fastpath(brute, fast, bounds, "brute-force")


def is_injective_hsp(alg):
    """Injectivity in the generated variety: classification theorems
    only, no search is known to bound this."""
    report = classify(alg)
    fast = report.properties["injective_hsp"]
    if fast is True:
        return Verdict(EXACT_TRUE, {}, None, "fastpath")
    if fast is False:
        return Verdict(EXACT_FALSE, {}, None, "fastpath")
    return Verdict(UNKNOWN, {}, None, "fastpath")
