"""Recognizers and exact classification shortcuts for special signatures.

For recognized classes the decision problems have known exact answers:

* meet-semilattices: the closure/extension properties hold iff the
  induced order is a distributive lattice; the graph-atom variant only
  in the one-element case
* lattices: iff the lattice is Boolean (distributive and complemented)
* abelian groups: iff every Sylow subgroup is homocyclic, and then all
  considered properties coincide
* monounary algebras: iff there are no sources or all sources have the
  same height; the graph-atom variant iff the map is bijective or
  constant; injectivity in the generated variety additionally needs a
  fixed point

classify() never calls the bounded search deciders, so its verdicts can
be used as an independent cross-check.
"""

from dataclasses import dataclass

from .errors import InputError
from .monounary import profile

PROPERTIES = (
    "hom_homogeneous",
    "pol_homogeneous",
    "sdc",
    "injective_spfin",
    "cbullet_pol_homogeneous",
    "injective_hsp",
)


@dataclass(frozen=True)
class ClassificationReport:
    kind: str  # semilattice | lattice | abelian-group | monounary | unrecognized
    properties: dict  # property name -> True | False | None (no theorem)
    reason: str


def _is_semilattice_op(op, n):
    e = op.apply
    for a in range(n):
        if e((a, a)) != a:
            return False
        for b in range(n):
            if e((a, b)) != e((b, a)):
                return False
            for c in range(n):
                if e((e((a, b)), c)) != e((a, e((b, c)))):
                    return False
    return True


def _absorption(meet, join, n):
    for a in range(n):
        for b in range(n):
            if meet.apply((a, join.apply((a, b)))) != a:
                return False
            if join.apply((a, meet.apply((a, b)))) != a:
                return False
    return True


def _group_check(alg):
    """Return (plus, neg, zero) tables if the algebra is an abelian group
    in a compatible signature, else None."""
    n = alg.size
    plus = [op for op in alg.ops if op.arity == 2]
    if len(plus) != 1:
        return None
    plus = plus[0]
    extra = [op for op in alg.ops if op is not plus]
    if any(op.arity > 2 for op in extra):
        return None
    p = plus.apply
    for a in range(n):
        for b in range(n):
            if p((a, b)) != p((b, a)):
                return None
            for c in range(n):
                if p((p((a, b)), c)) != p((a, p((b, c)))):
                    return None
    zero = None
    for e in range(n):
        if all(p((e, a)) == a for a in range(n)):
            zero = e
            break
    if zero is None:
        return None
    neg = [None] * n
    for a in range(n):
        for b in range(n):
            if p((a, b)) == zero:
                neg[a] = b
                break
        if neg[a] is None:
            return None
    for op in extra:
        if op.arity == 0 and op.values[0] != zero:
            return None
        if op.arity == 1 and tuple(op.values) != tuple(neg):
            return None
        if op.arity == 2 and op is not plus:
            return None
    return plus, tuple(neg), zero


def recognize(alg):
    """Tag the algebra's signature class, checked against the axioms.

    Tried in order: semilattice, lattice, abelian group, monounary.
    """
    n = alg.size
    if len(alg.ops) == 1 and alg.ops[0].arity == 2 and _is_semilattice_op(alg.ops[0], n):
        return "semilattice"
    if (
        len(alg.ops) == 2
        and all(op.arity == 2 for op in alg.ops)
        and _is_semilattice_op(alg.ops[0], n)
        and _is_semilattice_op(alg.ops[1], n)
        and _absorption(alg.ops[0], alg.ops[1], n)
    ):
        return "lattice"
    if _group_check(alg) is not None:
        return "abelian-group"
    if len(alg.ops) == 1 and alg.ops[0].arity == 1:
        return "monounary"
    return "unrecognized"


# -- order helpers -----------------------------------------------------

def meet_order(meet, n):
    """a <= b iff meet(a,b) = a."""
    return {(a, b) for a in range(n) for b in range(n) if meet.apply((a, b)) == a}


def _joins_exist(leq, n):
    """Return the join table of the induced poset or None."""
    join = {}
    for a in range(n):
        for b in range(n):
            ubs = [c for c in range(n) if (a, c) in leq and (b, c) in leq]
            least = [c for c in ubs if all((c, d) in leq for d in ubs)]
            if len(least) != 1:
                return None
            join[a, b] = least[0]
    return join


def _distributive(meet_f, join_f, n):
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet_f(a, join_f(b, c)) != join_f(meet_f(a, b), meet_f(a, c)):
                    return False
    return True


def classify_semilattice(alg):
    if recognize(alg) != "semilattice":
        raise InputError(f"algebra {alg.name!r} is not a semilattice")
    n = alg.size
    meet = alg.ops[0]
    leq = meet_order(meet, n)
    join = _joins_exist(leq, n)
    if join is None:
        good, why = False, "induced order is not a lattice (some join missing)"
    elif not _distributive(lambda a, b: meet.apply((a, b)), lambda a, b: join[a, b], n):
        good, why = False, "induced lattice is not distributive"
    else:
        good, why = True, "meet-reduct of a finite distributive lattice"
    props = {p: None for p in PROPERTIES}
    props.update(
        hom_homogeneous=None,
        pol_homogeneous=good,
        sdc=good,
        injective_spfin=good,
        cbullet_pol_homogeneous=n == 1,
        injective_hsp=None,
    )
    return ClassificationReport("semilattice", props, why)


def classify_lattice(alg):
    if recognize(alg) != "lattice":
        raise InputError(f"algebra {alg.name!r} is not a lattice")
    n = alg.size
    meet, join = alg.ops
    leq = meet_order(meet, n)
    bot = next(a for a in range(n) if all((a, b) in leq for b in range(n)))
    top = next(a for a in range(n) if all((b, a) in leq for b in range(n)))
    distributive = _distributive(
        lambda a, b: meet.apply((a, b)), lambda a, b: join.apply((a, b)), n
    )
    complemented = all(
        any(
            meet.apply((a, b)) == bot and join.apply((a, b)) == top
            for b in range(n)
        )
        for a in range(n)
    )
    good = distributive and complemented
    why = (
        "Boolean lattice"
        if good
        else ("not distributive" if not distributive else "not complemented")
    )
    props = {p: None for p in PROPERTIES}
    props.update(
        pol_homogeneous=good,
        sdc=good,
        injective_spfin=good,
        cbullet_pol_homogeneous=n == 1,
    )
    return ClassificationReport("lattice", props, why)


def element_orders(plus, zero, n):
    orders = [1] * n
    for a in range(n):
        x, t = a, 1
        while x != zero:
            x = plus.apply((x, a))
            t += 1
        orders[a] = t
    return orders


def sylow_homocyclic(alg):
    """Check the order-counting criterion prime by prime.

    The Sylow p-subgroup is homocyclic iff for every i up to the p-part
    exponent, the number of elements whose order divides p^i equals
    (p^m)^i where p^m counts the elements of order dividing p.
    """
    got = _group_check(alg)
    if got is None:
        raise InputError(f"algebra {alg.name!r} is not an abelian group")
    plus, _neg, zero = got
    n = alg.size
    orders = element_orders(plus, zero, n)
    primes = set()
    for o in orders:
        d, q = o, 2
        while d > 1:
            if d % q == 0:
                primes.add(q)
                while d % q == 0:
                    d //= q
            q += 1
    for p in sorted(primes):
        e = 0
        for o in orders:
            v = 0
            while o % p == 0:
                o //= p
                v += 1
            e = max(e, v)
        base = sum(1 for o in orders if p % o == 0)  # order divides p
        for i in range(e + 1):
            cnt = sum(1 for o in orders if (p**i) % o == 0)
            if cnt != base**i:
                return False
    return True


def classify_abelian(alg):
    if _group_check(alg) is None:
        raise InputError(f"algebra {alg.name!r} is not an abelian group")
    good = sylow_homocyclic(alg)
    why = (
        "every Sylow subgroup is homocyclic"
        if good
        else "some Sylow subgroup is not homocyclic"
    )
    props = {p: good for p in PROPERTIES}
    return ClassificationReport("abelian-group", props, why)


def classify_monounary(alg):
    if recognize(alg) != "monounary":
        raise InputError(f"algebra {alg.name!r} is not monounary")
    p = profile(alg)
    f = alg.ops[0].values
    bijective = len(set(f)) == alg.size
    constant = len(set(f)) == 1
    good = p.condition_v
    why = (
        "no sources or all sources at the same height"
        if good
        else "sources at different heights"
    )
    props = {q: None for q in PROPERTIES}
    props.update(
        pol_homogeneous=good,
        sdc=good,
        injective_spfin=good,
        cbullet_pol_homogeneous=bijective or constant,
        injective_hsp=good and p.has_fixed_point,
    )
    return ClassificationReport("monounary", props, why)


def classify(alg):
    kind = recognize(alg)
    if kind == "semilattice":
        return classify_semilattice(alg)
    if kind == "lattice":
        return classify_lattice(alg)
    if kind == "abelian-group":
        return classify_abelian(alg)
    if kind == "monounary":
        return classify_monounary(alg)
    props = {p: None for p in PROPERTIES}
    if alg.size == 2:
        # every two-element algebra has the closure coincidence property
        props.update(sdc=True, pol_homogeneous=True, injective_spfin=True)
        return ClassificationReport("unrecognized", props, "two-element algebra")
    return ClassificationReport("unrecognized", props, "no classification theorem applies")
