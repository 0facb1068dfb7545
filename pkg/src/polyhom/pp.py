"""Quantifier-free primitive positive fragments and preservation.

A qf-pp definable relation over a relation family is an intersection of
substitution instances of family members (conjunctions of atoms with
repeated variables allowed, no quantifiers).  Families are derived from
the term clone: "graphs" gives the f-bullet atoms, "solution_sets" the
solution-set atoms.

For solution sets, a substitution instance of a higher-arity member is
itself an n-ary solution set (compose both terms with the variable
substitution), and a substitution instance of any graph equals an
instance of the graph of a term of arity <= n.  So computing instances
of members up to arity n (solution sets) resp. n+1 (graphs) yields the
exact arity-n fragment of the generated weak relational clone.
"""

import functools
import itertools

from .algebra import DEFAULT_LIMITS, all_points, tuple_rank
from .clone import clone_fragment, relation_fragment
from .errors import InputError, ResourceBoundExceeded


def relation_to_mask(rel, size, n):
    mask = 0
    for t in rel:
        mask |= 1 << tuple_rank(t, size)
    return mask


def mask_to_relation(mask, size, n):
    return frozenset(p for i, p in enumerate(all_points(size, n)) if mask >> i & 1)


def substitution_instances(rel, r, size, n):
    """Masks of all instances rel(x_{s(1)},..,x_{s(r)}) with variables
    drawn from x_1..x_n."""
    points = all_points(size, n)
    out = set()
    for sub in itertools.product(range(n), repeat=r):
        mask = 0
        for i, p in enumerate(points):
            if tuple(p[j] for j in sub) in rel:
                mask |= 1 << i
        out.add(mask)
    return out


def _intersection_closure(gens, full_mask, limits):
    """All intersections of subsets of gens (plus the full relation)."""
    closed = {full_mask}
    for g in sorted(gens, reverse=True):
        fresh = {c & g for c in closed}
        closed |= fresh
        if len(closed) > limits.max_nodes:
            raise ResourceBoundExceeded("qf-pp closure family too large")
    return closed


@functools.lru_cache(maxsize=64)
def qfpp_closure(alg, n, mode, limits=DEFAULT_LIMITS, max_atom_arity=None):
    """Masks of all arity-n relations definable by quantifier-free pp
    formulas over the derived family.

    mode "graphs" uses graphs of term operations (atom relations up to
    arity n+1), mode "solution_sets" uses solution sets (atoms up to
    arity n).  Those arity bounds are exact, see module docstring.
    """
    size = alg.size
    if size**n > limits.max_cells:
        raise ResourceBoundExceeded(f"arity-{n} relations need {size ** n} tuples")
    gens = set()
    if mode == "graphs":
        top = n + 1 if max_atom_arity is None else max_atom_arity
        for r in range(2, top + 1):
            for rel in relation_fragment(alg, r, mode, limits):
                gens |= substitution_instances(rel, r, size, n)
    elif mode == "solution_sets":
        # an instance of a solution set of arity <= n is the solution set
        # of the two substituted n-ary terms, so the n-ary members alone
        # generate the whole quantifier-free fragment
        if max_atom_arity is not None and max_atom_arity < n:
            for r in range(1, max_atom_arity + 1):
                for rel in relation_fragment(alg, r, mode, limits):
                    gens |= substitution_instances(rel, r, size, n)
        else:
            for rel in relation_fragment(alg, n, mode, limits):
                gens.add(relation_to_mask(rel, size, n))
    else:
        raise InputError(f"unknown relation mode {mode!r}")
    full = (1 << size**n) - 1
    return frozenset(_intersection_closure(gens, full, limits))


class PPFormula:
    """Primitive positive formula: existentially quantified conjunction
    of atoms rho(x_{i1},..,x_{ir}) over a fixed list of relations.

    Variables 0..n_free-1 are free, n_free..n_free+n_bound-1 bound.
    Atoms are (relation, variable index tuple) pairs.
    """

    def __init__(self, n_free, n_bound, atoms):
        self.n_free = n_free
        self.n_bound = n_bound
        self.atoms = tuple((frozenset(rel), tuple(vs)) for rel, vs in atoms)
        for rel, vs in self.atoms:
            for v in vs:
                if not (0 <= v < n_free + n_bound):
                    raise InputError(f"variable index {v} out of range")


def eval_pp(alg, formula, limits=DEFAULT_LIMITS):
    """The relation defined by a pp formula, as a frozenset of
    n_free-tuples."""
    size = alg.size
    n = formula.n_free
    q = formula.n_bound
    if size ** (n + q) > limits.max_nodes:
        raise ResourceBoundExceeded("pp evaluation space too large")
    out = set()
    for free in all_points(size, n):
        hit = False
        for bound in all_points(size, q):
            asg = free + bound
            if all(tuple(asg[v] for v in vs) in rel for rel, vs in formula.atoms):
                hit = True
                break
        if hit:
            out.add(free)
    return frozenset(out)


def preserves(alg, table, arity, rel):
    """Does the k-ary operation given by a flat value table preserve the
    relation?  Checks every matrix whose columns are tuples of rel."""
    size = alg.size
    relset = frozenset(rel)
    for cols in itertools.product(sorted(relset), repeat=arity):
        image = tuple(table[tuple_rank(row, size)] for row in zip(*cols))
        if image not in relset:
            return False
    return True


def project_out_last(mask, size, n):
    """Mask of the projection dropping the last coordinate (exists x_n)."""
    out = 0
    block = size  # tuples sharing a prefix are consecutive in lex order
    npts = size**n
    for base in range(0, npts, block):
        chunk = (mask >> base) & ((1 << block) - 1)
        if chunk:
            out |= 1 << (base // block)
    return out
