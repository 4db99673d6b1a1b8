"""Intersection numbers: exact search, closed forms, and witness checks.

The exact searches work over the maximal subgroups of a small group, listed
class by class (classes by increasing order, canonical representative first).
Families are enumerated as increasing index tuples whose first member is a
class representative; conjugating a whole family preserves its intersection
because the Frattini subgroup is normal, so this loses nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from . import numtheory
from .config import DEFAULT, Config
from .errors import NotASubgroupError, WitnessInputError
from .lattice import (
    MaximalSet, are_conjugate, frattini_mask, intersect_all, is_maximal, is_nilpotent,
    lattice_of, maximal_subgroups, p_rank, sylow_subgroup,
)
from .perm import Permutation, PermGroup, coset_action

INFINITY = math.inf


@dataclass
class WitnessFamily:
    parent: PermGroup
    members: list[PermGroup]
    each_is_subgroup: bool = False
    each_is_maximal: bool = False
    pairwise_inconjugate: bool | None = None
    intersection_order: int = 0
    intersection_equals_frattini: bool | None = None
    frattini_order: int | None = None
    path: str | None = None
    labels: list[str] | None = None

    @property
    def all_checks_pass(self) -> bool:
        ok = self.each_is_subgroup and self.each_is_maximal and bool(self.intersection_equals_frattini)
        return ok and self.pairwise_inconjugate is not False

    @property
    def upper_bound(self) -> int | None:
        """``len(members)`` bounds the intersection number when every check passes."""
        return len(self.members) if self.all_checks_pass else None

    def checks(self) -> dict:
        return {
            "each_is_subgroup": self.each_is_subgroup,
            "each_is_maximal": self.each_is_maximal,
            "pairwise_inconjugate": self.pairwise_inconjugate,
            "intersection_equals_frattini": self.intersection_equals_frattini,
            "intersection_order": self.intersection_order,
            "frattini_order": self.frattini_order,
        }


@dataclass
class SearchCertificate:
    maximal_count: int
    class_count: int
    frattini_order: int
    exhausted_sizes: list[int] = field(default_factory=list)
    nodes: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "maximal_subgroups": self.maximal_count,
            "maximal_classes": self.class_count,
            "frattini_order": self.frattini_order,
            "exhausted_sizes": list(self.exhausted_sizes),
            "nodes_by_size": {str(k): v for k, v in sorted(self.nodes.items())},
        }


@dataclass
class InvariantResult:
    kind: str  # "iota" or "iota_hat"
    value: int | float
    witness: WitnessFamily | None
    certificate: SearchCertificate | None
    witness_indices: list[int] | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY


class _Search:
    """Shared state for the exact searches over one group's maximal subgroups."""

    def __init__(self, G: PermGroup, config: Config):
        if G.order() == 1:
            raise ValueError("intersection numbers are defined for nontrivial groups only")
        self.G = G
        self.config = config
        lat = lattice_of(G, config)
        self.table = T = lat.table
        self.mset: MaximalSet = maximal_subgroups(G, config)
        self.ints: list[int] = []
        self.cls: list[int] = []
        self.is_rep: list[bool] = []
        self.class_start: list[int] = []
        for ci, c in enumerate(self.mset.classes):
            self.class_start.append(len(self.ints))
            for k, m in enumerate(c.members):
                self.ints.append(T.to_int(m))
                self.cls.append(ci)
                self.is_rep.append(k == 0)
        self.class_start.append(len(self.ints))
        phi = frattini_mask(G, config)
        self.phi_order = int(phi.sum())
        self.full = T.to_int(T.all_mask)
        self.max_index = max((c.index for c in self.mset.classes), default=1)
        self.cert = SearchCertificate(len(self.ints), len(self.mset.classes), self.phi_order)

    def _hopeless(self, order: int, remaining: int) -> bool:
        # each extra maximal subgroup M divides the order by at most [G:M]
        return order > self.phi_order * self.max_index ** remaining

    def witness(self, indices: Sequence[int], inconjugate: bool) -> WitnessFamily:
        T = self.table
        members = [T.to_group(T.from_int(self.ints[i])) for i in indices]
        inter = self.full
        for i in indices:
            inter &= self.ints[i]
        order = inter.bit_count()
        return WitnessFamily(
            parent=self.G, members=members, each_is_subgroup=True, each_is_maximal=True,
            pairwise_inconjugate=(len({self.cls[i] for i in indices}) == len(indices)) if inconjugate else None,
            intersection_order=order,
            intersection_equals_frattini=(order == self.phi_order),
            frattini_order=self.phi_order,
        )

    def run(self, size: int, inconjugate: bool) -> list[int] | None:
        """First family of exactly ``size`` members reaching Φ(G), or None."""
        ints, cls, nmax = self.ints, self.cls, len(self.ints)
        failed: dict[tuple[int, int], int] = {}
        nodes = 0
        path: list[int] = []

        def extend(inter: int, last: int, remaining: int) -> bool:
            nonlocal nodes
            state = (inter, remaining)
            if failed.get(state, nmax) <= last:
                return False
            start = last + 1
            if inconjugate:
                start = self.class_start[cls[last] + 1]
            i = start
            while i < nmax:
                new = inter & ints[i]
                if new != inter:
                    nodes += 1
                    order = new.bit_count()
                    if remaining == 1:
                        if order == self.phi_order:
                            path.append(i)
                            return True
                    elif not self._hopeless(order, remaining - 1):
                        path.append(i)
                        if extend(new, i, remaining - 1):
                            return True
                        path.pop()
                i += 1
            failed[state] = min(failed.get(state, nmax), last)
            return False

        for ci, c in enumerate(self.mset.classes):
            first = self.class_start[ci]
            inter = ints[first]
            nodes += 1
            if size == 1:
                if inter.bit_count() == self.phi_order:
                    self.cert.nodes[size] = nodes
                    return [first]
                continue
            if self._hopeless(inter.bit_count(), size - 1):
                continue
            path[:] = [first]
            if extend(inter, first, size - 1):
                self.cert.nodes[size] = nodes
                return list(path)
        self.cert.nodes[size] = nodes
        self.cert.exhausted_sizes.append(size)
        return None


def iota_exact(G: PermGroup, config: Config = DEFAULT) -> InvariantResult:
    """Least number of maximal subgroups of ``G`` intersecting in Φ(G)."""
    s = _Search(G, config)
    for k in range(1, len(s.ints) + 1):
        found = s.run(k, inconjugate=False)
        if found is not None:
            return InvariantResult("iota", k, s.witness(found, False), s.cert, found)
    raise AssertionError("the full set of maximal subgroups always intersects in Φ(G)")


def iota_hat_exact(G: PermGroup, config: Config = DEFAULT) -> InvariantResult:
    """Least number of pairwise non-conjugate maximal subgroups intersecting in Φ(G).

    Returns ``INFINITY`` once every family with at most one member per class
    (all representative choices) has been ruled out.
    """
    s = _Search(G, config)
    for k in range(1, len(s.mset.classes) + 1):
        found = s.run(k, inconjugate=True)
        if found is not None:
            return InvariantResult("iota_hat", k, s.witness(found, True), s.cert, found)
    return InvariantResult("iota_hat", INFINITY, None, s.cert)


def verify_witness_family(G: PermGroup, generator_lists: Sequence[Sequence[Permutation]],
                          check_inconjugacy: bool = False,
                          config: Config = DEFAULT) -> WitnessFamily:
    """Check a proposed family of maximal subgroups of ``G``.

    Never claims an exact intersection number.  When the group is too large for
    its lattice, a trivial intersection of verified maximal subgroups still
    certifies Φ(G) = 1 and hence ``intersection_equals_frattini``.
    """
    members = []
    for i, gens in enumerate(generator_lists, 1):
        for g in gens:
            if g.degree != G.degree:
                raise WitnessInputError(f"subgroup {i}: generator {g} has degree {g.degree}, expected {G.degree}")
            if not G.contains(g):
                raise WitnessInputError(f"subgroup {i}: generator {g} is not an element of the group")
        members.append(PermGroup(list(gens), G.degree))
    if not members:
        raise WitnessInputError("empty witness family")
    fam = WitnessFamily(parent=G, members=members, each_is_subgroup=True)
    fam.each_is_maximal = all(
        M.order() < G.order() and is_maximal(G, M, config) for M in members)
    fam.intersection_order = len(intersect_all(members, config))
    if G.order() <= config.lattice_bound:
        phi = int(frattini_mask(G, config).sum())
        fam.frattini_order = phi
        fam.intersection_equals_frattini = fam.each_is_maximal and fam.intersection_order == phi
    elif fam.each_is_maximal and fam.intersection_order == 1:
        fam.frattini_order = 1
        fam.intersection_equals_frattini = True
    else:
        fam.intersection_equals_frattini = None
    if check_inconjugacy:
        fam.pairwise_inconjugate = not any(
            are_conjugate(G, members[i], members[j], config)
            for i in range(len(members)) for j in range(i + 1, len(members)))
    return fam


def is_irredundant(family: Sequence[PermGroup], parent: PermGroup | None = None,
                   config: Config = DEFAULT) -> bool:
    """True iff dropping any single member strictly enlarges the intersection."""
    family = list(family)
    if not family:
        return True
    full = len(intersect_all(family, config))
    for j in range(len(family)):
        rest = family[:j] + family[j + 1:]
        if rest:
            size = len(intersect_all(rest, config))
        else:
            size = parent.order() if parent is not None else math.inf
        if size <= full:
            return False
    return True


# closed forms


def iota_nilpotent_formula(G: PermGroup, config: Config = DEFAULT) -> int:
    """Sum of the ranks of the Sylow subgroups of a nilpotent group."""
    if G.order() == 1:
        raise ValueError("trivial group")
    if not is_nilpotent(G, config):
        raise ValueError("group is not nilpotent")
    return sum(p_rank(sylow_subgroup(G, p, config), config)
               for p in numtheory.prime_divisors(G.order()))


def _k_plus_one(n: int) -> int:
    if numtheory.is_prime_power(n) and n % 2 == 0:
        return 2
    return len(numtheory.factorize(n)) + 1


def iota_dihedral_formula(n: int) -> int:
    """ι of the dihedral group of order 2n (n >= 3)."""
    if n < 3:
        raise ValueError(f"dihedral formula needs n >= 3, got {n}")
    return _k_plus_one(n)


def iota_dicyclic_formula(n: int) -> int:
    """ι of the dicyclic group of order 4n (n >= 2)."""
    if n < 2:
        raise ValueError(f"dicyclic formula needs n >= 2, got {n}")
    return _k_plus_one(n)


def iota_hat_dihedral_formula(n: int) -> int:
    if n < 3:
        raise ValueError(f"dihedral formula needs n >= 3, got {n}")
    return len(numtheory.factorize(n)) + 1


def frobenius_invariants(p: int) -> tuple[int, int | float]:
    """(ι, ι̂) of the Frobenius group of order p(p-1), p >= 5 prime."""
    if p < 5 or not numtheory.is_prime(p):
        raise ValueError(f"need a prime p >= 5, got {p}")
    q = p - 1
    if numtheory.is_squarefree(q):
        return 2, len(numtheory.factorize(q)) + 1
    return 2, INFINITY


def symmetric_upper_bound(n: int) -> int:
    if n < 4:
        raise ValueError(f"the symmetric-group bound needs n >= 4, got {n}")
    return (n + 8) // 4


# product and quotient checks


@dataclass
class ProductBound:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def product_bound_check(G: PermGroup, H: PermGroup, config: Config = DEFAULT) -> ProductBound:
    from .catalog import direct_product
    lhs = iota_exact(direct_product(G, H), config).value
    rhs = iota_exact(G, config).value + iota_exact(H, config).value
    return ProductBound(lhs, rhs)


class PreconditionError(ValueError):
    pass


@dataclass
class QuotientCheck:
    iota_G: int
    iota_quotient: int

    @property
    def holds(self) -> bool:
        return self.iota_G == self.iota_quotient


def quotient_invariance_check(G: PermGroup, N: PermGroup, config: Config = DEFAULT) -> QuotientCheck:
    """Compare ι(G) with ι(G/N) for a normal ``N`` inside Φ(G)."""
    if not N.is_subgroup_of(G):
        raise NotASubgroupError("N is not a subgroup of G")
    if not G.normalizes(N):
        raise PreconditionError("N is not normal in G")
    T = lattice_of(G, config).table
    phi = frattini_mask(G, config)
    if not phi[T.mask_of(N)].all():
        raise PreconditionError("N is not contained in the Frattini subgroup")
    Q = coset_action(G, N, config)
    iota_q = 1 if Q.order() == 1 else iota_exact(Q, config).value
    return QuotientCheck(iota_exact(G, config).value, iota_q)
