"""Subgroup lattices, maximal subgroups, Frattini subgroups, Sylow subgroups.

Small groups (order within ``Config.lattice_bound``) are handled through their
Cayley table: the lattice is built bottom-up by joining conjugacy-class
representatives with cyclic subgroups, one cyclic subgroup per orbit of the
representative's normalizer.  Groups of any size can still be asked whether a
given subgroup is maximal, via coset enumeration and closure tests.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import numtheory
from .config import DEFAULT, Config
from .errors import BoundExceededError, NotASubgroupError
from .perm import PermGroup, Permutation, _mul, enumerate_cosets
from .table import GroupTable, table_of

log = logging.getLogger(__name__)


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups of ``parent``.

    ``members`` holds element masks (over the parent's table) with the canonical
    representative first; ``representative`` is the same subgroup as a
    :class:`PermGroup`.
    """

    table: GroupTable = field(repr=False)
    members: list[np.ndarray] = field(repr=False)
    order: int
    normalizer_order: int
    is_maximal: bool = False

    @property
    def class_size(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.table.order // self.order

    @cached_property
    def representative(self) -> PermGroup:
        return self.table.to_group(self.members[0])

    @property
    def rep_mask(self) -> np.ndarray:
        return self.members[0]

    def member_list(self) -> list[PermGroup]:
        return [self.table.to_group(m) for m in self.members]

    def __repr__(self):
        return (f"SubgroupClass(order={self.order}, class_size={self.class_size}, "
                f"maximal={self.is_maximal})")


@dataclass
class MaximalSet:
    parent: PermGroup
    classes: list[SubgroupClass]

    @property
    def total_count(self) -> int:
        return sum(c.class_size for c in self.classes)

    def masks(self) -> list[np.ndarray]:
        """All maximal subgroups in the fixed search order (class by class, rep first)."""
        return [m for c in self.classes for m in c.members]


def _sorted_key(mask: np.ndarray) -> tuple:
    return tuple(np.flatnonzero(mask).tolist())


class SubgroupLattice:
    """All subgroups of a small group, grouped into conjugacy classes."""

    def __init__(self, group: PermGroup, config: Config = DEFAULT):
        self.group = group
        self.table = T = table_of(group, config)
        self._known: dict[bytes, int] = {}
        self._raw_classes: list[list[np.ndarray]] = []
        self._normalizer_order: list[int] = []
        self._maximal: list[bool] = []
        self._power_cache: dict[int, np.ndarray] = {}
        self._cyclic_setup()
        trivial = np.zeros(T.order, dtype=bool)
        trivial[T.identity] = True
        self._add_class(trivial)
        i = 0
        while i < len(self._raw_classes):
            self._process(i)
            i += 1
        self.classes = self._finalize()

    # construction

    def _cyclic_setup(self) -> None:
        T = self.table
        n = T.order
        ar = np.arange(n)
        canon = ar.copy()
        pw = ar.copy()
        ords = T.elem_order
        for k in range(2, int(ords.max()) + 1):
            pw = T.mult[pw, ar]
            gen = (k < ords) & (np.gcd(k, ords) == 1)
            canon = np.where(gen & (pw < canon), pw, canon)
        self.cyc_id = canon
        self.cyclic_gens = np.unique(canon)

    def _powers(self, y: int) -> np.ndarray:
        pw = self._power_cache.get(y)
        if pw is None:
            T = self.table
            out = [T.identity]
            x = y
            while x != T.identity:
                out.append(x)
                x = int(T.mult[x, y])
            pw = self._power_cache[y] = np.array(out)
        return pw

    def _add_class(self, mask: np.ndarray) -> int:
        T = self.table
        cid = len(self._raw_classes)
        members = [mask]
        self._known[T.key(mask)] = cid
        gens = np.asarray(T.gen_idx)
        for m in members:
            idx = np.flatnonzero(m)
            for s in gens:
                c = np.zeros(T.order, dtype=bool)
                c[T.conj(idx, s)] = True
                k = T.key(c)
                if k not in self._known:
                    self._known[k] = cid
                    members.append(c)
        self._raw_classes.append(members)
        self._normalizer_order.append(T.order // len(members))
        self._maximal.append(False)
        return cid

    def _process(self, cid: int) -> None:
        T = self.table
        H = self._raw_classes[cid][0]
        order = int(H.sum())
        if order == T.order:
            return
        gens = T.generators_of(H)
        norm = np.flatnonzero(T.normalizer(H, gens))
        in_norm = np.zeros(T.order, dtype=bool)
        in_norm[norm] = True
        hidx = np.flatnonzero(H)
        seen = np.zeros(T.order, dtype=bool)
        maximal = True
        for y in self.cyclic_gens:
            if H[y] or seen[y]:
                continue
            seen[self.cyc_id[T.conj(y, norm)]] = True
            if in_norm[y]:
                # y normalizes H, so the join is the product H<y>
                K = np.zeros(T.order, dtype=bool)
                K[T.mult[hidx[:, None], self._powers(int(y))[None, :]]] = True
            else:
                K = T.generate(gens + [int(y)], base=H)
            if not K.all():
                maximal = False
            if T.key(K) not in self._known:
                self._add_class(K)
        self._maximal[cid] = maximal

    def _finalize(self) -> list[SubgroupClass]:
        out = []
        for members, norm_order, maximal in zip(
                self._raw_classes, self._normalizer_order, self._maximal):
            keyed = sorted(members, key=_sorted_key)
            out.append(SubgroupClass(self.table, keyed, int(keyed[0].sum()), norm_order, maximal))
        out.sort(key=lambda c: (c.order, _sorted_key(c.rep_mask)))
        return out

    # queries

    @property
    def total_count(self) -> int:
        return sum(c.class_size for c in self.classes)

    def class_of(self, mask: np.ndarray) -> SubgroupClass:
        key = self.table.key(mask)
        for c in self.classes:
            if c.order == int(mask.sum()) and any(self.table.key(m) == key for m in c.members):
                return c
        raise KeyError("not a subgroup of this group")

    def maximal_classes(self) -> list[SubgroupClass]:
        return [c for c in self.classes if c.is_maximal]

    def all_subgroup_masks(self) -> list[np.ndarray]:
        return [m for c in self.classes for m in c.members]


_LATTICE_ATTR = "_frattini_lattice"


def lattice_of(G: PermGroup, config: Config = DEFAULT) -> SubgroupLattice:
    if G.order() > config.lattice_bound:
        raise BoundExceededError(
            "group order", G.order(), config.lattice_bound,
            "use `verify` with an explicit witness family for groups this large",
        )
    lat = getattr(G, _LATTICE_ATTR, None)
    if lat is None:
        lat = SubgroupLattice(G, config)
        setattr(G, _LATTICE_ATTR, lat)
    return lat


def all_subgroups(G: PermGroup, config: Config = DEFAULT) -> list[SubgroupClass]:
    return lattice_of(G, config).classes


def maximal_subgroups(G: PermGroup, config: Config = DEFAULT) -> MaximalSet:
    return MaximalSet(G, lattice_of(G, config).maximal_classes())


def frattini_mask(G: PermGroup, config: Config = DEFAULT) -> np.ndarray:
    lat = lattice_of(G, config)
    T = lat.table
    phi = T.all_mask.copy()
    for c in lat.maximal_classes():
        for m in c.members:
            phi &= m
    return phi


def frattini(G: PermGroup, config: Config = DEFAULT) -> PermGroup:
    """Intersection of all maximal subgroups (the whole group if it is trivial)."""
    return lattice_of(G, config).table.to_group(frattini_mask(G, config))


def _check_subgroup(G: PermGroup, H: PermGroup) -> None:
    if H.degree != G.degree:
        raise ValueError(f"degree mismatch: {H.degree} vs {G.degree}")
    for g in H.generators:
        if not G.contains(g):
            raise NotASubgroupError(f"generator {g} is not in the parent group")


def is_maximal(G: PermGroup, H: PermGroup, config: Config = DEFAULT) -> bool:
    """True iff ``H`` is a maximal subgroup of ``G``.

    Enumerates the cosets ``H*g``, takes one representative per ``H``-orbit on
    them (a double coset ``HgH``), and checks that each one generates ``G``
    together with ``H``.  Needs ``[G:H] <= config.index_bound``.
    """
    _check_subgroup(G, H)
    if H.order() == G.order():
        return False
    reps, index_of = enumerate_cosets(G, H, config)
    seen = bytearray(len(reps))
    seen[0] = 1
    hgens = [h._img for h in H.generators]
    target = G.order()
    for start in range(1, len(reps)):
        if seen[start]:
            continue
        seen[start] = 1
        queue = [start]
        for c in queue:
            for h in hgens:
                # H-orbits on the cosets H*g are the double cosets HgH
                d = index_of[H.canonical_coset_rep(_mul(reps[c], h))]
                if not seen[d]:
                    seen[d] = 1
                    queue.append(d)
        g = Permutation._raw(reps[start])
        if PermGroup(list(H.generators) + [g], G.degree).order() != target:
            return False
    return True


def subgroup_intersection(H: PermGroup, K: PermGroup, config: Config = DEFAULT) -> PermGroup:
    """``H ∩ K`` by enumerating the smaller group and filtering by membership."""
    if H.degree != K.degree:
        raise ValueError(f"degree mismatch: {H.degree} vs {K.degree}")
    small, big = (H, K) if H.order() <= K.order() else (K, H)
    if small.order() > config.enumeration_bound:
        raise BoundExceededError("group order", small.order(), config.enumeration_bound)
    return group_from_elements(
        (g for g in small.iter_raw() if big._chain.contains(g)), small.degree)


def intersect_all(groups, config: Config = DEFAULT) -> list[tuple]:
    """Raw elements common to every group in ``groups`` (sorted)."""
    groups = sorted(groups, key=lambda g: g.order())
    if groups[0].order() > config.enumeration_bound:
        raise BoundExceededError("group order", groups[0].order(), config.enumeration_bound)
    common = [g for g in groups[0].iter_raw() if all(o._chain.contains(g) for o in groups[1:])]
    return sorted(common)


def group_from_elements(raw_elements, degree: int) -> PermGroup:
    """Smallest-effort generating set for a set of raw elements known to form a group."""
    from .perm import _schreier_sims
    gens: list[tuple] = []
    chain = _schreier_sims([], degree)
    for g in sorted(raw_elements):
        if not chain.contains(g):
            gens.append(g)
            chain = _schreier_sims(gens, degree)
    return PermGroup([Permutation._raw(g) for g in gens], degree)


def are_conjugate(G: PermGroup, H: PermGroup, K: PermGroup, config: Config = DEFAULT) -> bool:
    """True iff some ``g`` in ``G`` has ``H ** g == K``."""
    _check_subgroup(G, H)
    _check_subgroup(G, K)
    if H.order() != K.order():
        return False
    if G.order() <= config.lattice_bound:
        T = table_of(G, config)
        hmask, kmask = T.mask_of(H), T.mask_of(K)
        gens = T.generators_of(hmask)
        if not gens:
            return True
        conj = T.conj(np.asarray(gens)[None, :], np.arange(T.order)[:, None])
        return bool(kmask[conj].all(axis=1).any())
    return any(C.same_as(K) for C in conjugacy_class(G, H, config)
               if _fingerprint(C) == _fingerprint(K))


def _fingerprint(H: PermGroup) -> tuple:
    return (H.order(), tuple(H.orbits()))


def conjugacy_class(G: PermGroup, H: PermGroup, config: Config = DEFAULT) -> list[PermGroup]:
    """All conjugates of ``H`` under ``G``, found by orbit enumeration.

    Subgroups are bucketed by (order, orbits) and compared by mutual containment.
    The class size is at most ``[G:H]``, which must respect ``config.index_bound``.
    """
    idx = G.order() // H.order()
    if idx > config.index_bound:
        raise BoundExceededError("subgroup index", idx, config.index_bound)
    found = [H]
    buckets: dict[tuple, list[PermGroup]] = {_fingerprint(H): [H]}
    for C in found:
        for g in G.generators:
            D = PermGroup([h ** g for h in C.generators], G.degree)
            bucket = buckets.setdefault(_fingerprint(D), [])
            if not any(E.same_as(D) for E in bucket):
                bucket.append(D)
                found.append(D)
    return found


def sylow_subgroup(G: PermGroup, p: int, config: Config = DEFAULT) -> PermGroup:
    return table_of(G, config).to_group(sylow_mask(G, p, config))


def sylow_mask(G: PermGroup, p: int, config: Config = DEFAULT) -> np.ndarray:
    """A Sylow p-subgroup, grown by adjoining p-elements of its normalizer."""
    n = G.order()
    if not numtheory.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n % p:
        raise ValueError(f"{p} does not divide the group order {n}")
    target = p ** dict(numtheory.factorize(n))[p]
    T = table_of(G, config)
    p_elems = _is_p_power(T.elem_order, p)
    P = np.zeros(T.order, dtype=bool)
    P[T.identity] = True
    while P.sum() < target:
        norm = T.normalizer(P)
        cand = np.flatnonzero(norm & p_elems & ~P)
        P = T.generate(T.generators_of(P) + [int(cand[0])], base=P)
    return P


def _is_p_power(orders: np.ndarray, p: int) -> np.ndarray:
    x = orders.copy()
    while True:
        div = (x % p == 0)
        if not div.any():
            return x == 1
        x = np.where(div, x // p, x)


def is_p_group(G: PermGroup, p: int | None = None) -> bool:
    n = G.order()
    if n == 1:
        return False
    f = numtheory.factorize(n)
    return len(f) == 1 and (p is None or f[0][0] == p)


def p_rank(P: PermGroup, config: Config = DEFAULT) -> int:
    """The r with ``[P : Φ(P)] = p^r`` for a nontrivial p-group ``P``."""
    if not is_p_group(P):
        raise ValueError(f"group of order {P.order()} is not a nontrivial p-group")
    p = numtheory.factorize(P.order())[0][0]
    idx = P.order() // int(frattini_mask(P, config).sum())
    r = 0
    while idx > 1:
        idx //= p
        r += 1
    return r


def is_nilpotent(G: PermGroup, config: Config = DEFAULT) -> bool:
    """True iff every Sylow subgroup is normal."""
    T = table_of(G, config)
    for p in numtheory.prime_divisors(G.order()):
        if not T.is_normal(sylow_mask(G, p, config)):
            return False
    return True
