"""Permutations and permutation groups.

Points are 1-based in every public API (``perm(3)``, cycle notation, images);
internally a permutation is a 0-based image tuple.

Composition convention: ``p * q`` (equivalently ``compose(p, q)``) applies ``p``
first and then ``q``, so ``(p * q)(x) == q(p(x))``.  Conjugation ``h ** g`` is
``g**-1 * h * g``: it relabels the cycles of ``h`` by ``g``.

Every :class:`PermGroup` carries a base and strong generating set built eagerly
by deterministic Schreier-Sims, which gives exact order and membership.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property
from math import lcm, prod
from typing import Iterable, Sequence

from .config import DEFAULT, Config
from .errors import BoundExceededError, NotASubgroupError

Raw = tuple  # 0-based image tuple


def _mul(p: Raw, q: Raw) -> Raw:
    return tuple(q[x] for x in p)


def _inv(p: Raw) -> Raw:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _is_id(p: Raw) -> bool:
    return all(i == x for i, x in enumerate(p))


class Permutation:
    """A bijection of ``{1..degree}``.

    Built from 1-based images: ``Permutation([2, 3, 1])`` is the 3-cycle (1,2,3).
    """

    __slots__ = ("_img", "__weakref__")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        if not img:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"images {list(images)} are not a bijection of 1..{len(img)}")
        self._img = img

    @classmethod
    def _raw(cls, img: Raw) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls._raw(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= len(self._img):
            raise ValueError(f"point {point} outside 1..{len(self._img)}")
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, e):
        if isinstance(e, Permutation):
            return compose(compose(e.inverse(), self), e)
        if e < 0:
            return self.inverse() ** (-e)
        out = tuple(range(len(self._img)))
        base = self._img
        while e:
            if e & 1:
                out = _mul(out, base)
            base = _mul(base, base)
            e >>= 1
        return Permutation._raw(out)

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self._img))

    def is_identity(self) -> bool:
        return _is_id(self._img)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, ordered by that point."""
        seen = set()
        out = []
        for i in range(len(self._img)):
            if i in seen or self._img[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self._img[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self._img[j]
            out.append(tuple(x + 1 for x in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation"):
        return self._img < other._img

    def __hash__(self):
        return hash(self._img)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation<{self}; degree {self.degree}>"


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    """Product of disjoint cycles given in 1-based points; unmentioned points are fixed."""
    if degree < 1:
        raise ValueError("degree must be positive")
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= degree:
                raise ValueError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise ValueError(f"point {x} repeated in cycles")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._raw(tuple(img))


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
    text = text.replace(" ", "")
    if text in ("", "()"):
        return Permutation.identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    cycles = [[int(x) for x in part.split(",")] for part in text[1:-1].split(")(")]
    return perm_from_cycles(cycles, degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation._raw(_mul(p._img, q._img))


# Schreier-Sims


class _Chain:
    """Stabilizer chain: base points, per-level strong generators and transversals.

    ``trans[l][o]`` is an element of the level-l stabilizer mapping ``base[l]`` to ``o``.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[Raw]] = []
        self.trans: list[dict[int, Raw]] = []
        self.inv_trans: list[dict[int, Raw]] = []

    def _orbit(self, level: int) -> None:
        b = self.base[level]
        gens = self.gens[level]
        tr = {b: self.ident}
        queue = [b]
        for x in queue:
            ux = tr[x]
            for s in gens:
                y = s[x]
                if y not in tr:
                    tr[y] = _mul(ux, s)
                    queue.append(y)
        self.trans[level] = tr
        self.inv_trans[level] = {o: _inv(u) for o, u in tr.items()}

    def strip(self, g: Raw, start: int = 0) -> tuple[Raw, int]:
        for level in range(start, len(self.base)):
            x = g[self.base[level]]
            it = self.inv_trans[level].get(x)
            if it is None:
                return g, level
            g = _mul(g, it)
        return g, len(self.base)

    def _new_level(self, h: Raw) -> None:
        moved = next(i for i, x in enumerate(h) if i != x)
        self.base.append(moved)
        self.gens.append([])
        self.trans.append({})
        self.inv_trans.append({})

    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    def contains(self, g: Raw) -> bool:
        h, level = self.strip(g)
        return level == len(self.base) and _is_id(h)


def _schreier_sims(gens: Sequence[Raw], degree: int) -> _Chain:
    chain = _Chain(degree)
    gens = [g for g in dict.fromkeys(gens) if not _is_id(g)]
    for g in gens:
        if all(g[b] == b for b in chain.base):
            chain._new_level(g)
    k = len(chain.base)
    for level in range(k):
        fixed = chain.base[:level]
        chain.gens[level] = [g for g in gens if all(g[b] == b for b in fixed)]
        chain._orbit(level)
    level = k - 1
    while level >= 0:
        restart = False
        tr = chain.trans[level]
        for beta, u_beta in list(tr.items()):
            for s in chain.gens[level]:
                g1 = _mul(u_beta, s)
                u1 = tr[s[beta]]
                if g1 == u1:
                    continue
                h, j = chain.strip(_mul(g1, chain.inv_trans[level][s[beta]]), level + 1)
                if j == len(chain.base):
                    if _is_id(h):
                        continue
                    chain._new_level(h)
                for lv in range(level + 1, j + 1):
                    chain.gens[lv].append(h)
                    chain._orbit(lv)
                level = j
                restart = True
                break
            if restart:
                break
        if not restart:
            level -= 1
    return chain


class PermGroup:
    """Finitely generated permutation group with an eagerly built BSGS.

    ``generators`` are kept verbatim (duplicates and identities included).
    """

    def __init__(self, generators: Sequence[Permutation] = (), degree: int | None = None):
        generators = tuple(generators)
        degrees = {g.degree for g in generators}
        if len(degrees) > 1:
            raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
        if degree is None:
            if not degrees:
                raise ValueError("an empty generator list needs an explicit degree")
            degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise ValueError(f"generators have degree {degrees.pop()}, expected {degree}")
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        self.generators = generators
        self._chain = _schreier_sims([g._img for g in generators], degree)
        self._order = self._chain.order()

    def __repr__(self):
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"PermGroup<{gens}; degree {self.degree}, order {self._order}>"

    @property
    def base(self) -> list[int]:
        return [b + 1 for b in self._chain.base]

    def order(self) -> int:
        return self._order

    def __len__(self):
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        return self._chain.contains(p._img)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def same_as(self, other: "PermGroup") -> bool:
        """Equality as sets of permutations."""
        return (self._order == other._order) and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return self._order == 1

    def iter_raw(self):
        """Yield every element as a raw 0-based tuple (unordered)."""
        levels = [list(t.values()) for t in self._chain.trans]
        if not levels:
            yield self._chain.ident
            return
        # g = u_{k-1} * ... * u_0
        for combo in itertools.product(*reversed(levels)):
            g = combo[0]
            for u in combo[1:]:
                g = _mul(g, u)
            yield g

    def elements(self, config: Config = DEFAULT) -> list[Permutation]:
        """All elements, sorted by image tuple."""
        if self._order > config.enumeration_bound:
            raise BoundExceededError("group order", self._order, config.enumeration_bound)
        return [Permutation._raw(g) for g in sorted(self.iter_raw())]

    @cached_property
    def strong_generators(self) -> list[Permutation]:
        seen = dict.fromkeys(g for lvl in self._chain.gens for g in lvl)
        return [Permutation._raw(g) for g in seen]

    def random_element(self, rng: random.Random) -> Permutation:
        g = self._chain.ident
        for tr in reversed(self._chain.trans):
            keys = sorted(tr)
            g = _mul(g, tr[rng.choice(keys)])
        return Permutation._raw(g)

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits on ``{1..degree}``, each sorted, ordered by least point."""
        seen: set[int] = set()
        out = []
        gens = [g._img for g in self.generators]
        for start in range(self.degree):
            if start in seen:
                continue
            orb = {start}
            queue = [start]
            for x in queue:
                for s in gens:
                    y = s[x]
                    if y not in orb:
                        orb.add(y)
                        queue.append(y)
            seen |= orb
            out.append(tuple(sorted(x + 1 for x in orb)))
        return out

    def is_abelian(self) -> bool:
        gens = [g._img for g in self.generators]
        return all(_mul(a, b) == _mul(b, a) for a, b in itertools.combinations(gens, 2))

    def exponent(self, config: Config = DEFAULT) -> int:
        return lcm(*(g.order() for g in self.elements(config)))

    def normalizes(self, H: "PermGroup") -> bool:
        """True iff every generator of ``self`` normalizes ``H``."""
        return all(H.contains(h ** g) for g in self.generators for h in H.generators)

    # coset machinery, used by maximality tests and coset actions

    def canonical_coset_rep(self, g: Raw) -> Raw:
        """Canonical element of the coset ``{h * g : h in self}`` (h applied first).

        Greedily minimizes the images of this group's base points.
        """
        cur = g
        for level, b in enumerate(self._chain.base):
            tr = self._chain.trans[level]
            o = min(tr, key=lambda o: cur[o])
            cur = _mul(tr[o], cur)
        return cur


def group_from_generators(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup, config: Config = DEFAULT) -> list[Permutation]:
    return G.elements(config)


def closure(ambient_degree: int, seed: Sequence[Permutation]) -> PermGroup:
    """The group generated by ``seed`` inside ``Sym(ambient_degree)``."""
    return PermGroup(seed, ambient_degree)


def conjugate_subgroup(H: PermGroup, g: Permutation) -> PermGroup:
    """``H ** g``: the relabeling of ``H`` by ``g`` (generators ``g^-1 * h * g``)."""
    if g.degree != H.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {H.degree}")
    return PermGroup([h ** g for h in H.generators], H.degree)


def symmetric_group_order(n: int) -> int:
    return prod(range(1, n + 1))


def enumerate_cosets(G: PermGroup, H: PermGroup, config: Config = DEFAULT):
    """Transversal for the cosets ``{h * g}`` of ``H`` in ``G``.

    Returns ``(reps, index_of)`` where ``reps[i]`` is a raw representative of the
    i-th coset (``reps[0]`` is the identity) and ``index_of`` maps canonical
    coset representatives to their position.  ``G`` acts on coset ``H*g`` by
    right multiplication.  Raises if the index exceeds ``config.index_bound``.
    """
    idx = G.order() // H.order()
    if idx > config.index_bound:
        raise BoundExceededError("subgroup index", idx, config.index_bound)
    ident = tuple(range(G.degree))
    reps = [ident]
    index_of = {H.canonical_coset_rep(ident): 0}
    gens = [g._img for g in G.generators]
    for r in reps:
        for s in gens:
            x = _mul(r, s)
            key = H.canonical_coset_rep(x)
            if key not in index_of:
                index_of[key] = len(reps)
                reps.append(x)
    if len(reps) != idx:
        raise AssertionError(f"coset enumeration found {len(reps)} cosets, expected {idx}")
    return reps, index_of


def coset_action(G: PermGroup, N: PermGroup, config: Config = DEFAULT) -> PermGroup:
    """Image of ``G`` acting on the cosets of the normal subgroup ``N`` (so ``G/N``)."""
    if not N.is_subgroup_of(G):
        raise NotASubgroupError("N is not a subgroup of G")
    if not G.normalizes(N):
        raise ValueError("N is not normal in G")
    reps, index_of = enumerate_cosets(G, N, config)
    degree = len(reps)
    images = []
    for s in G.generators:
        img = [index_of[N.canonical_coset_rep(_mul(r, s._img))] + 1 for r in reps]
        images.append(Permutation(img))
    return PermGroup(images, degree)
