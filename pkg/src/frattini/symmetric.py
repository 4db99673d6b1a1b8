"""Witness families of maximal subgroups of S_n with trivial intersection.

Three routes, tried in order by :func:`symmetric_witnesses`:

``literal``
    the explicit construction from cycles ``alpha_j`` and transpositions
    ``beta_j`` (odd n) or ``beta_j``, ``gamma_j`` (even n >= 8);
``young``
    seeded random conjugates of the natural intransitive ``S_a x S_b``;
``pool``
    seeded random conjugates drawn from a pool of candidate maximal subgroups
    (intransitive, imprimitive, affine, projective), each verified maximal
    once; conjugates of a maximal subgroup are maximal.

:func:`symmetric_table_bound` uses the pool search to certify upper bounds for
ι(S_n) when the subgroup lattice is out of reach.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import numtheory
from .catalog import symmetric
from .config import DEFAULT, Config
from .errors import BoundExceededError, FrattiniError
from .invariants import WitnessFamily, symmetric_upper_bound
from .lattice import is_maximal
from .perm import Permutation, PermGroup, perm_from_cycles

_HASH_LIMIT = 200_000
_rng_weights = np.random.default_rng(0xC0FFEE).integers(1, 2**63, size=64, dtype=np.uint64)


def _hash_rows(rows: np.ndarray) -> np.ndarray:
    w = _rng_weights[: rows.shape[1]]
    return (rows.astype(np.uint64) * w).sum(axis=1, dtype=np.uint64)


def _relabel(rows: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Rows of ``x ** g`` for the rows ``x`` (g applied to both points and images)."""
    out = np.empty_like(rows)
    out[:, g] = g[rows]
    return out


class Seed:
    """A subgroup of S_n used as a template for conjugate families."""

    def __init__(self, name: str, group: PermGroup, blocks: Sequence[Sequence[int]] | None = None):
        self.name = name
        self.group = group
        self.order = group.order()
        self.degree = group.degree
        if blocks is None:
            orbits = group.orbits()
            blocks = orbits if len(orbits) > 1 else None
        self.labels = None
        if blocks is not None:
            lab = np.empty(self.degree, dtype=np.int64)
            for k, b in enumerate(blocks):
                lab[[p - 1 for p in b]] = k
            self.labels = lab
            # first point of each point's block
            self.block_first = np.array([np.flatnonzero(lab == lab[i])[0] for i in range(self.degree)])
        self._rows = None
        self._hashes = None

    def rows(self) -> np.ndarray:
        if self._rows is None:
            self._rows = np.array(sorted(self.group.iter_raw()), dtype=np.int16)
        return self._rows

    def hashes(self) -> np.ndarray | None:
        if self.order > _HASH_LIMIT:
            return None
        if self._hashes is None:
            self._hashes = np.sort(_hash_rows(self.rows()))
        return self._hashes

    def member_filter(self, rows: np.ndarray) -> np.ndarray:
        """Boolean mask of the rows lying in this seed (rows in the seed's own frame)."""
        keep = np.ones(len(rows), dtype=bool)
        hs = self.hashes()
        if hs is not None and len(rows) > 64:
            h = _hash_rows(rows)
            pos = np.minimum(np.searchsorted(hs, h), len(hs) - 1)
            keep &= hs[pos] == h
        elif self.labels is not None:
            lab = self.labels
            img = lab[rows]
            # a block-preserving permutation sends each block into a single block
            keep &= (img == img[:, self.block_first]).all(axis=1)
        chain = self.group._chain
        for i in np.flatnonzero(keep):
            if not chain.contains(tuple(int(x) for x in rows[i])):
                keep[i] = False
        return keep


@dataclass
class _Member:
    seed: Seed
    g: np.ndarray  # 0-based images of the conjugating permutation

    @property
    def ginv(self) -> np.ndarray:
        return np.argsort(self.g)

    def group(self) -> PermGroup:
        g = Permutation._raw(tuple(int(x) for x in self.g))
        return PermGroup([h ** g for h in self.seed.group.generators], self.seed.degree)


def _intersection_rows(members: Sequence[_Member], stop_below: int = 0) -> np.ndarray:
    members = sorted(members, key=lambda m: m.seed.order)
    first = members[0]
    rows = _relabel(first.seed.rows(), first.g)
    for m in members[1:]:
        back = _relabel(rows, m.ginv)
        rows = rows[m.seed.member_filter(back)]
        if len(rows) <= stop_below:
            break
    return rows


def _family_from_members(G: PermGroup, members: Sequence[_Member], path: str) -> WitnessFamily:
    groups = [m.group() for m in members]
    fam = WitnessFamily(parent=G, members=groups, each_is_subgroup=True,
                        each_is_maximal=True)
    fam.intersection_order = len(_intersection_rows(members))
    fam.frattini_order = 1
    fam.intersection_equals_frattini = fam.intersection_order == 1
    fam.path = path
    fam.labels = [m.seed.name for m in members]
    return fam


# candidate maximal subgroups of S_n


def young_subgroup(k: int, n: int) -> PermGroup:
    """``S_k x S_{n-k}`` on the points ``{1..k}`` and ``{k+1..n}``."""
    gens = []
    for lo, hi in ((1, k), (k + 1, n)):
        if hi - lo >= 1:
            gens.append(perm_from_cycles([range(lo, hi + 1)], n))
            gens.append(perm_from_cycles([(lo, lo + 1)], n))
    return PermGroup(gens, n)


def wreath_subgroup(m: int, n: int) -> tuple[PermGroup, list[list[int]]]:
    """``S_m wr S_{n/m}`` preserving the blocks ``{1..m}, {m+1..2m}, ...``."""
    k = n // m
    blocks = [list(range(i * m + 1, (i + 1) * m + 1)) for i in range(k)]
    gens = [perm_from_cycles([blocks[0]], n), perm_from_cycles([blocks[0][:2]], n)]
    gens.append(perm_from_cycles([[blocks[i][t] for i in range(k)] for t in range(m)], n))
    gens.append(perm_from_cycles([(blocks[0][t], blocks[1][t]) for t in range(m)], n))
    return PermGroup(gens, n), blocks


def _affine_maps(p: int, d: int):
    def point(v):
        return sum(x * p**i for i, x in enumerate(v))

    def vec(i):
        return [(i // p**t) % p for t in range(d)]

    n = p**d
    w = numtheory.primitive_root(p)
    mats = [[[w if (r, c) == (0, 0) else int(r == c) for c in range(d)] for r in range(d)]]
    if d > 1:
        mats.append([[int(r == c or (r, c) == (0, 1)) for c in range(d)] for r in range(d)])
        mats.append([[int(c == (r + 1) % d) for c in range(d)] for r in range(d)])
        swap = [[int(r == c) for c in range(d)] for r in range(d)]
        swap[0][0] = swap[1][1] = 0
        swap[0][1] = swap[1][0] = 1
        mats.append(swap)
    gens = []
    for A in mats:
        img = []
        for i in range(n):
            v = vec(i)
            img.append(point([sum(A[r][c] * v[c] for c in range(d)) % p for r in range(d)]) + 1)
        gens.append(Permutation(img))
    gens.append(Permutation([point([(vec(i)[0] + 1) % p] + vec(i)[1:]) + 1 for i in range(n)]))
    return gens


def affine_subgroup(p: int, d: int) -> PermGroup:
    """AGL(d, p) acting on the p**d vectors."""
    return PermGroup(_affine_maps(p, d), p**d)


def projective_subgroup(p: int) -> PermGroup:
    """PGL(2, p) on the projective line: points 1..p are 0..p-1, point p+1 is infinity."""
    inf = p
    w = numtheory.primitive_root(p)

    def perm(f):
        return Permutation([f(x) + 1 for x in range(p + 1)])

    t = perm(lambda x: inf if x == inf else (x + 1) % p)
    m = perm(lambda x: inf if x == inf else (w * x) % p)
    s = perm(lambda x: 0 if x == inf else inf if x == 0 else (-pow(x, p - 2, p)) % p)
    return PermGroup([t, m, s], p + 1)


def _prime_power(n: int) -> tuple[int, int] | None:
    f = numtheory.factorize(n)
    return f[0] if len(f) == 1 else None


def candidate_seeds(n: int) -> list[Seed]:
    """Candidate maximal subgroups of S_n (not yet verified)."""
    seeds = []
    for k in range(1, (n + 1) // 2):
        seeds.append(Seed(f"S{n - k}xS{k}", young_subgroup(k, n)))
    for m in range(2, n // 2 + 1):
        if n % m == 0:
            grp, blocks = wreath_subgroup(m, n)
            seeds.append(Seed(f"S{m}wrS{n // m}", grp, blocks))
    pp = _prime_power(n)
    if pp is not None and n >= 5:
        p, d = pp
        seeds.append(Seed(f"AGL({d},{p})", affine_subgroup(p, d)))
    if n >= 6 and numtheory.is_prime(n - 1):
        seeds.append(Seed(f"PGL(2,{n - 1})", projective_subgroup(n - 1)))
    return seeds


@dataclass
class SeedPool:
    n: int
    seeds: list[Seed]
    rejected: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)


def maximal_seed_pool(n: int, config: Config = DEFAULT, names: Sequence[str] | None = None) -> SeedPool:
    """Candidates verified maximal in S_n; those above the index bound are skipped."""
    G = symmetric(n)
    pool = SeedPool(n, [])
    for s in candidate_seeds(n):
        if names is not None and s.name not in names:
            continue
        if G.order() // s.order > config.index_bound:
            pool.skipped.append(s.name)
        elif is_maximal(G, s.group, config):
            pool.seeds.append(s)
        else:
            pool.rejected.append(s.name)
    return pool


def _random_perm(rng: random.Random, n: int) -> np.ndarray:
    g = list(range(n))
    rng.shuffle(g)
    return np.array(g, dtype=np.int64)


def search_family(n: int, size: int, seeds: Sequence[Seed], attempts: int,
                  rng: random.Random) -> tuple[list[_Member] | None, int]:
    """Random search for ``size`` conjugates of pool seeds meeting trivially.

    Only seed combinations whose orders could possibly meet trivially
    (product of orders at most ``n!**(size-1)``) are tried.
    """
    total = math.factorial(n)
    combos = [c for c in combinations_with_replacement(range(len(seeds)), size)
              if math.prod(seeds[i].order for i in c) <= total ** (size - 1)]
    if not combos:
        return None, 0
    ident = np.arange(n)
    for t in range(1, attempts + 1):
        combo = rng.choice(combos)
        members = [_Member(seeds[combo[0]], ident)]
        members += [_Member(seeds[i], _random_perm(rng, n)) for i in combo[1:]]
        if len(_intersection_rows(members, stop_below=1)) == 1:
            return members, t
    return None, attempts


# the explicit construction


def _points(n: int, j: int, step: int) -> list[int] | None:
    d = math.gcd(n, j)
    pts = []
    for m in range(n):
        ell = 0 if d == 1 else (m * d) // n
        pts.append(1 + (step * m + ell) % n)
    return pts if len(set(pts)) == n else None


def _two_cycles(pts: Sequence[int], first: int, n: int) -> Permutation:
    return perm_from_cycles([pts[:first], pts[first:]], n)


def literal_generators(n: int) -> list[list[Permutation]]:
    """Generator lists of the explicit construction; raises if it is undefined."""
    if n < 5 or n == 6:
        raise FrattiniError(f"no explicit construction for n = {n}")
    a, b = (n + 2) // 2, (n - 1) // 2
    fam = []
    if n % 2:
        count = (n + 8) // 4
        for j in range(count):
            pts = list(range(1, n + 1)) if j == 0 else _points(n, j, 2 * j)
            if pts is None:
                raise FrattiniError(f"the points for j = {j} repeat")
            alpha = _two_cycles(pts, a, n)
            beta = perm_from_cycles([pts[:2], pts[a:a + 2]], n)
            fam.append([alpha, beta])
        return fam
    for j in (1, n - 1):
        pts = [1 + (m * j) % n for m in range(n)]
        fam.append([_two_cycles(pts, b, n), perm_from_cycles([pts[:2]], n),
                    perm_from_cycles([pts[b:b + 2]], n)])
    h = n // 2 + 3
    k_n = max(k for k in range(1, (h + 1) // 2 + 1) if 2 * k < h and math.gcd(k, h) == 1)
    for j in range(k_n, k_n + (n - 4) // 4 + 1):
        pts = _points(n, j, j)
        if pts is None:
            raise FrattiniError(f"the points for j = {j} repeat")
        fam.append([_two_cycles(pts, a, n), perm_from_cycles([pts[:2]], n),
                    perm_from_cycles([pts[a:a + 2]], n)])
    return fam


def _has_young_shape(H: PermGroup, a: int, b: int) -> bool:
    sizes = sorted(len(o) for o in H.orbits())
    return sorted([a, b]) == sizes and H.order() == math.factorial(a) * math.factorial(b)


def _check_literal(G: PermGroup, gens: list[list[Permutation]], config: Config) -> WitnessFamily:
    n = G.degree
    a, b = (n + 2) // 2, (n - 1) // 2
    groups = [PermGroup(g, n) for g in gens]
    fam = WitnessFamily(parent=G, members=groups, each_is_subgroup=True)
    fam.each_is_maximal = all(_has_young_shape(H, a, b) and is_maximal(G, H, config) for H in groups)
    members = [_Member(Seed(f"S{a}xS{b}", H), np.arange(n)) for H in groups]
    fam.intersection_order = len(_intersection_rows(members))
    fam.frattini_order = 1
    fam.intersection_equals_frattini = fam.each_is_maximal and fam.intersection_order == 1
    fam.path = "literal"
    fam.labels = [f"S{a}xS{b}"] * len(groups)
    return fam


@dataclass
class SymmetricWitnessReport:
    n: int
    family: WitnessFamily
    path: str
    attempts: int
    failures: dict[str, str]


def symmetric_witnesses(n: int, config: Config = DEFAULT) -> SymmetricWitnessReport:
    """At most ⌊(n+8)/4⌋ maximal subgroups of S_n meeting trivially."""
    if n < 4 or n > config.symmetric_cap:
        raise ValueError(f"n must lie in 4..{config.symmetric_cap}, got {n}")
    G = symmetric(n)
    target = symmetric_upper_bound(n)
    failures: dict[str, str] = {}

    try:
        fam = _check_literal(G, literal_generators(n), config)
        if fam.all_checks_pass and len(fam.members) <= target:
            return SymmetricWitnessReport(n, fam, "literal", 0, failures)
        failures["literal"] = (f"intersection order {fam.intersection_order}, "
                               f"maximal: {fam.each_is_maximal}")
    except FrattiniError as exc:
        failures["literal"] = str(exc)

    rng = random.Random(config.seed)
    b = (n - 1) // 2
    for path, names in (("young", [f"S{n - b}xS{b}"]), ("pool", None)):
        pool = maximal_seed_pool(n, config, names)
        spent = 0
        for size in range(1, target + 1):
            members, used = search_family(n, size, pool.seeds, config.fallback_attempts, rng)
            spent += used
            if members is not None:
                fam = _family_from_members(G, members, path)
                return SymmetricWitnessReport(n, fam, path, spent, failures)
        failures[path] = f"no family of size <= {target} in {spent} attempts"
    raise FrattiniError(f"no witness family found for S{n}: {failures}")


@dataclass
class TableBound:
    n: int
    value: int
    family: WitnessFamily
    attempts: int
    pool: SeedPool


def symmetric_table_bound(n: int, config: Config = DEFAULT, max_size: int | None = None) -> TableBound:
    """Smallest family size found by pool search; an upper bound for ι(S_n)."""
    if max_size is None:
        max_size = symmetric_upper_bound(n) if n >= 4 else 2
    G = symmetric(n)
    pool = maximal_seed_pool(n, config)
    rng = random.Random(config.seed)
    spent = 0
    for size in range(1, max_size + 1):
        members, used = search_family(n, size, pool.seeds, config.fallback_attempts, rng)
        spent += used
        if members is not None:
            return TableBound(n, size, _family_from_members(G, members, "pool"), spent, pool)
    raise BoundExceededError("witness family size", max_size + 1, max_size,
                             f"no family found in {spent} attempts")


def young_family_possible(n: int, size: int) -> bool:
    """Whether ``size`` maximal intransitive subgroups of S_n can meet trivially.

    A maximal intransitive subgroup is the stabilizer ``S_k x S_{n-k}`` of a
    k-set with ``k < n/2``.  The intersection of such stabilizers fixes every
    point exactly when the points have pairwise distinct membership vectors in
    ``{0,1}**size``, each coordinate (a k-set) having weight below ``n/2``.
    """
    from itertools import combinations, product
    vectors = list(product((0, 1), repeat=size))
    if n > len(vectors):
        return False
    for chosen in combinations(vectors, n):
        if all(2 * sum(v[i] for v in chosen) < n for i in range(size)):
            return True
    return False
