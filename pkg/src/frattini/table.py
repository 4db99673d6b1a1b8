"""Explicit multiplication tables for groups small enough to enumerate.

Elements are indexed in lexicographic order of their image tuples, so any
choice that depends on element indices (canonical representatives, search
order) is reproducible across runs.  Subgroups are handled as boolean masks
over element indices, or as Python ints when many intersections are needed.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT, Config
from .errors import BoundExceededError
from .perm import Permutation, PermGroup

_HASH_SEED = 0x5EED


def _row_hashes(rows: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # wraps mod 2**64; only has to separate the group's own elements
    return (rows.astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)


class GroupTable:
    """Cayley table of a permutation group.

    ``mult[i, j]`` is the index of ``elements[i] * elements[j]`` (i applied first).
    """

    def __init__(self, group: PermGroup, config: Config = DEFAULT):
        n = group.order()
        if n > config.lattice_bound:
            raise BoundExceededError(
                "group order", n, config.lattice_bound,
                "raise --lattice-bound or use witness verification instead",
            )
        self.group = group
        self.degree = group.degree
        raw = sorted(group.iter_raw())
        self.order = n
        self.E = np.array(raw, dtype=np.int16 if self.degree < 2**15 else np.int32)
        self.index = {g: i for i, g in enumerate(raw)}
        self.identity = self.index[tuple(range(self.degree))]
        self.mult = self._build_mult()
        self.inv = np.argmax(self.mult == self.identity, axis=1).astype(self.mult.dtype)
        self.elem_order = self._element_orders()
        self.gen_idx = [self.index[g._img] for g in group.generators if not g.is_identity()]
        self.all_mask = np.ones(n, dtype=bool)
        self.nbytes = (n + 7) // 8

    def _build_mult(self) -> np.ndarray:
        n, deg = self.E.shape
        rng = np.random.default_rng(_HASH_SEED)
        while True:
            w = rng.integers(1, 2**63, size=deg, dtype=np.uint64)
            h = _row_hashes(self.E, w)
            order = np.argsort(h, kind="stable")
            hs = h[order]
            if n < 2 or np.all(hs[1:] != hs[:-1]):
                break
        dtype = np.int16 if n < 2**15 else np.int32
        mult = np.empty((n, n), dtype=dtype)
        chunk = max(1, 2_000_000 // max(1, n * deg))
        for start in range(0, n, chunk):
            idx = np.arange(start, min(n, start + chunk))
            # (p * q)[x] = q[p[x]]: rows q, columns p[x]
            rows = self.E[:, self.E[idx]]  # shape (n_q, chunk, deg)
            hq = _row_hashes(rows, w)
            pos = np.searchsorted(hs, hq)
            mult[idx, :] = order[pos].T
        return mult

    def _element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        pw = ar.copy()
        k = 1
        while True:
            hit = (pw == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            pw = self.mult[pw, ar]
            k += 1

    # element helpers

    def perm(self, i: int) -> Permutation:
        return Permutation._raw(tuple(int(x) for x in self.E[i]))

    def idx(self, p: Permutation) -> int:
        return self.index[p._img]

    def conj(self, x, g):
        """Index of ``g^-1 * x * g`` (vectorized over either argument)."""
        return self.mult[self.mult[self.inv[g], x], g]

    # subgroup helpers

    def generate(self, gens, base: np.ndarray | None = None) -> np.ndarray:
        """Mask of the subgroup generated by ``gens`` together with the subgroup ``base``."""
        if base is None:
            mask = np.zeros(self.order, dtype=bool)
            mask[self.identity] = True
        else:
            mask = base.copy()
        gens = np.asarray(list(gens), dtype=np.int64)
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            prod = self.mult[frontier[:, None], gens[None, :]].ravel()
            prod = prod[~mask[prod]]
            if prod.size == 0:
                break
            prod = np.unique(prod)
            mask[prod] = True
            frontier = prod
        return mask

    def key(self, mask: np.ndarray) -> bytes:
        return np.packbits(mask).tobytes()

    def mask_from_key(self, key: bytes) -> np.ndarray:
        return np.unpackbits(np.frombuffer(key, dtype=np.uint8), count=self.order).astype(bool)

    def to_int(self, mask: np.ndarray) -> int:
        return int.from_bytes(self.key(mask), "big")

    def from_int(self, value: int) -> np.ndarray:
        return self.mask_from_key(value.to_bytes(self.nbytes, "big"))

    def conjugate_mask(self, mask: np.ndarray, g: int) -> np.ndarray:
        out = np.zeros(self.order, dtype=bool)
        out[self.conj(np.flatnonzero(mask), g)] = True
        return out

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A small generating set: greedy by decreasing element order, then index."""
        members = np.flatnonzero(mask)
        target = members.size
        cand = members[np.lexsort((members, -self.elem_order[members]))]
        gens: list[int] = []
        cur = np.zeros(self.order, dtype=bool)
        cur[self.identity] = True
        size = 1
        for x in cand:
            if size == target:
                break
            if cur[x]:
                continue
            gens.append(int(x))
            cur = self.generate(gens, base=cur)
            size = int(cur.sum())
        return gens

    def normalizer(self, mask: np.ndarray, gens=None) -> np.ndarray:
        if gens is None:
            gens = self.generators_of(mask)
        if not gens:
            return self.all_mask.copy()
        g = np.arange(self.order)
        conj = self.conj(np.asarray(gens)[None, :], g[:, None])
        return mask[conj].all(axis=1)

    def is_normal(self, mask: np.ndarray) -> bool:
        gens = self.generators_of(mask)
        if not gens:
            return True
        conj = self.conj(np.asarray(gens)[None, :], np.asarray(self.gen_idx)[:, None])
        return bool(mask[conj].all())

    def to_group(self, mask: np.ndarray) -> PermGroup:
        gens = self.generators_of(mask)
        return PermGroup([self.perm(i) for i in gens], self.degree)

    def mask_of(self, H: PermGroup) -> np.ndarray:
        """Mask of a subgroup given as a permutation group inside this table's group."""
        gens = []
        for g in H.generators:
            if g._img not in self.index:
                raise ValueError(f"{g} is not an element of the group")
            gens.append(self.index[g._img])
        return self.generate(gens)


_TABLE_ATTR = "_frattini_table"


def table_of(group: PermGroup, config: Config = DEFAULT) -> GroupTable:
    """Cached :class:`GroupTable` for ``group``."""
    if group.order() > config.lattice_bound:
        raise BoundExceededError(
            "group order", group.order(), config.lattice_bound,
            "raise --lattice-bound or use witness verification instead",
        )
    t = getattr(group, _TABLE_ATTR, None)
    if t is None:
        t = GroupTable(group, config)
        setattr(group, _TABLE_ATTR, t)
    return t
