"""Constructors for the group families used throughout, plus a naming grammar.

Grammar (case-insensitive, whitespace ignored)::

    spec := atom | spec "x" atom
    atom := ("S"|"A"|"Z"|"D"|"Q"|"F") integer | "E" integer "^" integer

``D`` and ``Q`` take the group ORDER: ``D12`` is the dihedral group of order 12
(symmetries of a hexagon), ``Q8`` the quaternion group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import numtheory
from .config import DEFAULT, Config
from .errors import FrattiniError
from .perm import Permutation, PermGroup, perm_from_cycles


class GroupSpecError(FrattiniError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def _check_positive(name: str, n: int, least: int = 1) -> None:
    if not isinstance(n, int) or n < least:
        raise ValueError(f"{name} needs an integer >= {least}, got {n!r}")


def symmetric(n: int) -> PermGroup:
    _check_positive("symmetric", n)
    if n == 1:
        return PermGroup([], 1)
    gens = [perm_from_cycles([range(1, n + 1)], n)]
    if n > 2:
        gens.append(perm_from_cycles([(1, 2)], n))
    return PermGroup(gens, n)


def alternating(n: int) -> PermGroup:
    _check_positive("alternating", n, 3)
    # 3-cycles (1,2,k) generate A_n
    gens = [perm_from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return PermGroup(gens, n)


def cyclic(n: int) -> PermGroup:
    _check_positive("cyclic", n)
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([perm_from_cycles([range(1, n + 1)], n)], n)


def elementary_abelian(p: int, r: int) -> PermGroup:
    if not numtheory.is_prime(p):
        raise ValueError(f"elementary abelian group needs a prime, got {p}")
    _check_positive("rank", r)
    deg = p * r
    gens = [perm_from_cycles([range(i * p + 1, (i + 1) * p + 1)], deg) for i in range(r)]
    return PermGroup(gens, deg)


def _degenerate(name: str, config: Config) -> None:
    if not config.allow_degenerate:
        raise ValueError(f"{name} is a degenerate case; pass allow_degenerate to build it")


def dihedral(m: int, config: Config = DEFAULT) -> PermGroup:
    """Dihedral group of order ``m`` acting on the vertices of an (m/2)-gon."""
    if not isinstance(m, int) or m < 2 or m % 2:
        raise ValueError(f"dihedral order must be an even integer >= 2, got {m!r}")
    n = m // 2
    if n < 3:
        _degenerate(f"D{m}", config)
        if n == 1:
            return PermGroup([perm_from_cycles([(1, 2)], 2)], 2)
        return PermGroup([perm_from_cycles([(1, 2)], 4), perm_from_cycles([(3, 4)], 4)], 4)
    r = perm_from_cycles([range(1, n + 1)], n)
    s = Permutation([(n + 1 - i) % n + 1 for i in range(1, n + 1)])
    return PermGroup([r, s], n)


def dicyclic_generators(m: int) -> tuple[Permutation, Permutation]:
    """(x, y) in the right regular representation of the dicyclic group of order m."""
    n = m // 4
    two_n = 2 * n

    def point(a: int, b: int) -> int:
        return a % two_n + two_n * b

    def times(a: int, b: int, c: int, d: int) -> tuple[int, int]:
        # x^a y^b . x^c y^d, using y x = x^-1 y and y^2 = x^n
        a2 = a + (-c if b else c)
        if b and d:
            return a2 + n, 0
        return a2, b ^ d

    def right(c: int, d: int) -> Permutation:
        img = [0] * m
        for a in range(two_n):
            for b in (0, 1):
                img[point(a, b)] = point(*times(a, b, c, d)) + 1
        return Permutation(img)

    return right(1, 0), right(0, 1)


def dicyclic(m: int, config: Config = DEFAULT) -> PermGroup:
    if not isinstance(m, int) or m < 4 or m % 4:
        raise ValueError(f"dicyclic order must be a multiple of 4, got {m!r}")
    if m < 8:
        _degenerate(f"Q{m}", config)
    return PermGroup(list(dicyclic_generators(m)), m)


def frobenius_generators(p: int) -> tuple[Permutation, Permutation]:
    r = numtheory.primitive_root(p)
    x = perm_from_cycles([range(1, p + 1)], p)
    y = Permutation([r * i % p for i in range(1, p)] + [p])
    return x, y


def frobenius(p: int, config: Config = DEFAULT) -> PermGroup:
    """The affine group x -> ax + b over the field of p elements (order p(p-1))."""
    if not isinstance(p, int) or not numtheory.is_prime(p):
        raise ValueError(f"Frobenius group needs a prime, got {p!r}")
    if p < 5:
        if p == 2:
            raise ValueError("F2 is not supported")
        _degenerate(f"F{p}", config)
    return PermGroup(list(frobenius_generators(p)), p)


def shift(p: Permutation, offset: int, degree: int) -> Permutation:
    img = list(range(1, degree + 1))
    for i, x in enumerate(p.images):
        img[offset + i] = x + offset
    return Permutation(img)


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    deg = G.degree + H.degree
    gens = [shift(g, 0, deg) for g in G.generators]
    gens += [shift(h, G.degree, deg) for h in H.generators]
    return PermGroup(gens, deg)


# naming grammar

_ATOM_KINDS = "SAZDQFE"


@dataclass(frozen=True)
class Atom:
    kind: str
    n: int
    r: int | None = None  # rank, for E atoms only

    def __str__(self) -> str:
        if self.kind == "E":
            return f"E{self.n}^{self.r}"
        return f"{self.kind}{self.n}"


@dataclass(frozen=True)
class GroupSpec:
    atoms: tuple[Atom, ...]

    def __str__(self) -> str:
        return "x".join(str(a) for a in self.atoms)


class _Scanner:
    def __init__(self, text: str):
        # keep original positions (1-based) while skipping whitespace
        self.chars = [(i + 1, c) for i, c in enumerate(text) if not c.isspace()]
        self.k = 0
        self.end = len(text) + 1

    def peek(self) -> tuple[int, str | None]:
        if self.k < len(self.chars):
            return self.chars[self.k]
        return self.end, None

    def integer(self) -> int:
        pos, c = self.peek()
        digits = ""
        while c is not None and c.isdigit():
            digits += c
            self.k += 1
            _, c = self.peek()
        if not digits:
            raise GroupSpecError("expected an integer", pos)
        return int(digits)


def parse_group_spec(text: str) -> GroupSpec:
    sc = _Scanner(text)
    atoms = []
    while True:
        pos, c = sc.peek()
        if c is None:
            raise GroupSpecError("expected a group name", pos)
        kind = c.upper()
        if kind not in _ATOM_KINDS:
            raise GroupSpecError(f"unknown group letter {c!r}", pos)
        sc.k += 1
        n = sc.integer()
        r = None
        if kind == "E":
            pos, c = sc.peek()
            if c != "^":
                raise GroupSpecError("expected '^' in E<p>^<r>", pos)
            sc.k += 1
            r = sc.integer()
        atoms.append(Atom(kind, n, r))
        pos, c = sc.peek()
        if c is None:
            return GroupSpec(tuple(atoms))
        if c.lower() != "x":
            raise GroupSpecError(f"expected 'x' or end of input, got {c!r}", pos)
        sc.k += 1


def build_atom(atom: Atom, config: Config = DEFAULT) -> PermGroup:
    k, n = atom.kind, atom.n
    if k == "S":
        return symmetric(n)
    if k == "A":
        return alternating(n)
    if k == "Z":
        return cyclic(n)
    if k == "D":
        return dihedral(n, config)
    if k == "Q":
        return dicyclic(n, config)
    if k == "F":
        return frobenius(n, config)
    return elementary_abelian(n, atom.r)


def build(spec: GroupSpec | str, config: Config = DEFAULT) -> PermGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    try:
        groups = [build_atom(a, config) for a in spec.atoms]
    except ValueError as exc:
        if isinstance(exc, GroupSpecError):
            raise
        raise GroupSpecError(str(exc)) from None
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return G


def formula_family(spec: GroupSpec) -> tuple[str, int] | None:
    """(family, parameter) when ``spec`` is a single atom with a closed form."""
    if len(spec.atoms) != 1:
        return None
    a = spec.atoms[0]
    if a.kind == "D" and a.n >= 6:
        return "dihedral", a.n // 2
    if a.kind == "Q" and a.n >= 8:
        return "dicyclic", a.n // 4
    if a.kind == "F" and a.n >= 5:
        return "frobenius", a.n
    if a.kind == "S" and a.n >= 4:
        return "symmetric", a.n
    return None


def atom_order(atom: Atom) -> int:
    k, n = atom.kind, atom.n
    if k == "S":
        return math.factorial(n)
    if k == "A":
        return math.factorial(n) // 2 if n >= 2 else 1
    if k == "F":
        return n * (n - 1)
    if k == "E":
        return n ** atom.r
    return n


def spec_order(spec: GroupSpec) -> int:
    """Order of the named group, from its parameters alone (nothing is built)."""
    return math.prod(atom_order(a) for a in spec.atoms)
