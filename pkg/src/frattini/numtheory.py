"""Small-integer arithmetic: factorization, squarefree tests, primitive roots, CRT."""

from __future__ import annotations

from math import gcd, prod


def factorize(n: int) -> list[tuple[int, int]]:
    """Return the prime factorization of ``n`` as ``[(p, e), ...]`` with p increasing.

    Trial division; ``factorize(1) == []``.
    """
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == [(n, 1)]


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_squarefree(n: int) -> bool:
    if n < 1:
        raise ValueError(f"squarefree test needs n >= 1, got {n}")
    return all(e == 1 for _, e in factorize(n))


def is_prime_power(n: int) -> bool:
    return len(factorize(n)) == 1


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def primitive_root(p: int) -> int:
    """Least r whose multiplicative order mod the prime ``p`` is p - 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = prime_divisors(p - 1)
    for r in range(2, p):
        if all(pow(r, (p - 1) // q, p) != 1 for q in qs):
            return r
    raise AssertionError("unreachable: every prime has a primitive root")


def crt(residues, moduli) -> int:
    """Solve x = residues[i] mod moduli[i]; moduli must be pairwise coprime.

    Returns the unique solution in ``[0, prod(moduli))``.
    """
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    for i, m in enumerate(moduli):
        if m < 1:
            raise ValueError(f"modulus {m} must be positive")
        for m2 in moduli[i + 1:]:
            if gcd(m, m2) != 1:
                raise ValueError(f"moduli {m} and {m2} are not coprime")
    total = prod(moduli)
    x = 0
    for r, m in zip(residues, moduli):
        rest = total // m
        x += r * rest * pow(rest, -1, m)
    return x % total
