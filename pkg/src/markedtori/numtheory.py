"""Arithmetic functions used to turn lattice multiplicity sums into closed forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, prod

import numpy as np


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    prime_factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.prime_factors) != self.n:
            raise ValueError("factorization does not multiply back to n")
        primes = [p for p, _ in self.prime_factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_factors)


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=65536)
def factorize(n: int) -> FactoredInteger:
    """Trial division; inputs here stay far below 10**12."""
    _check_positive(n)
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p = 3 if p == 2 else p + 2
    if m > 1:
        factors.append((m, 1))
    return FactoredInteger(n, tuple(factors))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


def squarefree_divisors(n: int):
    """Yield (d, mobius(d)) for the squarefree divisors d of n."""
    ps = prime_divisors(n)
    for r in range(len(ps) + 1):
        for combo in combinations(ps, r):
            yield prod(combo), (-1) ** r


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p in prime_divisors(n):
        result = result // p * (p - 1)
    return result


def coprime_residues(n: int, m: int = 1) -> frozenset[int]:
    """The index set I^n_m: j in 1..n/m-1 with gcd(j, n/m) == 1.

    coprime_residues(1, 1) is empty, which is the one-marked case.
    """
    _check_positive(n)
    if m < 1 or n % m:
        raise ValueError(f"{m} does not divide {n}")
    k = n // m
    return frozenset(j for j in range(1, k) if gcd(j, k) == 1)


def principal_character(n: int, l: int) -> int:
    _check_positive(n)
    return 1 if gcd(l, n) == 1 else 0


def l_chi0_coefficient(n: int) -> Fraction:
    """Rational r with L(chi_0 mod n, 2) == r * pi**2 / 6."""
    _check_positive(n)
    r = Fraction(1)
    for p in prime_divisors(n):
        r *= 1 - Fraction(1, p * p)
    return r


def inverse_totient_product(n: int) -> Fraction:
    """prod over primes p | n of (1 + 1/p)**-1."""
    _check_positive(n)
    r = Fraction(1)
    for p in prime_divisors(n):
        r *= Fraction(p, p + 1)
    return r


def partial_l_sum(n: int, terms: int) -> float:
    """sum_{l <= terms} chi_0(l) / l**2.

    The neglected tail is below sum_{l > terms} 1/l**2 < 1/terms.
    """
    _check_positive(n)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    l = np.arange(1, terms + 1, dtype=np.int64)
    mask = np.gcd(l, n) == 1
    lf = l[mask].astype(np.float64)
    # summing small terms first keeps the float error near 1 ulp of the result
    return float(np.sum((1.0 / (lf * lf))[::-1]))


def coprime_pair_count(n: int) -> int:
    """|{(a, b) in (Z/n)^2 : gcd(a, b, n) = 1}| = n^2 prod (1 - 1/p^2)."""
    _check_positive(n)
    return int(n * n * l_chi0_coefficient(n))


def coprime_pair_count_bruteforce(n: int) -> int:
    return sum(1 for a in range(1, n + 1) for b in range(1, n + 1) if gcd(gcd(a, b), n) == 1)


def inverse_square_prefix(limit: int) -> list[Fraction]:
    """H[m] = sum_{j <= m} 1/j**2 for m = 0..limit, exactly."""
    out = [Fraction(0)]
    acc = Fraction(0)
    for j in range(1, limit + 1):
        acc += Fraction(1, j * j)
        out.append(acc)
    return out


def coprime_inverse_square_sum(n: int, prefix: list[Fraction] | None = None) -> Fraction:
    """sum_{i in I^n} 1/i**2, exactly, via Mobius inversion over the prefix sums."""
    _check_positive(n)
    if prefix is None or len(prefix) < n:
        return sum((Fraction(1, i * i) for i in coprime_residues(n)), Fraction(0))
    total = Fraction(0)
    for d, mu in squarefree_divisors(n):
        total += mu * Fraction(1, d * d) * prefix[(n - 1) // d]
    return total
