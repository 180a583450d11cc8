"""Exact integer helpers: factorization, p-parts, square-free parts, CRT, inverses.

Everything here works on Python ints, so there is no overflow anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from .errors import IncompatibleCongruences, NotInvertible, NotPrime

isqrt = math.isqrt


def gcd(*values: int) -> int:
    """Nonnegative gcd of any number of integers; gcd() and gcd(0, 0) are 0."""
    return math.gcd(*values)


def lcm(*values: int) -> int:
    return math.lcm(*values) if values else 1


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, l: int) -> int:
        for p, e in self.factors:
            if p == l:
                return e
        return 0

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out


@lru_cache(maxsize=8192)
def factorize(n: int) -> Factorization:
    """Trial-division factorization of a positive integer."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    rest = n
    factors: List[Tuple[int, int]] = []
    for p in (2, 3):
        k = 0
        while rest % p == 0:
            rest //= p
            k += 1
        if k:
            factors.append((p, k))
    f = 5
    step = 2
    while f * f <= rest:
        k = 0
        while rest % f == 0:
            rest //= f
            k += 1
        if k:
            factors.append((f, k))
        f += step
        step = 6 - step
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def prime_divisors(n: int) -> Tuple[int, ...]:
    return factorize(abs(n)).primes if n else ()


def square_prime_divisors(n: int) -> Tuple[int, ...]:
    """Primes l with l^2 | n."""
    return tuple(p for p, e in factorize(abs(n)).factors if e >= 2) if n else ()


def p_component(n: int, l: int) -> int:
    """The l-part of n: the largest power of the prime l dividing n."""
    if not is_prime(l):
        raise NotPrime(f"{l} is not prime")
    if n < 1:
        raise ValueError(f"p_component expects n >= 1, got {n}")
    out = 1
    while n % l == 0:
        n //= l
        out *= l
    return out


@dataclass(frozen=True)
class SquareFreeDecomposition:
    input: int
    sign: int
    squarefree: int
    root: int


def squarefree_decompose(n: int) -> SquareFreeDecomposition:
    """Write n = sign * squarefree * root^2 with squarefree > 0 square-free."""
    if n == 0:
        raise ValueError("squarefree_decompose is undefined at 0")
    sf, root = 1, 1
    for p, e in factorize(abs(n)).factors:
        root *= p ** (e // 2)
        if e % 2:
            sf *= p
    return SquareFreeDecomposition(n, 1 if n > 0 else -1, sf, root)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)).factors)


def divisors(n: int) -> List[int]:
    """Positive divisors of |n|, ascending."""
    if n == 0:
        raise ValueError("divisors of 0 are unbounded")
    out = [1]
    for p, e in factorize(abs(n)).factors:
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    """Combine x = r1 mod m1 and x = r2 mod m2; returns (x, lcm) with 0 <= x < lcm."""
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be positive")
    g = math.gcd(m1, m2)
    if (r1 - r2) % g:
        raise IncompatibleCongruences(f"{r1} mod {m1} and {r2} mod {m2} are incompatible")
    m = m1 // g * m2
    if m1 == g:
        return r2 % m, m
    k = ((r2 - r1) // g) * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * k) % m, m


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible mod {m}")
    return pow(a, -1, m) if m > 1 else 0


def units(m: int) -> List[int]:
    """Residues in [0, m) coprime to m (for m = 1 this is [0])."""
    if m == 1:
        return [0]
    return [u for u in range(m) if math.gcd(u, m) == 1]
