"""Discrete invariants of a primitive isotropic Mukai vector (r, H, s).

The user supplies r, s, the divisibility d of H, and the lattice invariant
gamma of the primitive class H/d.  Nothing here is inferred from geometry.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import crt_pair, gcd, p_component
from .errors import DivisibilityError, GammaError, NoLiftError, PrimitivityError


@dataclass(frozen=True)
class MukaiInput:
    r: int
    s: int
    d: int = 1


@dataclass(frozen=True)
class MukaiInvariants:
    r: int
    s: int
    d: int
    c: int
    a: int
    b: int
    d_a: int
    d_b: int
    a1: int
    b1: int
    m_ab: int  # residue mod 2ab: -1 mod 2a, +1 mod 2b

    @property
    def m_modulus(self) -> int:
        return 2 * self.a * self.b


@dataclass(frozen=True)
class GammaSplit:
    gamma: int
    gamma_a: int
    gamma_b: int
    gamma_2: int
    a2: int
    b2: int
    e2: int
    n_x: int  # 2 a1 b1 c^2 / gamma
    n_y: int  # 2 a1 b1 / gamma


def m_of(a: int, b: int) -> int:
    """The residue m mod 2ab with m = -1 mod 2a and m = 1 mod 2b."""
    return crt_pair(-1, 2 * a, 1, 2 * b)[0]


def derive_invariants(inp: MukaiInput | tuple) -> MukaiInvariants:
    r, s, d = (inp.r, inp.s, inp.d) if isinstance(inp, MukaiInput) else inp
    if min(r, s, d) < 1:
        raise ValueError(f"r, s, d must be positive, got {(r, s, d)}")
    c = gcd(r, s)
    if gcd(c, d) != 1:
        raise PrimitivityError(f"gcd(c,d)={gcd(c, d)} with c={c}, d={d}: Mukai vector is not primitive")
    a, b = r // c, s // c
    if (a * b) % (d * d):
        raise DivisibilityError(f"d^2={d * d} does not divide ab={a * b}")
    d_a, d_b = gcd(d, a), gcd(d, b)
    # gcd(a,b)=1 and d^2 | ab force d = d_a d_b with d_a^2 | a, d_b^2 | b
    assert d_a * d_b == d and a % (d_a * d_a) == 0 and b % (d_b * d_b) == 0
    return MukaiInvariants(r, s, d, c, a, b, d_a, d_b, a // (d_a * d_a), b // (d_b * d_b), m_of(a, b))


def split_gamma(inv: MukaiInvariants, gamma: int) -> GammaSplit:
    if gamma < 1:
        raise GammaError(f"gamma must be positive, got {gamma}")
    a1, b1, c = inv.a1, inv.b1, inv.c
    if (2 * a1 * b1) % gamma:
        raise GammaError(f"gamma={gamma} does not divide 2a1b1={2 * a1 * b1}")
    ga, gb = gcd(a1, gamma), gcd(b1, gamma)
    g2, rem = divmod(gamma, ga * gb)
    if rem or g2 not in (1, 2):
        raise GammaError(f"gamma/(gamma_a gamma_b) = {gamma}/{ga * gb} is not 1 or 2")
    return GammaSplit(
        gamma=gamma, gamma_a=ga, gamma_b=gb, gamma_2=g2,
        a2=a1 // ga, b2=b1 // gb, e2=2 // g2,
        n_x=2 * a1 * b1 * c * c // gamma, n_y=2 * a1 * b1 // gamma,
    )


def n_of_v(inv: MukaiInvariants, d: int, gamma: int) -> int:
    return gcd(inv.c, gamma * d)


def m_abd_gamma(inv: MukaiInvariants, d: int, gamma: int) -> int:
    """m(a,b) reduced modulo 2ab/(d^2 gamma)."""
    two_ab = 2 * inv.a * inv.b
    if two_ab % (d * d * gamma):
        raise GammaError(f"gamma d^2 = {gamma * d * d} does not divide 2ab = {two_ab}")
    return inv.m_ab % (two_ab // (d * d * gamma))


def lift_mu(mu0: int, delta: int, inv: MukaiInvariants, split: GammaSplit, gamma0: int, u: int) -> int:
    """Lift mu0 along mu0 + k*n_x so that delta = gamma mu^2 mod (4a1b1c^2/gamma) gamma0 u.

    Returns the least nonnegative such mu.
    """
    g = split.gamma
    base = 2 * split.n_x  # 4 a1 b1 c^2 / gamma
    if g % gamma0:
        raise NoLiftError(f"gamma0={gamma0} does not divide gamma={g}")
    if gcd(u, g // gamma0) != 1:
        raise NoLiftError(f"gcd(u, gamma/gamma0) = {gcd(u, g // gamma0)} != 1")
    if (inv.a1 * inv.b1 * inv.c ** 2) % (split.gamma_a * split.gamma_b * u):
        raise NoLiftError(f"u={u} does not divide a1 b1 c^2/(gamma_a gamma_b)")
    if (delta - g * mu0 * mu0) % base:
        raise NoLiftError("delta is not congruent to gamma mu0^2 modulo 4a1b1c^2/gamma")
    target = base * gamma0 * u
    mu0 %= split.n_x
    # delta - gamma mu^2 mod target depends on k modulo target only
    for k in range(target):
        mu = mu0 + split.n_x * k
        if (delta - g * mu * mu) % target == 0:
            return mu
    raise NoLiftError(f"no lift of mu0={mu0} satisfies the congruence modulo {target}")


def l_part_quotient(n: int, m: int, l: int) -> int:
    """n^(l) / m^(l) for prime l (used by the l-adic singular clauses)."""
    return p_component(n, l) // p_component(m, l)
