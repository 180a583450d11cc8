"""Rank-2 even hyperbolic lattices with a fixed primitive vector P.

A lattice is encoded by (n, gamma, delta, mu): P^2 = n*gamma, f spans the
orthogonal complement of P with f^2 = -n*delta, and the lattice is

    S = {(x P + y f)/n : x = mu*y mod n}.

Elements are stored by their integer numerators (x, y) only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .arith import gcd, mod_inverse
from .errors import InvalidLattice, NotInDual, NotInLattice, ZeroElement
from .mukai import GammaSplit, MukaiInvariants


@dataclass(frozen=True)
class PolarizedLattice2:
    n: int
    gamma: int
    delta: int
    mu: int


class LatticeElement(NamedTuple):
    x: int
    y: int


class DualElement(NamedTuple):
    """v P* + w f* with P* = P/(n gamma), f* = f/(n delta)."""
    v: int
    w: int


class CanonicalClass(NamedTuple):
    """w f* taken modulo Z f (= n delta f*), with its order."""
    w: int
    modulus: int
    order: int


def make_lattice(n: int, gamma: int, delta: int, mu: int) -> PolarizedLattice2:
    lat = PolarizedLattice2(n, gamma, delta, mu % n)
    validate(lat)
    return lat


def validate(lat: PolarizedLattice2) -> None:
    n, g, dl, mu = lat.n, lat.gamma, lat.delta, lat.mu
    if n < 1:
        raise InvalidLattice(f"n={n} must be positive")
    if g < 1 or dl < 1:
        raise InvalidLattice(f"gamma={g} and delta={dl} must be positive (hyperbolic, nondegenerate)")
    if gcd(mu, n) != 1:
        raise InvalidLattice(f"gcd(mu, n) = gcd({mu}, {n}) != 1")
    if (n * g) % 2 or (n * dl) % 2:
        raise InvalidLattice(f"n*gamma={n * g} and n*delta={n * dl} must both be even")
    if (dl - mu * mu * g) % (2 * n):
        raise InvalidLattice(f"delta={dl} is not congruent to mu^2 gamma={mu * mu * g} mod 2n={2 * n}")


def canonical(lat: PolarizedLattice2) -> PolarizedLattice2:
    """Same lattice with f replaced by -f if that makes mu smaller."""
    mu = lat.mu % lat.n
    return PolarizedLattice2(lat.n, lat.gamma, lat.delta, min(mu, (lat.n - mu) % lat.n))


def P_of(lat: PolarizedLattice2) -> LatticeElement:
    return LatticeElement(lat.n, 0)


def f_of(lat: PolarizedLattice2) -> LatticeElement:
    return LatticeElement(0, lat.n)


def contains(lat: PolarizedLattice2, z) -> bool:
    return (z[0] - lat.mu * z[1]) % lat.n == 0


def _require(lat: PolarizedLattice2, z) -> None:
    if not contains(lat, z):
        raise NotInLattice(f"({z[0]}, {z[1]}) violates x = mu*y mod n for mu={lat.mu}, n={lat.n}")


def inner(lat: PolarizedLattice2, z1, z2) -> int:
    _require(lat, z1)
    _require(lat, z2)
    num = lat.gamma * z1[0] * z2[0] - lat.delta * z1[1] * z2[1]
    q, r = divmod(num, lat.n)
    assert r == 0, "pairing of two members must be integral"
    return q


def norm(lat: PolarizedLattice2, z) -> int:
    v = inner(lat, z, z)
    assert v % 2 == 0, "lattice must be even"
    return v


def inner_with_P(lat: PolarizedLattice2, z) -> int:
    _require(lat, z)
    return lat.gamma * z[0]


def inner_with_f(lat: PolarizedLattice2, z) -> int:
    _require(lat, z)
    return -lat.delta * z[1]


def gamma_of(lat: PolarizedLattice2, z) -> int:
    """Positive generator of the ideal z.S, from the basis P, f, (mu P + f)/n."""
    _require(lat, z)
    x, y = z
    if x == 0 and y == 0:
        raise ZeroElement("gamma of the zero element is undefined")
    third = (lat.mu * lat.gamma * x - lat.delta * y) // lat.n
    return gcd(lat.gamma * x, lat.delta * y, third)


def is_primitive(lat: PolarizedLattice2, z) -> bool:
    _require(lat, z)
    x, y = z
    if x == 0 and y == 0:
        raise ZeroElement("primitivity of the zero element is undefined")
    return gcd(x, y, (x - lat.mu * y) // lat.n) == 1


def divide(lat: PolarizedLattice2, z, l: int) -> Optional[LatticeElement]:
    """z/l if it lies in the lattice, else None."""
    x, y = z
    if x % l or y % l:
        return None
    w = LatticeElement(x // l, y // l)
    return w if contains(lat, w) else None


def basis_gram(lat: PolarizedLattice2):
    """Gram matrix of the Z-basis {P, (mu P + f)/n}."""
    e1 = P_of(lat)
    e2 = LatticeElement(lat.mu, 1)
    return [[inner(lat, e1, e1), inner(lat, e1, e2)], [inner(lat, e2, e1), inner(lat, e2, e2)]]


def in_dual(lat: PolarizedLattice2, d: DualElement) -> bool:
    return (lat.mu * d.v - d.w) % lat.n == 0


def dual_in_lattice(lat: PolarizedLattice2, d: DualElement) -> bool:
    """Whether v P* + w f* already lies in S."""
    g, dl = lat.gamma, lat.delta
    if d.v % g or d.w % dl:
        return False
    return (d.v // g - lat.mu * (d.w // dl)) % lat.n == 0


def element_as_dual(lat: PolarizedLattice2, z) -> DualElement:
    return DualElement(lat.gamma * z[0], lat.delta * z[1])


def u_star(lat: PolarizedLattice2) -> CanonicalClass:
    """mu^{-1} delta f* modulo Z f, an element of order n in K(P)*/K(P)."""
    modulus = lat.n * lat.delta
    w = (mod_inverse(lat.mu, lat.n) * lat.delta) % modulus
    return CanonicalClass(w, modulus, lat.n)


def nx_lattice(split: GammaSplit, delta: int, mu: int) -> PolarizedLattice2:
    return make_lattice(split.n_x, split.gamma, delta, mu)


def _raw_nu(inv: MukaiInvariants, split: GammaSplit, mu: int) -> int:
    return (inv.m_ab * mu) % split.n_y


def ny_invariants(inv: MukaiInvariants, split: GammaSplit, delta: int, mu: int) -> PolarizedLattice2:
    """Lattice data of the moduli side: (2a1b1/gamma, gamma, delta, nu) with nu = m(a,b) mu."""
    nx_lattice(split, delta, mu)
    nu = _raw_nu(inv, split, mu)
    return canonical(make_lattice(split.n_y, split.gamma, delta, nu))


def disc_identification(inv: MukaiInvariants, split: GammaSplit, lat_x: PolarizedLattice2,
                        n: int, k: int) -> DualElement:
    """Image of c*n*P* + k*f* under the discriminant identification.

    The image is written in the dual basis of the canonical moduli-side
    lattice, whose orthogonal generator is f/c (so the f*-coordinate is k/c;
    its sign flips when canonicalization replaces nu by -nu).
    """
    c = inv.c
    src = DualElement(c * n, k)
    if not in_dual(lat_x, src):
        raise NotInDual(f"c*n*P* + k*f* = ({c * n}, {k}) is not in the dual lattice")
    assert k % c == 0
    m = inv.m_ab % (2 * inv.a * inv.b // (inv.d * inv.d))
    raw = _raw_nu(inv, split, lat_x.mu)
    canon = canonical(PolarizedLattice2(split.n_y, split.gamma, lat_x.delta, raw)).mu
    sign = 1 if canon == raw else -1
    return DualElement(m * n, sign * (k // c))
