"""The indefinite binary equation gamma*p^2 - delta*q^2 = N.

Orbit representatives are produced by the Lagrange-Matthews-Mollin (LMM)
continued-fraction method applied to X^2 - gamma*delta*q^2 = gamma*N with
X = gamma*p, then reduced to a canonical member of each orbit under the
group generated by the fundamental automorph and -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

from sympy.ntheory import sqrt_mod

from .arith import divisors, isqrt, is_square
from .errors import PredicateContract

Pair = Tuple[int, int]


@dataclass(frozen=True)
class FormEquation:
    gamma: int
    delta: int
    N: int

    def __post_init__(self):
        if self.gamma < 1 or self.delta < 1:
            raise ValueError(f"gamma and delta must be positive, got {self.gamma}, {self.delta}")
        if self.N == 0:
            raise ValueError("N must be nonzero")

    def value(self, p: int, q: int) -> int:
        return self.gamma * p * p - self.delta * q * q

    def holds(self, p: int, q: int) -> bool:
        return self.value(p, q) == self.N


@dataclass(frozen=True)
class Automorph:
    t: int
    u: int


class SquareDiscriminant:
    """Marker returned when gamma*delta is a perfect square e^2."""

    def __init__(self, e: int):
        self.e = e

    def __repr__(self):
        return f"SquareDiscriminant(e={self.e})"

    def __eq__(self, other):
        return isinstance(other, SquareDiscriminant) and other.e == self.e

    def __hash__(self):
        return hash(("square", self.e))


@dataclass(frozen=True)
class PellOrbit:
    representative: Pair
    orbit_id: int


@lru_cache(maxsize=4096)
def _pell_units(D: int) -> Tuple[Pair, Optional[Pair]]:
    """Fundamental solutions of x^2 - D y^2 = 1 and (if solvable) = -1."""
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    neg = None
    while True:
        val = h * h - D * k * k
        if val == 1:
            return (h, k), neg
        if val == -1 and neg is None:
            neg = (h, k)
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev


def fundamental_automorph(gamma: int, delta: int):
    D = gamma * delta
    if D < 1:
        raise ValueError("gamma*delta must be positive")
    if is_square(D):
        return SquareDiscriminant(isqrt(D))
    (t, u), _ = _pell_units(D)
    return Automorph(t, u)


def _pqa_first_unit(D: int, P: int, Q: int) -> Optional[Pair]:
    """Run the PQa expansion of (P + sqrt D)/Q; return (G_{i-1}, B_{i-1}) at the first |Q_i| = 1."""
    s = isqrt(D)
    B2, B1 = 1, 0
    G2, G1 = -P, Q
    seen = set()
    while True:
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        B = a * B1 + B2
        G = a * G1 + G2
        Pn = a * Q - P
        Qn = (D - Pn * Pn) // Q
        if abs(Qn) == 1:
            return G, B
        if (Pn, Qn) in seen:
            return None
        seen.add((Pn, Qn))
        P, Q = Pn, Qn
        B2, B1 = B1, B
        G2, G1 = G1, G


def lmm_fundamental(D: int, N: int) -> List[Pair]:
    """One solution per class of x^2 - D y^2 = N (D > 0 not a square, N != 0)."""
    (t, u), neg = _pell_units(D)
    out = []
    for f in divisors(N):
        if N % (f * f):
            continue
        m = N // (f * f)
        am = abs(m)
        roots = [0] if am == 1 else sqrt_mod(D % am, am, all_roots=True)
        # representatives z of the roots with -am/2 < z <= am/2
        for z in sorted(r if r <= am // 2 else r - am for r in roots):
            hit = _pqa_first_unit(D, z, am)
            if hit is None:
                continue
            r, s = hit
            val = r * r - D * s * s
            if val == m:
                out.append((f * r, f * s))
            elif val == -m and neg is not None:
                t1, u1 = neg
                out.append((f * (r * t1 + s * u1 * D), f * (r * u1 + s * t1)))
    return out


def act(aut: Automorph, eq: FormEquation, pq: Pair, k: int = 1) -> Pair:
    """Apply the automorph k times (k may be negative) in exact arithmetic."""
    p, q = pq
    t, du, gu = aut.t, eq.delta * aut.u, eq.gamma * aut.u
    if k >= 0:
        for _ in range(k):
            p, q = t * p + du * q, gu * p + t * q
    else:
        for _ in range(-k):
            p, q = t * p - du * q, -gu * p + t * q
    return p, q


def _key(pq: Pair):
    p, q = pq
    return (abs(q), abs(p), 0 if p > 0 else 1, 0 if q >= 0 else 1)


def canonical_rep(aut: Automorph, eq: FormEquation, pq: Pair) -> Pair:
    w = pq
    while True:
        nxt = act(aut, eq, w, 1)
        if abs(nxt[1]) < abs(w[1]):
            w = nxt
            continue
        prv = act(aut, eq, w, -1)
        if abs(prv[1]) < abs(w[1]):
            w = prv
            continue
        break
    cands = []
    for c in (w, act(aut, eq, w, 1), act(aut, eq, w, -1)):
        if abs(c[1]) == abs(w[1]):
            cands += [c, (-c[0], -c[1])]
    return min(cands, key=_key)


def _square_solutions(eq: FormEquation, e: int) -> List[Pair]:
    """All solutions when gamma*delta = e^2, from (gamma p - e q)(gamma p + e q) = gamma N."""
    g, target = eq.gamma, eq.gamma * eq.N
    sols = set()
    for d1 in divisors(target):
        for s1 in (1, -1):
            u = s1 * d1
            v = target // u
            # gamma p = (u+v)/2, e q = (v-u)/2
            if (u + v) % (2 * g) or (v - u) % (2 * e):
                continue
            p, q = (u + v) // (2 * g), (v - u) // (2 * e)
            if eq.holds(p, q):
                sols.add((p, q))
    return sorted(sols, key=_key)


@lru_cache(maxsize=16384)
def solve_orbits(eq: FormEquation) -> Tuple[PellOrbit, ...]:
    aut = fundamental_automorph(eq.gamma, eq.delta)
    if isinstance(aut, SquareDiscriminant):
        return tuple(PellOrbit(pq, i) for i, pq in enumerate(_square_solutions(eq, aut.e)))
    g = eq.gamma
    reps = set()
    for X, y in lmm_fundamental(g * eq.delta, g * eq.N):
        if X % g:
            continue
        p = X // g
        assert eq.holds(p, y)
        for cand in ((p, y), (p, -y)):
            reps.add(canonical_rep(aut, eq, cand))
    return tuple(PellOrbit(pq, i) for i, pq in enumerate(sorted(reps, key=_key)))


def enumerate_bounded(eq: FormEquation, q_max: int) -> List[Pair]:
    out = []
    g, dl, N = eq.gamma, eq.delta, eq.N
    for q in range(q_max + 1):
        num = N + dl * q * q
        if num < 0 or num % g:
            continue
        p2 = num // g
        p = isqrt(p2)
        if p * p != p2:
            continue
        for pp in {p, -p}:
            for qq in {q, -q}:
                out.append((pp, qq))
    return sorted(out)


def orbit_closure(eq: FormEquation, orbits, q_max: int) -> List[Pair]:
    """All orbit members (with negations) having |q| <= q_max."""
    aut = fundamental_automorph(eq.gamma, eq.delta)
    found = set()
    for orb in orbits:
        rep = orb.representative
        if isinstance(aut, SquareDiscriminant):
            if abs(rep[1]) <= q_max:
                found.add(rep)
            continue
        for step in (1, -1):
            w = rep if step == 1 else act(aut, eq, rep, -1)
            # |q| is unimodal along the orbit with its minimum at (or next to) rep
            grew = 0
            while grew < 2:
                if abs(w[1]) <= q_max:
                    found.add(w)
                    found.add((-w[0], -w[1]))
                    grew = 0
                else:
                    grew += 1
                w = act(aut, eq, w, step)
    return sorted(found)


def residue_cycle(aut: Automorph, eq: FormEquation, start: Pair, M: int) -> List[Pair]:
    t, du, gu = aut.t % M, (eq.delta * aut.u) % M, (eq.gamma * aut.u) % M
    s0 = (start[0] % M, start[1] % M)
    states = [s0]
    p, q = s0
    while True:
        p, q = (t * p + du * q) % M, (gu * p + t * q) % M
        if (p, q) == s0:
            return states
        states.append((p, q))


def small_solutions(eq: FormEquation, q_max: int) -> List[Pair]:
    """Solutions with |q| <= q_max ordered by (|q|, |p|, p > 0, q >= 0)."""
    return sorted(enumerate_bounded(eq, q_max), key=_key)


def exists_solution_with_congruences(eq: FormEquation, predicate: Callable[[int, int], bool],
                                     modulus: int, probe: int = 3) -> Optional[Pair]:
    """Exact witness (p, q) of the equation with predicate(p mod M, q mod M), or None.

    The automorph acts on residues mod M by an invertible matrix, so each
    orbit is a finite cycle there; scanning every cycle state with both signs
    decides existence.  Solutions with |q| <= probe are tried first (no
    orbit computation needed); after that witnesses are searched by
    increasing exponent so the returned one is as small as the search allows.
    """
    M = modulus
    for p, q in small_solutions(eq, probe):
        hit = predicate(p % M, q % M)
        if bool(hit) != bool(predicate(p, q)):
            raise PredicateContract(f"predicate is not a function of residues mod {M}")
        if hit:
            return p, q
    orbits = solve_orbits(eq)
    for orb in orbits:
        p, q = orb.representative
        if bool(predicate(p, q)) != bool(predicate(p % M, q % M)):
            raise PredicateContract(f"predicate is not a function of residues mod {M}")
    # exponent 0 first: cheap, and it settles most instances
    for orb in orbits:
        p, q = orb.representative
        for sign in (1, -1):
            if predicate((sign * p) % M, (sign * q) % M):
                return sign * p, sign * q
    aut = fundamental_automorph(eq.gamma, eq.delta)
    if isinstance(aut, SquareDiscriminant):
        return None
    cycles = [residue_cycle(aut, eq, orb.representative, M) for orb in orbits]
    horizon = max((len(c) for c in cycles), default=0) // 2 + 1
    for k in range(horizon):
        for orb, cyc in zip(orbits, cycles):
            L = len(cyc)
            if k > L // 2:
                continue
            for exp in ((k,) if k == 0 else (k, -k)):
                sp, sq = cyc[exp % L]
                for sign in (1, -1):
                    if predicate((sign * sp) % M, (sign * sq) % M):
                        p, q = act(aut, eq, orb.representative, exp)
                        return sign * p, sign * q
    return None
