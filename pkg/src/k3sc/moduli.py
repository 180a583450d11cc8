"""Divisorial conditions: the pairs (+-mu, delta) for which Y is isomorphic to X.

A label records the lattice data (mu, delta), the series/sign branch and a
witness (p1, q1).  Labels are produced by exact decisions, never sampled.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

from .arith import gcd, units
from .criteria import (BRANCHES, Context, SeriesChoice, canonical_mu, check_series, context_from, rhs,
                       series_equation, series_modulus, series_predicate)
from .decision import decide_context, find_witness
from .errors import ContextError, DegenerateWitness, K3SCError
from .mukai import derive_invariants, split_gamma
from .pell import Automorph, act, fundamental_automorph, residue_cycle, solve_orbits


class DivisorialLabel(NamedTuple):
    r: int
    s: int
    d: int
    gamma: int
    mu_class: int
    delta: int
    series: str
    eps: int
    witness: Tuple[int, int]

    @property
    def choice(self) -> SeriesChoice:
        return SeriesChoice(self.series, self.eps)

    def sort_key(self):
        return (self.delta, self.mu_class, self.series, self.eps)

    def context(self) -> Context:
        return _context(self.r, self.s, self.d, self.gamma, self.delta, self.mu_class)


def _base(r: int, s: int, d: int, gamma: int):
    try:
        inv = derive_invariants((r, s, d))
        split = split_gamma(inv, gamma)
    except (K3SCError, ValueError) as exc:
        raise ContextError(str(exc)) from exc
    if gcd(inv.c, d * gamma) != 1:
        raise ContextError(f"gcd(c, d*gamma) = gcd({inv.c}, {d * gamma}) != 1")
    return inv, split


def _context(r, s, d, gamma, delta, mu) -> Context:
    inv, split = _base(r, s, d, gamma)
    return context_from(inv, split, delta, mu)


def mu_classes(r: int, s: int, d: int, gamma: int) -> List[int]:
    """Canonical representatives min(mu, n - mu) of the units modulo n."""
    _, split = _base(r, s, d, gamma)
    n = split.n_x
    return sorted({canonical_mu(u, n) for u in units(n)})


def admissible_deltas(n: int, gamma: int, mu: int, delta_max: int) -> range:
    d0 = (gamma * mu * mu) % (2 * n) or 2 * n
    return range(d0, delta_max + 1, 2 * n)


def delta_set(r: int, s: int, d: int, gamma: int, mu: int, series: str, eps: int,
              delta_max: int) -> List[DivisorialLabel]:
    inv, split = _base(r, s, d, gamma)
    n = split.n_x
    if gcd(mu, n) != 1:
        raise ContextError(f"mu={mu} is not a unit modulo n={n}")
    mu = canonical_mu(mu, n)
    choice = SeriesChoice(series, eps)
    out = []
    for delta in admissible_deltas(n, gamma, mu, delta_max):
        ctx = context_from(inv, split, delta, mu)
        pq = find_witness(ctx, choice)
        if pq is not None:
            out.append(DivisorialLabel(r, s, d, gamma, mu, delta, series, eps, pq))
    return out


def delta_union(r: int, s: int, d: int, gamma: int, delta_max: int) -> List[DivisorialLabel]:
    out = []
    for mu in mu_classes(r, s, d, gamma):
        for choice in BRANCHES:
            out += delta_set(r, s, d, gamma, mu, choice.series, choice.eps, delta_max)
    return sorted(out, key=DivisorialLabel.sort_key)


def verify_label(label: DivisorialLabel) -> bool:
    """The witness solves its series equation and passes the full clause system."""
    try:
        ctx = label.context()
        return check_series(ctx, label.choice, *label.witness).passed
    except K3SCError:
        return False


def alternative_witness(label: DivisorialLabel) -> Optional[DivisorialLabel]:
    """Same label with a witness having q1 != 0, if one exists.

    Moving a witness by the period of the automorph modulo the clause modulus
    keeps all residues, so on a non-square discriminant a q1 = 0 witness is
    always replaceable.
    """
    if label.witness[1] != 0:
        return label
    ctx = label.context()
    choice = label.choice
    eq = series_equation(ctx, choice)
    pred = series_predicate(ctx, choice.series)
    aut = fundamental_automorph(eq.gamma, eq.delta)
    if isinstance(aut, Automorph):
        M = series_modulus(ctx, choice.series)
        period = len(residue_cycle(aut, eq, label.witness, M))
        p, q = act(aut, eq, label.witness, period)
        if pred(p, q):
            return label._replace(witness=(p, q))
        return None
    for orb in solve_orbits(eq):
        p, q = orb.representative
        if q != 0 and pred(p, q):
            return label._replace(witness=(p, q))
    return None


def generate_family(label: DivisorialLabel, count: int) -> List[DivisorialLabel]:
    """Further members from p = p0 mod 8a1b1c^2 q0^2 with q0 fixed; delta strictly increases."""
    if count <= 0:
        return []
    p0, q0 = label.witness
    if q0 == 0:
        raise DegenerateWitness("the witness has q1 = 0, so delta = (gamma p^2 - rhs)/q1^2 is undefined")
    if p0 < 0:
        p0, q0 = -p0, -q0  # the clause systems are invariant under (p, q) -> (-p, -q)
    ctx = label.context()
    k = rhs(ctx, label.choice)
    step = 8 * ctx.a1 * ctx.b1 * ctx.c ** 2 * q0 * q0
    out = []
    p = p0
    while len(out) < count:
        p += step
        num = ctx.gamma * p * p - k
        assert num > 0 and num % (q0 * q0) == 0
        member = label._replace(delta=num // (q0 * q0), witness=(p, q0))
        if not verify_label(member):
            raise AssertionError(f"generated member {member} fails re-verification")
        out.append(member)
    return out


@dataclass
class GammaOneEvidence:
    r: int
    s: int
    d: int
    delta_max: int
    first: Optional[DivisorialLabel] = None
    family: List[DivisorialLabel] = field(default_factory=list)
    note: str = ""

    @property
    def found(self) -> bool:
        return self.first is not None

    @property
    def inconclusive(self) -> bool:
        return self.first is None


def gamma1_nonempty(r: int, s: int, d: int, delta_max: int, family_size: int = 10) -> GammaOneEvidence:
    """Search gamma = 1 for a member with delta <= delta_max; an empty result is only inconclusive."""
    ev = GammaOneEvidence(r, s, d, delta_max)
    try:
        labels = delta_union(r, s, d, 1, delta_max)
    except ContextError as exc:
        ev.note = f"invalid data: {exc}"
        return ev
    if not labels:
        ev.note = f"no member with delta <= {delta_max}; inconclusive"
        return ev
    ev.first = labels[0]
    seed = alternative_witness(ev.first)
    if seed is None:
        ev.note = "only degenerate witnesses (q1 = 0) for the first member"
        return ev
    ev.family = generate_family(seed, family_size)
    return ev


def decide_label(label: DivisorialLabel) -> bool:
    """Round trip through the main decision procedure."""
    return decide_context(label.context()).yes
