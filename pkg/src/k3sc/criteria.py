"""Condition systems for the rank-2 isomorphism criterion.

Three equivalent layers are implemented side by side so they can be
cross-checked:

* conditions on the coordinates (x, y) of a candidate nef element,
* conditions on (alpha, p, q) after the associated-solution substitution,
* the final general/singular systems on (p1, q1) for the a- and b-series,

plus their element-level form (a witness h1 in the lattice), the formula
for the image nef element, and literal restatements for gamma = 1, 2.

Clause identifiers are stable strings; every system returns a
ConditionReport with one entry per evaluated clause.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from .arith import gcd, is_squarefree, isqrt, lcm, p_component, prime_divisors, square_prime_divisors, squarefree_decompose
from .errors import (AlphaNotSquareFree, ContextError, DivisibilityError, EquationMismatch,
                     NonIntegralImage, NonIntegralSubstitution, NotInLattice, WrongGamma)
from .lattice import (LatticeElement, PolarizedLattice2, contains, divide, gamma_of, inner_with_P,
                      inner_with_f, is_primitive, make_lattice, norm)
from .mukai import GammaSplit, MukaiInvariants, derive_invariants, split_gamma

A, B = "A", "B"
SERIES = (A, B)


class SeriesChoice(NamedTuple):
    series: str
    eps: int


BRANCHES = (SeriesChoice(A, 1), SeriesChoice(A, -1), SeriesChoice(B, 1), SeriesChoice(B, -1))


class Clause(NamedTuple):
    clause_id: str
    description: str
    passed: bool


@dataclass(frozen=True)
class ConditionReport:
    passed: bool
    clauses: Tuple[Clause, ...]
    info: Dict[str, int] = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, clauses, **info) -> "ConditionReport":
        clauses = tuple(clauses)
        return cls(all(c.passed for c in clauses), clauses, dict(info))

    def failed(self) -> List[Clause]:
        return [c for c in self.clauses if not c.passed]

    def __bool__(self):
        return self.passed


def _div(num: int, den: int, m: int) -> bool:
    """num/den is an integer divisible by m (den, m > 0)."""
    return num % (den * m) == 0


# --------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class Context:
    inv: MukaiInvariants
    split: GammaSplit
    delta: int
    mu: int

    @property
    def a1(self) -> int:
        return self.inv.a1

    @property
    def b1(self) -> int:
        return self.inv.b1

    @property
    def c(self) -> int:
        return self.inv.c

    @property
    def gamma(self) -> int:
        return self.split.gamma

    @property
    def n_x(self) -> int:
        return self.split.n_x

    @property
    def lattice(self) -> PolarizedLattice2:
        return _lattice(self.split.n_x, self.split.gamma, self.delta, self.mu)

    def sides(self, series: str):
        """(own, other, gamma_own, gamma_other): a-side first for the a-series."""
        s, i = self.split, self.inv
        if series == A:
            return i.a1, i.b1, s.gamma_a, s.gamma_b
        if series == B:
            return i.b1, i.a1, s.gamma_b, s.gamma_a
        raise ValueError(f"unknown series {series!r}")


@lru_cache(maxsize=4096)
def _lattice(n, g, dl, mu) -> PolarizedLattice2:
    return make_lattice(n, g, dl, mu)


def canonical_mu(mu: int, n: int) -> int:
    mu %= n
    return min(mu, (n - mu) % n)


def context_from(inv: MukaiInvariants, split: GammaSplit, delta: int, mu: int) -> Context:
    c, g = inv.c, split.gamma
    if gcd(c, inv.d * g) != 1:
        raise ContextError(f"gcd(c, d*gamma) = gcd({c}, {inv.d * g}) != 1")
    if delta < 1:
        raise ContextError(f"delta={delta} must be positive")
    n = split.n_x
    if gcd(mu, n) != 1:
        raise ContextError(f"mu={mu} is not a unit modulo n={n}")
    if (delta - g * mu * mu) % (2 * n):
        raise ContextError(f"delta={delta} is not congruent to gamma*mu^2 modulo 4a1b1c^2/gamma={2 * n}")
    return Context(inv, split, delta, canonical_mu(mu, n))


def make_context(r: int, s: int, d: int, gamma: int, delta: int, mu: int) -> Context:
    try:
        inv = derive_invariants((r, s, d))
        split = split_gamma(inv, gamma)
    except ValueError as exc:
        raise ContextError(str(exc)) from exc
    return context_from(inv, split, delta, mu)


def rhs(ctx: Context, choice: SeriesChoice) -> int:
    own, _, g_own, g_other = ctx.sides(choice.series)
    return choice.eps * 2 * ctx.split.e2 * (own // g_own) * g_other * ctx.c


def series_equation(ctx: Context, choice: SeriesChoice):
    from .pell import FormEquation
    return FormEquation(ctx.gamma, ctx.delta, rhs(ctx, choice))


# --------------------------------------------------------------------------
# final systems on (p1, q1)


class _PQClause(NamedTuple):
    clause_id: str
    description: str
    modulus: int  # the clause depends on (p1, q1) modulo this only
    test: Callable[[int, int], bool]


@lru_cache(maxsize=4096)
def general_clauses(ctx: Context, series: str) -> Tuple[_PQClause, ...]:
    own, other, g_own, _ = ctx.sides(series)
    g, mu = ctx.gamma, ctx.mu
    tag = series + "G"
    m0 = ctx.split.e2 * (own // g_own) * ctx.c
    out = [_PQClause(f"{tag}.member", f"p1 - mu q1 = 0 mod {m0}", m0,
                     lambda p, q: (p - mu * q) % m0 == 0)]
    for l in square_prime_divisors(other):
        if g % l == 0:
            continue
        ml = m0 * l
        out.append(_PQClause(f"{tag}.sharp[l={l}]", f"p1 - mu q1 != 0 mod {ml}", ml,
                             lambda p, q, ml=ml: (p - mu * q) % ml != 0))
    for l in square_prime_divisors(own):
        if g % l == 0:
            continue
        out.append(_PQClause(f"{tag}.coprime[l={l}]", f"{l} does not divide p1", l,
                             lambda p, q, l=l: p % l != 0))
    return tuple(out)


@lru_cache(maxsize=4096)
def singular_clauses(ctx: Context, series: str) -> Tuple[_PQClause, ...]:
    own, other, g_own, g_other = ctx.sides(series)
    g, mu, dl = ctx.gamma, ctx.mu, ctx.delta
    s2 = ctx.split.gamma_2
    tag = series + "S"
    out: List[_PQClause] = []
    twist = dl - g * mu * mu
    for l in prime_divisors(g):
        if l == 2:
            continue
        if own % (l * l) == 0:
            mod = (p_component(own, l) // p_component(g_own, l)) * l
            alt = dl % l != 0 or twist % mod != 0
            out.append(_PQClause(f"{tag}.odd-own-square[l={l}]",
                                 f"q1 != 0 mod {l} and (delta != 0 mod {l} or delta - gamma mu^2 != 0 mod {mod})",
                                 l, lambda p, q, l=l, alt=alt: q % l != 0 and alt))
        if other % l == 0:
            gl = p_component(g_other, l)
            out.append(_PQClause(f"{tag}.odd-other[l={l}]", f"q1 = 0 mod {gl}", gl,
                                 lambda p, q, gl=gl: q % gl == 0))
        if other % (l * l) == 0:
            out.append(_PQClause(f"{tag}.odd-other-square[l={l}]", f"p1 != 0 mod {l}", l,
                                 lambda p, q, l=l: p % l != 0))
    if g % 2 == 0:
        if s2 == 1 and own % 2 == 0:
            out.append(_PQClause(f"{tag}.two-own-even", "p1 odd", 2, lambda p, q: p % 2 == 1))
        if s2 == 1 and own % 4 == 0:
            mod = 8 * ctx.a1 * ctx.b1 * ctx.c ** 2 // g
            ok = twist % mod != 0
            out.append(_PQClause(f"{tag}.two-own-four", f"delta - gamma mu^2 != 0 mod {mod}", 1,
                                 lambda p, q, ok=ok: ok))
        if s2 == 1 and other % 2 == 0:
            g2 = p_component(g_other, 2)
            out.append(_PQClause(f"{tag}.two-other-even", f"p1 - mu q1 != 0 mod 4 and q1 = 0 mod {g2}",
                                 lcm(4, g2), lambda p, q, g2=g2: (p - mu * q) % 4 != 0 and q % g2 == 0))
        if s2 == 2 and other % 2 == 0:
            h = p_component(g, 2) // 2
            out.append(_PQClause(f"{tag}.two2-other-even", f"p1 odd and q1 = 0 mod {h}",
                                 lcm(2, h), lambda p, q, h=h: p % 2 == 1 and q % h == 0))
    return tuple(out)


def series_clauses(ctx: Context, series: str) -> Tuple[_PQClause, ...]:
    return general_clauses(ctx, series) + singular_clauses(ctx, series)


def series_modulus(ctx: Context, series: str) -> int:
    return lcm(*(c.modulus for c in series_clauses(ctx, series)))


def series_predicate(ctx: Context, series: str) -> Callable[[int, int], bool]:
    tests = [c.test for c in series_clauses(ctx, series)]
    return lambda p, q: all(t(p, q) for t in tests)


def _check_eq(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> None:
    if ctx.gamma * p1 * p1 - ctx.delta * q1 * q1 != rhs(ctx, choice):
        raise EquationMismatch(f"({p1}, {q1}) does not solve gamma p^2 - delta q^2 = {rhs(ctx, choice)}")


def _report(clauses, p1, q1) -> ConditionReport:
    return ConditionReport.of(Clause(c.clause_id, c.description, bool(c.test(p1, q1))) for c in clauses)


def check_general(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> ConditionReport:
    _check_eq(ctx, choice, p1, q1)
    return _report(general_clauses(ctx, choice.series), p1, q1)


def check_singular(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> ConditionReport:
    _check_eq(ctx, choice, p1, q1)
    return _report(singular_clauses(ctx, choice.series), p1, q1)


def check_series(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> ConditionReport:
    _check_eq(ctx, choice, p1, q1)
    return _report(series_clauses(ctx, choice.series), p1, q1)


def check_AG(ctx, p1, q1, eps=1):
    return check_general(ctx, SeriesChoice(A, eps), p1, q1)


def check_BG(ctx, p1, q1, eps=1):
    return check_general(ctx, SeriesChoice(B, eps), p1, q1)


def check_AS(ctx, p1, q1, eps=1):
    return check_singular(ctx, SeriesChoice(A, eps), p1, q1)


def check_BS(ctx, p1, q1, eps=1):
    return check_singular(ctx, SeriesChoice(B, eps), p1, q1)


# --------------------------------------------------------------------------
# conditions on (x, y)


def xy_equation_rhs(ctx: Context) -> int:
    return 4 * (ctx.a1 * ctx.b1 * ctx.c) ** 2 // ctx.gamma


def check_xy(ctx: Context, x: int, y: int, series: str) -> ConditionReport:
    """Conditions on the numerators (x, y) of a candidate nef element of square 2a1b1.

    beta = +1/-1 is tried in turn for the two discriminant-matching systems;
    the report records the first beta for which both hold (0 if none).
    """
    g, dl, mu, c = ctx.gamma, ctx.delta, ctx.mu, ctx.c
    if g * x * x - dl * y * y != xy_equation_rhs(ctx):
        raise EquationMismatch(f"({x}, {y}) does not solve gamma x^2 - delta y^2 = {xy_equation_rhs(ctx)}")
    sgn = 1 if series == A else -1
    ab = ctx.a1 * ctx.b1
    two_ab = 2 * ab
    n = ctx.n_x
    ny = two_ab // g
    m = ctx.inv.m_ab
    cl = [
        Clause("xy.i.member", "x = mu y mod n", (x - mu * y) % n == 0),
        Clause("xy.i.pairing", "mu gamma x = delta y mod 2a1b1c^2", (mu * g * x - dl * y) % (two_ab * c * c) == 0),
        Clause("xy.ii.first", "sign m mu x + delta y/gamma = 0 mod 2a1b1/gamma",
               _div(g * sgn * m * mu * x + dl * y, g, ny)),
        Clause("xy.ii.second", "x + sign m mu y = 0 mod 2a1b1/gamma", (x + sgn * m * mu * y) % ny == 0),
        Clause("xy.ii.third", "the two previous quotients agree modulo n",
               _div(g * sgn * m * mu * x + dl * y - g * mu * (x + sgn * m * mu * y), g, n * ny)),
    ]
    beta_ok = 0
    per_beta = {}
    for beta in (1, -1):
        num_v = m * g * x + sgn * mu * g * y - two_ab * beta * c
        num_w = dl * m * y + sgn * mu * g * x - two_ab * beta * mu * c
        first = (_div(num_v, two_ab, g) and _div(num_w, two_ab, dl)
                 and _div(dl * num_v - mu * g * num_w, two_ab, two_ab * c * c * dl))
        k = sgn * beta
        second = ((c * dl * y) % g == 0
                  and (c * x - k * two_ab * c * c // g) % dl == 0
                  and (dl * y - mu * (g * x - k * two_ab * c)) % (two_ab * c * dl) == 0)
        per_beta[beta] = (first, second)
        if first and second and not beta_ok:
            beta_ok = beta
    shown = beta_ok or 1
    cl.append(Clause("xy.iii.dual-generic", f"discriminant match on the generic dual generator (beta={shown})",
                     per_beta[shown][0]))
    cl.append(Clause("xy.iii.dual-kernel", f"discriminant match on the kernel dual generator (beta={shown})",
                     per_beta[shown][1]))
    cl.append(Clause("xy.iii.joint", "one beta satisfies both systems", beta_ok != 0))
    if (x - mu * y) % n == 0:
        prim = gcd(x, y, (x - mu * y) // n) == 1
    else:
        prim = False
    cl.append(Clause("xy.iv.primitive", "gcd(x, y, (x - mu y)/n) = 1", prim))
    if (mu * g * x - dl * y) % n == 0:
        gam = gcd(g * x, dl * y, (mu * g * x - dl * y) // n) == g
    else:
        gam = False
    cl.append(Clause("xy.v.gamma", "gamma of the element equals gamma", gam))
    return ConditionReport.of(cl, beta=beta_ok)


# --------------------------------------------------------------------------
# associated solutions and conditions on (alpha, p, q)


def _check_alpha(ctx: Context, alpha: int, p: int, q: int) -> None:
    if not is_squarefree(alpha):
        raise AlphaNotSquareFree(f"alpha={alpha} is not square-free")
    k = 2 * ctx.a1 * ctx.b1 * ctx.c
    if k % alpha:
        raise EquationMismatch(f"alpha={alpha} does not divide 2a1b1c={k}")
    if p * p - ctx.gamma * ctx.delta * q * q != 2 * k // alpha:
        raise EquationMismatch(f"(p,q)=({p},{q}) does not solve p^2 - gamma delta q^2 = {2 * k // alpha}")


def associated_xy(ctx: Context, alpha: int, p: int, q: int) -> Tuple[int, int]:
    """The + branch (2a1b1c/gamma + alpha delta q^2, alpha p q)."""
    _check_alpha(ctx, alpha, p, q)
    return 2 * ctx.a1 * ctx.b1 * ctx.c // ctx.gamma + alpha * ctx.delta * q * q, alpha * p * q


def normalize_sign(x: int, y: int) -> Tuple[int, int]:
    return (x, y) if (x > 0 or (x == 0 and y >= 0)) else (-x, -y)


def associated_xy_from_pq(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> Tuple[int, int]:
    _check_eq(ctx, choice, p1, q1)
    own, other, g_own, g_other = ctx.sides(choice.series)
    k = choice.eps * (other // g_other) * ctx.split.gamma_2 * g_own
    return -2 * ctx.a1 * ctx.b1 * ctx.c // ctx.gamma + k * p1 * p1, k * p1 * q1


def alpha_pq_from_p1q1(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> Tuple[int, int, int]:
    """(alpha, p, q) with alpha = eps*other/t^2, p = gamma_2 gamma_own t p1, q = t q1/gamma_other."""
    _check_eq(ctx, choice, p1, q1)
    own, other, g_own, g_other = ctx.sides(choice.series)
    dec = squarefree_decompose(other)
    t = dec.root
    if (t * q1) % g_other:
        raise NonIntegralSubstitution(f"q = {t}*{q1}/{g_other} is not an integer")
    return choice.eps * dec.squarefree, ctx.split.gamma_2 * g_own * t * p1, t * q1 // g_other


def p1q1_from_alpha_pq(ctx: Context, series: str, alpha: int, p: int, q: int) -> Optional[Tuple[int, int, int]]:
    """Inverse substitution; returns (eps, p1, q1) or None when it is not integral."""
    own, other, g_own, g_other = ctx.sides(series)
    if other % alpha:
        return None
    t2 = other // abs(alpha)
    t = isqrt(t2)
    if t * t != t2:
        return None
    den = ctx.split.gamma_2 * g_own * t
    if p % den or (q * g_other) % t:
        return None
    return (1 if alpha > 0 else -1), p // den, q * g_other // t


def check_Gprime(ctx: Context, alpha: int, p: int, q: int) -> ConditionReport:
    _check_alpha(ctx, alpha, p, q)
    g, dl, mu, c = ctx.gamma, ctx.delta, ctx.mu, ctx.c
    ab = ctx.a1 * ctx.b1
    K = 4 * ab * c * c
    e = p - mu * g * q
    s = alpha * (p * p + g * dl * q * q)
    cl = [
        Clause("G'.square", "alpha (p - mu gamma q)^2 = 0 mod 4a1b1c^2", (alpha * e * e) % K == 0),
        Clause("G'.twist", "2 alpha p q (delta - gamma mu^2) = 0 mod 4a1b1c^2", (2 * alpha * p * q * (dl - g * mu * mu)) % K == 0),
        Clause("G'.kernel", "alpha q (p - mu gamma q) = 0 mod 2a1b1c", (alpha * q * e) % (2 * ab * c) == 0),
    ]
    for l in square_prime_divisors(ab):
        system = (s % (2 * g * l) == 0 and (alpha * p * q) % l == 0
                  and (s - 2 * alpha * g * mu * p * q) % (K * l) == 0)
        cl.append(Clause(f"G'.primitive[l={l}]", "divisibility system by l fails", not system))
    for l in prime_divisors(2 * ab // g):
        system = (s % (2 * g * l) == 0 and (dl * alpha * p * q) % (g * l) == 0
                  and (mu * s - 2 * alpha * dl * p * q) % (K * l) == 0)
        cl.append(Clause(f"G'.gamma[l={l}]", "gamma-growth system by l fails", not system))
    return ConditionReport.of(cl)


def check_series_prime(ctx: Context, series: str, alpha: int, p: int, q: int) -> ConditionReport:
    _check_alpha(ctx, alpha, p, q)
    own, other, g_own, g_other = ctx.sides(series)
    g, dl, mu, c = ctx.gamma, ctx.delta, ctx.mu, ctx.c
    g2 = ctx.split.gamma_2
    big = 2 * ctx.a1 * ctx.b1 * c * c
    e = p - mu * g * q
    tw = dl - mu * mu * g
    t = series + "'"
    cl = [
        Clause(f"{t}.1", "alpha (gamma_other q)^2 = 0 mod other", (alpha * (g_other * q) ** 2) % other == 0),
        Clause(f"{t}.2", "mu alpha p^2 - alpha(delta + mu^2 gamma) p q + mu alpha gamma delta q^2 = 0",
               (mu * alpha * p * p - alpha * (dl + mu * mu * g) * p * q + mu * alpha * g * dl * q * q)
               % (big * (2 * own // (g2 * g_own))) == 0),
        Clause(f"{t}.3", "alpha (delta - mu^2 gamma) p q = 0", (alpha * tw * p * q) % (big * (2 * other // (g2 * g_other))) == 0),
        Clause(f"{t}.4", "alpha p (p - mu gamma q) = 0 mod 2 own gamma", (alpha * p * e) % (2 * own * g) == 0),
        Clause(f"{t}.5", "alpha delta q^2 + alpha mu p q = 0 mod 2 other", (alpha * dl * q * q + alpha * mu * p * q) % (2 * other) == 0),
        Clause(f"{t}.6", "-alpha p q + alpha mu gamma q^2 = 0 mod 2 own", (-alpha * p * q + alpha * mu * g * q * q) % (2 * own) == 0),
        Clause(f"{t}.7", "alpha p q + alpha mu gamma q^2 = 0 mod 2 other", (alpha * p * q + alpha * mu * g * q * q) % (2 * other) == 0),
        Clause(f"{t}.8", "alpha (p - mu gamma q)^2 = 0 mod 2a1b1c^2 * 2 own", (alpha * e * e) % (big * 2 * own) == 0),
        Clause(f"{t}.9", "alpha gamma q^2 (delta - gamma mu^2) = 0 mod 2a1b1c^2 * 2 other",
               (alpha * g * q * q * (dl - g * mu * mu)) % (big * 2 * other) == 0),
    ]
    return ConditionReport.of(cl)


def check_Aprime(ctx, alpha, p, q):
    return check_series_prime(ctx, A, alpha, p, q)


def check_Bprime(ctx, alpha, p, q):
    return check_series_prime(ctx, B, alpha, p, q)


# --------------------------------------------------------------------------
# element form


def _t(ctx: Context, series: str) -> int:
    own, other, g_own, g_other = ctx.sides(series)
    return (other // g_other) * ctx.c


def element_from_pq(ctx: Context, choice: SeriesChoice, p1: int, q1: int) -> LatticeElement:
    t = _t(ctx, choice.series)
    h = LatticeElement(t * p1, t * q1)
    if not contains(ctx.lattice, h):
        raise NotInLattice(f"t*(p1, q1) = {tuple(h)} is not in the lattice")
    return h


def element_to_pq(ctx: Context, choice: SeriesChoice, h) -> Tuple[int, int]:
    lat = ctx.lattice
    t = _t(ctx, choice.series)
    hp = inner_with_P(lat, h)
    hf = inner_with_f(lat, h)
    if hp % (ctx.gamma * t):
        raise DivisibilityError(f"P.h = {hp} is not divisible by gamma*t = {ctx.gamma * t}")
    if hf % (ctx.delta * t):
        raise DivisibilityError(f"f.h = {hf} is not divisible by delta*t = {ctx.delta * t}")
    return hp // (ctx.gamma * t), -hf // (ctx.delta * t)


def check_element(ctx: Context, choice: SeriesChoice, h) -> ConditionReport:
    lat = ctx.lattice
    if not contains(lat, h):
        raise NotInLattice(f"{tuple(h)} is not a lattice member")
    own, other, g_own, g_other = ctx.sides(choice.series)
    g = ctx.gamma
    t = _t(ctx, choice.series)
    target = choice.eps * 2 * other * ctx.c
    hp = inner_with_P(lat, h)
    cl = [
        Clause("elem.norm", f"h^2 = {target}", norm(lat, h) == target),
        Clause("elem.pairing", f"P.h = 0 mod {g * t}", hp % (g * t) == 0),
    ]
    for l in square_prime_divisors(own):
        if g % l:
            cl.append(Clause(f"elem.pairing-sharp[l={l}]", f"P.h != 0 mod {g * t * l}", hp % (g * t * l) != 0))
    for l in square_prime_divisors(other):
        if g % l:
            cl.append(Clause(f"elem.indivisible[l={l}]", f"h/{l} is not in the lattice", divide(lat, h, l) is None))
    info = {}
    if all(c.passed for c in cl):
        p1, q1 = element_to_pq(ctx, choice, h)
        info = {"p1": p1, "q1": q1}
        for c in singular_clauses(ctx, choice.series):
            cl.append(Clause(c.clause_id, c.description, bool(c.test(p1, q1))))
    return ConditionReport.of(cl, **info)


def nef_image(ctx: Context, choice: SeriesChoice, h) -> LatticeElement:
    """-P/c + eps (P.h) h / (other c^2), with its invariants verified."""
    lat = ctx.lattice
    if not contains(lat, h):
        raise NotInLattice(f"{tuple(h)} is not a lattice member")
    own, other, _, _ = ctx.sides(choice.series)
    c = ctx.c
    hp = inner_with_P(lat, h)
    den = other * c * c
    if (hp * h[0]) % den or (hp * h[1]) % den:
        raise NonIntegralImage(f"(P.h) h / {den} is not integral")
    z = LatticeElement(-ctx.n_x // c + choice.eps * hp * h[0] // den, choice.eps * hp * h[1] // den)
    if not contains(lat, z):
        raise NonIntegralImage(f"image {tuple(z)} is not a lattice member")
    return z


def nef_invariants_ok(ctx: Context, z) -> bool:
    lat = ctx.lattice
    return (contains(lat, z) and norm(lat, z) == 2 * ctx.a1 * ctx.b1
            and gamma_of(lat, z) == ctx.gamma and is_primitive(lat, z))


# --------------------------------------------------------------------------
# literal restatements for gamma = 1 and gamma = 2


def check_gamma1(ctx: Context, choice: SeriesChoice, h) -> ConditionReport:
    if ctx.gamma != 1:
        raise WrongGamma(f"gamma={ctx.gamma}, expected 1")
    lat = ctx.lattice
    a1, b1, c = ctx.a1, ctx.b1, ctx.c
    if choice.series == A:
        side, far = b1, a1
    else:
        side, far = a1, b1
    hp = inner_with_P(lat, h)
    cl = [Clause("g1.norm", "h^2 = 2 eps side c", norm(lat, h) == choice.eps * 2 * side * c),
          Clause("g1.pairing", "P.h = 0 mod side c", hp % (side * c) == 0)]
    cl += [Clause(f"g1.sharp[l={l}]", "P.h != 0 mod side c l", hp % (side * c * l) != 0)
           for l in square_prime_divisors(far)]
    cl += [Clause(f"g1.indivisible[l={l}]", "h/l not in lattice", divide(lat, h, l) is None)
           for l in square_prime_divisors(side)]
    return ConditionReport.of(cl)


def check_gamma2(ctx: Context, choice: SeriesChoice, h) -> ConditionReport:
    if ctx.gamma != 2:
        raise WrongGamma(f"gamma={ctx.gamma}, expected 2")
    lat = ctx.lattice
    a1, b1, c, dl, mu = ctx.a1, ctx.b1, ctx.c, ctx.delta, ctx.mu
    assert c % 2 == 1
    # mirror the b-even case onto the a-even one
    if a1 % 2 == 0 or b1 % 2 == 0:
        if a1 % 2 == 0:
            even, odd, even_is_own = a1, b1, choice.series == A
        else:
            even, odd, even_is_own = b1, a1, choice.series == B
    else:
        even = None
    hp = inner_with_P(lat, h)
    nrm = norm(lat, h)
    sq = square_prime_divisors
    if even is None:
        side, far = (b1, a1) if choice.series == A else (a1, b1)
        cl = [Clause("g2.norm", "h^2 = 2 eps side c", nrm == choice.eps * 2 * side * c),
              Clause("g2.pairing", "P.h = 0 mod 2 side c", hp % (2 * side * c) == 0)]
        cl += [Clause(f"g2.sharp[l={l}]", "P.h != 0 mod 2 side c l", hp % (2 * side * c * l) != 0) for l in sq(far)]
        cl += [Clause(f"g2.indivisible[l={l}]", "h/l not in lattice", divide(lat, h, l) is None) for l in sq(side)]
        return ConditionReport.of(cl)
    if even_is_own:
        # witness of square 2 eps odd c; the even side carries the singular clauses
        cl = [Clause("g2.norm", "h^2 = 2 eps odd c", nrm == choice.eps * 2 * odd * c),
              Clause("g2.pairing", "P.h = 0 mod 2 odd c", hp % (2 * odd * c) == 0)]
        cl += [Clause(f"g2.sharp[l={l}]", "P.h != 0 mod 2 odd c l", hp % (2 * odd * c * l) != 0)
               for l in sq(even) if l != 2]
        cl += [Clause(f"g2.indivisible[l={l}]", "h/l not in lattice", divide(lat, h, l) is None) for l in sq(odd)]
        cl.append(Clause("g2.singular-pairing", "P.h != 0 mod 4 odd c", hp % (4 * odd * c) != 0))
        if even % 4 == 0:
            cl.append(Clause("g2.singular-delta", "delta != 2 mu^2 mod 4 even", (dl - 2 * mu * mu) % (4 * even) != 0))
        return ConditionReport.of(cl)
    cl = [Clause("g2.norm", "h^2 = 2 eps even c", nrm == choice.eps * 2 * even * c),
          Clause("g2.pairing", "P.h = 0 mod even c", hp % (even * c) == 0)]
    cl += [Clause(f"g2.sharp[l={l}]", "P.h != 0 mod even c l", hp % (even * c * l) != 0) for l in sq(odd)]
    cl += [Clause(f"g2.indivisible[l={l}]", "h/l not in lattice", divide(lat, h, l) is None)
           for l in sq(even) if l != 2]
    cl.append(Clause("g2.singular-pairing", "P.h = 0 mod 2 even c", hp % (2 * even * c) == 0))
    cl.append(Clause("g2.singular-half", "h/2 not in lattice", divide(lat, h, 2) is None))
    return ConditionReport.of(cl)


def check_specialized(ctx: Context, choice: SeriesChoice, h) -> ConditionReport:
    if ctx.gamma == 1:
        return check_gamma1(ctx, choice, h)
    if ctx.gamma == 2:
        return check_gamma2(ctx, choice, h)
    raise WrongGamma(f"no specialized checker for gamma={ctx.gamma}")
