"""Property sweeps that cross-check the condition layers against each other.

Each suite walks a deterministic family of contexts, compares two
independently computed answers and returns a SuiteResult.  The CLI maps a
nonzero counterexample count to exit status 3.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .arith import divisors, gcd, is_square, is_squarefree, isqrt, units
from .criteria import (A, B, BRANCHES, Context, SeriesChoice, alpha_pq_from_p1q1, associated_xy,
                       associated_xy_from_pq, check_element, check_series, check_series_prime,
                       check_Gprime, check_specialized, check_xy, context_from, nef_image,
                       nef_invariants_ok, normalize_sign, p1q1_from_alpha_pq, rhs, xy_equation_rhs)
from .decision import xy_solutions
from .errors import K3SCError
from .lattice import contains
from .mukai import derive_invariants, split_gamma
from .pell import FormEquation, enumerate_bounded, orbit_closure, solve_orbits

SUITES = ("bijection", "reduction", "specialization", "pell")


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    counterexamples: int = 0
    first: Optional[Dict] = None
    stats: Dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.counterexamples == 0

    def fail(self, **info) -> None:
        self.counterexamples += 1
        if self.first is None:
            self.first = info

    def bump(self, key: str, k: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + k


@dataclass(frozen=True)
class Scale:
    abc_max: int
    delta_max: int
    y_max: int
    q_max: int


SCALES = {
    "small": Scale(abc_max=2, delta_max=120, y_max=2000, q_max=60),
    "full": Scale(abc_max=3, delta_max=400, y_max=10 ** 4, q_max=200),
}


# --------------------------------------------------------------------------
# context families


def mukai_inputs(a1: int, b1: int, c: int, with_d: bool = True) -> List[Tuple[int, int, int]]:
    """(r, s, d) triples realizing the given (a1, b1, c); d = 1 first."""
    out = [(c * a1, c * b1, 1)]
    if with_d:
        for da, db in ((2, 1), (1, 2)):
            a, b, d = a1 * da * da, b1 * db * db, da * db
            if gcd(a, b) == 1 and gcd(c, d) == 1:
                out.append((c * a, c * b, d))
    return out


def mu_delta_pairs(n: int, gamma: int, delta_max: int) -> Iterator[Tuple[int, int]]:
    """Canonical unit classes mu mod n with every delta <= delta_max, delta = gamma mu^2 mod 2n."""
    for mu in units(n):
        if mu > n - mu and n > 2:
            continue
        d0 = (gamma * mu * mu) % (2 * n) or 2 * n
        for delta in range(d0, delta_max + 1, 2 * n):
            yield mu, delta


def iter_contexts(abc_max: int, gammas=(1, 2), delta_max: int = 400, with_d: bool = False) -> Iterator[Context]:
    for a1 in range(1, abc_max + 1):
        for b1 in range(1, abc_max + 1):
            if gcd(a1, b1) != 1:
                continue
            for c in range(1, abc_max + 1):
                for rsd in mukai_inputs(a1, b1, c, with_d):
                    inv = derive_invariants(rsd)
                    for g in gammas:
                        try:
                            split = split_gamma(inv, g)
                        except K3SCError:
                            continue
                        if gcd(c, inv.d * g) != 1:
                            continue
                        for mu, delta in mu_delta_pairs(split.n_x, g, delta_max):
                            yield context_from(inv, split, delta, mu)


def random_context(rng: random.Random, abc_max: int, gammas, delta_max: int) -> Context:
    while True:
        a1, b1, c = (rng.randint(1, abc_max) for _ in range(3))
        if gcd(a1, b1) != 1:
            continue
        r, s, d = rng.choice(mukai_inputs(a1, b1, c))
        inv = derive_invariants((r, s, d))
        g = rng.choice(gammas)
        try:
            split = split_gamma(inv, g)
        except K3SCError:
            continue
        if gcd(c, d * g) != 1:
            continue
        pairs = list(mu_delta_pairs(split.n_x, g, delta_max))
        if not pairs:
            continue
        mu, delta = rng.choice(pairs)
        return context_from(inv, split, delta, mu)


# --------------------------------------------------------------------------
# brute-force solution sets


def signed_alphas(ctx: Context) -> List[int]:
    ds = [v for v in divisors(2 * ctx.a1 * ctx.b1 * ctx.c) if is_squarefree(v)]
    return [s * v for v in ds for s in (1, -1)]


def alpha_pq_solutions(ctx: Context, q_max: int, y_max: Optional[int] = None) -> List[Tuple[int, int, int]]:
    """(alpha, p, q) with q >= 0 solving p^2 - gamma delta q^2 = 4a1b1c/alpha.

    q runs to q_max; with y_max set, the scan also stops once |alpha p q| > y_max.
    """
    gd = ctx.gamma * ctx.delta
    k4 = 4 * ctx.a1 * ctx.b1 * ctx.c
    out = []
    for alpha in signed_alphas(ctx):
        base = k4 // alpha
        for q in range(q_max + 1):
            p2 = base + gd * q * q
            if y_max is not None and q and abs(alpha) * q * isqrt(max(p2, 0)) > y_max and p2 > 0:
                break
            if not is_square(p2):
                continue
            p = isqrt(p2)
            for sp in {p, -p}:
                out.append((alpha, sp, q))
    return out


# --------------------------------------------------------------------------
# suites


def suite_bijection(scale: Scale, seed: int = 0) -> SuiteResult:
    res = SuiteResult("bijection")
    for ctx in iter_contexts(scale.abc_max, (1, 2), scale.delta_max):
        lhs = xy_solutions(ctx, scale.y_max, congruence=True)
        image = set()
        for alpha, p, q in alpha_pq_solutions(ctx, 10 ** 9, y_max=scale.y_max):
            x, y = associated_xy(ctx, alpha, p, q)
            if abs(y) <= scale.y_max:
                image.add((x, y))
                image.add((-x, -y))
        res.checked += 1
        res.bump("solutions", len(lhs))
        if lhs != image:
            res.fail(ctx=_ctx_dict(ctx), missing=sorted(lhs - image)[:5], extra=sorted(image - lhs)[:5])
    return res


def chain_verdicts(ctx: Context, series: str, alpha: int, p: int, q: int):
    """(xy verdict, primed verdict, final verdict, square quotient ok, derived (eps, p1, q1) or None)."""
    x, y = associated_xy(ctx, alpha, p, q)
    v_xy = check_xy(ctx, x, y, series).passed
    v_prime = check_Gprime(ctx, alpha, p, q).passed and check_series_prime(ctx, series, alpha, p, q).passed
    sub = p1q1_from_alpha_pq(ctx, series, alpha, p, q)
    v_final = False
    if sub is not None:
        eps, p1, q1 = sub
        v_final = check_series(ctx, SeriesChoice(series, eps), p1, q1).passed
    _, other, _, _ = ctx.sides(series)
    square_quotient = other % alpha == 0 and is_square(other // abs(alpha))
    return v_xy, v_prime, v_final, square_quotient, sub


def suite_reduction(scale: Scale, seed: int = 0) -> SuiteResult:
    res = SuiteResult("reduction")
    for ctx in iter_contexts(scale.abc_max, (1, 2), scale.delta_max, with_d=True):
        for alpha, p, q in alpha_pq_solutions(ctx, scale.q_max):
            for series in (A, B):
                res.checked += 1
                try:
                    v_xy, v_prime, v_final, square_quotient, sub = chain_verdicts(ctx, series, alpha, p, q)
                except K3SCError as exc:
                    res.fail(ctx=_ctx_dict(ctx), series=series, alpha=alpha, p=p, q=q, error=str(exc))
                    continue
                if v_xy:
                    res.bump("passing")
                if v_prime:
                    res.bump("square_quotient_checked")
                    if not square_quotient:
                        res.bump("square_quotient_failed")
                        res.fail(ctx=_ctx_dict(ctx), series=series, alpha=alpha, p=p, q=q, square_quotient=False)
                if not (v_xy == v_prime == v_final):
                    res.fail(ctx=_ctx_dict(ctx), series=series, alpha=alpha, p=p, q=q,
                             xy=v_xy, primed=v_prime, final=v_final)
                elif v_final:
                    eps, p1, q1 = sub
                    choice = SeriesChoice(series, eps)
                    back = associated_xy_from_pq(ctx, choice, p1, q1)
                    fwd = associated_xy(ctx, alpha, p, q)
                    if normalize_sign(*back) != normalize_sign(*fwd):
                        res.fail(ctx=_ctx_dict(ctx), series=series, alpha=alpha, p=p, q=q, back=back, fwd=fwd)
                    elif alpha_pq_from_p1q1(ctx, choice, p1, q1) != (alpha, p, q):
                        res.fail(ctx=_ctx_dict(ctx), series=series, alpha=alpha, p=p, q=q, roundtrip=False)
    return res


def series_elements(ctx: Context, choice: SeriesChoice, y_max: int):
    """Lattice members h with h^2 = 2 eps other c and |y| <= y_max (brute force)."""
    _, other, _, _ = ctx.sides(choice.series)
    target = choice.eps * 2 * other * ctx.c * ctx.n_x
    lat = ctx.lattice
    out = []
    for x, y in enumerate_bounded(FormEquation(ctx.gamma, ctx.delta, target), y_max):
        if contains(lat, (x, y)):
            out.append((x, y))
    return out


def suite_specialization(scale: Scale, seed: int = 0) -> SuiteResult:
    res = SuiteResult("specialization")
    for ctx in iter_contexts(scale.abc_max, (1, 2), scale.delta_max, with_d=True):
        for choice in BRANCHES:
            for h in series_elements(ctx, choice, scale.q_max):
                res.checked += 1
                general = check_element(ctx, choice, h)
                special = check_specialized(ctx, choice, h)
                if general.passed:
                    res.bump("accepted")
                    z = nef_image(ctx, choice, h)
                    if not nef_invariants_ok(ctx, z):
                        res.fail(ctx=_ctx_dict(ctx), choice=tuple(choice), h=h, image=tuple(z))
                        continue
                if general.passed != special.passed:
                    res.fail(ctx=_ctx_dict(ctx), choice=tuple(choice), h=h,
                             general=general.passed, special=special.passed)
    return res


def suite_pell(scale: Scale, seed: int = 0, count: int = 200, square_count: int = 50) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("pell")
    q_max = scale.y_max
    done = 0
    while done < count:
        g = rng.randint(1, 20)
        dl = rng.randint(1, 500 // g)
        if is_square(g * dl):
            continue
        N = rng.choice([-1, 1]) * rng.randint(1, 200)
        eq = FormEquation(g, dl, N)
        done += 1
        res.checked += 1
        brute = enumerate_bounded(eq, q_max)
        res.bump("nonempty", bool(brute))
        if brute != orbit_closure(eq, solve_orbits(eq), q_max):
            res.fail(equation=(g, dl, N))
    done = 0
    while done < square_count:
        e = rng.randint(1, 22)
        g = rng.choice([v for v in divisors(e * e) if v <= 40])
        dl = e * e // g
        N = rng.choice([-1, 1]) * rng.randint(1, 200)
        eq = FormEquation(g, dl, N)
        done += 1
        res.checked += 1
        # with a square discriminant every solution has |q| <= |g N|
        brute = enumerate_bounded(eq, abs(g * N))
        got = sorted(o.representative for o in solve_orbits(eq))
        if brute != got:
            res.fail(equation=(g, dl, N), square=True)
    return res


def run_suite(name: str, seed: int = 0, scale: str = "small") -> SuiteResult:
    fn = {"bijection": suite_bijection, "reduction": suite_reduction,
          "specialization": suite_specialization, "pell": suite_pell}[name]
    t0 = time.perf_counter()
    res = fn(SCALES[scale], seed)
    res.seconds = time.perf_counter() - t0
    return res


def _ctx_dict(ctx: Context) -> Dict[str, int]:
    i = ctx.inv
    return {"r": i.r, "s": i.s, "d": i.d, "gamma": ctx.gamma, "delta": ctx.delta, "mu": ctx.mu}
