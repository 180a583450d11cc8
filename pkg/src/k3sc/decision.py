"""Top-level verdicts: the Picard rank one test, the rank two test and a brute-force oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

from .arith import isqrt
from .criteria import (A, B, BRANCHES, ConditionReport, Context, SeriesChoice, associated_xy_from_pq,
                       check_element, check_series, check_xy, element_from_pq, make_context, nef_image,
                       series_equation, series_modulus, series_predicate, xy_equation_rhs)
from .lattice import LatticeElement
from .mukai import derive_invariants
from .pell import exists_solution_with_congruences


def decide_rho1(r: int, s: int, d: int) -> bool:
    """Y is isomorphic to X for general X of Picard rank one iff c = 1 and a1 = 1 or b1 = 1."""
    inv = derive_invariants((r, s, d))
    return inv.c == 1 and (inv.a1 == 1 or inv.b1 == 1)


@dataclass
class Verdict:
    yes: bool
    context: Context
    choice: Optional[SeriesChoice] = None
    p1: Optional[int] = None
    q1: Optional[int] = None
    element: Optional[LatticeElement] = None
    image: Optional[LatticeElement] = None
    series_report: Optional[ConditionReport] = None
    element_report: Optional[ConditionReport] = None
    branches: List[Tuple[SeriesChoice, bool]] = field(default_factory=list)

    @property
    def witness(self) -> Optional[Tuple[int, int]]:
        return None if self.p1 is None else (self.p1, self.q1)

    def xy(self) -> Optional[Tuple[int, int]]:
        """Coordinates (x, y) of the nef element of Y attached to the witness."""
        if not self.yes:
            return None
        return associated_xy_from_pq(self.context, self.choice, self.p1, self.q1)


def find_witness(ctx: Context, choice: SeriesChoice) -> Optional[Tuple[int, int]]:
    """A solution of the series equation passing the general and singular systems, or None."""
    eq = series_equation(ctx, choice)
    return exists_solution_with_congruences(eq, series_predicate(ctx, choice.series),
                                            series_modulus(ctx, choice.series))


def decide_context(ctx: Context) -> Verdict:
    branches = []
    for choice in BRANCHES:
        pq = find_witness(ctx, choice)
        branches.append((choice, pq is not None))
        if pq is None:
            continue
        p1, q1 = pq
        h = element_from_pq(ctx, choice, p1, q1)
        return Verdict(True, ctx, choice, p1, q1, h, nef_image(ctx, choice, h),
                       check_series(ctx, choice, p1, q1), check_element(ctx, choice, h), branches)
    return Verdict(False, ctx, branches=branches)


def decide_rho2(r: int, s: int, d: int, gamma: int, delta: int, mu: int) -> Verdict:
    """Decide Y = X for the rank two lattice data; YES carries an explicit witness."""
    return decide_context(make_context(r, s, d, gamma, delta, mu))


# --------------------------------------------------------------------------
# oracle


def xy_solutions(ctx: Context, y_max: int, congruence: bool = False) -> Set[Tuple[int, int]]:
    """All (x, y) with gamma x^2 - delta y^2 = 4a1^2b1^2c^2/gamma and |y| <= y_max.

    With congruence=True only x = +-2a1b1c/gamma mod delta is kept.
    """
    g, dl = ctx.gamma, ctx.delta
    K = xy_equation_rhs(ctx)
    k = 2 * ctx.a1 * ctx.b1 * ctx.c // g
    out = set()
    for y in range(y_max + 1):
        num = K + dl * y * y
        if num % g:
            continue
        x2 = num // g
        x = isqrt(x2)
        if x * x != x2:
            continue
        if congruence and (x - k) % dl and (x + k) % dl:
            continue
        for sx in {x, -x}:
            for sy in {y, -y}:
                out.add((sx, sy))
    return out


@dataclass
class OracleVerdict:
    yes: bool
    bound: int
    series: Optional[str] = None
    x: Optional[int] = None
    y: Optional[int] = None
    report: Optional[ConditionReport] = None


def oracle_context(ctx: Context, bound: int) -> OracleVerdict:
    """Direct search over (x, y) with |y| <= bound; NO only means none within the bound."""
    sols = sorted(xy_solutions(ctx, bound), key=lambda v: (abs(v[1]), abs(v[0]), -v[0], -v[1]))
    for x, y in sols:
        if x < 0 or (x == 0 and y < 0):
            continue  # the conditions are invariant under (x, y) -> (-x, -y)
        for series in (A, B):
            rep = check_xy(ctx, x, y, series)
            if rep.passed:
                return OracleVerdict(True, bound, series, x, y, rep)
    return OracleVerdict(False, bound)


def oracle_decide_bounded(r: int, s: int, d: int, gamma: int, delta: int, mu: int, bound: int) -> OracleVerdict:
    return oracle_context(make_context(r, s, d, gamma, delta, mu), bound)
