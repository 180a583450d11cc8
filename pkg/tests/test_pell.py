import math

import pytest
from hypothesis import given, settings, strategies as st

from k3sc.errors import PredicateContract
from k3sc.pell import (Automorph, FormEquation, SquareDiscriminant, act, enumerate_bounded,
                       exists_solution_with_congruences, fundamental_automorph, orbit_closure, residue_cycle,
                       solve_orbits)


def brute(eq, q_max):
    # oracle: direct scan over q with an integer square root
    out = []
    for q in range(-q_max, q_max + 1):
        num = eq.N + eq.delta * q * q
        if num < 0 or num % eq.gamma:
            continue
        p = math.isqrt(num // eq.gamma)
        if p * p == num // eq.gamma:
            out += [(p, q)] if p == 0 else [(p, q), (-p, q)]
    return sorted(out)


def test_fundamental_examples():
    assert fundamental_automorph(1, 5) == Automorph(9, 4)
    assert fundamental_automorph(1, 2) == Automorph(3, 2)
    assert fundamental_automorph(2, 1) == Automorph(3, 2)
    assert fundamental_automorph(1, 4) == SquareDiscriminant(2)


def test_solve_orbits_examples():
    eq = FormEquation(1, 5, 4)
    reps = {o.representative for o in solve_orbits(eq)}
    closure = orbit_closure(eq, solve_orbits(eq), 1000)
    assert (2, 0) in closure and (3, 1) in closure
    assert closure == brute(eq, 1000)
    assert reps
    assert solve_orbits(FormEquation(1, 5, 3)) == ()
    sq = sorted(o.representative for o in solve_orbits(FormEquation(1, 4, -3)))
    assert sq == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_enumerate_examples():
    eq = FormEquation(1, 5, 4)
    got = enumerate_bounded(eq, 3)
    assert got == sorted([(-3, -1), (-2, 0), (-3, 1), (2, 0), (3, -1), (3, 1), (7, -3), (7, 3), (-7, -3), (-7, 3)])
    assert enumerate_bounded(eq, 0) == [(-2, 0), (2, 0)]
    assert enumerate_bounded(FormEquation(1, 5, -4), 1) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_exists_examples():
    w = exists_solution_with_congruences(FormEquation(1, 17, 8), lambda p, q: (p - q) % 4 == 0, 4)
    assert w is not None and w[0] ** 2 - 17 * w[1] ** 2 == 8 and (w[0] - w[1]) % 4 == 0
    assert exists_solution_with_congruences(FormEquation(1, 5, 4), lambda p, q: q % 2 == 0, 2) in [(2, 0), (-2, 0)]
    assert exists_solution_with_congruences(FormEquation(1, 5, 4), lambda p, q: False, 7) is None


def test_predicate_contract():
    # the sign of p is not a function of residues; (-2, 0) exposes it
    with pytest.raises(PredicateContract):
        exists_solution_with_congruences(FormEquation(1, 5, 4), lambda p, q: p < 0, 4)


def test_invalid_equation():
    with pytest.raises(ValueError):
        FormEquation(1, 5, 0)
    with pytest.raises(ValueError):
        FormEquation(0, 5, 1)


@given(st.integers(1, 12), st.integers(1, 60), st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6),
       st.integers(-3, 3))
def test_automorph_preserves_form(g, dl, p, q, k):
    if math.isqrt(g * dl) ** 2 == g * dl:
        return
    aut = fundamental_automorph(g, dl)
    eq = FormEquation(g, dl, 1)
    p2, q2 = act(aut, eq, (p, q), k)
    assert g * p2 * p2 - dl * q2 * q2 == g * p * p - dl * q * q
    assert act(aut, eq, (p2, q2), -k) == (p, q)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 20), st.integers(1, 100), st.integers(-200, 200).filter(bool))
def test_orbit_closure_complete(g, dl, N):
    eq = FormEquation(g, dl, N)
    orbits = solve_orbits(eq)
    for o in orbits:
        assert eq.holds(*o.representative)
    if isinstance(fundamental_automorph(g, dl), SquareDiscriminant):
        assert sorted(o.representative for o in orbits) == brute(eq, abs(g * N))
    else:
        assert orbit_closure(eq, orbits, 3000) == brute(eq, 3000)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6), st.integers(1, 60), st.integers(-60, 60).filter(bool),
       st.sampled_from([2, 3, 4, 5, 6, 8, 12]), st.integers(0, 10 ** 6))
def test_exists_matches_bounded_search(g, dl, N, M, seed):
    eq = FormEquation(g, dl, N)
    # a residue predicate: a random subset of residue pairs mod M
    good = {(a, b) for a in range(M) for b in range(M) if hash((a, b, seed)) % 3 == 0}

    def pred(p, q):
        return (p % M, q % M) in good

    w = exists_solution_with_congruences(eq, pred, M)
    found = [s for s in brute(eq, 20000) if pred(*s)]
    if w is not None:
        assert eq.holds(*w) and pred(*w)
    elif not isinstance(fundamental_automorph(g, dl), SquareDiscriminant):
        # oracle: bounded search must find nothing either
        assert not found
    else:
        assert not [s for s in brute(eq, abs(g * N)) if pred(*s)]
    if found:
        assert w is not None


@given(st.integers(1, 10), st.integers(1, 50), st.integers(2, 1000))
def test_residue_cycle_periodic(g, dl, M):
    if math.isqrt(g * dl) ** 2 == g * dl:
        return
    aut = fundamental_automorph(g, dl)
    eq = FormEquation(g, dl, 1)
    cyc = residue_cycle(aut, eq, (1, 0), M)
    p, q = act(aut, eq, (1, 0), len(cyc))
    assert (p % M, q % M) == (1 % M, 0)
