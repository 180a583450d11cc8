"""End-to-end acceptance checks, one test per criterion, each printing a pass/fail line."""
import math
import random
import time

import pytest

from k3sc.arith import divisors
from k3sc.criteria import SeriesChoice, check_element, check_xy, context_from, nef_image
from k3sc.crossval import mu_delta_pairs, random_context, run_suite
from k3sc.decision import decide_context, decide_rho1, oracle_context
from k3sc.errors import K3SCError
from k3sc.lattice import contains, gamma_of, is_primitive, norm
from k3sc.moduli import decide_label, delta_union, generate_family, verify_label
from k3sc.mukai import derive_invariants, split_gamma

SEED = 1


def report(capsys, number, title, ok, detail, seconds):
    with capsys.disabled():
        print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail} ({seconds:.1f} s)")


def nef_contract(ctx, z):
    """Image is a primitive lattice member with z^2 = 2a1b1 and gamma(z) = gamma (checked from scratch)."""
    lat = ctx.lattice
    return (contains(lat, z) and is_primitive(lat, z)
            and norm(lat, z) == 2 * ctx.a1 * ctx.b1 and gamma_of(lat, z) == ctx.gamma)


# --------------------------------------------------------------------------
# shared sweeps (criteria 2, 7 and 10)


@pytest.fixture(scope="module")
def mukai_sweep():
    t0 = time.perf_counter()
    out = dict(contexts=0, no=[], rejected=[], images=0, bad_images=[])
    for r in range(1, 61):
        for s in range(1, 61):
            if math.gcd(r, s) != 1:
                continue
            for d in divisors(r * s):
                try:
                    inv = derive_invariants((r, s, d))
                except K3SCError:
                    continue
                if not (inv.a1 == 1 or inv.b1 == 1):
                    continue
                for g in divisors(2 * inv.a1 * inv.b1):
                    try:
                        split = split_gamma(inv, g)
                    except K3SCError:
                        continue
                    choice = SeriesChoice("A" if inv.a1 == 1 else "B", 1)
                    for mu, delta in mu_delta_pairs(split.n_x, g, 300):
                        ctx = context_from(inv, split, delta, mu)
                        out["contexts"] += 1
                        v = decide_context(ctx)
                        if not v.yes:
                            out["no"].append(ctx)
                            continue
                        # H itself (coordinates (n_X, 0))
                        H = (split.n_x, 0)
                        if not check_element(ctx, choice, H).passed:
                            out["rejected"].append(ctx)
                            continue
                        for z in (v.image, nef_image(ctx, choice, H)):
                            out["images"] += 1
                            if not nef_contract(ctx, z):
                                out["bad_images"].append((ctx, tuple(z)))
    out["seconds"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def decision_sample():
    t0 = time.perf_counter()
    rng = random.Random(7)
    out = dict(cases=0, both_yes=0, both_no=0, oracle_only=[], decide_small_only=[], beyond_bound=0,
               bad_witness=[], images=0, bad_images=[])
    bound = 10 ** 4
    for _ in range(500):
        ctx = random_context(rng, 4, (1, 2, 4), 500)
        out["cases"] += 1
        v = decide_context(ctx)
        o = oracle_context(ctx, bound)
        if v.yes:
            # witness reconstructed exactly and checked against the (x, y) conditions
            x, y = v.xy()
            if not check_xy(ctx, x, y, v.choice.series).passed:
                out["bad_witness"].append(ctx)
            out["images"] += 1
            if not nef_contract(ctx, v.image):
                out["bad_images"].append((ctx, tuple(v.image)))
        if v.yes and o.yes:
            out["both_yes"] += 1
        elif not v.yes and not o.yes:
            out["both_no"] += 1
        elif o.yes:
            out["oracle_only"].append(ctx)
        elif abs(v.xy()[1]) <= bound:
            out["decide_small_only"].append(ctx)
        else:
            out["beyond_bound"] += 1
    out["seconds"] = time.perf_counter() - t0
    return out


# --------------------------------------------------------------------------


def test_c01_rank_one_predicate(capsys):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for r in range(1, 51):
        for s in range(1, 51):
            c = math.gcd(r, s)
            a, b = r // c, s // c
            for d in range(1, a * b + 1):
                if d * d > a * b:
                    break
                if (a * b) % (d * d) or math.gcd(c, d) != 1:
                    continue
                # literal predicate, computed without the package
                a1 = a // math.gcd(d, a) ** 2
                b1 = b // math.gcd(d, b) ** 2
                expected = c == 1 and (a1 == 1 or b1 == 1)
                checked += 1
                if decide_rho1(r, s, d) != expected:
                    bad.append((r, s, d))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    report(capsys, 1, "rank one criterion", ok, f"{checked} triples, {len(bad)} mismatches", dt)
    assert not bad
    assert dt < 1.0


def test_c02_mukai_sufficiency(capsys, mukai_sweep):
    res = mukai_sweep
    ok = not res["no"] and not res["rejected"] and res["seconds"] < 60
    report(capsys, 2, "Mukai sufficiency", ok,
           f"{res['contexts']} contexts, {len(res['no'])} NO, {len(res['rejected'])} with H rejected",
           res["seconds"])
    assert res["contexts"] > 0
    assert not res["no"], res["no"][:3]
    assert not res["rejected"], res["rejected"][:3]
    assert res["seconds"] < 60


def test_c03_bijection(capsys):
    res = run_suite("bijection", SEED, "full")
    ok = res.ok and res.seconds < 300
    report(capsys, 3, "(x, y) solutions vs associated image", ok,
           f"{res.checked} contexts, {res.counterexamples} counterexamples", res.seconds)
    assert res.ok, res.first
    assert res.seconds < 300


@pytest.fixture(scope="module")
def reduction():
    return run_suite("reduction", SEED, "full")


def test_c04_condition_chain(capsys, reduction):
    res = reduction
    ok = res.ok and res.seconds < 300
    report(capsys, 4, "condition chain equivalence", ok,
           f"{res.checked} triples, {res.stats.get('passing', 0)} passing, {res.counterexamples} counterexamples",
           res.seconds)
    assert res.ok, res.first
    assert res.seconds < 300


def test_c05_square_quotient(capsys, reduction):
    checked = reduction.stats.get("square_quotient_checked", 0)
    failed = reduction.stats.get("square_quotient_failed", 0)
    report(capsys, 5, "alpha divides other with square quotient", failed == 0 and checked > 0,
           f"{checked} passing triples, {failed} failures", reduction.seconds)
    assert checked > 0
    assert failed == 0


def test_c06_pell_completeness(capsys):
    res = run_suite("pell", SEED, "full")
    ok = res.ok and res.seconds < 60
    report(capsys, 6, "Pell completeness", ok,
           f"{res.checked} equations (200 non-square, 50 square), {res.counterexamples} mismatches", res.seconds)
    assert res.checked == 250
    assert res.ok, res.first
    assert res.seconds < 60


def test_c07_decision_agreement(capsys, decision_sample):
    res = decision_sample
    ok = (not res["oracle_only"] and not res["decide_small_only"] and not res["bad_witness"]
          and res["seconds"] < 600)
    report(capsys, 7, "decision vs bounded oracle", ok,
           f"{res['cases']} contexts, {res['both_yes']} both YES, {res['both_no']} both NO, "
           f"{len(res['oracle_only'])} oracle-only YES, {len(res['decide_small_only'])} decide-only YES "
           f"within the bound, {res['beyond_bound']} YES with every witness beyond |y| <= 10^4, "
           f"{len(res['bad_witness'])} bad witnesses", res["seconds"])
    assert res["cases"] == 500
    assert not res["oracle_only"], res["oracle_only"][:3]
    assert not res["decide_small_only"], res["decide_small_only"][:3]
    assert not res["bad_witness"], res["bad_witness"][:3]
    assert res["seconds"] < 600


def test_c08_specialization(capsys):
    res = run_suite("specialization", SEED, "full")
    report(capsys, 8, "gamma = 1, 2 specializations", res.ok,
           f"{res.checked} elements, {res.stats.get('accepted', 0)} accepted, {res.counterexamples} mismatches",
           res.seconds)
    assert res.checked > 0
    assert res.ok, res.first


def test_c09_divisorial_family(capsys):
    t0 = time.perf_counter()
    labels = delta_union(2, 2, 1, 1, 200)
    assert labels
    least = labels[0]
    seed = least if least.witness[1] != 0 else next(l for l in labels if l.witness[1] != 0)
    family = generate_family(seed, 10)
    verified = sum(verify_label(m) for m in family)
    decided = sum(decide_label(m) for m in family)
    deltas = [m.delta for m in family]
    dt = time.perf_counter() - t0
    ok = len(family) >= 10 and verified == decided == len(family) and dt < 30
    report(capsys, 9, "divisorial set for (2, 2, 1), gamma = 1", ok,
           f"{len(labels)} labels with delta <= 200, least delta {least.delta}, "
           f"family deltas {deltas[:3]}..., {decided}/{len(family)} re-decided YES", dt)
    assert len(family) >= 10
    assert verified == len(family)
    assert decided == len(family)
    assert deltas == sorted(set(deltas))
    assert dt < 30


def test_c10_nef_image_contract(capsys, mukai_sweep, decision_sample):
    n = mukai_sweep["images"] + decision_sample["images"]
    bad = mukai_sweep["bad_images"] + decision_sample["bad_images"]
    report(capsys, 10, "nef image contract", not bad, f"{n} images, {len(bad)} violations", 0.0)
    assert n > 0
    assert not bad, bad[:3]
