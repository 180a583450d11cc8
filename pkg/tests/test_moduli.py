import math

import pytest

from k3sc.decision import decide_rho2
from k3sc.errors import ContextError, DegenerateWitness
from k3sc.moduli import (DivisorialLabel, alternative_witness, decide_label, delta_set, delta_union, gamma1_nonempty,
                         generate_family, mu_classes, verify_label)
from k3sc.mukai import derive_invariants


def test_delta_set_examples():
    labels = delta_set(2, 2, 1, 1, 1, "A", 1, 40)
    assert 17 in [l.delta for l in labels]
    assert dict((l.delta, l.witness) for l in labels)[17] == (5, 1)
    for l in labels:
        assert decide_rho2(l.r, l.s, l.d, l.gamma, l.delta, l.mu_class).yes
    assert delta_set(2, 2, 1, 1, 1, "A", 1, 0) == []


def test_delta_set_mukai_case_complete():
    # c = 1, a1 = 1: every admissible delta is a member of the a-series + branch
    labels = delta_set(1, 3, 1, 1, 1, "A", 1, 200)
    assert [l.delta for l in labels] == list(range(1, 201, 12))


def test_delta_union_examples():
    union = delta_union(2, 2, 1, 1, 40)
    assert union and 17 in [l.delta for l in union]
    assert union == sorted(union, key=DivisorialLabel.sort_key)
    for mu in mu_classes(2, 2, 1, 1):
        for series in ("A", "B"):
            for eps in (1, -1):
                assert set(delta_set(2, 2, 1, 1, mu, series, eps, 40)) <= set(union)
    with pytest.raises(ContextError):
        delta_union(2, 2, 1, 2, 40)


def test_generate_family_examples():
    seed = DivisorialLabel(2, 2, 1, 1, 1, 17, "A", 1, (5, 1))
    fam = generate_family(seed, 5)
    assert [m.witness[0] for m in fam] == [37, 69, 101, 133, 165]
    assert [m.delta for m in fam] == [p * p - 8 for p in (37, 69, 101, 133, 165)]
    assert fam[0].delta == 1361
    assert all(verify_label(m) and decide_label(m) for m in fam)
    assert generate_family(seed, 0) == []
    with pytest.raises(DegenerateWitness):
        generate_family(seed._replace(witness=(2, 0)), 3)


def test_family_members_rescanned():
    # members below the scan bound show up in the exact delta set
    for label in delta_union(2, 2, 1, 1, 200)[:20]:
        alt = alternative_witness(label)
        if alt is None:
            continue
        fam = generate_family(alt, 3)
        top = max(m.delta for m in fam)
        if top > 20000:
            continue
        found = {l.delta for l in delta_set(2, 2, 1, 1, label.mu_class, label.series, label.eps, top)}
        assert {m.delta for m in fam} <= found


def test_alternative_witness():
    label = DivisorialLabel(1, 2, 1, 1, 1, 17, "A", 1, (2, 0))
    assert verify_label(label)
    alt = alternative_witness(label)
    assert alt is not None and alt.witness[1] != 0 and verify_label(alt)
    assert alternative_witness(alt) == alt
    # gamma delta = 9 is a square: p^2 - 9 q^2 = 4 has only (+-2, 0)
    square = DivisorialLabel(1, 2, 1, 1, 1, 9, "A", 1, (2, 0))
    assert verify_label(square) and alternative_witness(square) is None


def test_gamma1_examples():
    ev = gamma1_nonempty(2, 2, 1, 40)
    assert ev.found and 17 in [l.delta for l in delta_union(2, 2, 1, 1, 40)]
    assert len(ev.family) == 10 and all(verify_label(m) for m in ev.family)
    ev = gamma1_nonempty(1, 1, 1, 20)
    assert ev.found
    assert 5 in [l.delta for l in delta_union(1, 1, 1, 1, 20)]
    ev = gamma1_nonempty(2, 2, 1, 0)
    assert ev.inconclusive and "inconclusive" in ev.note


def test_gamma1_small_products(capsys):
    # recorded empirically: a member with delta <= 4 (4a1b1c^2)^2 for every valid (r, s, d) with rs <= 36
    found, total = 0, 0
    for r in range(1, 37):
        for s in range(1, 37 // r + 1):
            c = math.gcd(r, s)
            for d in range(1, 7):
                try:
                    inv = derive_invariants((r, s, d))
                except ValueError:
                    continue
                bound = 4 * (4 * inv.a1 * inv.b1 * inv.c ** 2) ** 2
                ev = gamma1_nonempty(r, s, d, min(bound, 2000), family_size=2)
                total += 1
                found += ev.found
                if ev.found:
                    assert verify_label(ev.first)
    with capsys.disabled():
        print(f"\n[gamma = 1 nonemptiness] {found}/{total} triples with rs <= 36 have a member in range")
    assert total > 0
