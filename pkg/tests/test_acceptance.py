"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines.
"""

import functools
import math
import os
import random
import time
from math import comb

from shadowlab.binomials import gbinom, kk_bound, weighted_binomial_gap
from shadowlab.constructions import build, katona_family, kk_family, l_family
from shadowlab.diversity import diversity, kk_diversity
from shadowlab.families import Family, is_cross_t_intersecting, is_r_wise_t_intersecting, shadow
from shadowlab.orders import colex_segment
from shadowlab.verifier import InstanceSpace, iter_space, verify, verify_cross_pair_space

JOBS = min(8, os.cpu_count() or 1)


def criterion(number, label):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                print(f"ACCEPTANCE {number:>2} {label}: FAIL")
                raise
            print(f"ACCEPTANCE {number:>2} {label}: PASS")
        return run
    return wrap


@criterion(1, "shadow lower bounds, exhaustive over the (6,3) level")
def test_criterion_1():
    start = time.monotonic()
    colex_rep = verify("shadow-colex-lower", "all-families:n=6,k=3", jobs=JOBS)
    assert colex_rep.violations == 0
    assert colex_rep.checked == 1 << 20
    real_rep = verify("shadow-real-lower", "all-families:n=6,k=3", jobs=JOBS)
    assert real_rep.violations == 0
    assert real_rep.checked == (1 << 20) - 1  # the empty family is skipped
    # the chain: colex-segment shadow dominates the real-binomial bound
    for m in range(1, comb(6, 3) + 1):
        seg_shadow = len(shadow(colex_segment(6, m, 3), 2))
        assert seg_shadow >= kk_bound(m, 3) - 1e-9
    assert time.monotonic() - start <= 600


@criterion(2, "compression traces keep the shadow monotone")
def test_criterion_2():
    small = verify("compression-shadow-monotone", "all-families:n=5,k=2")
    assert small.violations == 0
    assert small.checked == 1 << 10
    big = verify(
        "compression-shadow-monotone",
        "random-sample:count=100000,k=3,n=7,seed=31415",
        jobs=JOBS,
    )
    assert big.violations == 0
    assert big.checked == 100_000


@criterion(3, "shifted families are positively correlated")
def test_criterion_3():
    for n, k in ((5, 2), (6, 3)):
        rep = verify("shifted-correlation", f"all-shifted-families:k={k},n={n}")
        assert rep.violations == 0
        shifted = list(iter_space(InstanceSpace.make("all-shifted-families", n=n, k=k)))
        assert rep.checked == len(shifted) ** 2
        # every (full level, G) pair must appear among the equality witnesses
        full_text = build("full_level", n=n, k=k).to_text()
        assert rep.equalities == len(rep.equality_witnesses)  # nothing truncated
        seen_with_full = {
            w["B"] for w in rep.equality_witnesses if w["A"] == full_text
        }
        assert seen_with_full == {f.to_text() for f in shifted}


@criterion(4, "near-star pairs are sharp; the u=v=2 relaxation breaks diversity")
def test_criterion_4():
    for a in (3, 4):
        for b in (3, 4):
            for u in range(3, a + 1):
                for v in range(3, b + 1):
                    for n in range(a + b, 11):
                        fam_a = l_family(n, a, u, v)
                        fam_b = l_family(n, b, v, u)
                        assert is_cross_t_intersecting([fam_a, fam_b], 1)
                        thr_a = (
                            comb(n - 1, a - 1) - comb(n - v - 1, a - 1)
                            + comb(n - u - 1, n - a - 1)
                        )
                        thr_b = (
                            comb(n - 1, b - 1) - comb(n - u - 1, b - 1)
                            + comb(n - v - 1, n - b - 1)
                        )
                        assert len(fam_a) == thr_a and len(fam_b) == thr_b
                        assert diversity(fam_a).value == comb(n - u - 1, n - a - 1)
                        assert diversity(fam_b).value == comb(n - v - 1, n - b - 1)
    rep = verify_cross_pair_space(6, 3, 3, u=3, v=3)
    assert rep.violations == 0
    assert rep.expected_boundary, "expected-boundary record missing"
    entry = rep.expected_boundary[0]
    assert entry["meets_size_thresholds"]
    assert entry["violates_diversity_conclusion"]


@criterion(5, "cover-diversity stability construction is sharp on its grid")
def test_criterion_5():
    for k in (3, 4):
        for n in range(k + 1, 10):
            for x in range(k - 1, n - 2):
                for y in range(n - k, n - 2):
                    fam = kk_family(n, k, x, y)
                    size_floor = comb(n, k) - comb(y, n - k) + comb(x, k - 1)
                    shadow_floor = (
                        comb(n, k - 1) - comb(y, n - k + 1) + comb(x, max(k - 2, 0))
                    )
                    assert len(fam) == size_floor
                    assert kk_diversity(fam, n).value == comb(x, k - 1)
                    assert len(shadow(fam, k - 1)) == shadow_floor
    spot = kk_family(6, 3, 2, 3)
    assert len(spot) == 20 and len(shadow(spot, 2)) == 17


@criterion(6, "the head-block family is extremal for 3-wise diversity at n=61")
def test_criterion_6():
    start = time.monotonic()
    fam = build("rwise_example", n=61, k=4, r=3, t=1)
    gamma = diversity(fam).value
    assert gamma == 57 == comb(57, 1)
    assert is_r_wise_t_intersecting(fam, 3, 1)
    assert time.monotonic() - start <= 1.0


@criterion(7, "graph avoidance bound, exhaustive for up to 7 vertices")
def test_criterion_7():
    start = time.monotonic()
    for n in range(2, 8):
        rep = verify("graph-avoidance", f"all-graphs:n={n}", jobs=JOBS)
        assert rep.violations == 0, f"violations at n={n}"
        if n % 2 == 1:
            # the complete graph is the unique equality case
            assert rep.equality_witnesses == [build("full_level", n=n, k=2).to_text()]
        else:
            assert rep.equalities == 0
    assert time.monotonic() - start <= 300


@criterion(8, "real-binomial oracle identities")
def test_criterion_8():
    x = (1 + math.sqrt(33)) / 2
    assert abs(x * (x - 1) / 2 - 4) < 1e-9  # the closed-form root solves C(x,2)=4
    from shadowlab.binomials import inv_gbinom

    assert abs(inv_gbinom(4, 2) - x) <= 1e-9
    rng = random.Random(2718281828)
    for _ in range(10_000):
        a = rng.randint(0, 60)
        k = rng.randint(1, 12)
        assert gbinom(a, k) == gbinom(a - 1, k) + gbinom(a - 1, k - 1)
    for m in range(4, 21):
        for s in range(2, 9):
            for t in range(2, 9):
                if m < s + t - 1:
                    continue
                left = weighted_binomial_gap(m - 2, m, t, s)
                right = weighted_binomial_gap(m - 3, m, t, s)
                assert left == right  # exact rational equality


@criterion(9, "circle family: structure and influence decay for odd n up to 15")
def test_criterion_9():
    rep = verify("kalai-properties", "constructions-grid:n=3..15,name=kalai_circle")
    assert rep.violations == 0
    seq = rep.notes["max_influence"]
    assert set(seq) == {str(n) for n in range(3, 16, 2)}
    assert seq["3"] == 0.5
    assert rep.notes["max_influence_nonincreasing"]
    fitted = rep.notes["fitted_constant"]
    for n in range(5, 16, 2):
        assert seq[str(n)] <= fitted * math.log(n) / n + 1e-12


@criterion(10, "parity-threshold families: sharp and maximal among up-sets")
def test_criterion_10():
    grid = verify(
        "t-intersecting-diversity",
        "constructions-grid:n=2..12,name=katona_t,t=1..4",
    )
    assert grid.violations == 0
    assert grid.checked > 0
    for n, t in ((4, 2), (5, 2)):
        rep = verify("t-intersecting-max", f"all-up-sets:n={n}", params={"t": t})
        assert rep.violations == 0
        katona_text = katona_family(n, t).to_text()
        assert katona_text in rep.equality_witnesses
