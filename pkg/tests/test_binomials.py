"""Generalized binomials, inverses, named bounds, gap analytics, padding."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.binomials import (
    bound_value,
    check_gap_monotonicity,
    gbinom,
    inv_gbinom,
    kk_bound,
    pad_cross_families,
    stationary_gap,
    weighted_binomial_gap,
)
from shadowlab.constructions import build
from shadowlab.families import Family, shadow
from shadowlab.orders import colex_segment, level_words

PHI33 = (1 + math.sqrt(33)) / 2  # root of x(x-1)/2 = 4


def test_gbinom_values():
    assert gbinom(3, 2) == 3
    assert gbinom(3.5, 2) == pytest.approx(4.375, abs=1e-12)
    assert gbinom(2.5, 3) == 0.0
    assert gbinom(2, 3) == 0
    assert gbinom(-4, 2) == 0
    assert gbinom(5, 0) == 1


def test_gbinom_validation():
    with pytest.raises(ValueError):
        gbinom(3, -1)
    with pytest.raises(ValueError):
        gbinom(float("nan"), 2)


def test_gbinom_exact_fraction():
    assert gbinom(Fraction(7, 2), 2) == Fraction(35, 8)


@settings(max_examples=300)
@given(st.integers(0, 60), st.integers(0, 10))
def test_gbinom_matches_comb_on_integers(x, k):
    assert gbinom(x, k) == (math.comb(x, k) if x >= k else 0)


def test_gbinom_strictly_increasing_above_diagonal():
    for k in (1, 2, 5):
        values = [gbinom(k + 0.25 * i, k) for i in range(40)]
        assert all(b > a for a, b in zip(values, values[1:]))


def test_pascal_identity_random_integer_points():
    rng = random.Random(8128)
    for _ in range(10_000):
        x = rng.randint(0, 60)
        k = rng.randint(1, 12)
        assert gbinom(x, k) == gbinom(x - 1, k) + gbinom(x - 1, k - 1)


def test_inv_gbinom_closed_form_oracle():
    assert inv_gbinom(4, 2) == pytest.approx(PHI33, abs=1e-9)
    assert inv_gbinom(1, 5) == pytest.approx(5.0, abs=1e-9)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.floats(0.0, 1.0))
def test_inv_gbinom_round_trip(k, frac):
    x = k + frac * (60 - k)
    m = gbinom(x, k)
    if m < 1:
        m = 1.0
    assert inv_gbinom(m, k) == pytest.approx(max(x, k), rel=1e-7, abs=1e-6)


def test_inv_gbinom_monotone_in_m():
    xs = [inv_gbinom(m, 3) for m in range(1, 200, 3)]
    assert all(b > a for a, b in zip(xs, xs[1:]))


def test_inv_gbinom_validation():
    with pytest.raises(ValueError):
        inv_gbinom(0.5, 2)
    with pytest.raises(ValueError):
        inv_gbinom(4, 0)


def test_kk_bound_values():
    assert kk_bound(20, 3) == pytest.approx(15.0, abs=1e-9)
    assert kk_bound(4, 2) == pytest.approx(PHI33, abs=1e-9)
    with pytest.raises(ValueError):
        kk_bound(0, 2)


def test_kk_bound_dominated_by_colex_shadow():
    # the real-binomial bound never exceeds the exact colex-segment shadow
    for n in range(3, 8):
        for k in range(2, min(4, n) + 1):
            top = math.comb(n, k)
            for m in range(1, top + 1):
                seg = colex_segment(n, m, k)
                assert len(shadow(seg, k - 1)) >= kk_bound(m, k) - 1e-9


# -- named bounds -------------------------------------------------------------


def test_bound_eq1():
    assert bound_value("intersecting-diversity-size", n=7, k=3, u=3) == 13


def test_bound_shadow_stability():
    assert bound_value("shadow-stability", n=6, k=3, x=2, y=3) == 17
    kk23 = build("KK_xy", n=6, k=3, x=2, y=3)
    assert len(kk23) == 20
    assert len(shadow(kk23, 2)) == 17


def test_bound_t_intersecting_size():
    assert bound_value("t-intersecting-size", n=4, t=2) == 5
    # odd case: twice the tail of the (n-1)-row
    assert bound_value("t-intersecting-size", n=5, t=2) == 2 * (
        math.comb(4, 3) + math.comb(4, 4)
    )


def test_bound_cross_pair_size_matches_l_family():
    for n, a, u, v in ((7, 3, 3, 3), (8, 3, 3, 3), (9, 4, 3, 4), (10, 4, 4, 4)):
        fam = build("L_uv", n=n, k=a, u=u, v=v)
        assert bound_value("cross-pair-size", n=n, a=a, u=u, v=v) == len(fam)


def test_bound_validation():
    with pytest.raises(ValueError):
        bound_value("no-such-bound", n=4)
    with pytest.raises(ValueError):
        bound_value("intersecting-diversity-size", n=7, k=3)  # missing u
    with pytest.raises(ValueError):
        bound_value("intersecting-diversity-size", n=7, k=3, u=2)  # u < 3
    with pytest.raises(ValueError):
        bound_value("shadow-stability", n=6, k=3, x=2, y=5)  # y > n-3


def test_bound_real_parameters():
    exact = bound_value("intersecting-diversity-size", n=9, k=4, u=3)
    drift = bound_value("intersecting-diversity-size", n=9, k=4, u=3.0 + 1e-12)
    assert drift == pytest.approx(exact, rel=1e-9)


def test_ratio_identity_cor_style():
    # C(y, n-k+1) = (y-n+k)/(n-k+1) * C(y, n-k) wherever the left side is
    # governed by the product formula (y >= n-k+1, plus the zero at y = n-k)
    for n in range(5, 12):
        for k in range(2, n):
            for y in [n - k, n - k + 1, n - k + 1.5, n - 3, n - 2]:
                if n - k < y < n - k + 1 or y < n - k:
                    continue
                lhs = gbinom(float(y), n - k + 1)
                rhs = (y - n + k) / (n - k + 1) * gbinom(float(y), n - k)
                assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


# -- gap analytics -------------------------------------------------------------


def test_gap_boundary_identity_exact_grid():
    for m in range(4, 21):
        for s in range(2, 9):
            for t in range(2, 9):
                if m < s + t - 1:
                    continue
                assert weighted_binomial_gap(m - 2, m, t, s) == weighted_binomial_gap(
                    m - 3, m, t, s
                )


def test_gap_strictly_increasing_sampled():
    lo, hi = 12 - 5, 12 - 3
    prev = None
    for i in range(101):
        x = Fraction(lo) + Fraction(i * (hi - lo), 100)
        cur = weighted_binomial_gap(x, 12, 4, 5)
        if prev is not None:
            assert cur > prev
        prev = cur


def test_gap_constant_at_minimal_m():
    m, t, s = 9, 4, 6  # m = s + t - 1
    vals = {weighted_binomial_gap(Fraction(x, 4), m, t, s) for x in range(4 * 3, 4 * 8)}
    assert len(vals) == 1


def test_gap_checker_grids():
    for m, t, s in ((12, 4, 5), (9, 4, 6), (15, 3, 4), (20, 8, 8)):
        check_gap_monotonicity(m, t, s)


def test_gap_validation():
    with pytest.raises(ValueError):
        weighted_binomial_gap(3, 4, 1, 2)
    with pytest.raises(ValueError):
        weighted_binomial_gap(3, 4, 2, 4)  # m < s+t-1


def test_stationary_gap_monotone_beyond_plateau():
    vals = [stationary_gap(Fraction(z, 2), 12, 4, 5) for z in range(19, 40)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


# -- padding --------------------------------------------------------------------


def test_pad_identity():
    a = build("star", n=5, k=2)
    b = build("star", n=5, k=2)
    pa, pb = pad_cross_families(a, b, 0)
    assert pa == a and pb == b


def test_pad_raises_intersection_level():
    from shadowlab.families import is_cross_t_intersecting

    a = build("star", n=5, k=2)
    b = build("star", n=5, k=2)
    pa, pb = pad_cross_families(a, b, 2)
    assert pa.n == 7 and pa.k == 4
    assert len(pa) == len(a) and len(pb) == len(b)
    assert is_cross_t_intersecting([pa, pb], 3)


def test_pad_overflow():
    a = Family(63, [1], k=None)
    with pytest.raises(ValueError):
        pad_cross_families(a, a, 2)
