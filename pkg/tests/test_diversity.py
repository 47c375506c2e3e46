"""Diversity metrics, witnesses, and influence analytics."""

import itertools
import random
from math import comb

import pytest

from shadowlab.constructions import a2_family, build, kalai_circle, l_family
from shadowlab.diversity import (
    colex_diversity,
    diversity,
    influence,
    influence_profile,
    is_up_closed,
    kk_diversity,
    s_diversity,
    total_influence,
)
from shadowlab.families import Family, max_degree, word_of
from shadowlab.orders import colex_segment, level_words, lex_segment
from shadowlab.shifting import is_shifted


def test_diversity_star_zero():
    assert diversity(build("star", n=6, k=3)).value == 0


def test_diversity_full_level():
    for n, k in ((5, 2), (6, 3), (7, 4)):
        assert diversity(build("full_level", n=n, k=k)).value == comb(n - 1, k)


def test_diversity_l_family_sharp():
    got = diversity(l_family(7, 3, 3, 3))
    assert got.value == 1  # C(n-u-1, n-k-1) = C(3,3)
    assert got.witness == 1


def test_diversity_plus_max_degree_is_size():
    rng = random.Random(3)
    for _ in range(200):
        f = Family(8, {rng.getrandbits(8) for _ in range(rng.randint(1, 25))})
        assert diversity(f).value + max_degree(f)[1] == len(f)


def test_diversity_witness_is_one_for_shifted():
    words = level_words(5, 2)
    for mask in range(1 << len(words)):
        sel = [words[i] for i in range(len(words)) if mask >> i & 1]
        f = Family(5, sel, k=2 if not sel else None)
        if sel and is_shifted(f):
            assert diversity(f).witness == 1


def test_s_diversity_collapses_to_diversity():
    rng = random.Random(41)
    for _ in range(500):
        f = Family(10, {rng.getrandbits(10) for _ in range(rng.randint(1, 30))})
        assert s_diversity(f, 1).value == diversity(f).value


def test_s_diversity_a2():
    got = s_diversity(a2_family(9, 2, 2), 2)
    assert got.value == 3
    assert got.witness == (1, 2)


def test_s_diversity_star_can_vanish():
    assert s_diversity(build("star", n=5, k=2), 1).value == 0


def test_s_diversity_monotone_in_s():
    rng = random.Random(5)
    for _ in range(50):
        f = Family(8, {rng.getrandbits(8) for _ in range(12)})
        vals = [s_diversity(f, s).value for s in range(1, 6)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_s_diversity_validation():
    with pytest.raises(ValueError):
        s_diversity(Family(4, [0b11]), 0)


def test_kk_diversity_embedded_level():
    level = [w for w in level_words(5, 2)]
    f = Family(6, level)  # the (5,2) level viewed inside [6]
    got = kk_diversity(f, 5)
    assert got.value == 0
    assert got.witness == (1, 2, 3, 4, 5)


def test_kk_diversity_of_stability_construction():
    kk = build("KK_xy", n=6, k=3, x=2, y=3)
    got = kk_diversity(kk, 6)
    assert got.value == 1  # C(x, k-1) = C(2,2)
    assert got.witness == (1, 2, 3, 4, 5, 6)


def test_kk_diversity_sharp_on_grid():
    for n in (6, 7, 8):
        k = 3
        for x in range(k - 1, n - 2):
            kk = build("KK_xy", n=n, k=k, x=x, y=n - 3)
            assert kk_diversity(kk, n).value == comb(x, k - 1)


def test_kk_diversity_zero_at_full_ground():
    f = build("full_level", n=5, k=2)
    assert kk_diversity(f, 5).value == 0


def test_kk_diversity_validation():
    with pytest.raises(ValueError):
        kk_diversity(build("star", n=4, k=2), 5)
    with pytest.raises(ValueError):
        kk_diversity(Family(4, [0b1, 0b11]), 3)


def test_colex_diversity_segment_is_zero():
    seg = colex_segment(5, 6, 2)
    got = colex_diversity(seg, 6)
    assert got.value == 0
    assert got.witness == (1, 2, 3, 4, 5)  # identity-closest witness


def test_colex_diversity_full_budget():
    f = Family(5, level_words(5, 2))
    assert colex_diversity(f, comb(5, 2)).value == 0


def test_colex_diversity_lex_segment_near_colex():
    # the size-4 lex segment is a 4-edge star; every relabeled colex prefix
    # of size 4 has max degree 3, so exactly one member stays outside
    f = lex_segment(5, 4, 2)
    assert colex_diversity(f, 4).value == 1
    # shorter lex prefixes coincide with colex prefixes outright
    assert colex_diversity(lex_segment(5, 2, 2), 2).value == 0


def test_colex_diversity_counts_outsiders():
    # {1,2},{4,5} cannot both sit inside a 2-element colex prefix
    f = Family(5, [word_of([1, 2]), word_of([4, 5])])
    got = colex_diversity(f, 1)
    assert got.value == 1


def test_colex_diversity_brute_force_small():
    rng = random.Random(13)
    words = level_words(4, 2)
    for _ in range(25):
        sel = rng.sample(words, rng.randint(1, 5))
        f = Family(4, sel)
        t = rng.randint(0, 6)
        seg = colex_segment(4, t, 2).member_set()
        best = None
        for perm in itertools.permutations(range(1, 5)):
            mapped = set()
            for w in seg:
                word = 0
                for e in range(1, 5):
                    if w >> (e - 1) & 1:
                        word |= 1 << (perm[e - 1] - 1)
                mapped.add(word)
            miss = sum(1 for w in sel if w not in mapped)
            best = miss if best is None else min(best, miss)
        assert colex_diversity(f, t).value == best


def test_colex_diversity_exact_mode_limit():
    with pytest.raises(ValueError):
        colex_diversity(Family(11, [word_of([1, 2])]), 1)


# -- influence ---------------------------------------------------------------


def test_influence_dictatorship():
    f = Family(4, [w for w in range(16) if w & 1])
    assert influence(f, 1) == 1.0
    for i in (2, 3, 4):
        assert influence(f, i) == 0.0


def test_influence_majority_n3():
    f = kalai_circle(3)
    assert sorted(f.members) == [0b011, 0b101, 0b110, 0b111]
    for i in (1, 2, 3):
        assert influence(f, i) == 0.5
    assert total_influence(f) == 1.5


def test_influence_profile_matches_single_calls():
    rng = random.Random(6)
    f = Family(6, {rng.getrandbits(6) for _ in range(20)})
    prof = influence_profile(f)
    assert prof == [influence(f, i) for i in range(1, 7)]


def _up_sets(n):
    order = sorted(range(1 << n), key=lambda x: (-bin(x).count("1"), x))
    pos = {v: i for i, v in enumerate(order)}
    sup = [0] * len(order)
    for i, v in enumerate(order):
        free = ((1 << n) - 1) ^ v
        while free:
            low = free & -free
            sup[i] |= 1 << pos[v | low]
            free ^= low
    out = []

    def rec(i, mask):
        if i == len(order):
            out.append(mask)
            return
        rec(i + 1, mask)
        if sup[i] & mask == sup[i]:
            rec(i + 1, mask | (1 << i))

    rec(0, 0)
    return [
        Family(n, [order[i] for i in range(len(order)) if mask >> i & 1])
        for mask in out
    ]


def test_influence_identity_all_up_sets_n_le_4():
    # half the max influence plus twice the normalized diversity = measure
    for n in (1, 2, 3, 4):
        for f in _up_sets(n):
            if len(f) == 0:
                continue
            assert is_up_closed(f)
            mu = len(f) / (1 << n)
            gamma = diversity(f).value / (1 << n)
            top = max(influence(f, i) for i in range(1, n + 1))
            assert top / 2 + 2 * gamma == pytest.approx(mu, abs=1e-12)


def test_up_set_count_is_dedekind():
    assert len(_up_sets(3)) == 20
    assert len(_up_sets(4)) == 168
