"""Lex, colex and shifting orders on sets, and initial segments."""

from __future__ import annotations

import enum
import functools
import itertools
from math import comb

from .families import Family, elements_of

ORDER_KINDS = ("lex", "colex", "shift-partial")


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare(a: int, b: int, kind: str) -> Ordering:
    """Compare two set words.

    lex: the smaller set owns the smallest element of the symmetric
    difference.  colex: the larger set owns the largest element (on words
    this is plain numeric comparison).  shift-partial: coordinate-wise
    comparison of the sorted element tuples; sets of different sizes are
    incomparable.  The total orders require equal cardinalities.
    """
    if kind not in ORDER_KINDS:
        raise ValueError(f"unknown order kind {kind!r}")
    if a == b:
        return Ordering.EQUAL
    if kind == "shift-partial":
        ea, eb = elements_of(a), elements_of(b)
        if len(ea) != len(eb):
            return Ordering.INCOMPARABLE
        if all(x <= y for x, y in zip(ea, eb)):
            return Ordering.LESS
        if all(x >= y for x, y in zip(ea, eb)):
            return Ordering.GREATER
        return Ordering.INCOMPARABLE
    if a.bit_count() != b.bit_count():
        raise ValueError(f"{kind} order needs equal-size sets")
    if kind == "colex":
        return Ordering.LESS if a < b else Ordering.GREATER
    diff = a ^ b
    return Ordering.LESS if a & (diff & -diff) else Ordering.GREATER


@functools.lru_cache(maxsize=64)
def level_words(n: int, k: int) -> tuple[int, ...]:
    """All k-subsets of [n] as words in ascending (= colex) order."""
    if k < 0 or k > n:
        return ()
    if k == 0:
        return (0,)
    out = []
    w = (1 << k) - 1
    top = 1 << n
    while w < top:
        out.append(w)
        low = w & -w
        ripple = w + low
        w = ripple | (((w ^ ripple) // low) >> 2)
    return tuple(out)


def colex_rank(word: int) -> int:
    """Position of a k-set among all k-sets in colex order."""
    rank = 0
    for idx, e in enumerate(elements_of(word), start=1):
        rank += comb(e - 1, idx)
    return rank


def colex_segment(n: int, t: int, k: int) -> Family:
    """The first t k-subsets of [n] in colex order."""
    _check_segment_args(n, t, k)
    if k == 0:
        return Family(n, [0][:t], k=0)
    out = []
    w = (1 << k) - 1
    while len(out) < t:
        out.append(w)
        low = w & -w
        ripple = w + low
        w = ripple | (((w ^ ripple) // low) >> 2)
    return Family(n, out, k=k)


def lex_segment(n: int, t: int, k: int) -> Family:
    """The first t k-subsets of [n] in lex order."""
    _check_segment_args(n, t, k)
    words = []
    for combo in itertools.islice(itertools.combinations(range(1, n + 1), k), t):
        w = 0
        for e in combo:
            w |= 1 << (e - 1)
        words.append(w)
    return Family(n, words, k=k)


def _check_segment_args(n: int, t: int, k: int) -> None:
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    if not 0 <= t <= comb(n, k):
        raise ValueError(f"segment size {t} outside 0..C({n},{k})")
