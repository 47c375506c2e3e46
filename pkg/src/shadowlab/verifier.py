"""Exhaustive and construction-based certification of the package's claims.

A claim is a named per-instance predicate (hypothesis -> conclusion); an
instance space is a deterministic generator of families, pairs, graphs or
parameter tuples.  ``verify`` streams the space through the claim and
produces a replayable Report: hypothesis failures are skipped, violations
are recorded as counterexamples (re-verifiable from their serialized
form), and instances meeting a bound with equality become witnesses.

Scans can be partitioned into contiguous blocks and fanned out over a
process pool; the reduction merges counterexample and witness lists in
canonical order, so runs are reproducible regardless of the worker count.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, log

from .binomials import bound_value, gbinom, inv_gbinom, kk_bound, check_gap_monotonicity
from .constructions import CONSTRUCTIONS, a2_family, build, l_family
from .diversity import (
    diversity,
    influence_profile,
    is_up_closed,
    kk_diversity,
    s_diversity,
)
from .families import (
    Family,
    InvariantViolation,
    complement_family,
    degree_vector,
    elements_of,
    is_cross_t_intersecting,
    is_r_wise_t_intersecting,
    matching_number,
    set_repr,
    shadow,
    trace,
)
from .orders import level_words, lex_segment
from .shifting import (
    compress_to_colex,
    cross_lex_shift_step,
    is_shifted,
    shift_ij,
)

DEFAULT_BUDGET = 1 << 26
MAX_RECORDED = 1000


class BudgetExceeded(RuntimeError):
    """The instance space is larger than the configured budget."""


# ---------------------------------------------------------------------------
# instance spaces
# ---------------------------------------------------------------------------

SPACE_KINDS = (
    "all-families",
    "all-shifted-families",
    "all-cross-pairs",
    "all-graphs",
    "all-up-sets",
    "constructions-grid",
    "random-sample",
)


@dataclass(frozen=True)
class InstanceSpace:
    kind: str
    params: tuple[tuple[str, object], ...]

    @classmethod
    def make(cls, kind: str, **params) -> "InstanceSpace":
        if kind not in SPACE_KINDS:
            raise ValueError(f"unknown space kind {kind!r}; know {SPACE_KINDS}")
        return cls(kind, tuple(sorted(params.items())))

    def get(self, name: str, default=None):
        for key, val in self.params:
            if key == name:
                return val
        return default

    def describe(self) -> str:
        body = ",".join(f"{k}={_format_value(v)}" for k, v in self.params)
        return f"{self.kind}:{body}" if body else self.kind

    @classmethod
    def parse(cls, text: str) -> "InstanceSpace":
        kind, _, body = text.partition(":")
        params = {}
        if body:
            for tok in body.split(","):
                key, _, val = tok.partition("=")
                if not key or not val:
                    raise ValueError(f"bad space parameter {tok!r}")
                params[key] = _parse_value(val)
        return cls.make(kind, **params)


def _parse_value(text: str):
    if ".." in text:
        lo, _, hi = text.partition("..")
        return ("range", int(lo), int(hi))
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            return text


def _format_value(val) -> str:
    if isinstance(val, tuple) and val and val[0] == "range":
        return f"{val[1]}..{val[2]}"
    return str(val)


def space_size(space: InstanceSpace) -> int | None:
    """Exact instance count when cheaply known; None when only streaming tells."""
    kind = space.kind
    if kind == "all-families":
        return 1 << comb(space.get("n"), space.get("k"))
    if kind == "all-graphs":
        n = space.get("n")
        total = 0
        for j in range(n + 1):
            total += (-1) ** j * comb(n, j) * (1 << comb(n - j, 2))
        return total
    if kind == "random-sample":
        return space.get("count")
    if kind == "constructions-grid":
        total = 1
        for key, val in space.params:
            if key == "name":
                continue
            total *= len(_axis_values(val))
        return total
    return None


def _axis_values(val) -> list:
    if isinstance(val, tuple) and val and val[0] == "range":
        return list(range(val[1], val[2] + 1))
    return [val]


def _grid_points(space: InstanceSpace):
    axes = [(k, _axis_values(v)) for k, v in space.params if k != "name"]
    names = [k for k, _ in axes]
    for combo in itertools.product(*(vals for _, vals in axes)):
        yield dict(zip(names, combo))


def iter_space(space: InstanceSpace, budget: int | None = None):
    """Deterministic instance stream; raises BudgetExceeded past the budget."""
    budget = _effective_budget(budget)
    known = space_size(space)
    if known is not None and known > budget:
        raise BudgetExceeded(
            f"{space.describe()} holds {known} instances; budget {budget}"
        )
    count = 0
    for inst in _raw_iter(space):
        count += 1
        if count > budget:
            raise BudgetExceeded(
                f"{space.describe()} exceeded the budget of {budget} instances"
            )
        yield inst


def _effective_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("SHADOWLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _raw_iter(space: InstanceSpace):
    kind = space.kind
    if kind == "all-families":
        n, k = space.get("n"), space.get("k")
        words = level_words(n, k)
        for mask in range(1 << len(words)):
            yield _mask_family(n, k, words, mask)
    elif kind == "all-shifted-families":
        yield from _iter_shifted(space.get("n"), space.get("k"))
    elif kind == "all-cross-pairs":
        yield from _iter_cross_pairs(space.get("n"), space.get("a"), space.get("b"))
    elif kind == "all-graphs":
        yield from _iter_graphs(space.get("n"))
    elif kind == "all-up-sets":
        yield from _iter_up_sets(space.get("n"))
    elif kind == "random-sample":
        n, k = space.get("n"), space.get("k")
        count, seed = space.get("count"), space.get("seed", 0)
        for idx in range(count):
            yield _sample_family(n, k, seed, idx)
    elif kind == "constructions-grid":
        name = space.get("name")
        if name is None:
            raise ValueError("constructions-grid needs name=...")
        for params in _grid_points(space):
            if name == "params":
                yield params, None
                continue
            wanted = CONSTRUCTIONS[name][1]
            try:
                fam = build(name, **{p: params[p] for p in wanted})
            except (ValueError, KeyError):
                yield params, None
                continue
            yield params, fam
    else:
        raise ValueError(f"unknown space kind {kind!r}")


def _mask_family(n: int, k: int, words, mask: int) -> Family:
    sel = []
    m = mask
    while m:
        low = m & -m
        sel.append(words[low.bit_length() - 1])
        m ^= low
    return Family(n, sel, k=k if not sel else None)


def _sample_family(n: int, k: int | None, seed: int, idx: int) -> Family:
    rng = random.Random(seed * 1_000_003 + idx)
    if k is None:
        if n > 16:
            raise ValueError("non-uniform random sampling limited to n <= 16")
        mask = rng.getrandbits(1 << n)
        return Family(n, (w for w in range(1 << n) if mask >> w & 1))
    words = level_words(n, k)
    mask = rng.getrandbits(len(words))
    return _mask_family(n, k, words, mask)


def _iter_shifted(n: int, k: int):
    """Down-sets of the shifting partial order on the k-level, by DFS.

    Words are processed in colex order; a word may join only once all its
    predecessors have, which enumerates exactly the shifted families.
    """
    words = level_words(n, k)
    elems = [elements_of(w) for w in words]
    m = len(words)
    pred_mask = [0] * m
    for i in range(m):
        for j in range(i):
            if all(x <= y for x, y in zip(elems[j], elems[i])):
                pred_mask[i] |= 1 << j
    out = []

    def rec(i: int, mask: int):
        if i == m:
            out.append(mask)
            return
        rec(i + 1, mask)
        if pred_mask[i] & mask == pred_mask[i]:
            rec(i + 1, mask | (1 << i))

    rec(0, 0)
    out.sort()
    for mask in out:
        yield _mask_family(n, k, words, mask)


def _iter_cross_pairs(n: int, a: int, b: int):
    """All cross-intersecting pairs (A, B) with A in the a-level, B in the b-level.

    For each A the compatible B-sets form one maximal mask, so the stream
    is A-mask ascending, then B-submask ascending.
    """
    words_a = level_words(n, a)
    words_b = level_words(n, b)
    meets = []
    for wa in words_a:
        mask = 0
        for j, wb in enumerate(words_b):
            if wa & wb:
                mask |= 1 << j
        meets.append(mask)
    full_b = (1 << len(words_b)) - 1
    for amask in range(1 << len(words_a)):
        bmax = full_b
        m = amask
        while m:
            low = m & -m
            bmax &= meets[low.bit_length() - 1]
            m ^= low
        fam_a = _mask_family(n, a, words_a, amask)
        # ascending submask walk of bmax
        sub = 0
        while True:
            yield fam_a, _mask_family(n, b, words_b, sub)
            if sub == bmax:
                break
            sub = (sub - bmax) & bmax
    return


def graph_edge_words(n: int) -> tuple[int, ...]:
    return level_words(n, 2)


def _iter_graphs(n: int):
    """Edge subsets of K_n with no isolated vertex, edge-mask ascending."""
    edges = graph_edge_words(n)
    full = (1 << n) - 1
    for mask in range(1 << len(edges)):
        cover = 0
        m = mask
        while m:
            low = m & -m
            cover |= edges[low.bit_length() - 1]
            m ^= low
        if cover == full:
            yield _mask_family(n, 2, edges, mask)


def _iter_up_sets(n: int):
    """All up-closed families in 2^[n], by DFS over sets in descending size.

    A set may join only if all its supersets already joined.
    """
    order = sorted(range(1 << n), key=lambda w: (-w.bit_count(), w))
    pos = {w: i for i, w in enumerate(order)}
    m = len(order)
    sup_mask = [0] * m
    for i, w in enumerate(order):
        free = ((1 << n) - 1) ^ w
        f = free
        while f:
            low = f & -f
            sup_mask[i] |= 1 << pos[w | low]
            f ^= low
    collected = []

    def rec(i: int, mask: int):
        if i == m:
            collected.append(mask)
            return
        rec(i + 1, mask)
        if sup_mask[i] & mask == sup_mask[i]:
            rec(i + 1, mask | (1 << i))

    rec(0, 0)
    collected.sort()
    for mask in collected:
        yield Family(n, (order[i] for i in range(m) if mask >> i & 1))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class Report:
    claim: str
    space: str
    checked: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    equality_witnesses: list = field(default_factory=list)
    seconds: float = 0.0
    violations: int = 0
    equalities: int = 0
    exploratory: bool = False
    expected_boundary: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "space": self.space,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
            "equality_witnesses": self.equality_witnesses,
            "seconds": self.seconds,
            "violations": self.violations,
            "equalities": self.equalities,
            "exploratory": self.exploratory,
            "expected_boundary": self.expected_boundary,
            "notes": self.notes,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def canonical_json(self) -> str:
        """Byte-comparable form: timing zeroed out."""
        body = self.to_dict()
        body["seconds"] = 0.0
        return json.dumps(body, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


def reverify(report: Report | dict, claim_params: dict | None = None) -> bool:
    """Re-run the claim on every recorded counterexample; True iff each
    one still violates."""
    body = report.to_dict() if isinstance(report, Report) else report
    claim_id, _, tail = body["claim"].partition(":")
    embedded: dict = {}
    for tok in tail.split(","):
        key, _, val = tok.partition("=")
        if key and val:
            embedded[key] = _parse_value(val)
    if claim_params:
        embedded.update(claim_params)
    if claim_id == "cross-diversity-stability":
        space = InstanceSpace.parse(body["space"])
        n, a, b = space.get("n"), space.get("a"), space.get("b")
        u, v = int(embedded["u"]), int(embedded["v"])
        cap_a = gbinom(n - u - 1, n - a - 1)
        cap_b = gbinom(n - v - 1, n - b - 1)
        for entry in body["counterexamples"]:
            fam_a, fam_b = _instance_from_payload(entry["instance"])
            if _stability_conclusion_failure(fam_a, fam_b, cap_a, cap_b) is None:
                return False
        return True
    spec = CLAIMS[claim_id]
    space = InstanceSpace.parse(body["space"])
    merged = _merged_params(spec, embedded)
    merged["_notes"] = {}
    check = spec.prepare(space, merged)
    for entry in body["counterexamples"]:
        inst = _instance_from_payload(entry["instance"])
        status, _ = check(inst)
        if status != "violation":
            return False
    return True


def _instance_payload(inst) -> object:
    if isinstance(inst, Family):
        return inst.to_text()
    if isinstance(inst, tuple) and len(inst) == 2:
        first, second = inst
        if isinstance(first, Family) and isinstance(second, Family):
            return {"A": first.to_text(), "B": second.to_text()}
        if isinstance(first, dict):
            return {
                "params": first,
                "family": second.to_text() if second is not None else None,
            }
    raise TypeError(f"cannot serialize instance {inst!r}")


def _instance_from_payload(payload):
    if isinstance(payload, str):
        return Family.from_text(payload)
    if isinstance(payload, dict) and "A" in payload:
        return Family.from_text(payload["A"]), Family.from_text(payload["B"])
    if isinstance(payload, dict) and "params" in payload:
        fam = payload["family"]
        return payload["params"], (Family.from_text(fam) if fam else None)
    raise TypeError(f"cannot rebuild instance from {payload!r}")


# ---------------------------------------------------------------------------
# claim registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    doc: str
    spaces: tuple[str, ...]
    defaults: tuple[tuple[str, object], ...] = ()
    pairs_from_families: bool = False
    exploratory: object = None   # None | True | callable(space, params) -> bool
    finalize: object = None      # callable(report) -> None

    def prepare(self, space: InstanceSpace, params: dict):
        return _PREPARE[self.id](space, params)


CLAIMS: dict[str, ClaimSpec] = {}
_PREPARE: dict[str, object] = {}


def _claim(id: str, doc: str, spaces, defaults=(), pairs_from_families=False,
           exploratory=None, finalize=None):
    def register(fn):
        CLAIMS[id] = ClaimSpec(
            id, doc, tuple(spaces), tuple(defaults), pairs_from_families,
            exploratory, finalize,
        )
        _PREPARE[id] = fn
        return fn
    return register


def _merged_params(spec: ClaimSpec, params: dict | None) -> dict:
    merged = dict(spec.defaults)
    if params:
        merged.update(params)
    return merged


def _colex_shadow_table(n: int, k: int) -> list[int]:
    """|immediate shadow| of the colex segment of each size in the k-level."""
    words = level_words(n, k)
    below = {w: i for i, w in enumerate(level_words(n, k - 1))}
    table = [0]
    acc = 0
    for w in words:
        ww = w
        while ww:
            low = ww & -ww
            acc |= 1 << below[w ^ low]
            ww ^= low
        table.append(acc.bit_count())
    return table


def _member_shadow_masks(n: int, k: int) -> list[int]:
    below = {w: i for i, w in enumerate(level_words(n, k - 1))}
    masks = []
    for w in level_words(n, k):
        m = 0
        ww = w
        while ww:
            low = ww & -ww
            m |= 1 << below[w ^ low]
            ww ^= low
        masks.append(m)
    return masks


@_claim(
    "shadow-colex-lower",
    "the immediate shadow is at least the shadow of the same-size colex segment",
    spaces=("all-families", "all-shifted-families", "random-sample", "constructions-grid"),
)
def _prep_shadow_colex(space, params):
    tables: dict[tuple[int, int], list[int]] = {}

    def check(inst):
        fam = inst[1] if isinstance(inst, tuple) else inst
        if fam is None or fam.k is None or fam.k < 1:
            return "skip", None
        key = (fam.n, fam.k)
        if key not in tables:
            tables[key] = _colex_shadow_table(*key)
        bound = tables[key][len(fam)]
        sh = len(shadow(fam, fam.k - 1))
        if sh < bound:
            return "violation", f"|shadow|={sh} < colex bound {bound}"
        if sh == bound:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "shadow-real-lower",
    "the immediate shadow is at least C(x, k-1) where C(x, k) = |F|",
    spaces=("all-families", "all-shifted-families", "random-sample", "constructions-grid"),
)
def _prep_shadow_real(space, params):
    cache: dict[tuple[int, int], float] = {}

    def check(inst):
        fam = inst[1] if isinstance(inst, tuple) else inst
        if fam is None or fam.k is None or fam.k < 1 or len(fam) == 0:
            return "skip", None
        key = (len(fam), fam.k)
        if key not in cache:
            cache[key] = kk_bound(*key)
        bound = cache[key]
        sh = len(shadow(fam, fam.k - 1))
        if sh < bound - 1e-9:
            return "violation", f"|shadow|={sh} < real bound {bound:.9f}"
        if abs(sh - bound) <= 1e-9:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "cross-unbalanced-size",
    "in a cross-intersecting pair, a star-sized side forces the other side "
    "below the star size",
    spaces=("all-cross-pairs",),
)
def _prep_cross_unbalanced(space, params):
    n, a, b = space.get("n"), space.get("a"), space.get("b")
    thr_a = comb(n - 1, a - 1)
    cap_b = comb(n - 1, b - 1)

    def check(inst):
        fam_a, fam_b = inst
        if len(fam_a) < thr_a:
            return "skip", None
        if len(fam_b) > cap_b:
            return "violation", f"|B|={len(fam_b)} > {cap_b}"
        if len(fam_b) == cap_b:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "cross-shadow-size",
    "in a cross-intersecting pair, |A| >= C(x, n-a) forces |B| <= C(n,b) - C(x,b)",
    spaces=("all-cross-pairs",),
)
def _prep_cross_shadow(space, params):
    n, a, b = space.get("n"), space.get("a"), space.get("b")

    def check(inst):
        fam_a, fam_b = inst
        if len(fam_a) < 1 or n == a:
            return "skip", None
        x = inv_gbinom(len(fam_a), n - a)
        cap = comb(n, b) - gbinom(x, b)
        tol = 1e-9 * max(1.0, comb(n, b))
        if len(fam_b) > cap + tol:
            return "violation", f"|B|={len(fam_b)} > {cap:.9f}"
        if abs(len(fam_b) - cap) <= tol:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "cross-lex-segments",
    "replacing both sides of a cross-intersecting pair by same-size lex "
    "segments keeps them cross-intersecting",
    spaces=("all-cross-pairs",),
)
def _prep_cross_lex_segments(space, params):
    n, a, b = space.get("n"), space.get("a"), space.get("b")

    def check(inst):
        fam_a, fam_b = inst
        seg_a = lex_segment(n, len(fam_a), a)
        seg_b = lex_segment(n, len(fam_b), b)
        if len(seg_a) == 0 or len(seg_b) == 0:
            return "ok", None
        if not is_cross_t_intersecting([seg_a, seg_b], 1):
            return "violation", "lex segments are not cross-intersecting"
        return "ok", None

    return check


@_claim(
    "shifted-correlation",
    "shifted families are positively correlated: |F1 n F2| C(n,k) >= |F1||F2|",
    spaces=("all-shifted-families",),
    pairs_from_families=True,
)
def _prep_shifted_correlation(space, params):
    n, k = space.get("n"), space.get("k")
    total = comb(n, k)

    def check(inst):
        f1, f2 = inst
        inter = len(f1.member_set() & f2.member_set())
        lhs = inter * total
        rhs = len(f1) * len(f2)
        if lhs < rhs:
            return "violation", f"{inter}*{total} < {len(f1)}*{len(f2)}"
        if lhs == rhs:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "compression-shadow-monotone",
    "colex compression never grows the immediate shadow along its trace",
    spaces=("all-families", "random-sample", "constructions-grid"),
)
def _prep_compression_monotone(space, params):
    def check(inst):
        fam = inst[1] if isinstance(inst, tuple) else inst
        if fam is None or fam.k is None:
            return "skip", None
        try:
            compress_to_colex(fam)
        except InvariantViolation as exc:
            return "violation", str(exc)
        return "ok", None

    return check


@_claim(
    "cross-shift-preserves",
    "paired lex shifts keep a cross-intersecting pair cross-intersecting and "
    "drive it to lex initial segments",
    spaces=("all-cross-pairs",),
)
def _prep_cross_shift(space, params):
    n, a, b = space.get("n"), space.get("a"), space.get("b")

    def check(inst):
        fam_a, fam_b = inst
        size_a, size_b = len(fam_a), len(fam_b)
        try:
            while True:
                step = cross_lex_shift_step(fam_a, fam_b)
                if step is None:
                    break
                fam_a, fam_b = step[0], step[1]
        except InvariantViolation as exc:
            return "violation", str(exc)
        if len(fam_a) != size_a or len(fam_b) != size_b:
            return "violation", "sizes changed along the shift"
        if fam_a != lex_segment(n, size_a, a) or fam_b != lex_segment(n, size_b, b):
            return "violation", "fixed point is not a pair of lex segments"
        return "ok", None

    return check


@_claim(
    "restriction-boost",
    "for shifted r-wise t-intersecting families, restricting away from "
    "element 1 boosts the intersection level to t+r-1",
    spaces=("all-shifted-families", "all-families"),
    defaults=(("r", 2), ("t", 1)),
)
def _prep_restriction_boost(space, params):
    r, t = int(params["r"]), int(params["t"])

    def check(fam):
        if fam.k is None or not is_shifted(fam):
            return "skip", None
        if not is_r_wise_t_intersecting(fam, r, t):
            return "skip", None
        rest = trace(fam, 0, 1)
        if not is_r_wise_t_intersecting(rest, r, t + r - 1):
            return "violation", f"restriction is not {r}-wise {t + r - 1}-intersecting"
        return "ok", None

    return check


@_claim(
    "shadow-diversity-stability",
    "size plus cover-diversity hypotheses force the stability shadow bound",
    spaces=("constructions-grid",),
)
def _prep_shadow_stability(space, params):
    def check(inst):
        if not isinstance(inst, tuple):
            return "skip", None
        grid, fam = inst
        if fam is None or fam.k is None:
            return "skip", None
        n, k = grid.get("n"), grid.get("k")
        x, y = grid.get("x"), grid.get("y")
        if None in (n, k, x, y):
            return "skip", None
        try:
            size_floor = bound_value("shadow-stability-size", n=n, k=k, x=x, y=y)
            shadow_floor = bound_value("shadow-stability", n=n, k=k, x=x, y=y)
        except ValueError:
            return "skip", None
        if len(fam) < size_floor:
            return "skip", None
        if kk_diversity(fam, n).value < gbinom(x, k - 1):
            return "skip", None
        sh = len(shadow(fam, fam.k - 1))
        if sh < shadow_floor:
            return "violation", f"|shadow|={sh} < stability bound {shadow_floor}"
        if sh == shadow_floor:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "ratio-monotone",
    "the weighted binomial gap is monotone on its stated interval with the "
    "exact boundary identity",
    spaces=("constructions-grid",),
)
def _prep_ratio_monotone(space, params):
    def check(inst):
        grid, _ = inst
        m, t, s = grid.get("m"), grid.get("t"), grid.get("s")
        if None in (m, t, s) or s < 2 or t < 2 or m < s + t - 1:
            return "skip", None
        try:
            check_gap_monotonicity(m, t, s)
        except InvariantViolation as exc:
            return "violation", str(exc)
        return "ok", None

    return check


@_claim(
    "graph-avoidance",
    "a graph with matching number s has an s-set whose removal leaves at "
    "most C(s+1,2) edges; equality only at complete graphs on 2s+1 vertices",
    spaces=("all-graphs",),
)
def _prep_graph_avoidance(space, params):
    def check(fam):
        if len(fam) == 0:
            return "skip", None
        s = matching_number(fam)
        value = s_diversity(fam, s).value
        bound = comb(s + 1, 2)
        if value > bound:
            return "violation", f"min avoided edges {value} > {bound}"
        cover = 0
        for w in fam.members:
            cover |= w
        csize = cover.bit_count()
        complete = len(fam) == comb(csize, 2)
        if value == bound:
            if complete and csize == 2 * s + 1:
                return "equality", None
            return "violation", "bound met by a non-complete graph"
        if csize > 2 * s + 1 and value > comb(s, 2) + 1:
            return "violation", (
                f"non-clique-bounded graph leaves {value} > C(s,2)+1 edges"
            )
        return "ok", None

    return check


@_claim(
    "rwise-diversity",
    "r-wise t-intersecting k-uniform families have diversity at most "
    "C(n-r-t, k-r-t+1)",
    spaces=("all-families", "all-shifted-families", "random-sample", "constructions-grid"),
    defaults=(("r", 3), ("t", 1)),
    exploratory=lambda space, params: not _rwise_in_range(space, params),
)
def _prep_rwise_diversity(space, params):
    r, t = int(params["r"]), int(params["t"])

    def check(inst):
        fam = inst[1] if isinstance(inst, tuple) else inst
        if fam is None or fam.k is None or len(fam) == 0:
            return "skip", None
        if fam.k - r - t + 1 < 0:
            return "skip", None
        if not is_r_wise_t_intersecting(fam, r, t):
            return "skip", None
        bound = gbinom(max(fam.n - r - t, 0), fam.k - r - t + 1)
        gamma = diversity(fam).value
        if gamma > bound:
            return "violation", f"diversity {gamma} > {bound}"
        if gamma == bound:
            return "equality", None
        return "ok", None

    return check


def _rwise_in_range(space: InstanceSpace, params: dict) -> bool:
    n, k = space.get("n"), space.get("k")
    if n is None or k is None:
        return False
    r, t = int(params.get("r", 3)), int(params.get("t", 1))
    return r >= 3 and t >= 1 and n > max(15, 2 * (r + t)) * k


@_claim(
    "matching-diversity-max",
    "among families with matching number s, the two-of-a-head construction "
    "maximizes s-diversity",
    spaces=("all-families", "random-sample"),
    defaults=(("s", 2),),
    exploratory=True,
)
def _prep_matching_diversity(space, params):
    s = int(params["s"])
    n, k = space.get("n"), space.get("k")
    if k is None:
        raise ValueError("matching-diversity-max needs a uniform (n, k) space")
    benchmark = s_diversity(a2_family(n, k, s), s).value

    def check(fam):
        if fam.k is None or matching_number(fam) != s:
            return "skip", None
        value = s_diversity(fam, s).value
        if value > benchmark:
            return "violation", f"s-diversity {value} > benchmark {benchmark}"
        if value == benchmark:
            return "equality", None
        return "ok", None

    return check


@_claim(
    "shift-preserves",
    "each i<-j shift preserves size, uniformity and r-wise t-intersection, "
    "and never raises the matching number",
    spaces=("all-families", "random-sample"),
    defaults=(("r", 2), ("t", 1)),
)
def _prep_shift_preserves(space, params):
    r, t = int(params["r"]), int(params["t"])

    def check(fam):
        inter = (
            is_r_wise_t_intersecting(fam, r, t) if len(fam) else True
        )
        nu = matching_number(fam)
        for i in range(1, fam.n + 1):
            for j in range(i + 1, fam.n + 1):
                shifted = shift_ij(fam, i, j)
                if len(shifted) != len(fam):
                    return "violation", f"size changed under ({i},{j})"
                if shifted.k != fam.k:
                    return "violation", f"uniformity changed under ({i},{j})"
                if inter and not is_r_wise_t_intersecting(shifted, r, t):
                    return "violation", (
                        f"{r}-wise {t}-intersection lost under ({i},{j})"
                    )
                if matching_number(shifted) > nu:
                    return "violation", f"matching number grew under ({i},{j})"
        return "ok", None

    return check


@_claim(
    "shift-degree-diversity",
    "degree bookkeeping of the i<-j shift: off-pair degrees are untouched, "
    "the receiving degree gains the one-sided flow, and diversity drops by "
    "at most half the two-sided flow",
    spaces=("all-families", "random-sample"),
)
def _prep_shift_degree(space, params):
    def check(fam):
        if fam.n < 2:
            return "skip", None
        degs = degree_vector(fam)
        gamma = diversity(fam).value if fam.n else 0
        for i in range(1, fam.n + 1):
            for j in range(i + 1, fam.n + 1):
                shifted = shift_ij(fam, i, j)
                sdegs = degree_vector(shifted)
                for x in range(1, fam.n + 1):
                    if x in (i, j):
                        continue
                    if sdegs[x - 1] != degs[x - 1]:
                        return "violation", f"degree of {x} changed under ({i},{j})"
                fi = set(trace(fam, 1 << (i - 1), 1 << (j - 1)).members)
                fj = set(trace(fam, 1 << (j - 1), 1 << (i - 1)).members)
                if sdegs[i - 1] != degs[i - 1] + len(fj - fi):
                    return "violation", f"receiving degree wrong under ({i},{j})"
                if sdegs[i - 1] != degs[j - 1] + len(fi - fj):
                    return "violation", f"donor-side identity wrong under ({i},{j})"
                if sdegs[j - 1] > sdegs[i - 1]:
                    return "violation", f"degree order wrong under ({i},{j})"
                flow = len(fi ^ fj)
                sgamma = diversity(shifted).value
                if sgamma < gamma - min(len(fi - fj), len(fj - fi)):
                    return "violation", f"diversity drop too large under ({i},{j})"
                if 2 * sgamma < 2 * gamma - flow:
                    return "violation", f"diversity drop beyond half-flow under ({i},{j})"
        return "ok", None

    return check


@_claim(
    "shifted-structure",
    "shifted families have descending degree sequence and diversity equal "
    "to the count of members avoiding element 1",
    spaces=("all-shifted-families", "all-families"),
)
def _prep_shifted_structure(space, params):
    def check(fam):
        if fam.n < 1 or not is_shifted(fam):
            return "skip", None
        degs = degree_vector(fam)
        if any(degs[i] < degs[i + 1] for i in range(len(degs) - 1)):
            return "violation", "degree sequence is not descending"
        gamma = diversity(fam)
        avoid1 = len(trace(fam, 0, 1))
        if gamma.value != avoid1 or gamma.value != len(fam) - degs[0]:
            return "violation", "diversity != members avoiding 1"
        if len(fam) and gamma.witness != 1:
            return "violation", "max-degree witness is not element 1"
        return "ok", None

    return check


@_claim(
    "intersecting-diversity-size",
    "an intersecting family with diversity at least C(n-u-1, n-k-1) has size "
    "at most the near-star threshold",
    spaces=("all-shifted-families", "all-families", "random-sample", "constructions-grid"),
)
def _prep_intersecting_diversity(space, params):
    fixed_u = params.get("u")

    def check(inst):
        fam = inst[1] if isinstance(inst, tuple) else inst
        if fam is None or fam.k is None or len(fam) == 0:
            return "skip", None
        n, k = fam.n, fam.k
        if k < 3 or n <= 2 * k:
            return "skip", None
        if not is_r_wise_t_intersecting(fam, 2, 1):
            return "skip", None
        if fixed_u is not None:
            grid = [fixed_u]
        else:
            grid = [3 + Fraction(i, 2) for i in range(2 * (k - 3) + 1)]
        gamma = diversity(fam).value
        matched = False
        equal = False
        for u in grid:
            if gamma < gbinom(_as_number(n - u - 1), n - k - 1):
                continue
            matched = True
            cap = bound_value("intersecting-diversity-size", n=n, k=k, u=_as_number(u))
            if isinstance(cap, float):
                if len(fam) > cap + 1e-9 * max(1.0, cap):
                    return "violation", f"|F|={len(fam)} > cap {cap:.9f} at u={u}"
                equal = equal or abs(len(fam) - cap) <= 1e-9 * max(1.0, cap)
            else:
                if len(fam) > cap:
                    return "violation", f"|F|={len(fam)} > cap {cap} at u={u}"
                equal = equal or len(fam) == cap
        if not matched:
            return "skip", None
        return ("equality", None) if equal else ("ok", None)

    return check


def _as_number(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if isinstance(value, Fraction):
        return float(value)
    return value


@_claim(
    "t-intersecting-max",
    "t-intersecting families are no larger than the parity-threshold bound",
    spaces=("all-up-sets",),
    defaults=(("t", 2),),
)
def _prep_t_intersecting_max(space, params):
    t = int(params["t"])
    n = space.get("n")
    cap = bound_value("t-intersecting-size", n=n, t=t)

    def check(fam):
        if len(fam) == 0:
            return "skip", None
        if not is_r_wise_t_intersecting(fam, 2, t):
            return "skip", None
        if len(fam) > cap:
            return "violation", f"|F|={len(fam)} > {cap}"
        if len(fam) == cap:
            return "equality", None
        return "ok", None

    return check


def _max_union_deficit(fam: Family, r: int) -> int:
    """max over <= r members of |union|; memoized DFS mirror of the
    intersection search."""
    members = fam.members
    best = 0
    searched: dict[tuple[int, int], int] = {}

    def walk(start: int, union: int, left: int) -> None:
        nonlocal best
        if union.bit_count() > best:
            best = union.bit_count()
        if left == 0:
            return
        key = (union, left)
        prev = searched.get(key)
        if prev is not None and prev <= start:
            return
        for idx in range(start, len(members)):
            w = union | members[idx]
            if w != union:
                walk(idx + 1, w, left - 1)
        searched[key] = start if prev is None else min(prev, start)

    for i in range(len(members)):
        walk(i + 1, members[i], r - 1)
    return best


def is_r_wise_t_union(fam: Family, r: int, t: int) -> bool:
    """Every r members jointly omit at least t elements of [n]."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if t < 1:
        raise ValueError("t must be >= 1")
    if len(fam) == 0:
        return True
    return _max_union_deficit(fam, r) <= fam.n - t


@_claim(
    "complement-duality",
    "complementing swaps r-wise t-intersecting with r-wise t-union and "
    "diversity with minimum degree",
    spaces=("all-families", "random-sample"),
    defaults=(("r", 2), ("t", 1)),
)
def _prep_complement_duality(space, params):
    r, t = int(params["r"]), int(params["t"])

    def check(fam):
        if fam.n < 1:
            return "skip", None
        comp = complement_family(fam)
        lhs = is_r_wise_t_intersecting(fam, r, t) if len(fam) else True
        rhs = is_r_wise_t_union(comp, r, t)
        if lhs != rhs:
            return "violation", "intersecting/union duality failed"
        gamma = diversity(fam).value
        mindeg = min(degree_vector(comp)) if len(comp) else 0
        if len(fam) and gamma != mindeg:
            return "violation", f"diversity {gamma} != min degree {mindeg}"
        return "ok", None

    return check


@_claim(
    "influence-identity",
    "for up-closed families, half the maximum influence plus twice the "
    "normalized diversity equals the measure",
    spaces=("all-up-sets",),
)
def _prep_influence_identity(space, params):
    def check(fam):
        if fam.n < 1 or len(fam) == 0:
            return "skip", None
        if not is_up_closed(fam):
            return "skip", None
        scale = 1 << (fam.n - 1)
        profile = influence_profile(fam)
        bp_max = max(round(v * scale) for v in profile)
        gamma = diversity(fam).value
        if bp_max + 2 * gamma != len(fam):
            return "violation", (
                f"max boundary {bp_max} + 2*{gamma} != |F|={len(fam)}"
            )
        return "ok", None

    return check


def _kalai_finalize(report: Report) -> None:
    seq = report.notes.get("max_influence", {})
    pairs = sorted((int(n), v) for n, v in seq.items())
    fitted = [v * n / log(n) for n, v in pairs if n >= 5]
    if fitted:
        report.notes["fitted_constant"] = max(fitted)
    drops = all(b[1] <= a[1] + 1e-12 for a, b in zip(pairs, pairs[1:]))
    report.notes["max_influence_nonincreasing"] = drops
    if not drops:
        report.violations += 1
        report.counterexamples.append(
            {"instance": {"params": {"trend": "max-influence"}, "family": None},
             "detail": "max influence increased with n"}
        )


@_claim(
    "kalai-properties",
    "the circle family is complement-antisymmetric, intersecting, up-closed "
    "for odd n, and its max influence shrinks like log n / n",
    spaces=("constructions-grid",),
    exploratory=True,
    finalize=_kalai_finalize,
)
def _prep_kalai_properties(space, params):
    notes = params["_notes"]

    def check(inst):
        grid, fam = inst
        if fam is None:
            return "skip", None
        n = grid["n"]
        full = (1 << n) - 1
        if len(fam) != 1 << (n - 1):
            return "violation", f"|F|={len(fam)} != 2^{n-1}"
        present = fam.member_set()
        for w in range(1 << n):
            if (w in present) == ((full ^ w) in present):
                return "violation", f"complement pair {set_repr(w)} not split"
        for w in fam.members:
            if (full ^ w) in present:
                return "violation", "family contains a disjoint (complementary) pair"
        if n % 2 == 1:
            if not is_up_closed(fam):
                return "violation", "odd-n circle family is not up-closed"
            if not is_r_wise_t_intersecting(fam, 2, 1):
                return "violation", "circle family is not intersecting"
            profile = influence_profile(fam)
            notes.setdefault("max_influence", {})[str(n)] = max(profile)
        return "ok", None

    return check


@_claim(
    "t-intersecting-diversity",
    "the parity-threshold families are t-intersecting, meet the size bound "
    "with equality, and their diversity obeys the one-element restriction bound",
    spaces=("constructions-grid",),
    exploratory=True,
)
def _prep_t_intersecting_diversity(space, params):
    notes = params["_notes"]

    def check(inst):
        grid, fam = inst
        if fam is None:
            return "skip", None
        n, t = grid["n"], grid["t"]
        if not is_r_wise_t_intersecting(fam, 2, t):
            return "violation", f"construction is not {t}-intersecting"
        cap = bound_value("t-intersecting-size", n=n, t=t)
        if len(fam) != cap:
            return "violation", f"|F|={len(fam)} != bound {cap}"
        gamma = diversity(fam).value
        if n - 1 >= t:
            restriction_cap = bound_value("t-intersecting-size", n=n - 1, t=t)
            if gamma > restriction_cap:
                return "violation", (
                    f"diversity {gamma} > restriction bound {restriction_cap}"
                )
        notes.setdefault("gamma", {})[f"{n},{t}"] = gamma
        return "equality", None

    return check


# ---------------------------------------------------------------------------
# fast kernels
# ---------------------------------------------------------------------------


def _shadow_kernel_factory(mode: str):
    def kernel(space: InstanceSpace, params, budget, max_recorded) -> dict:
        return _shadow_kernel(space, mode, budget, max_recorded)
    return kernel


def _shadow_kernel(space: InstanceSpace, mode: str, budget, max_recorded) -> dict:
    """Split-table scan of the shadow lower bounds over a full level.

    The shadow of a family is the union of per-member shadow masks, so a
    mask's shadow splits as (high-table OR low-table); one pass covers all
    2^C(n,k) subsets.  Mirrors the per-instance checkers bit for bit.
    """
    n, k = space.get("n"), space.get("k")
    words = level_words(n, k)
    m_words = len(words)
    total = 1 << m_words
    eff = _effective_budget(budget)
    if total > eff:
        raise BudgetExceeded(f"{space.describe()} holds {total} instances; budget {eff}")
    member_masks = _member_shadow_masks(n, k)
    colex_table = _colex_shadow_table(n, k)
    if mode == "real":
        real_table = [0.0] + [kk_bound(size, k) for size in range(1, m_words + 1)]

    split = m_words // 2
    low_tab = [0] * (1 << split)
    for mask in range(1, 1 << split):
        low_tab[mask] = low_tab[mask & (mask - 1)] | member_masks[
            (mask & -mask).bit_length() - 1
        ]
    high_tab = [0] * (1 << (m_words - split))
    for mask in range(1, 1 << (m_words - split)):
        high_tab[mask] = high_tab[mask & (mask - 1)] | member_masks[
            split + (mask & -mask).bit_length() - 1
        ]

    checked = skipped = violations = equalities = 0
    counterexamples: list = []
    witnesses: list = []
    low_count = 1 << split
    for hi in range(1 << (m_words - split)):
        hmask = high_tab[hi]
        hsize = hi.bit_count()
        for lo in range(low_count):
            size = hsize + lo.bit_count()
            if mode == "real" and size == 0:
                skipped += 1
                continue
            sh = (hmask | low_tab[lo]).bit_count()
            checked += 1
            if mode == "colex":
                bound = colex_table[size]
                if sh < bound:
                    flag, equal = True, False
                else:
                    flag, equal = False, sh == bound
            else:
                bound = real_table[size]
                if sh < bound - 1e-9:
                    flag, equal = True, False
                else:
                    flag, equal = False, abs(sh - bound) <= 1e-9
            if flag:
                violations += 1
                if len(counterexamples) < max_recorded:
                    fam = _mask_family(n, k, words, (hi << split) | lo)
                    counterexamples.append(
                        {
                            "instance": _instance_payload(fam),
                            "detail": f"|shadow|={sh} < bound {bound}",
                        }
                    )
            elif equal:
                equalities += 1
                if len(witnesses) < max_recorded:
                    fam = _mask_family(n, k, words, (hi << split) | lo)
                    witnesses.append(_instance_payload(fam))
    return {
        "checked": checked, "skipped": skipped,
        "violations": violations, "equalities": equalities,
        "counterexamples": counterexamples, "equality_witnesses": witnesses,
    }


def _graph_kernel(space: InstanceSpace, params, budget, max_recorded) -> dict:
    """Vectorized scan of the graph-avoidance claim over all-graphs(n).

    Mirrors the per-instance checker exactly; counterexamples and equality
    witnesses come out in ascending edge-mask order.
    """
    import numpy as np

    n = space.get("n")
    edges = level_words(n, 2)
    num_edges = len(edges)
    total = space_size(space)
    eff = _effective_budget(budget)
    if total > eff:
        raise BudgetExceeded(f"{space.describe()} holds {total} instances; budget {eff}")

    all_masks = np.arange(1 << num_edges, dtype=np.int64)
    cover = np.zeros(all_masks.size, dtype=np.int32)
    for ei, vw in enumerate(edges):
        cover |= np.where((all_masks >> ei) & 1 == 1, np.int32(vw), np.int32(0))
    graphs = all_masks[cover == (1 << n) - 1]

    # matching number via "contains some j-matching" passes
    matchings: dict[int, list[int]] = {}
    for size in range(1, n // 2 + 1):
        found = []
        for combo in itertools.combinations(range(num_edges), size):
            used = 0
            ok = True
            for ei in combo:
                if used & edges[ei]:
                    ok = False
                    break
                used |= edges[ei]
            if ok:
                emask = 0
                for ei in combo:
                    emask |= 1 << ei
                found.append(emask)
        if found:
            matchings[size] = found
    nu = np.zeros(graphs.size, dtype=np.int8)
    for size, masks in matchings.items():
        has = np.zeros(graphs.size, dtype=bool)
        for emask in masks:
            has |= (graphs & emask) == emask
        nu = np.where(has, np.int8(size), nu)

    pop16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)

    def popcnt(arr):
        return (pop16[arr & 0xFFFF] + pop16[(arr >> 16) & 0xFFFF]).astype(np.int8)

    vertex_edge_mask = []
    for vtx in range(n):
        emask = 0
        for ei, vw in enumerate(edges):
            if vw >> vtx & 1:
                emask |= 1 << ei
        vertex_edge_mask.append(emask)
    cover_size = np.zeros(graphs.size, dtype=np.int8)
    for vtx in range(n):
        cover_size += ((graphs & vertex_edge_mask[vtx]) != 0)

    edge_count = popcnt(graphs & 0xFFFFFFFF).astype(np.int16) + popcnt(graphs >> 32)

    bad = np.zeros(graphs.size, dtype=bool)
    eq_ok = np.zeros(graphs.size, dtype=bool)
    for s in range(1, n // 2 + 1):
        sel = nu == s
        if not sel.any():
            continue
        sub = graphs[sel]
        minavoid = np.full(sub.size, np.int8(127))
        for rset in itertools.combinations(range(n), s):
            rmask = 0
            for vtx in rset:
                rmask |= 1 << vtx
            emask = 0
            for ei, vw in enumerate(edges):
                if vw & rmask == 0:
                    emask |= 1 << ei
            minavoid = np.minimum(minavoid, popcnt(sub & emask))
        bound = comb(s + 1, 2)
        csize = cover_size[sel]
        complete = edge_count[sel] == csize.astype(np.int16) * (csize - 1) // 2
        at_bound = minavoid == bound
        good_eq = at_bound & complete & (csize == 2 * s + 1)
        over = minavoid > bound
        hm_bad = (csize > 2 * s + 1) & (minavoid > comb(s, 2) + 1)
        bad_here = over | (at_bound & ~good_eq) | hm_bad
        idx = np.flatnonzero(sel)
        bad[idx[bad_here]] = True
        eq_ok[idx[good_eq]] = True

    tallies = {
        "checked": int(graphs.size), "skipped": 0,
        "violations": int(bad.sum()), "equalities": int(eq_ok.sum()),
        "counterexamples": [], "equality_witnesses": [],
    }
    check = _PREPARE["graph-avoidance"](space, params)
    for gmask in graphs[bad][:max_recorded]:
        fam = _mask_family(n, 2, edges, int(gmask))
        status, detail = check(fam)
        tallies["counterexamples"].append(
            {"instance": _instance_payload(fam), "detail": detail or "kernel flag"}
        )
    for gmask in graphs[eq_ok][:max_recorded]:
        fam = _mask_family(n, 2, edges, int(gmask))
        tallies["equality_witnesses"].append(_instance_payload(fam))
    return tallies


KERNELS = {
    ("graph-avoidance", "all-graphs"): _graph_kernel,
    ("shadow-colex-lower", "all-families"): _shadow_kernel_factory("colex"),
    ("shadow-real-lower", "all-families"): _shadow_kernel_factory("real"),
}


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------


def verify(
    claim_id: str,
    space: InstanceSpace | str,
    params: dict | None = None,
    jobs: int | None = None,
    budget: int | None = None,
    max_recorded: int = MAX_RECORDED,
) -> Report:
    """Check one claim over one instance space and return the Report."""
    if claim_id == "cross-diversity-stability":
        return _verify_cross_pair_claim(space, params, jobs, budget, max_recorded)
    if claim_id not in CLAIMS:
        raise ValueError(f"unknown claim {claim_id!r}; know {sorted(CLAIMS)}")
    spec = CLAIMS[claim_id]
    if isinstance(space, str):
        space = InstanceSpace.parse(space)
    if space.kind not in spec.spaces:
        raise ValueError(
            f"claim {claim_id!r} runs on {spec.spaces}, not {space.kind!r}"
        )
    merged = _merged_params(spec, params)
    t0 = time.perf_counter()
    report = Report(claim=_claim_label(claim_id, merged), space=space.describe())
    notes: dict = {}
    merged["_notes"] = notes

    jobs = jobs or 1
    kernel = KERNELS.get((claim_id, space.kind))
    if kernel is not None:
        tallies = kernel(space, merged, budget, max_recorded)
    elif jobs > 1 and space.kind in ("all-families", "random-sample") and not spec.pairs_from_families:
        tallies = _parallel_scan(spec, space, merged, jobs, budget, max_recorded)
    else:
        tallies = _scan_block(spec, space, merged, None, budget, max_recorded)
    _merge_into(report, tallies, max_recorded)
    report.notes.update(notes)

    if spec.exploratory is True:
        report.exploratory = True
    elif callable(spec.exploratory):
        report.exploratory = bool(spec.exploratory(space, merged))
    if spec.finalize is not None:
        spec.finalize(report)
    report.seconds = round(time.perf_counter() - t0, 6)
    return report


def _claim_label(claim_id: str, params: dict) -> str:
    shown = {k: v for k, v in params.items() if not k.startswith("_")}
    if not shown:
        return claim_id
    body = ",".join(f"{k}={v}" for k, v in sorted(shown.items()))
    return f"{claim_id}:{body}"


def _instance_stream(spec: ClaimSpec, space: InstanceSpace, budget):
    if spec.pairs_from_families:
        fams = list(iter_space(space, budget))
        eff = _effective_budget(budget)
        if len(fams) ** 2 > eff:
            raise BudgetExceeded(
                f"{len(fams)}^2 ordered pairs exceed the budget of {eff}"
            )
        return itertools.product(fams, fams)
    return iter_space(space, budget)


def _scan_block(spec, space, params, block, budget, max_recorded) -> dict:
    check = spec.prepare(space, params)
    tallies = {
        "checked": 0, "skipped": 0, "violations": 0, "equalities": 0,
        "counterexamples": [], "equality_witnesses": [],
    }
    stream = _instance_stream(spec, space, budget)
    if block is not None:
        lo, hi = block
        stream = itertools.islice(stream, lo, hi)
    for inst in stream:
        status, detail = check(inst)
        if status == "skip":
            tallies["skipped"] += 1
            continue
        tallies["checked"] += 1
        if status == "violation":
            tallies["violations"] += 1
            if len(tallies["counterexamples"]) < max_recorded:
                tallies["counterexamples"].append(
                    {"instance": _instance_payload(inst), "detail": detail}
                )
        elif status == "equality":
            tallies["equalities"] += 1
            if len(tallies["equality_witnesses"]) < max_recorded:
                tallies["equality_witnesses"].append(_instance_payload(inst))
    return tallies


def _worker_scan(claim_id, space_text, params, block, budget, max_recorded):
    spec = CLAIMS[claim_id]
    space = InstanceSpace.parse(space_text)
    local = dict(params)
    local["_notes"] = {}
    return _scan_block(spec, space, local, block, budget, max_recorded)


def _parallel_scan(spec, space, params, jobs, budget, max_recorded) -> dict:
    total = space_size(space)
    if total is None:
        return _scan_block(spec, space, params, None, budget, max_recorded)
    eff = _effective_budget(budget)
    if total > eff:
        raise BudgetExceeded(f"{space.describe()} holds {total} instances; budget {eff}")
    plain = {k: v for k, v in params.items() if not k.startswith("_")}
    chunk = (total + jobs - 1) // jobs
    blocks = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(
                _worker_scan, spec.id, space.describe(), plain, blk, budget, max_recorded
            )
            for blk in blocks
        ]
        partials = [f.result() for f in futures]
    merged = partials[0]
    for part in partials[1:]:
        for key in ("checked", "skipped", "violations", "equalities"):
            merged[key] += part[key]
        merged["counterexamples"].extend(part["counterexamples"])
        merged["equality_witnesses"].extend(part["equality_witnesses"])
    merged["counterexamples"] = merged["counterexamples"][:max_recorded]
    merged["equality_witnesses"] = merged["equality_witnesses"][:max_recorded]
    return merged


def _merge_into(report: Report, tallies: dict, max_recorded: int) -> None:
    report.checked = tallies["checked"]
    report.skipped = tallies["skipped"]
    report.violations = tallies["violations"]
    report.equalities = tallies["equalities"]
    report.counterexamples = tallies["counterexamples"][:max_recorded]
    report.equality_witnesses = tallies["equality_witnesses"][:max_recorded]


# ---------------------------------------------------------------------------
# the cross-pair stability scan
# ---------------------------------------------------------------------------


def verify_cross_pair_space(
    n: int,
    a: int,
    b: int,
    u: int,
    v: int,
    budget: int | None = None,
    max_recorded: int = MAX_RECORDED,
) -> Report:
    """Exhaustive scan of the cross-intersecting stability claim.

    Enumerates A-sides at or above their size threshold, computes the
    unique maximal compatible B-side, and descends into B-subsets only
    when the threshold is reachable.  Hypotheses require at least one
    strict size inequality; pairs sitting exactly at both thresholds are
    counted as skipped.  The boundary pair built from the u=v=2 relaxation
    is replayed and recorded as expected-boundary, never as a counterexample.
    """
    if u < 3 or v < 3:
        raise ValueError("need u >= 3 and v >= 3")
    if n < a + b:
        raise ValueError("need n >= a+b")
    t0 = time.perf_counter()
    thr_a = gbinom(n - 1, a - 1) - gbinom(n - v - 1, a - 1) + gbinom(n - u - 1, n - a - 1)
    thr_b = gbinom(n - 1, b - 1) - gbinom(n - u - 1, b - 1) + gbinom(n - v - 1, n - b - 1)
    gamma_cap_a = gbinom(n - u - 1, n - a - 1)
    gamma_cap_b = gbinom(n - v - 1, n - b - 1)
    report = Report(
        claim=f"cross-diversity-stability:u={u},v={v}",
        space=InstanceSpace.make("all-cross-pairs", n=n, a=a, b=b).describe(),
    )
    report.notes["threshold_a"] = thr_a
    report.notes["threshold_b"] = thr_b
    if not (u <= a and v <= b):
        report.notes["outside_theorem_range"] = True
        report.exploratory = True

    words_a = level_words(n, a)
    words_b = level_words(n, b)
    la, lb = len(words_a), len(words_b)
    feasible = thr_a <= la and thr_b <= lb
    if not feasible:
        report.notes["vacuous"] = True

    eff = _effective_budget(budget)
    enumerated = 0
    if feasible:
        meets = []
        for wa in words_a:
            mask = 0
            for jdx, wb in enumerate(words_b):
                if wa & wb:
                    mask |= 1 << jdx
            meets.append(mask)
        for size_a in range(int(thr_a), la + 1):
            for combo in itertools.combinations(range(la), size_a):
                enumerated += 1
                if enumerated > eff:
                    raise BudgetExceeded(f"cross-pair scan exceeded budget {eff}")
                bmax = (1 << lb) - 1
                for idx in combo:
                    bmax &= meets[idx]
                    if bmax == 0:
                        break
                if bmax.bit_count() < thr_b:
                    continue
                bbits = [jdx for jdx in range(lb) if bmax >> jdx & 1]
                fam_a = None
                for size_b in range(int(thr_b), len(bbits) + 1):
                    for bcombo in itertools.combinations(bbits, size_b):
                        if size_a == thr_a and size_b == thr_b:
                            report.skipped += 1
                            continue
                        if fam_a is None:
                            fam_a = Family(n, (words_a[i] for i in combo), k=a)
                        fam_b = Family(n, (words_b[j] for j in bcombo), k=b)
                        report.checked += 1
                        bad = _stability_conclusion_failure(
                            fam_a, fam_b, gamma_cap_a, gamma_cap_b
                        )
                        if bad:
                            report.violations += 1
                            if len(report.counterexamples) < max_recorded:
                                report.counterexamples.append(
                                    {
                                        "instance": _instance_payload((fam_a, fam_b)),
                                        "detail": bad,
                                    }
                                )

    boundary_a = l_family(n, a, 2, 2)
    boundary_b = l_family(n, b, 2, 2)
    report.expected_boundary.append(
        {
            "pair": "size-threshold relaxation at u'=v'=2",
            "size_a": len(boundary_a),
            "size_b": len(boundary_b),
            "meets_size_thresholds": len(boundary_a) >= thr_a and len(boundary_b) >= thr_b,
            "gamma_a": diversity(boundary_a).value,
            "gamma_b": diversity(boundary_b).value,
            "gamma_cap_a": gamma_cap_a,
            "gamma_cap_b": gamma_cap_b,
            "violates_diversity_conclusion": (
                diversity(boundary_a).value >= gamma_cap_a
                or diversity(boundary_b).value >= gamma_cap_b
            ),
        }
    )
    report.seconds = round(time.perf_counter() - t0, 6)
    return report


def _stability_conclusion_failure(fam_a, fam_b, cap_a, cap_b) -> str | None:
    da = diversity(fam_a)
    db = diversity(fam_b)
    if da.value >= cap_a:
        return f"diversity(A)={da.value} >= {cap_a}"
    if db.value >= cap_b:
        return f"diversity(B)={db.value} >= {cap_b}"
    degs_a = degree_vector(fam_a)
    degs_b = degree_vector(fam_b)
    if degs_a.count(max(degs_a)) != 1 or degs_b.count(max(degs_b)) != 1:
        return "largest-degree element is not unique"
    if degs_a.index(max(degs_a)) != degs_b.index(max(degs_b)):
        return "largest-degree elements differ between the sides"
    return None


def _verify_cross_pair_claim(space, params, jobs, budget, max_recorded) -> Report:
    if isinstance(space, str):
        space = InstanceSpace.parse(space)
    if space.kind != "all-cross-pairs":
        raise ValueError("cross-diversity-stability runs on all-cross-pairs")
    p = params or {}
    return verify_cross_pair_space(
        space.get("n"), space.get("a"), space.get("b"),
        int(p.get("u", 3)), int(p.get("v", 3)),
        budget=budget, max_recorded=max_recorded,
    )
