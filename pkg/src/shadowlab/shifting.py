"""Shifting and compression operators on families.

Covers the single-pair i<-j shift, the set-pair (Daykin) U<-V shift, the
fixed-point iteration to a shifted family, colex compression with its
shadow-monotonicity certificate, and the paired lex shift used for
cross-intersecting families.  Every compression produces a replayable
trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import (
    Family,
    InvariantViolation,
    elements_of,
    is_cross_t_intersecting,
    set_repr,
    shadow,
    word_of,
)
from .orders import colex_rank, colex_segment, level_words


@dataclass(frozen=True)
class ShiftStep:
    kind: str          # "ij" or "daykin"
    i: int = 0         # ij form
    j: int = 0
    u: int = 0         # daykin form, set words
    v: int = 0
    moved: int = 0     # number of members that changed

    def to_line(self) -> str:
        if self.kind == "ij":
            return f"ij {self.i} {self.j} moved={self.moved}"
        return f"daykin U={set_repr(self.u)} V={set_repr(self.v)} moved={self.moved}"

    @classmethod
    def from_line(cls, line: str) -> "ShiftStep":
        parts = line.split()
        if not parts:
            raise ValueError("empty trace line")
        if parts[0] == "ij" and len(parts) == 4 and parts[3].startswith("moved="):
            return cls("ij", i=int(parts[1]), j=int(parts[2]), moved=int(parts[3][6:]))
        if parts[0] == "daykin" and len(parts) == 4:
            u = _parse_braced(parts[1], "U")
            v = _parse_braced(parts[2], "V")
            if not parts[3].startswith("moved="):
                raise ValueError(f"bad trace line: {line!r}")
            return cls("daykin", u=u, v=v, moved=int(parts[3][6:]))
        raise ValueError(f"bad trace line: {line!r}")


def _parse_braced(token: str, label: str) -> int:
    prefix = label + "={"
    if not token.startswith(prefix) or not token.endswith("}"):
        raise ValueError(f"bad {label} token: {token!r}")
    body = token[len(prefix):-1]
    if not body:
        return 0
    return word_of(int(t) for t in body.split(","))


@dataclass(frozen=True)
class ShiftTrace:
    """Ordered log of compression steps; replaying it is bit-exact."""

    steps: tuple[ShiftStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        return "".join(step.to_line() + "\n" for step in self.steps)

    @classmethod
    def from_text(cls, text: str) -> "ShiftTrace":
        return cls(tuple(ShiftStep.from_line(ln) for ln in text.splitlines() if ln.strip()))

    def replay(self, fam: Family) -> Family:
        for step in self.steps:
            if step.kind == "ij":
                fam, moved = _shift_ij_words(fam, step.i, step.j)
            else:
                fam, moved = _daykin_words(fam, step.u, step.v)
            if moved != step.moved:
                raise InvariantViolation(
                    f"replay moved {moved} sets at {step.to_line()!r}"
                )
        return fam


def _shift_ij_words(fam: Family, i: int, j: int) -> tuple[Family, int]:
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    present = fam.member_set()
    out = []
    moved = 0
    for w in fam.members:
        if w & bj and not w & bi:
            g = (w ^ bj) | bi
            if g in present:
                out.append(w)
            else:
                out.append(g)
                moved += 1
        else:
            out.append(w)
    res = Family(fam.n, out, k=fam.k if not out else None)
    if len(res) != len(fam):
        raise InvariantViolation("shift changed the family size")
    return res, moved


def shift_ij(fam: Family, i: int, j: int) -> Family:
    """The i<-j shift: replace j by i in members where the image is free.

    The usual direction is i < j; i != j is required, the same replacement
    rule applies either way.
    """
    if i == j:
        raise ValueError("shift needs i != j")
    for e in (i, j):
        if not 1 <= e <= fam.n:
            raise ValueError(f"element {e} outside 1..{fam.n}")
    return _shift_ij_words(fam, i, j)[0]


def is_shifted(fam: Family) -> bool:
    """Closed under pushing any single element down to a free smaller one.

    Single-element moves generate the shifting partial order, so this is
    equivalent to closure under predecessors of <_s.
    """
    present = fam.member_set()
    for w in fam.members:
        elems = elements_of(w)
        for j in elems:
            bj = 1 << (j - 1)
            for i in range(1, j):
                bi = 1 << (i - 1)
                if not w & bi and ((w ^ bj) | bi) not in present:
                    return False
    return True


def shift_to_shifted(fam: Family) -> tuple[Family, ShiftTrace]:
    """Apply i<-j shifts in sweeps over (i, j), i < j, until a clean sweep.

    Termination certificate: the total element sum strictly drops on every
    recorded step.  Size, uniformity, r-wise t-intersection and the
    matching number survive each step.
    """
    steps = []
    cur = fam
    potential = sum(sum(elements_of(w)) for w in cur.members)
    changed = True
    while changed:
        changed = False
        for i in range(1, cur.n + 1):
            for j in range(i + 1, cur.n + 1):
                nxt, moved = _shift_ij_words(cur, i, j)
                if moved:
                    new_potential = sum(sum(elements_of(w)) for w in nxt.members)
                    if new_potential >= potential:
                        raise InvariantViolation("element-sum potential did not drop")
                    potential = new_potential
                    steps.append(ShiftStep("ij", i=i, j=j, moved=moved))
                    cur = nxt
                    changed = True
    return cur, ShiftTrace(tuple(steps))


def _daykin_words(fam: Family, u: int, v: int) -> tuple[Family, int]:
    uv = u | v
    present = fam.member_set()
    out = []
    moved = 0
    for w in fam.members:
        if w & uv == v:
            g = (w & ~v) | u
            if g in present:
                out.append(w)
            else:
                out.append(g)
                moved += 1
        else:
            out.append(w)
    res = Family(fam.n, out, k=fam.k if not out else None)
    if len(res) != len(fam):
        raise InvariantViolation("shift changed the family size")
    return res, moved


def daykin_shift(fam: Family, u: int, v: int) -> Family:
    """The set-pair U<-V shift: rewrite the V-pattern to U where the image is free.

    U and V are disjoint equal-size set words; the singleton case is
    exactly shift_ij.
    """
    if u & v:
        raise ValueError("U and V must be disjoint")
    if u.bit_count() != v.bit_count():
        raise ValueError("U and V must have equal size")
    top = 1 << fam.n
    if u >= top or v >= top:
        raise ValueError("U or V not contained in the ground set")
    return _daykin_words(fam, u, v)[0]


def find_colex_violation(fam: Family) -> tuple[int, int] | None:
    """An inclusion-minimal (U, V) whose U<-V shift moves the family colex-down.

    Returns None exactly when the family is a colex initial segment.
    Among violating pairs the choice is by smallest |U|, then colex rank
    of V, then colex rank of U.  Every violating pair arises as
    (G - F, F - G) for a member F and an absent G < F, so the scan runs
    over those couples.
    """
    if fam.k is None:
        raise ValueError("colex violation search needs a uniform family")
    present = fam.member_set()
    if not present:
        return None
    top_member = fam.members[-1]
    best = None
    for g in level_words(fam.n, fam.k):
        if g >= top_member:
            break
        if g in present:
            continue
        for f in fam.members:
            if f <= g:
                continue
            u = g & ~f
            v = f & ~g
            key = (u.bit_count(), v, u)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return best[2], best[1]


def compress_to_colex(fam: Family) -> tuple[Family, ShiftTrace]:
    """Apply colex-chosen Daykin shifts until the family is a colex segment.

    Two runtime certificates are enforced at every step: the immediate
    shadow never grows, and the sum of colex ranks strictly drops.
    """
    if fam.k is None:
        raise ValueError("colex compression needs a uniform family")
    steps = []
    cur = fam
    track_shadow = cur.k >= 1 and len(cur) > 0
    cur_shadow = len(shadow(cur, cur.k - 1)) if track_shadow else 0
    cur_rank = sum(colex_rank(w) for w in cur.members)
    while True:
        hit = find_colex_violation(cur)
        if hit is None:
            break
        u, v = hit
        nxt, moved = _daykin_words(cur, u, v)
        if track_shadow:
            nxt_shadow = len(shadow(nxt, nxt.k - 1))
            if nxt_shadow > cur_shadow:
                raise InvariantViolation(
                    f"immediate shadow grew {cur_shadow} -> {nxt_shadow} under "
                    f"U={set_repr(u)} V={set_repr(v)}"
                )
            cur_shadow = nxt_shadow
        nxt_rank = sum(colex_rank(w) for w in nxt.members)
        if nxt_rank >= cur_rank:
            raise InvariantViolation("colex-rank potential did not drop")
        cur_rank = nxt_rank
        steps.append(ShiftStep("daykin", u=u, v=v, moved=moved))
        cur = nxt
    target = colex_segment(fam.n, len(fam), fam.k)
    if cur.members != target.members:
        raise InvariantViolation("compression fixed point is not the colex segment")
    return cur, ShiftTrace(tuple(steps))


def _lex_violation(fam: Family) -> tuple[int, tuple, tuple, int, int] | None:
    """Minimal lex-violating pair for one family.

    Key is (|U|, elements(V), elements(U)); returns (size, eV, eU, u, v)
    or None when the family is a lex initial segment.
    """
    present = fam.member_set()
    best = None
    for g in level_words(fam.n, fam.k):
        if g in present:
            continue
        for f in fam.members:
            if f == g:
                continue
            diff = f ^ g
            if not g & (diff & -diff):
                continue  # f precedes g in lex
            u = g & ~f
            v = f & ~g
            key = (u.bit_count(), elements_of(v), elements_of(u), u, v)
            if best is None or key < best:
                best = key
    return best


def cross_lex_shift_step(
    a: Family, b: Family
) -> tuple[Family, Family, int, int] | None:
    """One paired lex shift on a cross-intersecting pair.

    Returns None when both families are lex initial segments; otherwise
    picks each family's inclusion-minimal violating pair, takes the one
    with smaller |U| (the first family on ties), applies it to both and
    checks that cross-intersection survived.
    """
    if a.k is None or b.k is None:
        raise ValueError("cross lex shift needs uniform families")
    if a.n != b.n:
        raise ValueError("mismatched ground sizes")
    if a.n < a.k + b.k:
        raise ValueError("ground set smaller than a+b")
    if not is_cross_t_intersecting([a, b], 1):
        raise ValueError("families are not cross-intersecting")
    hit_a = _lex_violation(a)
    hit_b = _lex_violation(b)
    if hit_a is None and hit_b is None:
        return None
    if hit_b is None or (hit_a is not None and hit_a[0] <= hit_b[0]):
        best = hit_a
    else:
        best = hit_b
    u, v = best[3], best[4]
    new_a = _daykin_words(a, u, v)[0]
    new_b = _daykin_words(b, u, v)[0]
    if not is_cross_t_intersecting([new_a, new_b], 1):
        raise InvariantViolation(
            f"cross-intersection lost under U={set_repr(u)} V={set_repr(v)}"
        )
    return new_a, new_b, u, v
