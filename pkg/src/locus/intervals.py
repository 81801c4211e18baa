"""Exact interval sets over the rational line.

Two layers live here.  The lower layer is a boolean algebra of finite
lists of disjoint rational intervals (endpoints are Fractions, with
-inf/+inf floats as the two improper endpoints).  The upper layer,
PeriodicSet, adds eventually periodic behaviour: a bounded window of
arbitrary content plus one optional periodic tail pattern per side,
repeating forever outward with a shared period.

PeriodicSet values are kept in a unique normal form, so equality of
denoted sets is structural equality:

* intervals are maximal and sorted; saturated tails (pattern = full
  slot) are folded into unbounded ray intervals in the core,
* the period is minimal and shared (lcm of the two sides' minimal
  periods),
* the window is pinned at the intrinsic thresholds where periodicity
  starts, fully periodic sets are phased at window [0, 0], tail-less
  sets take the hull of their finite endpoints ([0, 0] when none).

All arithmetic is exact; nothing here ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

NEG_INF = float("-inf")
POS_INF = float("inf")


def _as_endpoint(v):
    if isinstance(v, float):
        if v == NEG_INF or v == POS_INF:
            return v
        raise ValueError(f"non-infinite float endpoint {v!r}; use Fraction")
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def frac_lcm(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.lcm(a.numerator, b.numerator),
                    math.gcd(a.denominator, b.denominator))


@dataclass(frozen=True)
class QInterval:
    """Nonempty order-convex subset of the rational line.

    Infinite endpoints are open by convention; a degenerate interval
    (lo == hi) is a point and must be closed on both sides.
    """

    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_endpoint(self.lo))
        object.__setattr__(self, "hi", _as_endpoint(self.hi))
        if self.lo == POS_INF or self.hi == NEG_INF:
            raise ValueError("endpoint out of orientation")
        if isinstance(self.lo, float) and self.lo_closed:
            raise ValueError("infinite endpoint must be open")
        if isinstance(self.hi, float) and self.hi_closed:
            raise ValueError("infinite endpoint must be open")
        if self.lo > self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate interval must be a closed point")

    @property
    def is_bounded(self) -> bool:
        return not isinstance(self.lo, float) and not isinstance(self.hi, float)

    def contains(self, q: Fraction) -> bool:
        above = q > self.lo or (q == self.lo and self.lo_closed)
        below = q < self.hi or (q == self.hi and self.hi_closed)
        return above and below

    def closed(self) -> "QInterval":
        return QInterval(self.lo, self.hi,
                         not isinstance(self.lo, float),
                         not isinstance(self.hi, float))

    def translate(self, t: Fraction) -> "QInterval":
        lo = self.lo if isinstance(self.lo, float) else self.lo + t
        hi = self.hi if isinstance(self.hi, float) else self.hi + t
        return QInterval(lo, hi, self.lo_closed, self.hi_closed)

    def affine(self, c: Fraction, d: Fraction) -> "QInterval":
        """Image under x -> c*x + d for c != 0."""
        if c == 0:
            raise ValueError("degenerate slope handled by the caller")

        def m(v):
            if v == NEG_INF:
                return NEG_INF if c > 0 else POS_INF
            if v == POS_INF:
                return POS_INF if c > 0 else NEG_INF
            return c * v + d

        if c > 0:
            return QInterval(m(self.lo), m(self.hi), self.lo_closed, self.hi_closed)
        return QInterval(m(self.hi), m(self.lo), self.hi_closed, self.lo_closed)

    def __str__(self):
        lo = "-inf" if self.lo == NEG_INF else str(self.lo)
        hi = "inf" if self.hi == POS_INF else str(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo},{hi}{']' if self.hi_closed else ')'}"


def iv(lo, hi, lo_closed=False, hi_closed=False) -> QInterval:
    return QInterval(lo, hi, lo_closed, hi_closed)


def pt(q) -> QInterval:
    return QInterval(q, q, True, True)


FULL_LINE = QInterval(NEG_INF, POS_INF)


# ---------------------------------------------------------------------------
# finite interval lists: sorted, disjoint, non-adjacent tuples of QInterval

def _lo_key(i: QInterval):
    return (i.lo, 0 if i.lo_closed else 1)


def _hi_key(i: QInterval):
    return (i.hi, 1 if i.hi_closed else 0)


def _mergeable(a: QInterval, b: QInterval) -> bool:
    # precondition: _lo_key(a) <= _lo_key(b)
    if b.lo < a.hi:
        return True
    return b.lo == a.hi and (b.lo_closed or a.hi_closed)


def merge_list(items) -> tuple:
    out = []
    for cur in sorted(items, key=_lo_key):
        if out and _mergeable(out[-1], cur):
            prev = out[-1]
            hi, hi_closed = max(
                (_hi_key(prev), prev.hi, prev.hi_closed),
                (_hi_key(cur), cur.hi, cur.hi_closed))[1:]
            out[-1] = QInterval(prev.lo, hi, prev.lo_closed, hi_closed)
        else:
            out.append(cur)
    return tuple(out)


def _nonempty_bounds(lo, hi, lo_closed, hi_closed) -> bool:
    if lo < hi:
        return True
    return lo == hi and lo_closed and hi_closed and not isinstance(lo, float)


def intersect_lists(a, b) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        lo, lo_closed = max((_lo_key(x), x.lo, x.lo_closed),
                            (_lo_key(y), y.lo, y.lo_closed))[1:]
        hi, hi_closed = min((_hi_key(x), x.hi, x.hi_closed),
                            (_hi_key(y), y.hi, y.hi_closed))[1:]
        if _nonempty_bounds(lo, hi, lo_closed, hi_closed):
            out.append(QInterval(lo, hi, lo_closed, hi_closed))
        if _hi_key(x) <= _hi_key(y):
            i += 1
        else:
            j += 1
    return tuple(out)


def complement_list(a) -> tuple:
    """Complement within the full rational line (input normalized)."""
    out = []
    cur_lo, cur_closed = NEG_INF, False
    for piece in a:
        if _nonempty_bounds(cur_lo, piece.lo, cur_closed, not piece.lo_closed):
            out.append(QInterval(cur_lo, piece.lo, cur_closed, not piece.lo_closed))
        cur_lo, cur_closed = piece.hi, not piece.hi_closed
        if cur_lo == POS_INF:
            return tuple(out)
    out.append(QInterval(cur_lo, POS_INF, cur_closed, False))
    return tuple(out)


def union_lists(a, b) -> tuple:
    return merge_list(list(a) + list(b))


def difference_lists(a, b) -> tuple:
    return intersect_lists(a, complement_list(merge_list(b)))


def symdiff_lists(a, b) -> tuple:
    return union_lists(difference_lists(a, b), difference_lists(b, a))


def clip(a, zone: QInterval) -> tuple:
    return intersect_lists(a, (zone,))


def list_contains(a, q: Fraction) -> bool:
    return any(piece.contains(q) for piece in a)


def translate_list(a, t: Fraction) -> tuple:
    return tuple(piece.translate(t) for piece in a)


# ---------------------------------------------------------------------------
# PeriodicSet

_DEPTH = 4  # materialization margin, in raw periods


@dataclass(frozen=True)
class PeriodicSet:
    """Eventually periodic set of rationals, always in normal form.

    Fields: optional shared period, window [window_lo, window_hi], core
    content (all finite endpoints inside the window; first/last piece
    may be a ray), and per-side patterns in the one-period slots
    adjacent to the window.  Denotes

        core  u  U_{k>=0} (left - k*period)  u  U_{k>=0} (right + k*period).

    Instances are produced by the module constructors, never built
    directly; structural equality is set equality.
    """

    period: object          # Fraction or None
    window_lo: Fraction
    window_hi: Fraction
    core: tuple
    left: tuple
    right: tuple

    def __post_init__(self):
        if self.period is not None and self.period <= 0:
            raise ValueError("period must be positive")
        if bool(self.left or self.right) != (self.period is not None):
            if self.period is None:
                raise ValueError("patterns present without a period")
            raise ValueError("period present without patterns")
        if self.window_lo > self.window_hi:
            raise ValueError("window inverted")
        for piece in self.core:
            for v in (piece.lo, piece.hi):
                if not isinstance(v, float) and not (
                        self.window_lo <= v <= self.window_hi):
                    raise ValueError("core endpoint outside window")
        if self.left:
            slot = QInterval(self.window_lo - self.period, self.window_lo, True, False)
            if clip(self.left, slot) != self.left:
                raise ValueError("left pattern outside its slot")
        if self.right:
            slot = QInterval(self.window_hi, self.window_hi + self.period, False, True)
            if clip(self.right, slot) != self.right:
                raise ValueError("right pattern outside its slot")

    # -- structure ------------------------------------------------------

    @property
    def has_left_tail(self) -> bool:
        return bool(self.left)

    @property
    def has_right_tail(self) -> bool:
        return bool(self.right)

    @property
    def has_left_ray(self) -> bool:
        return bool(self.core) and self.core[0].lo == NEG_INF

    @property
    def has_right_ray(self) -> bool:
        return bool(self.core) and self.core[-1].hi == POS_INF

    @property
    def is_empty(self) -> bool:
        return not self.core and not self.left and not self.right

    @property
    def is_bounded(self) -> bool:
        return not (self.left or self.right or self.has_left_ray or self.has_right_ray)

    @property
    def bounded_above(self) -> bool:
        return not (self.right or self.has_right_ray)

    @property
    def bounded_below(self) -> bool:
        return not (self.left or self.has_left_ray)

    def sup(self):
        if not self.bounded_above:
            return POS_INF
        if self.core:
            return self.core[-1].hi
        if self.left:
            return self.left[-1].hi
        return None

    def inf(self):
        if not self.bounded_below:
            return NEG_INF
        if self.core:
            return self.core[0].lo
        if self.right:
            return self.right[0].lo
        return None

    # -- denotation -----------------------------------------------------

    def materialize(self, a, b) -> tuple:
        """Merged interval list describing the set exactly on [a, b]."""
        return _materialize(self.period, self.window_lo, self.window_hi,
                            self.core, self.left, self.right, a, b)

    def contains(self, q) -> bool:
        q = Fraction(q)
        if q < self.window_lo:
            if self.left:
                k = -(-(self.window_lo - q) // self.period) - 1
                return list_contains(self.left, q + k * self.period)
            return self.has_left_ray
        if q > self.window_hi:
            if self.right:
                k = -(-(q - self.window_hi) // self.period) - 1
                return list_contains(self.right, q - k * self.period)
            return self.has_right_ray
        return list_contains(self.core, q)

    def components_within(self, a, b) -> int:
        """Number of maximal components meeting the closed window [a, b]."""
        return len(clip(self.materialize(Fraction(a) - 1, Fraction(b) + 1),
                        QInterval(Fraction(a), Fraction(b), True, True)))

    def __str__(self):
        if self.is_empty:
            return "{}"
        parts = [str(p) for p in self.core]
        if self.left:
            rel = translate_list(self.left, -self.window_lo)
            parts.append("tail left period %s pattern %s from %s" % (
                self.period, " u ".join(str(p) for p in rel), self.window_lo))
        if self.right:
            rel = translate_list(self.right, -self.window_hi)
            parts.append("tail right period %s pattern %s from %s" % (
                self.period, " u ".join(str(p) for p in rel), self.window_hi))
        return " u ".join(parts)


def _materialize(period, wlo, whi, core, left, right, a, b):
    pieces = list(core)
    if left and a < wlo:
        depth = max(0, math.ceil((wlo - a) / period)) + 1
        for k in range(depth):
            pieces.extend(p.translate(-k * period) for p in left)
    elif left:
        pieces.extend(left)
    if right and b > whi:
        depth = max(0, math.ceil((b - whi) / period)) + 1
        for k in range(depth):
            pieces.extend(p.translate(k * period) for p in right)
    elif right:
        pieces.extend(right)
    return merge_list(pieces)


def _hull_window(core):
    finite = [v for piece in core for v in (piece.lo, piece.hi)
              if not isinstance(v, float)]
    if not finite:
        return Fraction(0), Fraction(0)
    return min(finite), max(finite)


_ZERO = Fraction(0)


def _finish_finite(core) -> PeriodicSet:
    merged = merge_list(core)
    wlo, whi = _hull_window(merged)
    return PeriodicSet(None, wlo, whi, merged, (), ())


def _minimal_side_period(pattern, period, slot_anchor, leftward):
    """Minimal period of the one-sided tail generated by pattern."""
    n = len(pattern)
    if n <= 1:
        return period
    sign = -1 if leftward else 1
    spread = [p.translate(sign * k * period) for k in range(3) for p in pattern]
    m = merge_list(spread)
    if leftward:
        base = clip(m, QInterval(slot_anchor - period, slot_anchor, True, False))
    else:
        base = clip(m, QInterval(slot_anchor, slot_anchor + period, False, True))
    for k in range(n, 1, -1):
        q = period / k
        step = -q if leftward else q
        if leftward:
            target = clip(m, QInterval(slot_anchor - period + step, slot_anchor + step, True, False))
        else:
            target = clip(m, QInterval(slot_anchor + step, slot_anchor + period + step, False, True))
        if translate_list(base, step) == target:
            return q
    return period


def _normalize(period, wlo, whi, core, left, right) -> PeriodicSet:
    """Build the canonical PeriodicSet denoting the raw data."""
    wlo, whi = Fraction(wlo), Fraction(whi)
    if wlo > whi:
        raise ValueError("window inverted")
    core = merge_list(core)
    left = merge_list(left)
    right = merge_list(right)
    if period is None:
        if left or right:
            raise ValueError("patterns need a period")
        return _finish_finite(core)
    period = Fraction(period)
    if period <= 0:
        raise ValueError("period must be positive")
    if clip(left, QInterval(wlo - period, wlo, True, False)) != left:
        raise ValueError("left pattern outside its slot")
    if clip(right, QInterval(whi, whi + period, False, True)) != right:
        raise ValueError("right pattern outside its slot")

    has_left_ray = bool(core) and core[0].lo == NEG_INF
    has_right_ray = bool(core) and core[-1].hi == POS_INF

    # saturation: a full slot denotes a ray; rays swallow patterns
    if has_left_ray:
        left = ()
    elif left == (QInterval(wlo - period, wlo, True, False),):
        core = merge_list(list(core) + [QInterval(NEG_INF, wlo)])
        left = ()
        has_left_ray = True
    if has_right_ray:
        right = ()
    elif right == (QInterval(whi, whi + period, False, True),):
        core = merge_list(list(core) + [QInterval(whi, POS_INF)])
        right = ()
        has_right_ray = True

    if not left and not right:
        return _finish_finite(core)

    q_l = _minimal_side_period(left, period, wlo, True) if left else None
    q_r = _minimal_side_period(right, period, whi, False) if right else None
    if q_l is not None and q_r is not None:
        p_star = frac_lcm(q_l, q_r)
    else:
        p_star = q_l if q_l is not None else q_r

    margin = _DEPTH * period + 2 * p_star
    lo_edge, hi_edge = wlo - margin, whi + margin
    fin = _materialize(period, wlo, whi, core, left, right, lo_edge, hi_edge)

    shifted = translate_list(fin, -p_star)
    d = symdiff_lists(fin, shifted)
    d = clip(d, QInterval(lo_edge + p_star, hi_edge - p_star))
    # periodicity can only break near the window
    assert all(piece.lo >= wlo - period - 2 * p_star and piece.hi <= whi + period
               for piece in d), "periodicity break escaped the window zone"

    if not d:
        # fully periodic: canonical phase at window [0, 0]
        assert left and right, "one-sided tail cannot be fully periodic"
        s = p_star * math.ceil(wlo / p_star)
        right_pat = translate_list(
            clip(fin, QInterval(s, s + p_star, False, True)), -s)
        left_pat = translate_list(
            clip(fin, QInterval(s - p_star, s, True, False)), -s)
        core_pat = (pt(_ZERO),) if list_contains(fin, s) else ()
        return PeriodicSet(p_star, _ZERO, _ZERO, core_pat, left_pat, right_pat)

    d_inf = d[0].lo
    d_sup = d[-1].hi
    assert not isinstance(d_inf, float) and not isinstance(d_sup, float)

    if left and right:
        w_hi = d_sup
        w_lo = min(d_inf + p_star, w_hi)
        new_core = clip(fin, QInterval(w_lo, w_hi, True, True))
        new_left = clip(fin, QInterval(w_lo - p_star, w_lo, True, False))
        new_right = clip(fin, QInterval(w_hi, w_hi + p_star, False, True))
        assert all(p.is_bounded for p in new_core)
        return PeriodicSet(p_star, w_lo, w_hi, new_core, new_left, new_right)

    if right:
        w_hi = d_sup
        lower = intersect_lists(fin, (QInterval(NEG_INF, w_hi, False, True),))
        finite = [v for piece in lower for v in (piece.lo, piece.hi)
                  if not isinstance(v, float)]
        w_lo = min(min(finite), w_hi) if finite else w_hi
        new_right = clip(fin, QInterval(w_hi, w_hi + p_star, False, True))
        assert new_right, "periodic side lost its pattern"
        return PeriodicSet(p_star, w_lo, w_hi, lower, (), new_right)

    w_lo = d_inf + p_star
    upper = intersect_lists(fin, (QInterval(w_lo, POS_INF, True, False),))
    finite = [v for piece in upper for v in (piece.lo, piece.hi)
              if not isinstance(v, float)]
    w_hi = max(max(finite), w_lo) if finite else w_lo
    new_left = clip(fin, QInterval(w_lo - p_star, w_lo, True, False))
    assert new_left, "periodic side lost its pattern"
    return PeriodicSet(p_star, w_lo, w_hi, upper, new_left, ())


# ---------------------------------------------------------------------------
# public constructors

EMPTY = None  # set at module end
FULL = None


def from_intervals(*pieces) -> PeriodicSet:
    return _finish_finite(tuple(pieces))


def build(period=None, window=None, core=(), left=(), right=()) -> PeriodicSet:
    """General escape hatch: normalize arbitrary well-formed raw data."""
    if window is None:
        wlo, whi = _hull_window(merge_list(core))
    else:
        wlo, whi = Fraction(window[0]), Fraction(window[1])
    return _normalize(period, wlo, whi, tuple(core), tuple(left), tuple(right))


def tail_right(pattern, period, anchor) -> PeriodicSet:
    """U_{k>=0} (pattern + anchor + k*period), pattern given inside (0, period]."""
    period, anchor = Fraction(period), Fraction(anchor)
    placed = translate_list(merge_list(pattern), anchor)
    return _normalize(period, anchor, anchor, (), (), placed)


def tail_left(pattern, period, anchor) -> PeriodicSet:
    """U_{k>=0} (pattern + anchor - k*period), pattern given inside [-period, 0)."""
    period, anchor = Fraction(period), Fraction(anchor)
    placed = translate_list(merge_list(pattern), anchor)
    return _normalize(period, anchor, anchor, (), placed, ())


# ---------------------------------------------------------------------------
# boolean algebra

def _zone_op(s: PeriodicSet, t: PeriodicSet, list_op) -> PeriodicSet:
    ps = [x.period for x in (s, t) if x.period is not None]
    if not ps:
        return _finish_finite(list_op(s.core, t.core))
    p = ps[0] if len(ps) == 1 else frac_lcm(ps[0], ps[1])
    v = min(s.window_lo, t.window_lo)
    w = max(s.window_hi, t.window_hi)
    a, b = v - 2 * p, w + 2 * p
    fs = s.materialize(a, b)
    ft = t.materialize(a, b)
    r = list_op(fs, ft)
    return _normalize(
        p, v, w,
        clip(r, QInterval(v, w, True, True)),
        clip(r, QInterval(v - p, v, True, False)),
        clip(r, QInterval(w, w + p, False, True)))


def union(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _zone_op(s, t, union_lists)


def intersect(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _zone_op(s, t, intersect_lists)


def difference(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _zone_op(s, t, difference_lists)


def symmetric_difference(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _zone_op(s, t, symdiff_lists)


def complement(s: PeriodicSet) -> PeriodicSet:
    return _zone_op(s, EMPTY, lambda a, _b: complement_list(a))


def is_subset(s: PeriodicSet, t: PeriodicSet) -> bool:
    return difference(s, t).is_empty


def affine_image(s: PeriodicSet, c, d) -> PeriodicSet:
    """Exact image under x -> c*x + d (c == 0 collapses to a point)."""
    c, d = Fraction(c), Fraction(d)
    if c == 0:
        return EMPTY if s.is_empty else from_intervals(pt(d))
    core = tuple(p.affine(c, d) for p in s.core)
    if s.period is None:
        return _finish_finite(core)
    p2 = s.period * abs(c)
    if c > 0:
        return _normalize(p2, c * s.window_lo + d, c * s.window_hi + d,
                          core,
                          tuple(p.affine(c, d) for p in s.left),
                          tuple(p.affine(c, d) for p in s.right))
    return _normalize(p2, c * s.window_hi + d, c * s.window_lo + d,
                      core,
                      tuple(p.affine(c, d) for p in s.right),
                      tuple(p.affine(c, d) for p in s.left))


def translate(s: PeriodicSet, t) -> PeriodicSet:
    return affine_image(s, 1, t)


# ---------------------------------------------------------------------------
# topology of the rational order line

def closure(s: PeriodicSet) -> PeriodicSet:
    """Topological closure in the order topology (exact)."""
    if s.period is None:
        return _finish_finite(tuple(p.closed() for p in s.core))
    p, v, w = s.period, s.window_lo, s.window_hi
    fin = s.materialize(v - 3 * p, w + 3 * p)
    c = merge_list(tuple(piece.closed() for piece in fin))
    return _normalize(
        p, v, w,
        clip(c, QInterval(v, w, True, True)),
        clip(c, QInterval(v - p, v, True, False)),
        clip(c, QInterval(w, w + p, False, True)))


def interior(s: PeriodicSet) -> PeriodicSet:
    return complement(closure(complement(s)))


def is_open(s: PeriodicSet) -> bool:
    return s == interior(s)


def is_closed(s: PeriodicSet) -> bool:
    return s == closure(s)


EMPTY = _finish_finite(())
FULL = _finish_finite((FULL_LINE,))
