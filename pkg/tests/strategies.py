"""Shared hypothesis strategies for interval sets and spaces."""

from fractions import Fraction as F

from hypothesis import strategies as st

from locus.intervals import (
    NEG_INF, POS_INF, from_intervals, iv, pt, tail_left, tail_right, union,
)
from locus.spaces import BUILTIN_CLASSES

grid = st.integers(-24, 24).map(lambda n: F(n, 3))


@st.composite
def interval_lists(draw):
    pieces = []
    for _ in range(draw(st.integers(0, 3))):
        a, b = sorted([draw(grid), draw(grid)])
        if a == b:
            pieces.append(pt(a))
        else:
            pieces.append(iv(a, b, draw(st.booleans()), draw(st.booleans())))
    if draw(st.booleans()):
        pieces.append(iv(NEG_INF, draw(grid)))
    if draw(st.booleans()):
        pieces.append(iv(draw(grid), POS_INF))
    return pieces


@st.composite
def tail_patterns(draw, period):
    ks = sorted(draw(st.lists(st.integers(1, 8), min_size=2, max_size=4,
                              unique=True)))
    pieces = []
    for a, b in zip(ks[::2], ks[1::2]):
        lo, hi = period * F(a, 8), period * F(b, 8)
        pieces.append(iv(lo, hi, draw(st.booleans()), draw(st.booleans())))
    return pieces


periods = st.sampled_from([F(1), F(1, 2), F(3, 2), F(2)])


@st.composite
def periodic_sets(draw):
    s = from_intervals(*draw(interval_lists()))
    p = draw(periods)
    if draw(st.booleans()):
        s = union(s, tail_right(draw(tail_patterns(p)), p, draw(grid)))
    if draw(st.booleans()):
        neg = [piece.affine(F(-1), F(0)) for piece in draw(tail_patterns(p))]
        s = union(s, tail_left(neg, p, draw(grid)))
    return s


builtin_class_names = st.sampled_from(sorted(BUILTIN_CLASSES))


def sample_points(*sets):
    """Deterministic probe points around the windows of the given sets."""
    anchors = {F(0)}
    for s in sets:
        anchors.update((s.window_lo, s.window_hi))
        if s.period is not None:
            anchors.update((s.window_lo - 3 * s.period,
                            s.window_hi + 3 * s.period))
    return sorted({a + F(d, 4) for a in anchors for d in range(-9, 10)})
