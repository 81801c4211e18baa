"""Interval algebra: frozen examples plus randomized structural laws."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from locus.intervals import (
    EMPTY, FULL, NEG_INF, POS_INF, QInterval,
    affine_image, build, clip, closure, complement, complement_list,
    difference, frac_gcd, frac_lcm, from_intervals, interior,
    intersect, intersect_lists, is_closed, is_open, is_subset, iv,
    merge_list, pt, symmetric_difference, tail_left, tail_right,
    translate, union, union_lists,
)


# -- interval construction and the list layer -------------------------------

def test_interval_validation():
    with pytest.raises(ValueError):
        iv(2, 1)
    with pytest.raises(ValueError):
        iv(1, 1)                      # degenerate but not closed
    with pytest.raises(ValueError):
        QInterval(NEG_INF, 0, True, False)
    with pytest.raises(ValueError):
        iv(POS_INF, NEG_INF)
    assert pt(3).contains(F(3)) and not pt(3).contains(F(2))


def test_merge_adjacency():
    assert merge_list([iv(0, 1), iv(1, 2)]) == (iv(0, 1), iv(1, 2))
    assert merge_list([iv(0, 1, False, True), iv(1, 2)]) == (iv(0, 2),)
    assert merge_list([iv(0, 1), pt(1), iv(1, 2)]) == (iv(0, 2),)
    assert merge_list([iv(0, 3), iv(1, 2, True, True)]) == (iv(0, 3),)


def test_complement_list_gaps():
    comp = complement_list((iv(NEG_INF, 0), iv(0, POS_INF)))
    assert comp == (pt(0),)
    assert complement_list(()) == (QInterval(NEG_INF, POS_INF),)
    assert complement_list((QInterval(NEG_INF, POS_INF),)) == ()


def test_intersect_lists_flags():
    got = intersect_lists((iv(0, 2, True, True),), (iv(1, 3),))
    assert got == (iv(1, 2, False, True),)
    assert intersect_lists((iv(0, 1),), (iv(1, 2),)) == ()
    assert intersect_lists((iv(0, 1, False, True),),
                           (iv(1, 2, True, False),)) == (pt(1),)


def test_fraction_lcm_gcd():
    assert frac_lcm(F(1, 2), F(1, 3)) == 1
    assert frac_lcm(F(3, 4), F(1, 2)) == F(3, 2)
    assert frac_gcd(F(3, 4), F(1, 2)) == F(1, 4)


# -- frozen normal forms -----------------------------------------------------

def test_saturated_tail_becomes_ray():
    s = tail_right([iv(0, 1, False, True)], 1, 0)
    assert s == from_intervals(iv(0, POS_INF))
    assert s.period is None
    t = tail_left([iv(-1, 0, True, False)], 1, 5)
    assert t == from_intervals(iv(NEG_INF, 5))


def test_window_sits_at_periodicity_threshold():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    assert t.period == 1
    assert t.window_lo == t.window_hi == F(-1, 2)
    assert t.core == ()
    assert t.right == (iv(0, F(1, 2)),)   # content of the slot (-1/2, 1/2]


def test_equal_sets_same_presentation():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    tripled = tail_right([iv(0, F(1, 2)), iv(1, F(3, 2)), iv(2, F(5, 2))], 3, 0)
    assert tripled == t
    shifted = union(tail_right([iv(0, F(1, 2))], 1, 3),
                    from_intervals(iv(0, F(1, 2)), iv(1, F(3, 2)), iv(2, F(5, 2))))
    assert shifted == t


def test_two_sided_period_is_lcm():
    s = union(tail_right([iv(0, F(1, 2))], 1, 5),
              tail_left([iv(F(-1, 3), 0)], F(1, 2), -5))
    assert s.period == 1
    assert s.has_left_tail and s.has_right_tail


def test_fully_periodic_phase_zero():
    s = union(tail_right([iv(0, F(1, 2))], 1, 0),
              tail_left([iv(-1, F(-1, 2))], 1, 0))
    assert (s.window_lo, s.window_hi) == (0, 0)
    assert s.core == ()
    assert s.left == (iv(-1, F(-1, 2)),) and s.right == (iv(0, F(1, 2)),)
    assert s.contains(F(100, 4) + F(1, 8)) and not s.contains(F(-13, 2))


def test_complement_structure():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    ct = complement(t)
    expect = build(period=1, window=(F(-1, 2), F(-1, 2)),
                   core=[iv(NEG_INF, F(-1, 2), False, True)],
                   right=[iv(F(-1, 2), 0, False, True), pt(F(1, 2))])
    assert ct == expect
    assert complement(ct) == t


def test_empty_and_full():
    assert EMPTY.is_empty and not FULL.is_empty
    assert complement(EMPTY) == FULL and complement(FULL) == EMPTY
    assert (EMPTY.window_lo, EMPTY.window_hi) == (0, 0)
    assert FULL.core == (QInterval(NEG_INF, POS_INF),)
    assert union(EMPTY, FULL) == FULL and intersect(EMPTY, FULL) == EMPTY


def test_affine_degenerate_and_negative():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    assert affine_image(t, 0, 7) == from_intervals(pt(7))
    assert affine_image(EMPTY, 0, 7) == EMPTY
    neg = affine_image(t, -1, 0)
    assert neg.has_left_tail and not neg.has_right_tail
    assert affine_image(neg, -1, 0) == t
    half = affine_image(t, F(1, 2), 3)
    assert half.period == F(1, 2)
    assert half.contains(3 + F(1, 8)) and not half.contains(3 + F(3, 8))


def test_closure_interior_frozen():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    c = closure(t)
    assert c.right == (iv(0, F(1, 2), True, True),)
    assert interior(c) == t
    assert is_open(t) and not is_closed(t)
    assert is_closed(c) and not is_open(c)
    point = from_intervals(pt(0))
    assert is_closed(point) and not is_open(point)
    assert interior(point) == EMPTY


def test_components_within():
    t = tail_right([iv(0, F(1, 2))], 1, 0)
    assert t.components_within(0, 5) == 5
    assert t.components_within(-10, -1) == 0
    assert FULL.components_within(-3, 3) == 1


def test_build_rejects_bad_raw():
    with pytest.raises(ValueError):
        build(period=1, window=(0, 0), right=[iv(2, 3)])   # outside slot
    with pytest.raises(ValueError):
        build(period=-1, window=(0, 0), right=[iv(0, 1, False, True)])
    with pytest.raises(ValueError):
        build(window=(0, 0), right=[iv(0, 1, False, True)])


# -- randomized structural laws ---------------------------------------------

from strategies import grid, periodic_sets, sample_points  # noqa: E402


@given(periodic_sets(), periodic_sets())
@settings(max_examples=60, deadline=None)
def test_boolean_ops_agree_with_membership(s, t):
    qs = sample_points(s, t)
    u, x, d, y = union(s, t), intersect(s, t), difference(s, t), \
        symmetric_difference(s, t)
    c = complement(s)
    for q in qs:
        a, b = s.contains(q), t.contains(q)
        assert u.contains(q) == (a or b)
        assert x.contains(q) == (a and b)
        assert d.contains(q) == (a and not b)
        assert y.contains(q) == (a != b)
        assert c.contains(q) != a


@given(periodic_sets(), periodic_sets())
@settings(max_examples=60, deadline=None)
def test_algebra_identities(s, t):
    assert union(s, EMPTY) == s
    assert intersect(s, FULL) == s
    assert complement(complement(s)) == s
    assert union(s, t) == union(t, s)
    assert complement(union(s, t)) == intersect(complement(s), complement(t))
    assert difference(s, t) == intersect(s, complement(t))
    assert is_subset(intersect(s, t), s)
    assert is_subset(s, union(s, t))


@given(periodic_sets(), st.integers(1, 3), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_representation_unique(s, k, j):
    """Re-presenting with a coarser period and wider window round-trips."""
    if s.period is None:
        assert build(core=s.core) == s
        return
    p2 = s.period * k
    v, w = s.window_lo - F(j, 2), s.window_hi + F(j, 3)
    fin = s.materialize(v - 2 * p2, w + 2 * p2)
    t = build(period=p2, window=(v, w),
              core=clip(fin, QInterval(v, w, True, True)),
              left=clip(fin, QInterval(v - p2, v, True, False)),
              right=clip(fin, QInterval(w, w + p2, False, True)))
    assert t == s


@given(periodic_sets())
@settings(max_examples=60, deadline=None)
def test_topology_laws(s):
    c, i = closure(s), interior(s)
    assert is_subset(s, c) and is_subset(i, s)
    assert closure(c) == c and interior(i) == i
    assert is_closed(c) and is_open(i)
    assert is_open(s) == (s == i)
    assert complement(c) == interior(complement(s))


@given(periodic_sets(), st.sampled_from([F(1), F(-2), F(1, 2), F(-3, 2)]),
       grid)
@settings(max_examples=60, deadline=None)
def test_affine_bijection_roundtrip(s, c, d):
    img = affine_image(s, c, d)
    assert affine_image(img, 1 / c, -d / c) == s
    for q in sample_points(s)[::5]:
        assert img.contains(c * q + d) == s.contains(q)


@given(periodic_sets(), grid)
@settings(max_examples=40, deadline=None)
def test_translate_membership(s, t):
    moved = translate(s, t)
    for q in sample_points(s)[::4]:
        assert moved.contains(q + t) == s.contains(q)
