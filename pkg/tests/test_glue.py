"""Atlas compatibility checks and gluing postconditions."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from locus import finite
from locus.glue import (
    FiniteAtlas, GlueError, PeriodicAtlas, canonical_self_union, check_star,
    glue, glued_trace_pieces, is_glued_smop, verify_clauses,
)
from locus.intervals import complement, from_intervals, intersect, iv, union
from locus.sampling import random_finite_atlas, random_finite_space
from locus.spaces import FiniteSpace, is_smop, line_space


U3 = finite.FiniteUniverse(3)
DISCRETE_01 = finite.family([0, 1, 2, 3])
DISCRETE_12 = finite.family([0, 2, 4, 6])


def test_star_ok_for_discrete_overlap():
    report = check_star(FiniteAtlas(U3, (DISCRETE_01, DISCRETE_12)))
    assert report.ok and not report.violations
    assert check_star(FiniteAtlas(U3, (DISCRETE_01,))).ok


def test_star_violation_names_chart_and_clause():
    half = finite.family([0, 1, 3])  # {∅,{0},{0,1}}: {1} is missing
    report = check_star(FiniteAtlas(U3, (half, DISCRETE_12)))
    assert not report.ok
    v = report.violations[0]
    assert (v.i, v.j, v.clause) == (0, 1, "overlap-open")
    assert "{1}" in v.detail and "chart 0" in v.detail
    with pytest.raises(GlueError):
        glue(FiniteAtlas(U3, (half, DISCRETE_12)))


def test_trace_mismatch_is_reported():
    # both charts see the overlap {1} as open but induce different
    # structures on chart 0's carrier {0,1} vs chart 1's {1,2}
    lumped = finite.family([0, 3])  # {∅,{0,1}}: carrier {0,1}
    report = check_star(FiniteAtlas(U3, (lumped, DISCRETE_12)))
    assert not report.ok
    assert any(v.clause == "overlap-open" or v.clause == "trace-equality"
               for v in report.violations)


def test_glue_discrete_charts_gives_powerset():
    space = glue(FiniteAtlas(U3, (DISCRETE_01, DISCRETE_12)))
    assert space.smops == tuple(range(8))


def test_glue_requires_covering_code():
    u = finite.FiniteUniverse(3)
    with pytest.raises(GlueError):
        glue(FiniteAtlas(u, (DISCRETE_01,)))


def test_atlas_validation():
    with pytest.raises(ValueError):
        FiniteAtlas(U3, ())
    with pytest.raises(ValueError):
        FiniteAtlas(U3, (finite.family([1, 3]),))  # no empty set
    with pytest.raises(ValueError):
        FiniteAtlas(finite.FiniteUniverse(1), (DISCRETE_12,))


def test_single_chart_glues_to_itself():
    fam = finite.generate_ring([1, 2, 4, 7])
    space = glue(FiniteAtlas(U3, (fam,)))
    assert space == FiniteSpace(U3, fam)


def test_random_atlases_satisfy_all_clauses():
    rng = random.Random(11)
    for _ in range(60):
        atlas = random_finite_atlas(rng)
        assert check_star(atlas).ok
        got = verify_clauses(atlas)
        assert got.clause_a and got.clause_b and got.clause_c


def test_gluing_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        atlas = random_finite_atlas(rng)
        once = glue(atlas)
        again = glue(FiniteAtlas(atlas.universe, (once.smops,)))
        assert once == again


def test_canonical_self_union_reproduces_space():
    rng = random.Random(9)
    for _ in range(60):
        space = random_finite_space(rng)
        assert canonical_self_union(space) == space


# ---------------------------------------------------------------------------
# periodic atlases on the line

OM_ATLAS = PeriodicAtlas(line_space("om"), from_intervals(iv(-1, 1)), F(1))


def test_periodic_atlas_validation():
    with pytest.raises(ValueError):
        PeriodicAtlas(line_space("om"), from_intervals(iv(0, 1)), F(0))
    with pytest.raises(ValueError):
        PeriodicAtlas(line_space("om"), complement(from_intervals(iv(0, 1))),
                      F(1))
    with pytest.raises(ValueError):
        PeriodicAtlas(subspace_om_half(), from_intervals(iv(0, 1)), F(1))


def subspace_om_half():
    from locus.spaces import subspace
    from locus.intervals import POS_INF
    return subspace(line_space("om"), from_intervals(iv(0, POS_INF)))


def test_periodic_star_and_carrier():
    assert OM_ATLAS.offset_bound == 3
    assert check_star(OM_ATLAS).ok
    glued = glue(OM_ATLAS)
    from locus.intervals import FULL
    assert glued.carrier == FULL


def test_closed_base_fails_star():
    bad = PeriodicAtlas(line_space("om"),
                        from_intervals(iv(-1, 1, True, True)), F(1))
    report = check_star(bad)
    assert not report.ok
    assert report.violations[0].clause == "overlap-open"
    with pytest.raises(GlueError):
        glue(bad)


def test_glued_om_atlas_is_the_bounded_open_class():
    glued = glue(OM_ATLAS)
    lom = line_space("lom")
    rng = random.Random(2)
    from locus.sampling import random_periodic_set
    for _ in range(200):
        s = random_periodic_set(rng)
        assert is_glued_smop(glued, s) == is_smop(lom, s)


def test_glued_pieces_reassemble():
    glued = glue(OM_ATLAS)
    s = from_intervals(iv(F(-1, 2), F(3, 2)), iv(2, F(9, 4)))
    pieces = glued_trace_pieces(glued, s)
    total = from_intervals()
    for k, t in pieces:
        assert is_smop(OM_ATLAS.chart(k), t)
        total = union(total, t)
    assert total == s
    assert glued_trace_pieces(glued, from_intervals(iv(0, 1, True, False))) \
        is None


def test_periodic_clauses():
    got = verify_clauses(OM_ATLAS)
    assert got.clause_a and got.clause_b and got.clause_c


def test_gappy_periodic_atlas():
    atlas = PeriodicAtlas(line_space("om"), from_intervals(iv(-1, 1)), F(2))
    assert check_star(atlas).ok
    glued = glue(atlas)
    # carrier misses every odd integer
    assert not glued.carrier.contains(F(1))
    assert glued.carrier.contains(F(1, 2)) and glued.carrier.contains(F(2))
    assert is_glued_smop(glued, from_intervals(iv(F(1, 4), F(1, 2))))
    assert not is_glued_smop(glued, from_intervals(iv(0, 3)))
    got = verify_clauses(atlas)
    assert got.clause_a and got.clause_b and got.clause_c


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_glued_smops_are_closed_under_union_and_intersection(seed):
    rng = random.Random(seed)
    glued = glue(OM_ATLAS)
    from locus.sampling import random_member_of
    from locus.spaces import BUILTIN_CLASSES
    a = intersect(random_member_of(rng, BUILTIN_CLASSES["om"]),
                  OM_ATLAS.chart_carrier(rng.randint(-2, 2)))
    b = intersect(random_member_of(rng, BUILTIN_CLASSES["om"]),
                  OM_ATLAS.chart_carrier(rng.randint(-2, 2)))
    assert is_glued_smop(glued, a) and is_glued_smop(glued, b)
    assert is_glued_smop(glued, union(a, b))
    assert is_glued_smop(glued, intersect(a, b))