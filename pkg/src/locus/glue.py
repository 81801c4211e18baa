"""Gluing spaces along shared open pieces.

An atlas is a family of spaces whose pairwise overlaps are open in both
charts and carry the same induced structure.  Gluing such an atlas
produces one space whose smops are exactly the finite unions of chart
smops; each chart sits inside it as an open subspace and the carrier
family is admissible.  Two atlas kinds are supported: finitely many
finite charts over a shared coding universe, and a single bounded line
chart repeated along an arithmetic progression of translates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from . import finite
from .families import Translates, translates_union
from .intervals import (
    EMPTY, PeriodicSet, intersect, is_subset, translate, union,
)
from .spaces import FiniteSpace, LineSpace, opens_of, subspace, trace_smop_witness


class GlueError(ValueError):
    """Atlas rejected: compatibility or coding precondition failed."""


@dataclass(frozen=True)
class StarViolation:
    i: int
    j: int
    clause: str  # "overlap-open" or "trace-equality"
    detail: str


@dataclass(frozen=True)
class StarReport:
    ok: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# atlases

@dataclass(frozen=True)
class FiniteAtlas:
    """Finitely many finite charts sharing one coding universe.

    Each chart is a locally small family of masks; its carrier is the
    union of its members and carriers may overlap freely.
    """

    universe: finite.FiniteUniverse
    charts: tuple

    def __post_init__(self):
        if not self.charts:
            raise ValueError("atlas needs at least one chart")
        object.__setattr__(
            self, "charts", tuple(finite.family(c) for c in self.charts))
        for idx, fam in enumerate(self.charts):
            if finite.union_of(fam) > self.universe.full:
                raise ValueError(f"chart {idx} escapes the coding universe")
            if not finite.is_locally_small(fam):
                raise ValueError(f"chart {idx} is not a locally small family")

    def carrier(self, i: int) -> int:
        return finite.union_of(self.charts[i])


@dataclass(frozen=True)
class PeriodicAtlas:
    """One bounded chart of a full line space, repeated at every integer
    multiple of a positive step."""

    ambient: LineSpace
    base: PeriodicSet
    step: Fraction

    def __post_init__(self):
        if not self.ambient.is_full:
            raise ValueError("periodic atlases are cut from a full line space")
        if self.base.is_empty or not self.base.is_bounded:
            raise ValueError("base carrier must be a nonempty bounded set")
        if self.step <= 0:
            raise ValueError("step must be positive")

    def chart_carrier(self, k: int) -> PeriodicSet:
        return translate(self.base, Fraction(k) * self.step)

    def chart(self, k: int) -> LineSpace:
        return subspace(self.ambient, self.chart_carrier(k))

    @property
    def offset_bound(self) -> int:
        """Offsets beyond this cannot produce a nonempty overlap.

        Charts k and k+d overlap only when d*step is at most the base
        width, so checking d up to ceil(width/step)+1 covers every pair;
        translation invariance reduces all pairs to these offsets.
        """
        width = self.base.sup() - self.base.inf()
        return ceil(width / self.step) + 1


# ---------------------------------------------------------------------------
# the compatibility condition

def _finite_open_in(fam, y: int) -> bool:
    """Membership of y in the opens of the chart presented by fam."""
    members = set(fam)
    carrier = finite.union_of(fam)
    return y & carrier == y and all(y & l in members for l in fam)


def _check_star_finite(atlas: FiniteAtlas) -> StarReport:
    violations = []
    n = len(atlas.charts)
    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = atlas.carrier(i), atlas.carrier(j)
            overlap = xi & xj
            for a in (i, j):
                if not _finite_open_in(atlas.charts[a], overlap):
                    violations.append(StarViolation(
                        i, j, "overlap-open",
                        f"{atlas.universe.set_str(overlap)} is not open"
                        f" in chart {a}"))
            ti = finite.family_trace(atlas.charts[i], xj)
            tj = finite.family_trace(atlas.charts[j], xi)
            if ti != tj:
                violations.append(StarViolation(
                    i, j, "trace-equality",
                    "induced structures on the overlap differ: "
                    f"{finite.family_str(atlas.universe, ti)} vs "
                    f"{finite.family_str(atlas.universe, tj)}"))
    return StarReport(not violations, tuple(violations))


def _chart_open_member(atlas: PeriodicAtlas, carrier: PeriodicSet,
                       y: PeriodicSet) -> bool:
    """Membership of y in the opens of the chart over the given carrier.

    A set is open in the chart exactly when it is the carrier trace of
    an open set of the ambient line that is compatible with every
    ambient smop, so the decision is a trace search against the class
    of ambient opens.
    """
    probe = LineSpace(opens_of(atlas.ambient.smop_class), carrier)
    return trace_smop_witness(probe, y) is not None


def _check_star_periodic(atlas: PeriodicAtlas) -> StarReport:
    violations = []
    rng = random.Random(20)
    from .sampling import random_member_of

    for d in range(1, atlas.offset_bound + 1):
        shifted = atlas.chart_carrier(d)
        overlap = intersect(atlas.base, shifted)
        if overlap.is_empty:
            continue
        if not _chart_open_member(atlas, atlas.base, overlap):
            violations.append(StarViolation(
                0, d, "overlap-open",
                f"overlap at offset {d} is not open in the lower chart"))
        back = translate(overlap, -Fraction(d) * atlas.step)
        if not _chart_open_member(atlas, atlas.base, back):
            violations.append(StarViolation(
                0, d, "overlap-open",
                f"overlap at offset {d} is not open in the upper chart"))
        # both chart structures are carrier traces of one translation
        # invariant ambient class, so the induced structures on the
        # overlap coincide; spot-check the equality anyway
        chart0, chartd = atlas.chart(0), atlas.chart(d)
        for _ in range(4):
            t = intersect(random_member_of(rng, atlas.ambient.smop_class),
                          overlap)
            if (trace_smop_witness(chart0, t) is None) != (
                    trace_smop_witness(chartd, t) is None):
                violations.append(StarViolation(
                    0, d, "trace-equality",
                    f"induced structures disagree on {t} at offset {d}"))
                break
    return StarReport(not violations, tuple(violations))


def check_star(atlas) -> StarReport:
    """Verify both compatibility clauses for every chart pair."""
    if isinstance(atlas, FiniteAtlas):
        return _check_star_finite(atlas)
    if isinstance(atlas, PeriodicAtlas):
        return _check_star_periodic(atlas)
    raise TypeError(f"not an atlas: {atlas!r}")


# ---------------------------------------------------------------------------
# gluing

@dataclass(frozen=True)
class GluedPeriodic:
    """The union space of a periodic atlas.

    Smops are the finite unions of chart smops: the bounded subsets of
    the carrier whose trace on every chart is a smop of that chart.
    """

    atlas: PeriodicAtlas
    carrier: PeriodicSet

    def chart_window(self, s: PeriodicSet):
        """All chart indices whose carrier can meet the bounded set s."""
        lo, hi = s.inf(), s.sup()
        base_lo, base_hi = self.atlas.base.inf(), self.atlas.base.sup()
        k_min = ceil((lo - base_hi) / self.atlas.step)
        k_max = floor((hi - base_lo) / self.atlas.step)
        return range(k_min, k_max + 1)


def glue(atlas):
    """Union space of a compatible atlas.

    Finite atlases produce a FiniteSpace whose smops are the ring
    generated by the chart smops (equal to the plain union closure, a
    consequence of compatibility that is asserted rather than assumed).
    Periodic atlases produce a GluedPeriodic handle with a decidable
    smop predicate.
    """
    report = check_star(atlas)
    if not report.ok:
        v = report.violations[0]
        raise GlueError(f"charts {v.i},{v.j}: {v.detail}")
    if isinstance(atlas, FiniteAtlas):
        pool = set()
        for fam in atlas.charts:
            pool.update(fam)
        smops = finite.generate_ring(pool)
        assert smops == finite.generate_topology(pool), \
            "ring closure left the union closure despite compatibility"
        if finite.union_of(smops) != atlas.universe.full:
            raise GlueError(
                "chart carriers do not cover the coding universe;"
                " recode the atlas over their union")
        return FiniteSpace(atlas.universe, smops)
    return GluedPeriodic(atlas, translates_union(
        Translates(atlas.base, atlas.step, None)))


def glued_trace_pieces(glued: GluedPeriodic, s: PeriodicSet):
    """Chart traces of s, or None when some trace is not a chart smop.

    A bounded subset of the carrier is a glued smop exactly when every
    chart trace is a smop of its chart; the pieces returned reassemble
    to s, exhibiting it as a finite union of chart smops.
    """
    if s.is_empty:
        return ()
    if not s.is_bounded or not is_subset(s, glued.carrier):
        return None
    pieces = []
    for k in glued.chart_window(s):
        t = intersect(s, glued.atlas.chart_carrier(k))
        if trace_smop_witness(glued.atlas.chart(k), t) is None:
            return None
        if not t.is_empty:
            pieces.append((k, t))
    rebuilt = EMPTY
    for _, t in pieces:
        rebuilt = union(rebuilt, t)
    assert rebuilt == s, "chart window failed to cover a carrier subset"
    return tuple(pieces)


def is_glued_smop(glued: GluedPeriodic, s: PeriodicSet) -> bool:
    return glued_trace_pieces(glued, s) is not None


# ---------------------------------------------------------------------------
# postconditions of gluing

@dataclass(frozen=True)
class GlueVerification:
    clause_a: bool  # smops are exactly the finite unions of chart smops
    clause_b: bool  # charts are open subspaces with the induced structure
    clause_c: bool  # the carrier family is admissible in the union


def _verify_finite(atlas: FiniteAtlas, space: FiniteSpace) -> GlueVerification:
    pool = set()
    for fam in atlas.charts:
        pool.update(fam)
    clause_a = tuple(space.smops) == finite.generate_topology(pool)

    clause_b = True
    for i, fam in enumerate(atlas.charts):
        xi = atlas.carrier(i)
        if not _finite_open_in(space.smops, xi):
            clause_b = False
        if finite.family_trace(space.smops, xi) != fam:
            clause_b = False

    carriers = finite.family(atlas.carrier(i) for i in range(len(atlas.charts)))
    clause_c = finite.classify_family_finite(
        space.universe, space.smops, carriers).admissible
    return GlueVerification(clause_a, clause_b, clause_c)


def _verify_periodic(glued: GluedPeriodic, rng: random.Random,
                     samples: int) -> GlueVerification:
    atlas = glued.atlas
    from .sampling import random_member_of

    def sample_glued_smop():
        s = EMPTY
        for _ in range(rng.randint(1, 3)):
            k = rng.randint(-3, 3)
            t = intersect(random_member_of(rng, atlas.ambient.smop_class),
                          atlas.chart_carrier(k))
            s = union(s, t)
        return s

    clause_a = clause_b = clause_c = True
    window = range(-2, 3)
    for k in window:
        if not is_glued_smop(glued, atlas.chart_carrier(k)):
            clause_b = False
    for _ in range(samples):
        s = sample_glued_smop()
        pieces = glued_trace_pieces(glued, s)
        if pieces is None:
            clause_a = False
            continue
        rebuilt = EMPTY
        for _, t in pieces:
            rebuilt = union(rebuilt, t)
        if rebuilt != s:
            clause_a = False
        for k in window:
            trace = intersect(s, atlas.chart_carrier(k))
            # openness of the chart carrier: smops trace to chart smops
            if trace_smop_witness(atlas.chart(k), trace) is None:
                clause_b = False
            # and every chart smop is a smop of the union
            if not is_glued_smop(glued, trace):
                clause_b = False
        if not s.is_empty:
            # admissibility: only the finitely many window charts meet s
            lo_k = glued.chart_window(s)[0] - 1
            hi_k = glued.chart_window(s)[-1] + 1
            for k in (lo_k, hi_k):
                if not intersect(s, atlas.chart_carrier(k)).is_empty:
                    clause_c = False
    return GlueVerification(clause_a, clause_b, clause_c)


def verify_clauses(atlas, rng=None, samples: int = 25) -> GlueVerification:
    """Check the three postconditions of gluing on a compatible atlas.

    Finite atlases are checked exhaustively; periodic atlases on
    randomly sampled glued smops (seeded by default) plus a fixed chart
    window, since their smop families are infinite.
    """
    glued = glue(atlas)
    if isinstance(atlas, FiniteAtlas):
        return _verify_finite(atlas, glued)
    return _verify_periodic(glued, rng or random.Random(7), samples)


def canonical_self_union(space: FiniteSpace) -> FiniteSpace:
    """Glue the open subspaces induced by every smop of a finite space.

    The result reproduces the space itself; callers compare with ==.
    """
    charts = tuple(
        finite.family_trace(space.smops, l) for l in space.smops)
    return glue(FiniteAtlas(space.universe, charts))