"""Seeded random generators for spaces and interval sets.

Everything takes an explicit random.Random so suites are reproducible
from a single seed.
"""

from __future__ import annotations

from fractions import Fraction

from . import finite
from .intervals import (
    EMPTY, NEG_INF, POS_INF, PeriodicSet,
    from_intervals, intersect, iv, merge_list, pt, tail_left, tail_right,
    union,
)
from .spaces import BUILTIN_CLASSES, FiniteSpace, SetClass


def random_finite_family(rng, universe: finite.FiniteUniverse, max_seeds=3):
    seeds = [rng.randrange(universe.full + 1)
             for _ in range(rng.randint(1, max_seeds))]
    return finite.family(seeds)


def random_finite_space(rng, max_size=4) -> FiniteSpace:
    universe = finite.FiniteUniverse(rng.randint(1, max_size))
    seeds = list(random_finite_family(rng, universe))
    missing = universe.full & ~finite.union_of(seeds)
    if missing:
        seeds.append(missing | (rng.randrange(universe.full + 1)
                                if rng.random() < 0.5 else 0))
    return FiniteSpace(universe, finite.generate_ring(seeds))


def random_fraction(rng, lo=-8, hi=8, denominator=3) -> Fraction:
    return Fraction(rng.randint(lo * denominator, hi * denominator), denominator)


def _random_bounded_pieces(rng, max_pieces=3):
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        a, b = sorted(random_fraction(rng) for _ in range(2))
        if a == b:
            pieces.append(pt(a))
        else:
            pieces.append(iv(a, b, rng.random() < 0.5, rng.random() < 0.5))
    return pieces


def _random_pattern(rng, period: Fraction):
    ks = sorted(rng.sample(range(1, 9), rng.choice([2, 2, 4])))
    return [iv(period * Fraction(a, 8), period * Fraction(b, 8),
               rng.random() < 0.5, rng.random() < 0.5)
            for a, b in zip(ks[::2], ks[1::2])]


_PERIODS = (Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2))


def random_periodic_set(rng) -> PeriodicSet:
    s = from_intervals(*_random_bounded_pieces(rng))
    if rng.random() < 0.3:
        s = union(s, from_intervals(iv(NEG_INF, random_fraction(rng))))
    if rng.random() < 0.3:
        s = union(s, from_intervals(iv(random_fraction(rng), POS_INF)))
    if rng.random() < 0.4:
        p = rng.choice(_PERIODS)
        s = union(s, tail_right(_random_pattern(rng, p), p, random_fraction(rng)))
    if rng.random() < 0.4:
        p = rng.choice(_PERIODS)
        neg = [piece.affine(Fraction(-1), Fraction(0))
               for piece in _random_pattern(rng, p)]
        s = union(s, tail_left(neg, p, random_fraction(rng)))
    return s


def _random_open_pieces(rng, max_pieces=3):
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        a, b = sorted(random_fraction(rng) for _ in range(2))
        if a < b:
            pieces.append(iv(a, b))
    return pieces


def random_member_of(rng, cls: SetClass) -> PeriodicSet:
    """A random set admitted by the class (open, shape prohibitions met)."""
    s = from_intervals(*_random_open_pieces(rng))
    if not cls.forbid_left_ray and rng.random() < 0.3:
        s = union(s, from_intervals(iv(NEG_INF, random_fraction(rng))))
    if not cls.forbid_right_ray and rng.random() < 0.3:
        s = union(s, from_intervals(iv(random_fraction(rng), POS_INF)))
    if not cls.forbid_right_tail and rng.random() < 0.35:
        p = rng.choice(_PERIODS)
        ks = sorted(rng.sample(range(0, 8), 2))
        pat = [iv(p * Fraction(ks[0], 8), p * Fraction(ks[1] + 1, 8))]
        s = union(s, tail_right(pat, p, random_fraction(rng)))
    if not cls.forbid_left_tail and rng.random() < 0.35:
        p = rng.choice(_PERIODS)
        ks = sorted(rng.sample(range(0, 8), 2))
        pat = [iv(-p * Fraction(ks[1] + 1, 8), -p * Fraction(ks[0], 8))]
        s = union(s, tail_left(pat, p, random_fraction(rng)))
    if not cls.admits(s):
        # a ray may have swallowed nothing, but a tail is never open-hostile;
        # admission can only fail if flags were violated, which the guards
        # above rule out
        raise AssertionError(f"constructed member violates {cls.name}")
    return s


def random_builtin_class(rng) -> SetClass:
    return BUILTIN_CLASSES[rng.choice(sorted(BUILTIN_CLASSES))]


def random_carrier(rng) -> PeriodicSet:
    """A random nonempty carrier for subspace experiments."""
    while True:
        s = random_periodic_set(rng)
        if not s.is_empty:
            return s


def random_subset_within(rng, y: PeriodicSet) -> PeriodicSet:
    return intersect(random_periodic_set(rng), y)


def random_finite_atlas(rng, max_size=4):
    """A compatible finite atlas whose charts cover the coding universe.

    Induced charts (carrier traces of one space) and discrete charts
    (full powersets of their carriers) both satisfy the compatibility
    condition by construction; the mix exercises gluing on overlaps
    that are not partitions.
    """
    from .glue import FiniteAtlas

    if rng.random() < 0.3:
        universe = finite.FiniteUniverse(rng.randint(1, max_size))
        carriers = _covering_carriers(rng, universe)
        charts = []
        for c in carriers:
            members, sub = [], c
            while True:
                members.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & c
            charts.append(finite.family(members))
        return FiniteAtlas(universe, tuple(charts))

    space = random_finite_space(rng, max_size)
    carriers = _covering_carriers(rng, space.universe, pool=space.smops)
    charts = tuple(finite.family_trace(space.smops, c) for c in carriers)
    return FiniteAtlas(space.universe, charts)


def _covering_carriers(rng, universe: finite.FiniteUniverse, pool=None):
    choices = [m for m in (pool if pool is not None
                           else universe.subsets()) if m]
    carriers = []
    covered = 0
    for _ in range(6):
        pick = rng.choice(choices)
        carriers.append(pick)
        covered |= pick
        if covered == universe.full and rng.random() < 0.6:
            break
    if covered != universe.full:
        carriers.append(universe.full if pool is None
                        else max(pool))
    return carriers


_SLOPES = (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(-1, 2),
           Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def random_affine_rule(rng, max_cuts=3):
    """A random piecewise affine rule on the whole line."""
    from .maps import AffinePiece, PiecewiseAffine
    from .intervals import QInterval
    cuts = sorted(rng.sample([Fraction(n, 2) for n in range(-8, 9)],
                             rng.randint(0, max_cuts)))
    owner = {c: rng.random() < 0.5 for c in cuts}   # True: point goes left
    bounds = [NEG_INF, *cuts, POS_INF]
    pieces = []
    for lo, hi in zip(bounds, bounds[1:]):
        pieces.append(AffinePiece(
            QInterval(lo, hi,
                      isinstance(lo, Fraction) and not owner[lo],
                      isinstance(hi, Fraction) and owner[hi]),
            rng.choice(_SLOPES),
            Fraction(rng.randint(-8, 8), rng.choice((1, 2)))))
    return PiecewiseAffine(tuple(pieces))


def random_finite_map(rng, source: FiniteSpace, target: FiniteSpace):
    """A random table rule between two finite spaces."""
    from .maps import FiniteMap, SpaceMap
    table = tuple(rng.randrange(target.universe.size)
                  for _ in range(source.universe.size))
    return SpaceMap(source, target, FiniteMap(table))
