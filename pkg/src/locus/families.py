"""Families of smops over line spaces, with exact classification.

A family is presented as a finite list of sets, a translate family
(all shifts of a bounded base set by integer multiples of a step,
over all integers, from a starting index upward, or from a stopping
index downward), or a finite union of such parts.  Classification decides three properties, each
with a checkable witness:

* essentially finite: some finite subfamily has the same union,
* locally finite: every smop meets only finitely many members,
* admissible: on every smop some finite subfamily covers the trace
  of the whole union.

The decisions reduce to boundedness of the residue (the part of the
union contributed only by translate parts) against the directions in
which the ambient class admits unbounded smops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intervals import (
    EMPTY, PeriodicSet, QInterval,
    difference, intersect, is_subset, merge_list, translate, union,
)
from .spaces import LineSpace, is_open_set, is_smop


@dataclass(frozen=True)
class FiniteList:
    members: tuple

    def __post_init__(self):
        if not all(isinstance(m, PeriodicSet) for m in self.members):
            raise TypeError("finite family members must be interval sets")


@dataclass(frozen=True)
class Translates:
    """base + k*step for k >= start, or for all integers k when start is None."""

    base: PeriodicSet
    step: Fraction
    start: object = 0   # int, or None for all integers

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if not self.base.is_bounded:
            raise ValueError("translate base must be bounded")
        if self.base.is_empty:
            raise ValueError("translate base must be nonempty")

    def member(self, k: int) -> PeriodicSet:
        if self.start is not None and k < self.start:
            raise IndexError("index below the family start")
        return translate(self.base, k * self.step)


@dataclass(frozen=True)
class TranslatesDown:
    """base + k*step for k <= stop, marching downward."""

    base: PeriodicSet
    step: Fraction
    stop: int = 0

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if not self.base.is_bounded:
            raise ValueError("translate base must be bounded")
        if self.base.is_empty:
            raise ValueError("translate base must be nonempty")

    def member(self, k: int) -> PeriodicSet:
        if k > self.stop:
            raise IndexError("index above the family stop")
        return translate(self.base, k * self.step)


@dataclass(frozen=True)
class UnionOf:
    parts: tuple

    def __post_init__(self):
        for p in self.parts:
            if not isinstance(p, (FiniteList, Translates, TranslatesDown)):
                raise TypeError("family union parts must be flat presentations")


def _parts(fam):
    if isinstance(fam, UnionOf):
        return fam.parts
    return (fam,)


def translates_union(part) -> PeriodicSet:
    """The union of all members of a translate part, as one set."""
    if isinstance(part, TranslatesDown):
        from .intervals import affine_image
        mirrored = Translates(affine_image(part.base, -1, 0),
                              part.step, -part.stop)
        return affine_image(translates_union(mirrored), -1, 0)
    base, step, start = part.base, part.step, part.start
    lo, hi = base.inf(), base.sup()
    span = int(math.ceil((hi - lo) / step)) + 2
    from .intervals import build, clip
    if start is None:
        pieces = [p.translate(k * step)
                  for k in range(-span - 2, span + 3) for p in base.core]
        fin = merge_list(pieces)
        c = lo
        return build(period=step, window=(c, c),
                     core=clip(fin, QInterval(c, c, True, True)),
                     left=clip(fin, QInterval(c - step, c, True, False)),
                     right=clip(fin, QInterval(c, c + step, False, True)))
    v = lo + start * step
    w = hi + (start + 1) * step
    pieces = [p.translate(k * step)
              for k in range(start, start + 2 * span + 5) for p in base.core]
    fin = merge_list(pieces)
    return build(period=step, window=(v, w),
                 core=clip(fin, QInterval(v, w, True, True)),
                 right=clip(fin, QInterval(w, w + step, False, True)))


def finite_part_union(fam) -> PeriodicSet:
    u = EMPTY
    for part in _parts(fam):
        if isinstance(part, FiniteList):
            for m in part.members:
                u = union(u, m)
    return u


def family_union(fam) -> PeriodicSet:
    u = finite_part_union(fam)
    for part in _parts(fam):
        if isinstance(part, (Translates, TranslatesDown)):
            u = union(u, translates_union(part))
    return u


def residue(fam) -> PeriodicSet:
    """The part of the union not covered by the explicitly listed members."""
    return difference(family_union(fam), finite_part_union(fam))


def member_count(fam):
    """Number of members, or None for an infinite presentation."""
    n = 0
    for part in _parts(fam):
        if isinstance(part, (Translates, TranslatesDown)):
            return None
        n += len(part.members)
    return n


def iter_members(fam, per_part=8):
    """Finitely many members: all finite ones, a prefix of each translate part."""
    for part in _parts(fam):
        if isinstance(part, FiniteList):
            yield from part.members
        elif isinstance(part, TranslatesDown):
            for k in range(part.stop, part.stop - per_part, -1):
                yield translate(part.base, k * part.step)
        else:
            k0 = part.start if part.start is not None else -per_part // 2
            for k in range(k0, k0 + per_part):
                yield translate(part.base, k * part.step)


def _infinite_directions(fam):
    up = down = False
    for part in _parts(fam):
        if isinstance(part, Translates):
            up = True
            if part.start is None:
                down = True
        elif isinstance(part, TranslatesDown):
            down = True
    return up, down


@dataclass(frozen=True)
class FamilyClassification:
    essentially_finite: bool
    locally_finite: bool
    admissible: bool
    ef_witness: tuple            # finite subfamily with the same union, if any
    local_witness: object        # smop meeting infinitely many members, or None
    admissible_witness: object   # smop with no finite covering subfamily, or None


def _validate_family(space: LineSpace, fam, members="smop"):
    if members == "smop":
        check, label = is_smop, "a smop"
    elif members == "open":
        check, label = is_open_set, "an open set"
    else:
        raise ValueError("members must be 'smop' or 'open'")
    for part in _parts(fam):
        if isinstance(part, FiniteList):
            for m in part.members:
                if not check(space, m):
                    raise ValueError(f"family member {m} is not {label}")
        else:
            if isinstance(part, TranslatesDown):
                k = part.stop
            else:
                k = part.start if part.start is not None else 0
            if not check(space, part.member(k)):
                raise ValueError(f"translate base is not {label}")
            # the builtin classes are translation invariant, so one
            # representative settles every member


def _ef_witness(fam, r: PeriodicSet):
    members = []
    for part in _parts(fam):
        if isinstance(part, FiniteList):
            members.extend(part.members)
        elif not r.is_empty:
            lo, hi = r.inf(), r.sup()
            base_lo, base_hi = part.base.inf(), part.base.sup()
            k_lo = int(math.floor((lo - base_hi) / part.step)) - 1
            k_hi = int(math.ceil((hi - base_lo) / part.step)) + 1
            if isinstance(part, TranslatesDown):
                k_hi = min(k_hi, part.stop)
            elif part.start is not None:
                k_lo = max(k_lo, part.start)
            members.extend(part.member(k)
                           for k in range(k_lo, k_hi + 1)
                           if not intersect(part.member(k), r).is_empty)
    return tuple(members)


def _placed_witness(fam, template, upward):
    """Shift an unbounded smop template so it swallows sampled members."""
    sampled = []
    for part in _parts(fam):
        if isinstance(part, FiniteList):
            continue
        if upward:
            if isinstance(part, TranslatesDown):
                continue
            k0 = part.start if part.start is not None else 0
            sampled.extend(part.member(k0 + k) for k in range(8))
        else:
            if isinstance(part, Translates):
                if part.start is not None:
                    continue
                k0 = 0
            else:
                k0 = part.stop
            sampled.extend(translate(part.base, (k0 - k) * part.step)
                           for k in range(8))
    if upward:
        offset = min(m.inf() for m in sampled) - 1
    else:
        offset = max(m.sup() for m in sampled) + 1
    # every builtin class that admits an unbounded smop on a side also
    # admits the ray there, so the template swallows whole members
    assert template.has_right_ray or template.has_left_ray, \
        "unbounded witness template is not a ray"
    witness = translate(template, offset)
    assert all(is_subset(m, witness) for m in sampled), \
        "unbounded witness misses the sampled members"
    return witness


def classify_family(space: LineSpace, fam,
                    members="smop") -> FamilyClassification:
    _validate_family(space, fam, members)
    cls = space.smop_class
    r = residue(fam)
    up, down = _infinite_directions(fam)

    ef = r.bounded_above and r.bounded_below
    ef_witness = ()
    if ef:
        ef_witness = _ef_witness(fam, r)
        total = EMPTY
        for m in ef_witness:
            total = union(total, m)
        assert total == family_union(fam), "essential subfamily misses content"

    right_unbounded = cls.right_unbounded_member()
    left_unbounded = cls.left_unbounded_member()

    lf_break = None
    if up and right_unbounded is not None:
        lf_break = _placed_witness(fam, right_unbounded, True)
    elif down and left_unbounded is not None:
        lf_break = _placed_witness(fam, left_unbounded, False)
    locally_finite = lf_break is None

    ad_break = None
    if not r.bounded_above and right_unbounded is not None:
        ad_break = right_unbounded
        assert not intersect(ad_break, r).bounded_above, \
            "admissibility witness fails to trap the residue"
    elif not r.bounded_below and left_unbounded is not None:
        ad_break = left_unbounded
        assert not intersect(ad_break, r).bounded_below, \
            "admissibility witness fails to trap the residue"
    admissible = ad_break is None

    return FamilyClassification(ef, locally_finite, admissible,
                                ef_witness, lf_break, ad_break)
