"""Spaces whose admissible-set structure is given by shape constraints.

A space here is a carrier together with a family of distinguished
subsets ("smops"): the family contains the empty set, is closed under
pairwise union and intersection, and covers the carrier.  Two carriers
are supported.

* FiniteSpace wraps the exhaustive backend from locus.finite.
* LineSpace lives on the rational line (or a subset of it): its family
  consists of the traces on the carrier of all open sets satisfying a
  SetClass, a small record of structural prohibitions (tails and rays
  per side).

From the base family the derived families are computed by flag algebra
rather than enumeration: opens (sets compatible with every smop),
smalls (subsets of finite unions of smops), weak opens (arbitrary
unions of smops), and the small weak opens.  All judgements are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import finite
from .intervals import (
    EMPTY, NEG_INF, POS_INF, PeriodicSet, QInterval,
    complement, from_intervals, interior, intersect, is_open, is_subset,
    iv, tail_left, tail_right, union, closure as order_closure,
)


@dataclass(frozen=True)
class SetClass:
    """Membership predicate for subsets of the rational line."""

    name: str
    require_open: bool = True
    forbid_left_tail: bool = False
    forbid_right_tail: bool = False
    forbid_left_ray: bool = False
    forbid_right_ray: bool = False

    def admits(self, s: PeriodicSet) -> bool:
        if self.require_open and not is_open(s):
            return False
        if self.forbid_left_tail and s.has_left_tail:
            return False
        if self.forbid_right_tail and s.has_right_tail:
            return False
        if self.forbid_left_ray and s.has_left_ray:
            return False
        if self.forbid_right_ray and s.has_right_ray:
            return False
        return True

    def left_unbounded_member(self):
        """Some member unbounded below, or None if all are bounded below."""
        if not self.forbid_left_ray:
            return from_intervals(iv(NEG_INF, 0))
        if not self.forbid_left_tail:
            from fractions import Fraction
            return tail_left([iv(Fraction(-3, 4), Fraction(-1, 4))], 1, 0)
        return None

    def right_unbounded_member(self):
        if not self.forbid_right_ray:
            return from_intervals(iv(0, POS_INF))
        if not self.forbid_right_tail:
            from fractions import Fraction
            return tail_right([iv(Fraction(1, 4), Fraction(3, 4))], 1, 0)
        return None


def opens_of(cls: SetClass) -> SetClass:
    """Class of the opens: weakly open sets compatible with every smop.

    A tail on one side only obstructs compatibility when the base class
    both forbids that tail and admits a ray there (the ray preserves the
    tail under intersection); rays are never an obstruction.
    """
    return SetClass(
        cls.name + " opens", True,
        cls.forbid_left_tail and not cls.forbid_left_ray,
        cls.forbid_right_tail and not cls.forbid_right_ray,
        False, False)


def smalls_of(cls: SetClass) -> SetClass:
    """Class of the smalls: subsets of finite unions of smops."""
    left = cls.forbid_left_tail and cls.forbid_left_ray
    right = cls.forbid_right_tail and cls.forbid_right_ray
    return SetClass(cls.name + " smalls", False, left, right, left, right)


def weak_opens_of(cls: SetClass) -> SetClass:
    """Class of the weak opens: arbitrary unions of smops."""
    return SetClass(cls.name + " weak opens", True)


def swo_of(cls: SetClass) -> SetClass:
    s = smalls_of(cls)
    return SetClass(cls.name + " small weak opens", True,
                    s.forbid_left_tail, s.forbid_right_tail,
                    s.forbid_left_ray, s.forbid_right_ray)


def _c(name, lt=False, rt=False, lr=False, rr=False):
    return SetClass(name, True, lt, rt, lr, rr)


BUILTIN_CLASSES = {
    # finitely many components, both directions free
    "om": _c("om", lt=True, rt=True),
    "rom": _c("rom", lt=True, rt=True),
    # bounded members
    "lom": _c("lom", lt=True, rt=True, lr=True, rr=True),
    "lst": _c("lst", lt=True, rt=True, lr=True, rr=True),
    # every open set is a member
    "st": _c("st"),
    "slom": _c("slom"),
    # bounded above
    "l+om": _c("l+om", lt=True, rt=True, rr=True),
    "l+st": _c("l+st", rt=True, rr=True),
    # bounded below, right side free
    "sl+om": _c("sl+om", lt=True, lr=True),
}


@dataclass(frozen=True)
class FiniteSpace:
    universe: finite.FiniteUniverse
    smops: tuple

    def __post_init__(self):
        if not finite.is_locally_small(self.smops):
            raise ValueError("family is not a locally small structure")
        if finite.union_of(self.smops) != self.universe.full:
            raise ValueError("family does not cover the universe")


@dataclass(frozen=True)
class LineSpace:
    smop_class: SetClass
    carrier: PeriodicSet

    @property
    def is_full(self) -> bool:
        return self.carrier == _FULL_CARRIER


def line_space(class_name: str) -> LineSpace:
    return LineSpace(BUILTIN_CLASSES[class_name], _FULL_CARRIER)


def subspace(space: LineSpace, carrier: PeriodicSet) -> LineSpace:
    if not is_subset(carrier, space.carrier):
        raise ValueError("subspace carrier escapes the parent carrier")
    return LineSpace(space.smop_class, carrier)


_FULL_CARRIER = from_intervals(QInterval(NEG_INF, POS_INF))


# ---------------------------------------------------------------------------
# finite backend dispatch helpers (cached per space)

@lru_cache(maxsize=None)
def _finite_topology(space: FiniteSpace):
    return frozenset(finite.generate_topology(space.smops))


@lru_cache(maxsize=None)
def _finite_bornology(space: FiniteSpace):
    return frozenset(finite.generate_bornology(space.smops))


@lru_cache(maxsize=None)
def _finite_opens(space: FiniteSpace):
    members = set(space.smops)
    topo = _finite_topology(space)
    return frozenset(u for u in topo
                     if all((u & v) in members for v in space.smops))


def _check_finite_set(space: FiniteSpace, s: int):
    if not 0 <= s <= space.universe.full:
        raise ValueError(f"set {s:#x} escapes the universe")


# ---------------------------------------------------------------------------
# the subspace trace rule

def trace_smop_witness(space: LineSpace, t: PeriodicSet):
    """An open full-line set L with L in the class and L & carrier == t.

    Returns None when t is not a smop of the (sub)space.  The witness
    search is complete for the builtin classes: whenever some L exists,
    one is found.
    """
    y = space.carrier
    cls = space.smop_class
    if not is_subset(t, y):
        raise ValueError("candidate set escapes the carrier")
    if t.is_empty:
        return EMPTY
    u = interior(union(t, complement(y)))
    if not is_subset(t, u):
        return None

    if t.bounded_below:
        lo_guard = t.inf() - 1
    else:
        if cls.forbid_left_tail and cls.forbid_left_ray:
            return None
        if cls.forbid_left_tail and not u.has_left_ray:
            return None
        if cls.forbid_left_ray and t.has_left_ray:
            return None
        lo_guard = NEG_INF

    if t.bounded_above:
        hi_guard = t.sup() + 1
    else:
        if cls.forbid_right_tail and cls.forbid_right_ray:
            return None
        if cls.forbid_right_tail and not u.has_right_ray:
            return None
        if cls.forbid_right_ray and t.has_right_ray:
            return None
        hi_guard = POS_INF

    witness = intersect(u, from_intervals(QInterval(lo_guard, hi_guard)))
    if cls.admits(witness) and intersect(witness, y) == t:
        return witness
    return None


# ---------------------------------------------------------------------------
# membership judgements

def is_smop(space, s) -> bool:
    if isinstance(space, FiniteSpace):
        _check_finite_set(space, s)
        return s in space.smops
    return trace_smop_witness(space, s) is not None


def is_weakly_open(space, s) -> bool:
    if isinstance(space, FiniteSpace):
        _check_finite_set(space, s)
        return s in _finite_topology(space)
    if not is_subset(s, space.carrier):
        raise ValueError("candidate set escapes the carrier")
    return is_subset(s, interior(union(s, complement(space.carrier))))


def is_small_set(space, s) -> bool:
    if isinstance(space, FiniteSpace):
        _check_finite_set(space, s)
        return s in _finite_bornology(space)
    if not is_subset(s, space.carrier):
        raise ValueError("candidate set escapes the carrier")
    return smalls_of(space.smop_class).admits(s)


def is_swo_set(space, s) -> bool:
    return is_weakly_open(space, s) and is_small_set(space, s)


def is_open_set(space, s) -> bool:
    """Membership in the opens (compatible weakly open sets)."""
    if isinstance(space, FiniteSpace):
        _check_finite_set(space, s)
        return s in _finite_opens(space)
    if not space.is_full:
        raise NotImplementedError(
            "opens of a proper subspace are outside the decided fragment")
    return opens_of(space.smop_class).admits(s)


def wcl(space, s):
    """Closure in the weak-open topology, relative to the carrier."""
    if isinstance(space, FiniteSpace):
        _check_finite_set(space, s)
        return finite.wcl(space.universe, space.smops, s)
    if not is_subset(s, space.carrier):
        raise ValueError("candidate set escapes the carrier")
    return intersect(order_closure(s), space.carrier)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class SpaceClassification:
    small: object                 # bool, or None when undecided
    compact: object
    partially_topological: object
    topological_like: object
    reasons: tuple                # (key, text) pairs, stable order


def pt_witness(cls: SetClass):
    """A small weak open outside the class, if the class admits one."""
    if cls.forbid_left_tail != cls.forbid_left_ray:
        if cls.forbid_left_tail:
            return tail_left([iv(-3, -2, False, False)], 4, 0)
        return from_intervals(iv(NEG_INF, 0))
    if cls.forbid_right_tail != cls.forbid_right_ray:
        if cls.forbid_right_tail:
            return tail_right([iv(2, 3, False, False)], 4, 0)
        return from_intervals(iv(0, POS_INF))
    return None


def tl_witness(cls: SetClass):
    """A weak open outside the class, if the class admits one."""
    if cls.forbid_left_tail:
        return tail_left([iv(-3, -2, False, False)], 4, 0)
    if cls.forbid_right_tail:
        return tail_right([iv(2, 3, False, False)], 4, 0)
    if cls.forbid_left_ray:
        return from_intervals(iv(NEG_INF, 0))
    if cls.forbid_right_ray:
        return from_intervals(iv(0, POS_INF))
    return None


def classify_space(space) -> SpaceClassification:
    if isinstance(space, FiniteSpace):
        members = set(space.smops)
        full = space.universe.full
        small = full in members
        topo = _finite_topology(space)
        borno = _finite_bornology(space)
        swo = topo & borno
        pt = members == swo
        tl = members == set(topo)
        reasons = (
            ("small", "the whole carrier is a smop" if small
             else "the whole carrier is not a smop"),
            ("compact", "every cover by smops is finite"),
            ("partially-topological",
             "smops coincide with the small weak opens" if pt
             else "a small weak open is not a smop"),
            ("topological-like",
             "smops coincide with the weak opens" if tl
             else "a weak open is not a smop"),
        )
        return SpaceClassification(small, True, pt, tl, reasons)

    cls = space.smop_class
    if not space.is_full:
        small_w = trace_smop_witness(space, space.carrier)
        small = small_w is not None
        reasons = (
            ("small", "the carrier is a trace smop" if small
             else "the carrier is not a trace smop"),
            ("compact", "not decided on proper subspaces"),
            ("partially-topological", "not decided on proper subspaces"),
            ("topological-like", "not decided on proper subspaces"),
        )
        return SpaceClassification(small, None, None, None, reasons)

    small = not cls.forbid_left_ray and not cls.forbid_right_ray
    pt = (cls.forbid_left_tail == cls.forbid_left_ray
          and cls.forbid_right_tail == cls.forbid_right_ray)
    tl = not (cls.forbid_left_tail or cls.forbid_right_tail
              or cls.forbid_left_ray or cls.forbid_right_ray)
    reasons = (
        ("small", "the whole line belongs to the class" if small
         else "the whole line violates a ray prohibition"),
        ("compact", "the chain of bounded intervals (-n, n) covers the "
                    "line and admits no finite subcover"),
        ("partially-topological",
         "the class equals its small weak opens" if pt
         else "witness: a small weak open outside the class"),
        ("topological-like",
         "the class equals its weak opens" if tl
         else "witness: a weak open outside the class"),
    )
    return SpaceClassification(small, False, pt, tl, reasons)
