"""Exhaustive set-family algebra on small finite carriers.

Sets are bitmasks over a universe of at most MAX_UNIVERSE elements
(element i <-> bit i), families are sorted duplicate-free tuples of
masks.  Everything here is brute force on purpose: these functions are
the oracles the rest of the package is checked against, so they follow
the definitions literally and stay within sizes where that is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_UNIVERSE = 16

FSet = int
FFamily = tuple  # tuple[FSet, ...], canonical (sorted, deduplicated)


class SizeGuardError(ValueError):
    """Raised when an exhaustive enumeration would leave the exact regime."""


@dataclass(frozen=True)
class FiniteUniverse:
    size: int

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise SizeGuardError(
                f"universe size {self.size} outside 1..{MAX_UNIVERSE}")

    @property
    def full(self) -> FSet:
        return (1 << self.size) - 1

    def subsets(self):
        return range(1 << self.size)

    def set_of(self, elements) -> FSet:
        mask = 0
        for e in elements:
            if not 0 <= e < self.size:
                raise ValueError(f"element {e} outside universe 0..{self.size - 1}")
            mask |= 1 << e
        return mask

    def elements(self, mask: FSet):
        return [i for i in range(self.size) if mask >> i & 1]

    def set_str(self, mask: FSet) -> str:
        return "{" + ",".join(str(i) for i in self.elements(mask)) + "}"


def family(masks) -> FFamily:
    """Canonical family form: sorted tuple without duplicates."""
    return tuple(sorted(set(masks)))


def family_str(universe: FiniteUniverse, fam: FFamily) -> str:
    return "[" + ", ".join(universe.set_str(m) for m in fam) + "]"


def union_of(fam) -> FSet:
    u = 0
    for m in fam:
        u |= m
    return u


def inter1(fam_a, fam_b) -> FFamily:
    """Memberwise intersection of two families: {A & B : A in a, B in b}."""
    return family(a & b for a in fam_a for b in fam_b)


def family_trace(fam, carrier: FSet) -> FFamily:
    """Trace of a family on a set: {A & carrier : A in fam}."""
    return family(m & carrier for m in fam)


def is_intersection_closed(fam) -> bool:
    s = set(fam)
    return all(a & b in s for a in fam for b in fam)


def is_union_closed(fam) -> bool:
    s = set(fam)
    return all(a | b in s for a in fam for b in fam)


def is_locally_small(fam) -> bool:
    """Empty set present and closure under pairwise union and intersection.

    The carrier is read off as the union of the family, so the covering
    condition holds by construction.
    """
    return bool(fam) and 0 in fam and is_union_closed(fam) and is_intersection_closed(fam)


def compatible_sets(universe: FiniteUniverse, fam) -> FFamily:
    """All Y with {Y & A : A in fam} contained in fam, over the full powerset."""
    members = set(fam)
    out = []
    for y in universe.subsets():
        if all(y & a in members for a in fam):
            out.append(y)
    return family(out)


def _pairwise_closure(fam, ops) -> FFamily:
    current = set(fam)
    added = True
    while added:
        added = False
        snapshot = list(current)
        for i, a in enumerate(snapshot):
            for b in snapshot[i:]:
                for op in ops:
                    c = op(a, b)
                    if c not in current:
                        current.add(c)
                        added = True
    return family(current)


def generate_ring(fam) -> FFamily:
    """Smallest family containing fam and the empty set, closed under
    pairwise union and intersection."""
    return _pairwise_closure(set(fam) | {0}, (int.__and__, int.__or__))


def generate_topology(fam) -> FFamily:
    """All unions of subfamilies of fam.

    On a finite carrier this is the pairwise union closure of fam plus
    the empty union; the carrier itself appears only when fam covers it.
    """
    return _pairwise_closure(set(fam) | {0}, (int.__or__,))


def generate_bornology(fam) -> FFamily:
    """Downward closure of the finite-union closure of fam."""
    unions = _pairwise_closure(set(fam) | {0}, (int.__or__,))
    out = set()
    for m in unions:
        # enumerate submasks of m
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return family(out)


def wcl(universe: FiniteUniverse, smops, s: FSet) -> FSet:
    """Closure of s in the topology generated by the smop family."""
    opens = generate_topology(smops)
    avoid = 0
    for o in opens:
        if o & s == 0:
            avoid |= o
    return universe.full & ~avoid


def essentially_finite_on(fam, carrier: FSet):
    """A finite subfamily whose traces on carrier cover the family's trace.

    Every finite family is essentially finite on everything; the witness
    returned is the family itself restricted to members that meet the
    carrier (already a finite subfamily with the same trace union).
    """
    witness = family(m for m in fam if m & carrier)
    return witness


@dataclass(frozen=True)
class FiniteFamilyClassification:
    essentially_finite: bool
    locally_finite: bool
    admissible: bool
    ef_witness: FFamily
    meet_counts: dict = field(default_factory=dict)


def classify_family_finite(universe: FiniteUniverse, smops, fam) -> FiniteFamilyClassification:
    """Classify a finite family of open sets of a finite space.

    Members must be open (compatible with the smop family); all three
    verdicts are computed by the definitions, which degenerate to True
    on finite carriers, with concrete witnesses kept for the report.
    """
    opens = set(compatible_sets(universe, smops))
    for m in fam:
        if m not in opens:
            raise ValueError(
                f"family member {universe.set_str(m)} is not open in the space")
    total = union_of(fam)
    ef_witness = family(m for m in fam if m)
    essentially_finite = union_of(ef_witness) == total
    meet_counts = {l: sum(1 for m in fam if m & l) for l in smops}
    # every meet count is an integer, so "finitely many members" cannot
    # fail on a finite presentation; the counts stay as report evidence
    locally_finite = True
    admissible = all(
        union_of(essentially_finite_on(fam, l)) & l == total & l for l in smops)
    return FiniteFamilyClassification(
        essentially_finite=essentially_finite,
        locally_finite=locally_finite,
        admissible=admissible,
        ef_witness=ef_witness,
        meet_counts=meet_counts,
    )


MAX_SUBFAMILY_ENUMERATION = 1 << 20


def subfamilies(fam):
    """All subfamilies, canonical order, empty family first."""
    n = len(fam)
    if 1 << n > MAX_SUBFAMILY_ENUMERATION:
        raise SizeGuardError(
            f"2^{n} subfamilies exceed the exhaustive enumeration cap")
    for bits in range(1 << n):
        yield tuple(fam[i] for i in range(n) if bits >> i & 1)


def ef_families(u_fam, v_fam) -> list:
    """EF(U, V): subfamilies of U essentially finite on every member of V.

    On a finite carrier every subfamily is finite, hence essentially
    finite on everything, so this is the full powerset of U; the
    membership test is still run literally so the function stays an
    oracle rather than an assumption.
    """
    out = []
    for sub in subfamilies(u_fam):
        if all(union_of(essentially_finite_on(sub, v)) & v == union_of(sub) & v
               for v in v_fam):
            out.append(family(sub))
    return sorted(set(out))
