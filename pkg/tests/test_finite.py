"""Finite backend oracles: frozen examples and algebraic laws."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from locus.finite import (
    FiniteUniverse,
    SizeGuardError,
    classify_family_finite,
    compatible_sets,
    ef_families,
    family,
    family_trace,
    generate_bornology,
    generate_ring,
    generate_topology,
    inter1,
    is_locally_small,
    subfamilies,
    union_of,
    wcl,
)

U3 = FiniteUniverse(3)
U2 = FiniteUniverse(2)


def masks(universe, *sets):
    return family(universe.set_of(s) for s in sets)


def test_compatible_sets_frozen_example():
    a = masks(U3, [], [0], [0, 1])
    expect = masks(U3, [], [0], [2], [0, 1], [0, 2], [0, 1, 2])
    assert compatible_sets(U3, a) == expect


def test_compatible_sets_without_empty_set():
    a = masks(U2, [0], [1])
    assert compatible_sets(U2, a) == masks(U2, [0, 1])


def test_generate_bornology_frozen_example():
    a = masks(U3, [0], [1])
    assert generate_bornology(a) == masks(U3, [], [0], [1], [0, 1])


def test_generate_ring_and_topology():
    a = masks(U3, [0], [1])
    assert generate_ring(a) == masks(U3, [], [0], [1], [0, 1])
    assert generate_topology(a) == masks(U3, [], [0], [1], [0, 1])
    b = masks(U3, [0, 1], [1, 2])
    # ring adds the pairwise intersection, topology does not
    assert masks(U3, [1])[0] in generate_ring(b)
    assert masks(U3, [1])[0] not in generate_topology(b)


def test_ef_families_frozen_example():
    u = masks(U2, [0], [1])
    v = masks(U2, [0, 1])
    fams = ef_families(u, v)
    assert fams == sorted([(), (1,), (2,), (1, 2)])


def test_wcl_smallest_closed_superset():
    smops = family([0b000, 0b001, 0b011, 0b111])
    assert is_locally_small(smops)
    assert wcl(U3, smops, 0b010) == 0b110
    assert wcl(U3, smops, 0b001) == 0b111
    assert wcl(U3, smops, 0b000) == 0b000


def test_family_trace_and_inter1():
    f = masks(U3, [0, 1], [1, 2], [])
    assert family_trace(f, U3.set_of([1])) == masks(U3, [], [1])
    assert inter1(f, masks(U3, [0], [1])) == masks(U3, [], [0], [1])


def test_classify_family_finite_is_all_true():
    smops = family([0b00, 0b01, 0b10, 0b11])
    cls = classify_family_finite(U2, smops, family([0b01, 0b10]))
    assert cls.essentially_finite and cls.locally_finite and cls.admissible
    assert union_of(cls.ef_witness) == 0b11


def test_classify_family_finite_rejects_non_open_member():
    smops = family([0b000, 0b001, 0b011, 0b111])
    with pytest.raises(ValueError):
        classify_family_finite(U3, smops, family([0b100]))


def test_subfamily_guard():
    big = family(range(25))
    with pytest.raises(SizeGuardError):
        list(subfamilies(big))


def test_universe_guard():
    with pytest.raises(SizeGuardError):
        FiniteUniverse(17)


small_universe = st.integers(min_value=1, max_value=4)


@st.composite
def random_family(draw, closed_under=None):
    n = draw(small_universe)
    u = FiniteUniverse(n)
    members = draw(st.sets(st.integers(0, u.full), max_size=6))
    fam = set(members)
    if closed_under == "intersection":
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    if a & b not in fam:
                        fam.add(a & b)
                        changed = True
    return u, family(fam)


@given(random_family(closed_under="intersection"))
def test_compatibility_lemma(uf):
    u, a = uf
    if not a:
        return
    ao = compatible_sets(u, a)
    assert set(a) <= set(ao)
    assert compatible_sets(u, ao) == ao


@given(random_family())
def test_generators_idempotent(uf):
    _, a = uf
    for gen in (generate_ring, generate_topology, generate_bornology):
        out = gen(a)
        assert gen(out) == out
        assert set(a) <= set(out)


@given(random_family(), random_family())
def test_generators_monotone(uf, vg):
    u, a = uf
    _, b = vg
    b = family(m & u.full for m in b)
    joined = family(set(a) | set(b))
    for gen in (generate_ring, generate_topology, generate_bornology):
        assert set(gen(a)) <= set(gen(joined))


@given(random_family())
def test_trace_lands_in_powerset_of_carrier(uf):
    u, a = uf
    rng = random.Random(7)
    y = rng.randrange(u.full + 1)
    for m in family_trace(a, y):
        assert m & ~y == 0
