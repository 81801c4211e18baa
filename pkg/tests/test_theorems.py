"""The statement checkers: every catalog entry runs and holds."""

import pytest

from locus.families import FiniteList, Translates
from locus.intervals import from_intervals, iv
from locus.properties import ChainCover
from locus.spaces import line_space, subspace
from locus.theorems import ANCHORS, BC_PAIRS, CHECKERS, THEOREM_IDS, \
    TheoremCheck, normalize_theorem_id, run_checker, run_random_suite


def box(lo, hi, lc=False, hc=False):
    return from_intervals(iv(lo, hi, lc, hc))


def test_catalog_shape():
    assert len(THEOREM_IDS) == 14
    assert set(THEOREM_IDS) | {"class-rules"} == set(CHECKERS)
    for ident, anchor in ANCHORS.items():
        assert anchor.strip() and anchor.endswith(".")


def test_normalize_accepts_suffixes():
    assert normalize_theorem_id("thm-cpar") == "thm-cpar"
    assert normalize_theorem_id("cpar") == "thm-cpar"
    assert normalize_theorem_id("Aoo") == "lemma-Aoo"
    assert normalize_theorem_id("smallness") == "thm-smallness"
    assert normalize_theorem_id("2.16") == "example-2.16"
    assert normalize_theorem_id("ubor-lss") == "thm-ubor-lss"
    with pytest.raises(ValueError):
        normalize_theorem_id("no-such-statement")


def _passes(ident, **kwargs):
    check = run_checker(ident, **kwargs)
    assert isinstance(check, TheoremCheck)
    assert check.ident == normalize_theorem_id(ident)
    assert check.anchor == ANCHORS[check.ident]
    assert check.holds, check.detail
    return check


def test_compat_idempotent():
    assert _passes("lemma-Aoo", iters=200, seed=1).instances == 200


def test_smop_decomposition():
    check = _passes("prop-L-eq-Ls-cap-Lo", iters=60, line_iters=10, seed=2)
    assert check.instances == 60 + 9 * 10


def test_smallness_equivalence():
    check = _passes("thm-smallness", iters=25, seed=3, samples=6)
    assert check.instances == 9 + 25


def test_unit_translates_example():
    assert _passes("example-2.16").instances == 4


def test_identity_pair_example():
    assert _passes("example-om-lom-map", samples=40).instances == 2


def test_bc_equivalence():
    check = _passes("lemma-bcsc", iters=25, samples=25,
                    pairs=(("om", "lom"), ("lom", "om")))
    assert check.instances == 27
    assert len(BC_PAIRS) >= 20


def test_gluing():
    assert _passes("prop-glu", iters=25, seed=4, samples=10).instances > 25


def test_absorption_default_and_instances():
    check = _passes("thm-cpar", iters=10)
    assert check.witness == ChainCover(-1, 1, 1, 1)

    lom = line_space("lom")
    cover = Translates(box(-1, 1), 1, None)
    check = _passes("thm-cpar", space=lom, cover=cover, seed=box(-1, 1))
    assert check.instances == 1
    assert check.detail == "outcome chain"

    carrier = from_intervals(iv(0, 1), iv(2, 3))
    sub = subspace(lom, carrier)
    split = _passes("thm-cpar", space=sub,
                    cover=FiniteList((box(0, 1), box(2, 3))),
                    seed=box(0, 1))
    assert split.detail == "outcome disconnected"
    assert split.witness.first == box(0, 1)


def test_absorption_rejects_bad_cover():
    om = line_space("om")
    with pytest.raises(ValueError):
        run_checker("thm-cpar", space=om,
                    cover=Translates(box(0, 1), 1, None), seed=box(0, 1))


def test_peeling_default_and_instances():
    check = _passes("thm-stlind", iters=10)
    assert len(check.witness.parts) == 3

    st = line_space("st")
    full_chain = ChainCover(float("-inf"), 0, float("inf"), 0)
    flat = _passes("thm-stlind", space=st, chain=full_chain)
    assert flat.instances == 1


def test_swo_compatibility():
    check = _passes("lemma-swo-o", iters=40, line_iters=6, seed=5)
    assert check.instances == 40 + 9 * 6


def test_ubor_lss_round_trip():
    assert _passes("thm-ubor-lss", iters=50, seed=6).instances == 59


def test_structure_smallopens():
    assert _passes("lemma-covx", iters=40, seed=7).instances == 40


def test_smops_recovered():
    assert _passes("lemma-smops", iters=50, seed=8).instances == 50


def test_subspace_identity():
    assert _passes("thm-subsp", iters=20, seed=9).instances == 20


def test_class_rules():
    check = _passes("class-rules", iters=8, seed=10)
    assert check.instances >= 9 * 8


def test_random_suite_finite_deterministic():
    a = run_random_suite("finite", 60, 17)
    b = run_random_suite("finite", 60, 17)
    assert a == b
    assert all(c.holds for c in a)
    assert {c.ident for c in a} >= {"lemma-Aoo", "lemma-covx", "thm-subsp"}


def test_random_suite_interval():
    checks = run_random_suite("interval", 27, 23)
    assert all(c.holds for c in checks)
    assert {c.ident for c in checks} >= {"class-rules", "thm-cpar",
                                         "thm-smallness"}


def test_random_suite_rejects_unknown_backend():
    with pytest.raises(ValueError):
        run_random_suite("quantum", 10, 0)
