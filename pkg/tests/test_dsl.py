"""Text format: lexing, parsing, canonical printing, resolution."""

from fractions import Fraction
from pathlib import Path

import pytest

from locus import dsl
from locus.families import FiniteList, Translates, TranslatesDown, UnionOf
from locus.glue import FiniteAtlas, PeriodicAtlas
from locus.gts import GtsTriple
from locus.intervals import EMPTY, FULL, PeriodicSet, from_intervals, iv, \
    tail_left, tail_right, union
from locus.maps import SpaceMap
from locus.properties import ChainCover
from locus.spaces import FiniteSpace, LineSpace

CORPUS = sorted(Path(__file__).parent.glob("corpus/*.locus"))


def box(lo, hi, lc=False, hc=False):
    return from_intervals(iv(lo, hi, lc, hc))


# ---------------------------------------------------------------------------
# round trips

def test_corpus_exists():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    text = path.read_text()
    doc = dsl.parse(text)
    assert dsl.print_document(doc) == text
    assert dsl.parse(dsl.print_document(doc)) == doc


def test_normalization_merges_spellings():
    a = dsl.parse("set S = (0,1) u [1,2)\n")
    b = dsl.parse("set S = (0,2)\n")
    assert a == b
    assert dsl.print_document(a) == "set S = (0,2)\n"


def test_tail_prints_in_anchor_normal_form():
    doc = dsl.parse("set T = tail right period 1 pattern (0,1/2] from 0\n")
    text = dsl.print_document(doc)
    assert dsl.parse(text) == doc
    assert dsl.print_document(dsl.parse(text)) == text


# ---------------------------------------------------------------------------
# denotations

def test_set_denotations():
    env = dsl.resolve(dsl.parse(
        "set A = (0,1) u (2,3)\n"
        "set B = empty\n"
        "set C = tail right period 1 pattern (0,1/2] from 0\n"
        "set D = tail left period 2 pattern [-1,-1/2) from 0\n"
        "set E = {0, 3}\n"))
    assert env["A"] == union(box(0, 1), box(2, 3))
    assert env["B"] == EMPTY
    assert env["C"] == tail_right([iv(0, Fraction(1, 2), False, True)], 1, 0)
    assert env["D"] == tail_left([iv(-1, Fraction(-1, 2), True, False)], 2, 0)
    assert env["E"] == 0b1001


def test_declaration_resolution_types():
    env = dsl.resolve(dsl.parse("""
set S = (0,1)
space X = line lom
space Y = subspace of X carrier S
space P = finite size 2 smops { {}, {0}, {0, 1} }
family K = translates base (-1,1) step 1 over Z
family L = list (-1,1) and translates down base (-2,0) step 1 stop 0
family C = chain start (-1,1) grow 1 1
family M = masks { {0}, {0, 1} }
map f = piecewise { on (-inf,inf): x -> x } from X to X
map g = table { 0 -> 1, 1 -> 0 } from P to P
atlas A = periodic ambient line lom base (-1,1) step 1
atlas B = finite size 2 charts chart { {}, {0} } chart { {}, {1} }
gts G = from P
gts H = generated size 2 covers { {0}, {0, 1} } and { {1} }
"""))
    assert isinstance(env["S"], PeriodicSet)
    assert isinstance(env["X"], LineSpace) and env["X"].is_full
    assert env["Y"].carrier == box(0, 1)
    assert isinstance(env["P"], FiniteSpace)
    assert env["K"] == Translates(box(-1, 1), 1, None)
    assert isinstance(env["L"], UnionOf)
    assert isinstance(env["L"].parts[0], FiniteList)
    assert isinstance(env["L"].parts[1], TranslatesDown)
    assert env["C"] == ChainCover(-1, 1, 1, 1)
    assert env["M"] == (0b01, 0b11)
    assert isinstance(env["f"], SpaceMap)
    assert env["g"].rule.table == (1, 0)
    assert isinstance(env["A"], PeriodicAtlas)
    assert isinstance(env["B"], FiniteAtlas)
    assert isinstance(env["G"], GtsTriple)
    assert isinstance(env["H"], GtsTriple)


def test_affine_rule_shapes():
    env = dsl.resolve(dsl.parse(
        "space X = line lom\n"
        "map h = piecewise { on (-inf,0]: x -> -x; "
        "on (0,inf): x -> 2/3x - 5 } from X to X\n"))
    first, second = env["h"].rule.pieces
    assert (first.slope, first.offset) == (-1, 0)
    assert (second.slope, second.offset) == (Fraction(2, 3), -5)


def test_verify_query_args_survive():
    doc = dsl.parse("family K = translates base (-1,1) step 1 over Z\n"
                    "verify thm-cpar space lom cover K seed (-1,1)\n")
    (query,) = doc.queries
    assert query.ident == "thm-cpar"
    assert dict(query.args)["space"] == "lom"
    assert dsl.statement_text(query) == \
        "verify thm-cpar space lom cover K seed (-1,1)"


def test_shorthand_ids_normalize_at_parse():
    doc = dsl.parse("verify cpar\n")
    assert doc.queries[0].ident == "thm-cpar"


# ---------------------------------------------------------------------------
# canonical text fragments

def test_set_text_literals():
    assert dsl.set_text(EMPTY) == "empty"
    assert dsl.set_text(FULL) == "(-inf,inf)"
    assert dsl.set_text(box(Fraction(-1, 2), 3, True)) == "[-1/2,3)"


def test_affine_text():
    assert dsl._affine_text(Fraction(1), Fraction(0)) == "x"
    assert dsl._affine_text(Fraction(-1), Fraction(2)) == "-x + 2"
    assert dsl._affine_text(Fraction(0), Fraction(-3)) == "-3"
    assert dsl._affine_text(Fraction(5, 2), Fraction(-1, 3)) == "5/2x - 1/3"


def test_mask_families_reorder_canonically():
    doc = dsl.parse("space P = finite size 2 smops { {0, 1}, {0}, {} }\n")
    assert dsl.print_document(doc) == \
        "space P = finite size 2 smops { {}, {0}, {0, 1} }\n"


# ---------------------------------------------------------------------------
# errors

@pytest.mark.parametrize("source,line,col", [
    ("set A = (0,", 1, 12),
    ("set A = (0 1)", 1, 12),
    ("space B = line xyz", 1, 16),
    ("classify set (0,1) in nowhere", 1, 23),
    ("verify thm-nothing", 1, 8),
    ("map h = piecewise { on (0,1): y -> x } from lom to lom", 1, 31),
    ("family F = masks { {0} } and list (0,1)", 1, 40),
])
def test_error_positions(source, line, col):
    with pytest.raises(dsl.DslError) as exc:
        dsl.parse(source)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_error_carries_expected_tokens():
    with pytest.raises(dsl.DslError) as exc:
        dsl.parse("set A = ")
    assert exc.value.expected
    assert "interval" in " ".join(exc.value.expected)


def test_duplicate_name_rejected():
    with pytest.raises(dsl.DslError, match="already declared"):
        dsl.parse("set S = (0,1)\nset S = (1,2)\n")


def test_reserved_words_rejected_as_names():
    with pytest.raises(dsl.DslError, match="reserved"):
        dsl.parse("set x = (0,1)\n")


def test_kind_mismatch_rejected():
    with pytest.raises(dsl.DslError, match="is a set, not a space"):
        dsl.parse("set S = (0,1)\nclassify space S\n")


def test_forward_reference_rejected():
    with pytest.raises(dsl.DslError, match="not declared"):
        dsl.parse("classify family K in lom\n"
                  "family K = translates base (0,1) step 1 over Z\n")


def test_table_must_cover_source():
    doc = dsl.parse("space P = finite size 2 smops { {}, {0}, {0, 1} }\n"
                    "map g = table { 0 -> 1 } from P to P\n")
    with pytest.raises(ValueError, match="every source element"):
        dsl.resolve(doc)


def test_comments_and_whitespace_are_free():
    a = dsl.parse("# heading\nset S = (0,1)  # trailing\n\n\nclassify set S in om\n")
    b = dsl.parse("set S = (0,1) classify set S in om")
    assert a == b
