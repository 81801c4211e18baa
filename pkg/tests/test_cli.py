"""Command line driver and report layer."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from locus import cli, dsl, reports
from locus.intervals import EMPTY, from_intervals, iv
from locus.properties import ChainCover

CORPUS = Path(__file__).parent / "corpus"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def without_timing(text):
    return "\n".join(line for line in text.splitlines()
                     if '"elapsed_ms"' not in line)


def scrub(report):
    for record in report["queries"]:
        record.pop("elapsed_ms", None)
    return report


# ---------------------------------------------------------------------------
# derive

def test_derive_wcl_plain(capsys):
    code, out, _ = run_cli(capsys, "derive", "wcl",
                           "--space", "lom", "--set", "(0,1)")
    assert code == 0
    assert out == "[0,1]\n"


def test_derive_families_json_body(capsys):
    code, out, _ = run_cli(capsys, "derive", "Ls",
                           "--space", "finite size 2 smops { {}, {0, 1} }")
    assert code == 0
    body = json.loads(out)
    assert body["members"] == [[], [0], [1], [0, 1]]


def test_derive_line_class_description(capsys):
    code, out, _ = run_cli(capsys, "derive", "Ls", "--space", "om")
    assert code == 0
    assert "class" in json.loads(out)


def test_derive_wcl_needs_set():
    with pytest.raises(SystemExit) as exc:
        cli.main(["derive", "wcl", "--space", "lom"])
    assert exc.value.code == 2


def test_derive_set_only_for_wcl():
    with pytest.raises(SystemExit) as exc:
        cli.main(["derive", "Lo", "--space", "lom", "--set", "(0,1)"])
    assert exc.value.code == 2


def test_derive_space_body(capsys):
    code, out, _ = run_cli(
        capsys, "derive", "wcl",
        "--space", "subspace of lom carrier (0,1)", "--set", "(0,1/2)")
    assert code == 0
    assert out == "(0,1/2]\n"


# ---------------------------------------------------------------------------
# run

def test_run_corpus_file(capsys):
    code, out, _ = run_cli(capsys, "run", str(CORPUS / "sets-basic.locus"))
    assert code == 0
    assert "summary:" in out
    assert "[ok]" in out


def test_run_json_to_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "run", str(CORPUS / "sets-basic.locus"),
                           "--json", str(out_path))
    assert code == 0
    assert "summary:" in out
    report = json.loads(out_path.read_text())
    assert report["schema_version"] == 1
    assert report["summary"]["total"] == len(report["queries"])


def test_run_json_to_stdout(capsys):
    code, out, _ = run_cli(capsys, "run", str(CORPUS / "sets-basic.locus"),
                           "--json", "-")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["errors"] == 0


def test_run_missing_file(capsys):
    code, _, err = run_cli(capsys, "run", "/nonexistent/nowhere.locus")
    assert code == 2
    assert "locus:" in err


def test_run_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.locus"
    bad.write_text("set A = (0,\n")
    code, _, err = run_cli(capsys, "run", str(bad))
    assert code == 2
    assert "locus: line" in err and "expected" in err


def test_run_resolution_error(tmp_path, capsys):
    bad = tmp_path / "badatlas.locus"
    bad.write_text("atlas B = finite size 1 charts chart { {0} }\n")
    code, _, err = run_cli(capsys, "run", str(bad))
    assert code == 1
    assert "locus:" in err


def test_run_query_error_isolated(tmp_path, capsys):
    doc = tmp_path / "mixed.locus"
    doc.write_text("space P = finite size 1 smops { {}, {0} }\n"
                   "family K = translates base (0,1) step 1 over Z\n"
                   "classify set {0} in P\n"
                   "classify family K in P\n")
    code, out, _ = run_cli(capsys, "run", str(doc))
    assert code == 1
    assert "[ok] classify set {0} in P" in out
    assert "[error] classify family K in P" in out
    assert "TypeError" in out


def test_record_shape(capsys):
    code, out, _ = run_cli(capsys, "run", str(CORPUS / "maps-affine.locus"),
                           "--json", "-")
    assert code == 0
    for record in json.loads(out)["queries"]:
        assert set(record) == {"query", "kind", "status", "result",
                               "detail", "elapsed_ms"}
        assert record["status"] == "ok"


# ---------------------------------------------------------------------------
# verify

def test_verify_one_id(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma-Aoo",
                           "--iters", "20", "--rng-seed", "5")
    assert code == 0
    assert "[ok] verify lemma-Aoo iters 20 rng-seed 5" in out


def test_verify_several_ids(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma-covx", "lemma-smops",
                           "--iters", "10")
    assert code == 0
    assert out.count("[ok]") == 2


def test_verify_shorthand(capsys):
    code, out, _ = run_cli(capsys, "verify", "covx", "--iters", "5")
    assert code == 0
    assert "verify lemma-covx" in out


def test_verify_instance(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "thm-cpar", "--space", "lom",
        "--cover", "translates base (-1,1) step 1 over Z",
        "--seed", "(-1,1)")
    assert code == 0
    assert "outcome chain" in out


def test_verify_instance_flags_need_single_id():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "lemma-Aoo", "lemma-covx", "--space", "lom"])
    assert exc.value.code == 2


def test_verify_all_stands_alone():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "all", "lemma-Aoo"])
    assert exc.value.code == 2


def test_verify_unknown_id(capsys):
    code, _, err = run_cli(capsys, "verify", "thm-bogus")
    assert code == 2
    assert "thm-bogus" in err


# ---------------------------------------------------------------------------
# classify

def test_classify_set(capsys):
    code, out, _ = run_cli(capsys, "classify", "set", "(0,1)",
                           "--space", "lom")
    assert code == 0
    assert '"smop": true' in out


def test_classify_set_needs_space():
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "set", "(0,1)"])
    assert exc.value.code == 2


def test_classify_space_builtin(capsys):
    code, out, _ = run_cli(capsys, "classify", "space", "om")
    assert code == 0
    assert '"small": true' in out


def test_classify_family_as_open(capsys):
    code, out, _ = run_cli(capsys, "classify", "family",
                           "translates base (-1,1) step 1 over Z",
                           "--space", "lom", "--as-open", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["queries"][0]["status"] == "ok"


def test_classify_map(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "map",
        "piecewise { on (-inf,inf): x -> x + 1 } from lom to lom")
    assert code == 0
    assert '"bounded_continuous"' in out


# ---------------------------------------------------------------------------
# random-suite

def test_random_suite_deterministic(capsys):
    args = ("random-suite", "--backend", "finite",
            "--iters", "12", "--seed", "9")
    code_a, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_random_suite_json_deterministic(capsys):
    args = ("random-suite", "--backend", "interval",
            "--iters", "9", "--seed", "2", "--json")
    code_a, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code_a == code_b == 0
    assert without_timing(out_a) == without_timing(out_b)


# ---------------------------------------------------------------------------
# report layer

def test_exit_code_rules():
    def report(violations, errors):
        return {"summary": {"total": 3, "violations": violations,
                            "errors": errors}}
    assert reports.exit_code(report(0, 0)) == 0
    assert reports.exit_code(report(1, 0)) == 1
    assert reports.exit_code(report(0, 2)) == 1


def test_jsonable_conversions():
    assert reports.jsonable(from_intervals(iv(0, 1))) == "(0,1)"
    assert reports.jsonable(EMPTY) == "empty"
    assert reports.jsonable(Fraction(1, 2)) == "1/2"
    assert reports.jsonable(0b101, universe=3) == [0, 2]
    assert reports.jsonable(ChainCover(-1, 1, 1, 1)) == {
        "kind": "chain", "lo0": -1, "dl": 1, "hi0": 1, "dr": 1}


def test_parallel_matches_sequential():
    doc = dsl.parse((CORPUS / "families-translates.locus").read_text())
    seq = scrub(reports.run_document(doc))
    par = scrub(reports.run_document(doc, parallel=True))
    assert seq == par


def test_violation_status_sets_exit_code(tmp_path, capsys):
    doc = tmp_path / "viol.locus"
    doc.write_text("space P = finite size 2 smops { {}, {0}, {1}, {0, 1} }\n"
                   "gts G = generated size 2 covers { {0} } and { {1} }\n"
                   "gts check G\n")
    code, out, _ = run_cli(capsys, "run", str(doc))
    report_doc = dsl.parse(doc.read_text())
    report = reports.run_document(report_doc)
    assert code == reports.exit_code(report)
    assert "summary:" in out
