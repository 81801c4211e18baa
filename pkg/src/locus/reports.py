"""Run the queries of a document and render the results.

run_document executes every query against the document's declarations
and returns a plain-dict report with a stable, versioned shape:

    {"schema_version": 1,
     "queries": [{"query": <canonical text>, "kind": ..., "status":
                  "ok" | "violation" | "error", "result": {...},
                  "detail": ..., "elapsed_ms": ...}, ...],
     "summary": {"total": n, "violations": v, "errors": e}}

Failures are isolated per query: an exception inside one query yields
one status "error" record and the rest still run.  A "violation" is a
checked claim coming out false; informational queries (classify,
derive, glue, gts-check) only report what they found.  Every false
verify verdict carries either a witness or the explicit search_bounded
marker.  With a fixed seed the report is deterministic except for the
elapsed_ms fields.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import dsl, finite
from .families import classify_family, family_union
from .glue import FiniteAtlas, GluedPeriodic, glue, verify_clauses
from .gts import check_axioms, generate_gt, to_space, verify_minimal
from .intervals import PeriodicSet, QInterval
from .maps import classify_map
from .properties import ChainCover, Disconnection, verify_lindelof_witness
from .spaces import FiniteSpace, LineSpace, classify_space, is_open_set, \
    is_small_set, is_smop, is_swo_set, is_weakly_open, opens_of, \
    smalls_of, swo_of, wcl, weak_opens_of
from .theorems import CHECKERS, normalize_theorem_id, run_random_suite

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# JSON-safe rendering of the objects that show up in results

def _elements(universe, mask):
    return [i for i in range(universe.size) if mask >> i & 1]


def jsonable(value, universe=None):
    """Recursively convert a result value to JSON-compatible data."""
    if isinstance(value, PeriodicSet):
        return dsl.set_text(value)
    if isinstance(value, QInterval):
        return dsl._interval_text(value)
    if isinstance(value, Fraction):
        return dsl._q_text(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int) and universe is not None:
        return _elements(universe, value)
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, ChainCover):
        return {"kind": "chain", "lo0": dsl._q_text(value.lo0),
                "dl": dsl._q_text(value.dl),
                "hi0": dsl._q_text(value.hi0),
                "dr": dsl._q_text(value.dr)}
    if isinstance(value, Disconnection):
        return {"kind": "disconnection",
                "first": jsonable(value.first, universe),
                "second": jsonable(value.second, universe)}
    if is_dataclass(value) and not isinstance(value, type):
        return {k: jsonable(v, universe) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): jsonable(v, universe) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, universe) for v in value]
    return repr(value)


def _family_masks(universe, fam):
    return [_elements(universe, m) for m in sorted(fam)]


# ---------------------------------------------------------------------------
# per-query execution

def _classify_set(q, env):
    space = dsl._resolve_space(q.space, env)
    s = dsl._as_set(q.target, env)
    if isinstance(space, FiniteSpace):
        u = space.universe
        if not isinstance(s, int):
            raise TypeError("a finite space classifies element sets {..}")
        if s & ~u.full:
            raise ValueError("the set escapes the universe")
        smops = space.smops
        opens = finite.compatible_sets(u, smops)
        topo = finite.generate_topology(smops)
        small = any(s & ~m == 0 for m in smops)
        result = {
            "set": _elements(u, s),
            "smop": s in smops,
            "small": small,
            "open": s in opens,
            "weakly_open": s in topo,
            "small_weakly_open": s in topo and small,
        }
    else:
        if isinstance(s, int):
            raise TypeError("a line space classifies interval sets")
        result = {
            "set": dsl.set_text(s),
            "smop": is_smop(space, s),
            "small": is_small_set(space, s),
            "weakly_open": is_weakly_open(space, s),
            "small_weakly_open": is_swo_set(space, s),
        }
        try:
            result["open"] = is_open_set(space, s)
        except NotImplementedError as e:
            result["open"] = None
            return result, "ok", f"open left undecided: {e}"
    return result, "ok", ""


def _classify_family(q, env):
    space = dsl._resolve_space(q.space, env)
    fam = env[q.family]
    if isinstance(space, FiniteSpace):
        u = space.universe
        if not isinstance(fam, tuple):
            raise TypeError("finite spaces classify masks families")
        rep = finite.classify_family_finite(u, space.smops, fam)
        result = {
            "essentially_finite": rep.essentially_finite,
            "locally_finite": rep.locally_finite,
            "admissible": rep.admissible,
        }
    elif isinstance(fam, ChainCover):
        constant = fam.dl == 0 and fam.dr == 0
        result = {
            "essentially_finite": constant,
            "locally_finite": constant,
            "admissible": verify_lindelof_witness(space, fam).holds,
            "union": dsl.set_text(fam.union()),
        }
    else:
        rep = classify_family(space, fam, members=q.members)
        result = {
            "essentially_finite": rep.essentially_finite,
            "locally_finite": rep.locally_finite,
            "admissible": rep.admissible,
            "union": dsl.set_text(family_union(fam)),
        }
        if rep.local_witness is not None:
            result["local_witness"] = dsl.set_text(rep.local_witness)
        if rep.admissible_witness is not None:
            result["admissible_witness"] = dsl.set_text(
                rep.admissible_witness)
    return result, "ok", ""


def _verdict(v):
    return {"holds": v.holds, "detail": v.detail}


def _classify_map(q, env):
    rep = classify_map(env[q.name])
    result = {name: _verdict(getattr(rep, name)) for name in (
        "weakly_continuous", "bounded", "continuous",
        "bounded_continuous", "strictly_continuous")}
    return result, "ok", ""


def _classify_space(q, env):
    space = env[q.name]
    c = classify_space(space)
    result = {"small": c.small, "compact": c.compact,
              "partially_topological": c.partially_topological,
              "topological_like": c.topological_like,
              "reasons": list(c.reasons)}
    return result, "ok", ""


def _class_description(cls):
    return {"name": cls.name, "require_open": cls.require_open,
            "forbid_left_tail": cls.forbid_left_tail,
            "forbid_right_tail": cls.forbid_right_tail,
            "forbid_left_ray": cls.forbid_left_ray,
            "forbid_right_ray": cls.forbid_right_ray}


_DERIVERS = {"Lo": opens_of, "Ls": smalls_of, "Lwo": weak_opens_of,
             "Lswo": swo_of}


def _derive(q, env):
    space = dsl._resolve_space(q.space, env)
    if isinstance(space, FiniteSpace):
        u, smops = space.universe, space.smops
        topo = finite.generate_topology(smops)
        fams = {"Lo": finite.compatible_sets(u, smops),
                "Ls": finite.generate_bornology(smops),
                "Lwo": topo,
                "Lswo": finite.family(set(topo)
                                      & set(finite.generate_bornology(smops))),
                "closedsets": finite.family(u.full & ~t for t in topo)}
        result = {"members": _family_masks(u, fams[q.what])}
    elif q.what == "closedsets":
        result = {"rule": "complements of the weakly open sets",
                  "weak_opens": _class_description(
                      weak_opens_of(space.smop_class))}
    else:
        result = {"class": _class_description(
            _DERIVERS[q.what](space.smop_class))}
        if not space.is_full:
            result["carrier"] = dsl.set_text(space.carrier)
    return result, "ok", ""


def _derive_wcl(q, env):
    space = dsl._resolve_space(q.space, env)
    s = dsl._as_set(q.target, env)
    closure = wcl(space, s)
    if isinstance(space, FiniteSpace):
        result = {"wcl": _elements(space.universe, closure)}
    else:
        result = {"wcl": dsl.set_text(closure)}
    return result, "ok", ""


def _glue(q, env):
    atlas = env[q.name]
    glued = glue(atlas)
    v = verify_clauses(atlas)
    result = {"clauses": {"finite_unions_of_chart_smops": v.clause_a,
                          "charts_are_open_subspaces": v.clause_b,
                          "chart_family_admissible": v.clause_c}}
    if isinstance(glued, GluedPeriodic):
        result["backend"] = "interval"
        result["carrier"] = dsl.set_text(glued.carrier)
    else:
        result["backend"] = "finite"
        result["smops"] = _family_masks(glued.universe, glued.smops)
    ok = v.clause_a and v.clause_b and v.clause_c
    return result, "ok" if ok else "violation", \
        "" if ok else "a gluing clause failed"


def _gts_check(q, env):
    g = env[q.name]
    rep = check_axioms(g)
    result = {"universe": g.universe.size,
              "opens": len(g.op), "coverings": len(g.cov),
              "all_hold": rep.all_hold}
    for axiom in ("finiteness", "stability", "transitivity", "saturation",
                  "regularity"):
        v = getattr(rep, axiom)
        entry = {"holds": v.holds, "checked": v.checked}
        if v.counterexample:
            entry["counterexample"] = v.counterexample
        result[axiom] = entry
    return result, "ok", ""


def _generate_gt(q, env):
    space = dsl._resolve_space(q.space, env)
    if not isinstance(space, FiniteSpace):
        raise TypeError("structures are generated over finite spaces")
    psi = (space.smops,)
    g = generate_gt(space.universe, psi)
    minimal = verify_minimal(g, psi)
    recovered = to_space(g).smops == space.smops
    result = {"opens": len(g.op), "coverings": len(g.cov),
              "minimal": minimal, "smops_recovered": recovered}
    ok = minimal and recovered
    return result, "ok" if ok else "violation", \
        "" if ok else "the generated structure failed a postcondition"


_RNG_SEED_KW = {"thm-cpar": "rng_seed", "thm-stlind": "rng_seed"}


def _check_result(check):
    result = {"id": check.ident, "anchor": check.anchor,
              "holds": check.holds, "instances": check.instances,
              "detail": check.detail}
    if check.witness is not None:
        result["witness"] = jsonable(check.witness)
    if not check.holds:
        result["search_bounded"] = check.witness is None
    return result


def _verify(q, env):
    ident = normalize_theorem_id(q.ident)
    kwargs = {}
    for key, value in q.args:
        if key == "space":
            kwargs["space"] = dsl._resolve_space(value, env)
        elif key in ("cover", "chain"):
            kwargs[key] = env[value.name]
        elif key == "seed":
            kwargs["seed"] = dsl._as_set(value, env)
        elif key == "rng-seed":
            kwargs[_RNG_SEED_KW.get(ident, "seed")] = value
        else:
            kwargs[key] = value
    check = CHECKERS[ident](**kwargs)
    detail = "" if check.holds else f"claim failed: {check.detail}"
    return _check_result(check), "ok" if check.holds else "violation", detail


def _random_suite(q, env):
    checks = run_random_suite(q.backend, q.iters, q.seed)
    holds = all(c.holds for c in checks)
    result = {"backend": q.backend, "iters": q.iters, "seed": q.seed,
              "holds": holds,
              "checks": [_check_result(c) for c in checks]}
    detail = "" if holds else "a suite check failed"
    return result, "ok" if holds else "violation", detail


_RUNNERS = {
    dsl.ClassifySet: ("classify-set", _classify_set),
    dsl.ClassifyFamily: ("classify-family", _classify_family),
    dsl.ClassifyMap: ("classify-map", _classify_map),
    dsl.ClassifySpace: ("classify-space", _classify_space),
    dsl.Derive: ("derive", _derive),
    dsl.DeriveWcl: ("derive-wcl", _derive_wcl),
    dsl.GlueQuery: ("glue", _glue),
    dsl.GtsCheckQuery: ("gts-check", _gts_check),
    dsl.GenerateGtQuery: ("generate-gt", _generate_gt),
    dsl.VerifyQuery: ("verify", _verify),
    dsl.RandomSuiteQuery: ("random-suite", _random_suite),
}


def _run_query(query, env):
    kind, runner = _RUNNERS[type(query)]
    record = {"query": dsl.statement_text(query), "kind": kind}
    start = time.perf_counter()
    try:
        result, status, detail = runner(query, env)
    except Exception as e:  # isolate per query
        record.update(status="error", result={},
                      detail=f"{type(e).__name__}: {e}")
    else:
        record.update(status=status, result=result, detail=detail)
    record["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return record


def run_document(doc: dsl.Document, parallel: bool = False) -> dict:
    env = dsl.resolve(doc)
    queries = doc.queries
    if parallel and len(queries) > 1:
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(lambda q: _run_query(q, env), queries))
    else:
        records = [_run_query(q, env) for q in queries]
    violations = sum(r["status"] == "violation" for r in records)
    errors = sum(r["status"] == "error" for r in records)
    return {"schema_version": SCHEMA_VERSION,
            "queries": records,
            "summary": {"total": len(records), "violations": violations,
                        "errors": errors}}


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def _flat(value, indent="    "):
    text = json.dumps(value, sort_keys=False)
    if len(text) <= 72:
        return [indent + text]
    return [indent + line
            for line in json.dumps(value, indent=2).splitlines()]


def render_text(report: dict) -> str:
    lines = []
    for r in report["queries"]:
        lines.append(f"[{r['status']}] {r['query']}")
        if r["detail"]:
            lines.append(f"    {r['detail']}")
        for key, value in r["result"].items():
            lines.extend(_flat({key: value}))
    s = report["summary"]
    lines.append(f"summary: {s['total']} queries, {s['violations']} "
                 f"violations, {s['errors']} errors")
    return "\n".join(lines) + "\n"


def exit_code(report: dict) -> int:
    s = report["summary"]
    return 1 if s["violations"] or s["errors"] else 0
