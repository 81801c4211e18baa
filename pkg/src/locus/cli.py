"""Command line front end.

Every subcommand assembles a small document in the text format of the
dsl module, runs it, and renders the report:

    locus run FILE [--json OUT] [--parallel]
    locus verify ID [ID...] | all  [per-instance flags] [--json]
    locus derive {Lo,Ls,Lwo,Lswo,closedsets,wcl} --space SPEC [--set EXPR]
    locus classify {set,family,map,space} ...
    locus random-suite --backend {finite,interval} --iters N --seed S

SPEC positions accept a built-in class name (lom, om, ...) or a space
body in the document syntax ("finite size 2 smops { {}, {0}, {0,1} }").
Set and family positions likewise take document syntax fragments.

Exit status: 0 when every query ran clean, 1 when any verdict was
violated or a query failed internally, 2 on usage or parse errors.
"""

import argparse
import sys

from . import dsl, reports
from .spaces import BUILTIN_CLASSES
from .theorems import THEOREM_IDS


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="locus",
        description="verification kernel for locally small spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run every query in a document")
    p_run.add_argument("file", help="path to a document")
    p_run.add_argument("--json", metavar="OUT", dest="json_path",
                       help="also write the JSON report to this path "
                            "('-' prints JSON instead of text)")
    p_run.add_argument("--parallel", action="store_true",
                       help="run independent queries on a thread pool")

    p_ver = sub.add_parser("verify", help="check named statements")
    p_ver.add_argument("ids", nargs="+", metavar="ID",
                       help="statement ids, or 'all'")
    p_ver.add_argument("--space", help="space for the instance")
    p_ver.add_argument("--cover", help="family body for the covering")
    p_ver.add_argument("--chain", help="family body for the chain")
    p_ver.add_argument("--seed", help="seed smop (set expression)")
    p_ver.add_argument("--iters", type=int, help="instance count")
    p_ver.add_argument("--samples", type=int, help="samples per instance")
    p_ver.add_argument("--rng-seed", type=int, dest="rng_seed",
                       help="random generator seed")
    p_ver.add_argument("--json", action="store_true", dest="as_json",
                       help="print the JSON report")
    p_ver.add_argument("--parallel", action="store_true",
                       help="run the checks on a thread pool")

    p_der = sub.add_parser("derive", help="derive a family or a closure")
    p_der.add_argument("what",
                       choices=("Lo", "Ls", "Lwo", "Lswo", "closedsets",
                                "wcl"))
    p_der.add_argument("--space", required=True,
                       help="class name or space body")
    p_der.add_argument("--set", dest="set_expr",
                       help="set expression (wcl only)")
    p_der.add_argument("--json", action="store_true", dest="as_json")

    p_cls = sub.add_parser("classify", help="classify an object")
    p_cls.add_argument("kind", choices=("set", "family", "map", "space"))
    p_cls.add_argument("body", help="the object, in document syntax")
    p_cls.add_argument("--space", help="ambient space (set and family)")
    p_cls.add_argument("--as-open", action="store_true", dest="as_open",
                       help="classify family members as opens")
    p_cls.add_argument("--json", action="store_true", dest="as_json")

    p_rnd = sub.add_parser("random-suite",
                           help="seeded re-verification sweep")
    p_rnd.add_argument("--backend", required=True,
                       choices=("finite", "interval"))
    p_rnd.add_argument("--iters", type=int, required=True)
    p_rnd.add_argument("--seed", type=int, required=True)
    p_rnd.add_argument("--json", action="store_true", dest="as_json")
    return parser


def _space_lines(spec, lines, name="s0"):
    """Reference a built-in class directly, declare anything else."""
    if spec in BUILTIN_CLASSES:
        return spec
    lines.append(f"space {name} = {spec}")
    return name


def _verify_source(args, parser):
    ids = list(args.ids)
    if ids == ["all"]:
        ids = list(THEOREM_IDS)
    elif "all" in ids:
        parser.error("'all' stands alone")
    instance_flags = (args.space, args.cover, args.chain, args.seed)
    if len(ids) > 1 and any(v is not None for v in instance_flags):
        parser.error("instance flags apply to a single statement id")
    lines = []
    space = _space_lines(args.space, lines) if args.space else None
    suffix = ""
    if space:
        suffix += f" space {space}"
    if args.cover:
        lines.append(f"family cover0 = {args.cover}")
        suffix += " cover cover0"
    if args.chain:
        lines.append(f"family chain0 = {args.chain}")
        suffix += " chain chain0"
    if args.seed:
        suffix += f" seed {args.seed}"
    if args.iters is not None:
        suffix += f" iters {args.iters}"
    if args.samples is not None:
        suffix += f" samples {args.samples}"
    if args.rng_seed is not None:
        suffix += f" rng-seed {args.rng_seed}"
    for ident in ids:
        lines.append(f"verify {ident}{suffix}")
    return "\n".join(lines) + "\n"


def _derive_source(args, parser):
    lines = []
    space = _space_lines(args.space, lines)
    if args.what == "wcl":
        if args.set_expr is None:
            parser.error("derive wcl needs --set")
        lines.append(f"derive wcl of {args.set_expr} in {space}")
    else:
        if args.set_expr is not None:
            parser.error("--set only applies to wcl")
        lines.append(f"derive {args.what} in {space}")
    return "\n".join(lines) + "\n"


def _classify_source(args, parser):
    lines = []
    if args.kind in ("set", "family") and not args.space:
        parser.error(f"classify {args.kind} needs --space")
    if args.kind == "set":
        space = _space_lines(args.space, lines)
        lines.append(f"classify set {args.body} in {space}")
    elif args.kind == "family":
        space = _space_lines(args.space, lines)
        lines.append(f"family f0 = {args.body}")
        suffix = " as open" if args.as_open else ""
        lines.append(f"classify family f0 in {space}{suffix}")
    elif args.kind == "map":
        lines.append(f"map m0 = {args.body}")
        lines.append("classify map m0")
    else:
        space = _space_lines(args.body, lines)
        if space == args.body:
            lines.append(f"space s0 = line {space}")
            space = "s0"
        lines.append(f"classify space {space}")
    return "\n".join(lines) + "\n"


def _emit(report, as_json):
    if as_json:
        print(reports.render_json(report))
    else:
        print(reports.render_text(report), end="")
    return reports.exit_code(report)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            with open(args.file, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            print(f"locus: {e}", file=sys.stderr)
            return 2
        source = text
    elif args.command == "verify":
        source = _verify_source(args, parser)
    elif args.command == "derive":
        source = _derive_source(args, parser)
    elif args.command == "classify":
        source = _classify_source(args, parser)
    else:
        source = (f"random-suite backend {args.backend} "
                  f"iters {args.iters} seed {args.seed}\n")

    try:
        doc = dsl.parse(source)
    except dsl.DslError as e:
        print(f"locus: {e}", file=sys.stderr)
        return 2

    try:
        report = reports.run_document(
            doc, parallel=getattr(args, "parallel", False))
    except (ValueError, TypeError) as e:
        # a declaration failed to resolve; queries never got to run
        print(f"locus: {e}", file=sys.stderr)
        return 1

    if args.command == "run":
        if args.json_path == "-":
            print(reports.render_json(report))
        else:
            if args.json_path:
                with open(args.json_path, "w", encoding="utf-8") as handle:
                    handle.write(reports.render_json(report) + "\n")
            print(reports.render_text(report), end="")
        return reports.exit_code(report)

    if args.command == "derive" and not args.as_json:
        code = reports.exit_code(report)
        record = report["queries"][0]
        if record["status"] != "ok":
            print(reports.render_text(report), end="")
            return code
        result = record["result"]
        if args.what == "wcl":
            print(result["wcl"])
        else:
            print(reports.render_json(result))
        return code

    return _emit(report, getattr(args, "as_json", False))


if __name__ == "__main__":
    sys.exit(main())
