"""Command-line frontend.

Exit codes: 0 affirmative, 1 negative verdict, 2 usage or input error,
3 engine disagreement.  Reports go to stdout as sorted-key JSON.
"""

from __future__ import annotations

import argparse
import sys

from . import families
from .embed import hubs, is_d_minor, is_h_embedded
from .errors import EngineDisagreement, GraphError
from .formats import dump_json, dumps, export_dot, load_graph, load_json
from .graph import DiGraph, is_acyclic, validate_tdag, validate_two_terminal_general
from .oracle import oracle_d_minor, oracle_enumerate, oracle_is_concurrent, oracle_is_parallel
from .oracle import oracle_is_serial, oracle_width
from .ops import OpSequence, verify_witness
from .sets import is_concurrent, is_parallel, is_serial, longest_path
from .sp import is_series_parallel
from .width import parallel_width, serial_parallel_width, spw_witness

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(report: dict) -> None:
    sys.stdout.write(dumps(report) + "\n")


def _path_dict(p) -> dict:
    return {"vertices": list(p.vertices), "edges": list(p.edges)}


# -- subcommands ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    g = load_graph(args.graph)
    report = {"command": "validate", "acyclic": is_acyclic(g)}
    try:
        t = validate_tdag(g)
        report.update(tdag=True, topological_order=list(t.topo_order))
    except GraphError as exc:
        report.update(tdag=False, reason=f"{type(exc).__name__}: {exc}")
    if args.general:
        report["two_terminal"] = validate_two_terminal_general(g, args.budget)
        ok = report["two_terminal"]
    else:
        ok = report["tdag"]
    _emit(report)
    return EXIT_YES if ok else EXIT_NO


def cmd_info(args) -> int:
    g = validate_tdag(load_graph(args.graph))
    _emit({
        "command": "info",
        "vertices": g.n,
        "edges": g.m,
        "source": g.source,
        "target": g.target,
        "topological_order": list(g.topo_order),
        "hubs": [h.vertex for h in hubs(g)],
        "series_parallel": is_series_parallel(g) is not None,
    })
    return EXIT_YES


def cmd_width(args) -> int:
    g = validate_tdag(load_graph(args.graph))
    wanted = [name for name in ("pw", "spw", "longest") if getattr(args, name)]
    if not wanted:
        wanted = ["pw", "spw", "longest"]
    report = {"command": "width"}
    if args.oracle:
        rep = oracle_width(g)
        report["engine"] = "oracle"
        if "pw" in wanted:
            report["pw"] = rep.pw
        if "spw" in wanted:
            report["spw"] = rep.spw
        if "longest" in wanted:
            report["longest"] = rep.max_serial
        _emit(report)
        return EXIT_YES
    if "pw" in wanted:
        report["pw"] = parallel_width(g)
    if "spw" in wanted:
        report["engine"] = args.engine
        report["spw"] = serial_parallel_width(g, args.engine)
    if "longest" in wanted:
        p = longest_path(g)
        report["longest"] = len(p.edges)
        report["longest_path"] = _path_dict(p)
    if args.witness:
        if "spw" not in report:
            report["spw"] = serial_parallel_width(g, args.engine)
        k = report["spw"]
        if k >= 2:
            w = spw_witness(g, k)
            dump_json(w.to_dict(), args.witness)
            report["witness"] = args.witness
            report["variant"] = w.variant.to_dict()
        else:
            report["witness"] = None
    _emit(report)
    return EXIT_YES


def _parse_edges(text: str) -> list:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--edges expects comma-separated integers, got {text!r}") from None


def cmd_check_set(args) -> int:
    g = validate_tdag(load_graph(args.graph))
    S = _parse_edges(args.edges)
    for eid in S:
        g.edge(eid)
    report = {"command": "check-set", "edges": S, "property": args.property}
    prop = args.property
    if args.oracle:
        report["engine"] = "oracle"
        serial = oracle_is_serial(g, S)
        parallel = oracle_is_parallel(g, S)
        verdict = {
            "serial": serial,
            "parallel": parallel,
            "concurrent": oracle_is_concurrent(g, S),
            "serial-parallel": serial and parallel,
        }[prop]
    elif prop == "serial":
        p = is_serial(g, S)
        verdict = p is not None
        if p is not None:
            report["path"] = _path_dict(p)
    elif prop == "parallel":
        c = is_parallel(g, S)
        verdict = c is not None
        if c is not None:
            report["certificate"] = c.to_dict()
    elif prop == "concurrent":
        verdict = is_concurrent(g, S)
    else:
        p = is_serial(g, S)
        c = is_parallel(g, S) if p is not None else None
        verdict = c is not None
        if verdict:
            report["path"] = _path_dict(p)
            report["certificate"] = c.to_dict()
    report["verdict"] = verdict
    _emit(report)
    return EXIT_YES if verdict else EXIT_NO


def cmd_minor(args) -> int:
    pattern = validate_tdag(load_graph(args.pattern))
    host = validate_tdag(load_graph(args.host))
    report = {"command": "minor"}
    if args.oracle:
        seq = oracle_d_minor(pattern, host)
        report.update(engine="oracle", minor=seq is not None)
    else:
        res = is_d_minor(pattern, host)
        seq = res.op_sequence() if (res and args.certificate) else None
        report.update(engine="embedding", minor=res.found)
        if res.found:
            report["h_embedded"] = is_h_embedded(pattern, host) is not None
            report["expansion_index"] = res.embedding.expansion_index
    if args.certificate and seq is not None:
        dump_json(seq.to_dict(), args.certificate)
        report["certificate"] = args.certificate
    _emit(report)
    return EXIT_YES if report["minor"] else EXIT_NO


def cmd_gen(args) -> int:
    kind = args.family
    nums = args.params
    need = {"braess": 0, "parallel": 1, "gsp": 1, "gsp-variant": 2}[kind]
    if len(nums) != need:
        raise UsageError(f"gen {kind} takes {need} integer argument(s)")
    if kind == "braess":
        g = families.braess()
    elif kind == "parallel":
        g = families.parallel_graph(nums[0])
    elif kind == "gsp":
        g = families.gsp(nums[0])
    else:
        g = families.gsp_variant(nums[0], nums[1])
    if args.dot:
        sys.stdout.write(export_dot(g))
    else:
        sys.stdout.write(dumps(g.to_dict()) + "\n")
    return EXIT_YES


def cmd_reduce_witness(args) -> int:
    data = load_json(args.witness)
    if isinstance(data, dict) and "witness" in data:
        data = data["witness"]  # an SPW witness wraps its op sequence
    seq = OpSequence.from_dict(data)
    check = verify_witness(seq)
    report = {"command": "reduce-witness", "kind": seq.kind, "steps": len(seq.ops), "valid": check.ok}
    if not check.ok:
        report["failed_step"] = check.failed_step
        report["reason"] = check.reason
    if not args.verify:
        try:
            report["result"] = seq.replay()[-1].to_dict()
        except (GraphError, KeyError):
            pass
    _emit(report)
    return EXIT_YES if check.ok else EXIT_NO


def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    rep = oracle_enumerate(g)
    out = rep.to_dict()
    out["command"] = "oracle enumerate"
    _emit(out)
    return EXIT_YES


def cmd_dot(args) -> int:
    g: DiGraph = load_graph(args.graph)
    sys.stdout.write(export_dot(g))
    return EXIT_YES


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dminor", description="Directed minors and widths of 2-terminal DAGs.")
    p.add_argument("--jobs", type=int, default=1, help="cap on internal parallelism (work runs serially)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the TDAG (or general 2-terminal) property")
    s.add_argument("graph")
    s.add_argument("--general", action="store_true", help="budgeted check for possibly cyclic graphs")
    s.add_argument("--budget", type=int, default=1_000_000)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("info", help="summary of a TDAG")
    s.add_argument("graph")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("width", help="parallel width, serial-parallel width, longest path")
    s.add_argument("graph")
    s.add_argument("--pw", action="store_true")
    s.add_argument("--spw", action="store_true")
    s.add_argument("--longest", action="store_true")
    s.add_argument("--engine", choices=("a", "b", "both"), default="both")
    s.add_argument("--witness", metavar="OUT", help="write a G_SP(k) minor witness as JSON")
    s.add_argument("--oracle", action="store_true", help="use brute-force enumeration")
    s.set_defaults(func=cmd_width)

    s = sub.add_parser("check-set", help="classify an edge set")
    s.add_argument("graph")
    s.add_argument("--edges", required=True, help="comma-separated edge ids")
    s.add_argument("--property", required=True,
                   choices=("serial", "parallel", "concurrent", "serial-parallel"))
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_check_set)

    s = sub.add_parser("minor", help="is PATTERN a d-minor of HOST")
    s.add_argument("pattern")
    s.add_argument("host")
    s.add_argument("--certificate", metavar="OUT", help="write the d-minor op sequence as JSON")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("gen", help="emit a family member")
    s.add_argument("family", choices=("braess", "parallel", "gsp", "gsp-variant"))
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("reduce-witness", help="replay an op-sequence witness")
    s.add_argument("witness")
    s.add_argument("--verify", action="store_true", help="only report validity")
    s.set_defaults(func=cmd_reduce_witness)

    s = sub.add_parser("oracle", help="brute-force reports")
    osub = s.add_subparsers(dest="oracle_command", required=True)
    o = osub.add_parser("enumerate", help="all s-t paths and minimal cuts")
    o.add_argument("graph")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("dot", help="render as Graphviz DOT")
    s.add_argument("graph")
    s.set_defaults(func=cmd_dot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_YES if exc.code == 0 else EXIT_INPUT
    if args.jobs < 1:
        print("dminor: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except EngineDisagreement as exc:
        print(f"dminor: engines disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (GraphError, UsageError, KeyError) as exc:
        print(f"dminor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
