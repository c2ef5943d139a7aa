"""Command-line front end: ``lichsharp <command> ...``.

Exit status: 0 when everything passes, 1 when a verification fails, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import families
from .corpus import Caps, classification_sweeps, format_rows, reproduce_tables, rows_csv, rows_json, sweep_corpus
from .exact import fmt
from .graph import Graph, GraphError, diameter, girth, line_graph
from .graph6 import Graph6Error, encode, read_all
from .regularity import amply_params, intersection_array, is_terwilliger, regular_degree
from .spectra import adjacency_spectrum
from .transport import OptimalityError, curvature_report, default_workers, lly_curvature
from .verify import check_bounds, check_line_graph_nonpositive, classify_artg, sharpness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_graphs(path: str) -> list[Graph]:
    if path == "-":
        graphs = list(read_all(sys.stdin))
    else:
        p = Path(path)
        if not p.is_file():
            raise UsageError(f"no such file: {path}")
        with p.open() as fh:
            graphs = list(read_all(fh))
    if not graphs:
        raise UsageError(f"{path}: no graph6 records")
    return graphs


def _read_one(path: str) -> Graph:
    graphs = _read_graphs(path)
    if len(graphs) != 1:
        raise UsageError(f"{path}: expected one graph, found {len(graphs)}")
    return graphs[0]


def _emit(text: str, out: TextIO) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_gen(args, out: TextIO) -> int:
    try:
        spec = families.FamilySpec(args.family, tuple(args.params))
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    g = families.generate(spec)
    if args.line_graph:
        g = line_graph(g)
    line = encode(g) + "\n"
    if args.output:
        Path(args.output).write_text(line)
    else:
        out.write(line)
    return EXIT_OK


def analysis_dict(g: Graph) -> dict:
    connected = g.is_connected()
    info: dict = {
        "n": g.n,
        "m": g.m,
        "connected": connected,
        "regular_degree": regular_degree(g),
        "girth": girth(g),
    }
    if not connected:
        info.update(diameter=None, amply_params=None, terwilliger=None, intersection_array=None)
        return info
    info["diameter"] = diameter(g) if g.n else 0
    params = amply_params(g)
    info["amply_params"] = list(params.as_tuple()) if params else {"rejected": params.reason,
                                                                   "witness": list(params.witness)}
    if g.n and info["diameter"] >= 2:
        terw = is_terwilliger(g)
        info["terwilliger"] = {"beta": terw} if terw else {"rejected": terw.reason, "witness": list(terw.witness)}
    else:
        info["terwilliger"] = None
    ia = intersection_array(g) if g.n else None
    if ia:
        info["intersection_array"] = {"b": list(ia.b), "c": list(ia.c)}
    else:
        info["intersection_array"] = None if ia is None else {"rejected": ia.reason, "witness": list(ia.witness)}
    return info


def cmd_analyze(args, out: TextIO) -> int:
    _emit(json.dumps(analysis_dict(_read_one(args.input)), indent=2), out)
    return EXIT_OK


def cmd_curvature(args, out: TextIO) -> int:
    g = _read_one(args.input)
    if args.edge:
        u, v = args.edge
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise UsageError(f"({u}, {v}) is not an edge")
        kappa, _ = lly_curvature(g, u, v)
        _emit(fmt(kappa), out)
        return EXIT_OK
    report = curvature_report(g, workers=args.threads)
    if args.format == "json":
        _emit(report.to_json(), out)
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        for (u, v), k in sorted(report.kappa.items()):
            out.write(f"{u} {v} {fmt(k)}\n")
        out.write(f"min {fmt(report.kappa_min)}\nmax {fmt(report.kappa_max)}\n")
    return EXIT_OK


def cmd_spectrum(args, out: TextIO) -> int:
    _emit(adjacency_spectrum(_read_one(args.input)).to_json(), out)
    return EXIT_OK


def cmd_sharpness(args, out: TextIO) -> int:
    verdict = sharpness(_read_one(args.input), workers=args.threads)
    _emit(verdict.to_json(), out)
    return EXIT_OK


def _parse_graph6_rows(items: Sequence[str]) -> dict[str, Path]:
    rows = {}
    for item in items:
        name, sep, path = item.partition("=")
        if not sep:
            raise UsageError(f"--graph6 expects NAME=PATH, got {item!r}")
        rows[name] = Path(path)
    return rows


def cmd_verify_tables(args, out: TextIO) -> int:
    try:
        caps = Caps.parse(args.caps or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = reproduce_tables(caps, _parse_graph6_rows(args.graph6), workers=args.threads)
    writer = {"text": format_rows, "json": rows_json, "csv": rows_csv}[args.format]
    _emit(writer(rows), out)
    return EXIT_OK if all(r.match for r in rows) else EXIT_FAIL


def cmd_verify_lemmas(args, out: TextIO) -> int:
    folder = Path(args.directory)
    if not folder.is_dir():
        raise UsageError(f"not a directory: {folder}")
    status = EXIT_OK
    report = []
    for path in sorted(p for p in folder.iterdir() if p.is_file()):
        with path.open() as fh:
            graphs = list(read_all(fh))
        for idx, g in enumerate(graphs):
            item = {"file": path.name, "index": idx}
            if not g.is_connected() or g.m == 0:
                item["skipped"] = "disconnected or edgeless"
                report.append(item)
                continue
            bounds = check_bounds(g)
            item["clauses"] = [{"name": c.name, "status": c.status, "detail": c.detail,
                                "witness": list(c.witness)} for c in bounds.clauses]
            lg = check_line_graph_nonpositive(g, workers=args.threads)
            item["line_graph_nonpositive_edge"] = (
                {"applicable": False, "reason": lg.reason} if not lg.applicable
                else {"applicable": True, "kappa_min": fmt(lg.kappa_min), "edge": list(lg.edge), "holds": lg.holds}
            )
            if not bounds.ok or lg.holds is False:
                status = EXIT_FAIL
            report.append(item)
    _emit(json.dumps(report, indent=2), out)
    return status


def cmd_verify_classify(args, out: TextIO, err: TextIO) -> int:
    status = EXIT_OK
    verdicts = []
    for g in _read_graphs(args.input):
        v = classify_artg(g, workers=args.threads)
        verdicts.append(v.to_dict())
        if v.counterexample:
            if args.warn:
                err.write(f"warning: {v.reason}\n")
            else:
                status = EXIT_FAIL
    _emit(json.dumps(verdicts, indent=2), out)
    return status


def cmd_verify_sweeps(args, out: TextIO) -> int:
    try:
        caps = Caps.parse(args.caps or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    bad, stats = classification_sweeps(sweep_corpus(caps), workers=args.threads)
    _emit(json.dumps({
        "violations": [vars(b) for b in bad],
        "distance_regular": stats["drg"],
        "strongly_regular": stats["srg"],
        "beta_one": stats["beta_one"],
        "positive_terwilliger": stats["positive_artg"],
    }, indent=2), out)
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lichsharp", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $LICHSHARP_THREADS or CPU count)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a family member as graph6")
    p.add_argument("family", choices=sorted(families.FAMILY_ARITY))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--line-graph", action="store_true", help="emit the line graph instead")
    p.set_defaults(run=cmd_gen)

    for name, fn, text in (
        ("analyze", cmd_analyze, "regularity, diameter, girth and intersection array"),
        ("spectrum", cmd_spectrum, "adjacency and normalised Laplacian spectrum"),
        ("sharpness", cmd_sharpness, "compare lambda_1 with the minimum curvature"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("input", help="graph6 file or - for stdin")
        p.set_defaults(run=fn)

    p = sub.add_parser("curvature", help="exact edge curvature")
    p.add_argument("input")
    p.add_argument("--edge", nargs=2, type=int, metavar=("U", "V"))
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(run=cmd_curvature)

    p = sub.add_parser("verify", help="verification suites")
    vsub = p.add_subparsers(dest="suite", required=True)
    t = vsub.add_parser("tables", help="reproduce the two appendix tables")
    t.add_argument("--caps", help="comma-separated overrides, e.g. cp=4,hamming_vertices=64")
    t.add_argument("--graph6", action="append", default=[], metavar="NAME=PATH",
                   help="extra rows from graph6 files (conway_smith, doro)")
    t.add_argument("--format", choices=("text", "json", "csv"), default="text")
    t.set_defaults(run=cmd_verify_tables)
    t = vsub.add_parser("lemmas", help="inequality checks on every graph6 file in a directory")
    t.add_argument("directory")
    t.set_defaults(run=cmd_verify_lemmas)
    t = vsub.add_parser("classify", help="positive-curvature amply regular Terwilliger classification")
    t.add_argument("input")
    t.add_argument("--warn", action="store_true", help="report counterexample candidates as warnings")
    t.set_defaults(run=cmd_verify_classify, wants_err=True)
    t = vsub.add_parser("sweeps", help="classification sweeps over the generated corpus")
    t.add_argument("--caps")
    t.set_defaults(run=cmd_verify_sweeps)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = default_workers()
    if args.threads < 1:
        err.write("error: --threads must be positive\n")
        return EXIT_USAGE
    try:
        if getattr(args, "wants_err", False):
            return args.run(args, out, err)
        return args.run(args, out)
    except (UsageError, Graph6Error, GraphError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OptimalityError as exc:
        err.write(f"internal check failed: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
