"""Command-line interface: compile, solve, and stats.

Exit codes: 0 success, 1 parse error, 2 I/O error, 3 unbounded variable.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from .decompose import TcnNetwork, TcnOp, dump_tcn, tcn
from .errors import ModelParseError, UnboundedVariable
from .frontend import parse_model
from .intervals import itv
from .model import SourceNetwork
from .preprocess import preprocess
from .search import solve_model

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_IO = 2
EXIT_UNBOUNDED = 3

#: Histogram rows: one per plain operator, and eq/le split by the result
#: variable's domain (free [0,1], fixed 0, fixed 1).
HIST_ROWS = (
    "add", "mul", "div", "mod", "min", "max",
    "eq_free", "eq_fixed0", "eq_fixed1",
    "le_free", "le_fixed0", "le_fixed1",
)


@dataclass
class NetworkStats:
    variables: int
    constraints: int
    histogram: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def of_source(cls, src: SourceNetwork) -> "NetworkStats":
        return cls(len(src.domains), len(src.constraints), {})

    @classmethod
    def of_tcn(cls, net: TcnNetwork) -> "NetworkStats":
        hist = {row: 0 for row in HIST_ROWS}
        for c in net.constraints:
            tok = c.op.token
            if c.op in (TcnOp.EQ, TcnOp.LE):
                dx = net.domains[c.x]
                if dx == itv(0, 0):
                    tok += "_fixed0"
                elif dx == itv(1, 1):
                    tok += "_fixed1"
                else:
                    tok += "_free"
            hist[tok] += 1
        return cls(len(net.domains), len(net.constraints), hist)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _parse(text: str) -> SourceNetwork:
    try:
        return parse_model(text)
    except ModelParseError as e:
        for diag in e.diagnostics:
            print(str(diag), file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_compile(args) -> int:
    src = _parse(_read(args.model))
    net = tcn(src)
    if args.preprocess:
        net, _, _ = preprocess(net)
    sys.stdout.write(dump_tcn(net))
    return EXIT_OK


def cmd_solve(args) -> int:
    src = _parse(_read(args.model))
    try:
        res, _, _ = solve_model(
            src,
            use_preprocess=not args.no_preprocess,
            all_solutions=args.all_solutions,
            timeout=args.timeout,
        )
    except UnboundedVariable as e:
        print(f"UnboundedVariable: {e}", file=sys.stderr)
        return EXIT_UNBOUNDED
    order = list(src.domains)
    out = sys.stdout
    for k, sol in enumerate(res.solutions):
        if k:
            out.write("----------\n")
        for x in order:
            out.write(f"{x} = {sol[x]};\n")
    if res.status in ("OPTIMAL", "UNSAT"):
        out.write("==========\n")
    out.write(f"status: {res.status}\n")
    if res.objective is not None:
        out.write(f"objective: {res.objective}\n")
    if args.stats:
        s = res.stats
        out.write(
            f"nodes: {s.nodes}\nfails: {s.fails}\n"
            f"peak_depth: {s.peak_depth}\ntime: {s.elapsed:.3f}\n"
        )
    return EXIT_OK


def _stats_record(path: str) -> dict:
    src = _parse(_read(path))
    net = tcn(src)
    pre, _, _ = preprocess(net)
    s0 = NetworkStats.of_source(src)
    s1 = NetworkStats.of_tcn(net)
    s2 = NetworkStats.of_tcn(pre)

    def ratio(a, b):
        return round(a / b, 4) if b else None

    return {
        "model": path,
        "source": {"variables": s0.variables, "constraints": s0.constraints},
        "decomposed": {
            "variables": s1.variables,
            "constraints": s1.constraints,
            "histogram": s1.histogram,
        },
        "preprocessed": {
            "variables": s2.variables,
            "constraints": s2.constraints,
            "histogram": s2.histogram,
        },
        "growth": {
            "decomposed_vars": ratio(s1.variables, s0.variables),
            "decomposed_cons": ratio(s1.constraints, s0.constraints),
            "preprocessed_vars": ratio(s2.variables, s0.variables),
            "preprocessed_cons": ratio(s2.constraints, s0.constraints),
        },
    }


def _aggregate(records: List[dict]) -> dict:
    table = {}
    for key in (
        "decomposed_vars", "decomposed_cons",
        "preprocessed_vars", "preprocessed_cons",
    ):
        xs = [r["growth"][key] for r in records if r["growth"][key] is not None]
        if not xs:
            table[key] = None
            continue
        table[key] = {
            "average": round(statistics.mean(xs), 4),
            "median": round(statistics.median(xs), 4),
            "stddev": round(statistics.pstdev(xs), 4),
            "max": round(max(xs), 4),
        }
    return {"models": len(records), "growth": table}


def cmd_stats(args) -> int:
    p = Path(args.model)
    if p.is_dir():
        files = sorted(str(f) for f in p.glob("*.mod"))
        if not files:
            print(f"no .mod files in {p}", file=sys.stderr)
            raise SystemExit(EXIT_IO)
        records = [_stats_record(f) for f in files]
        report = {"batch": _aggregate(records), "records": records}
    else:
        report = _stats_record(args.model)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tcnsolve",
        description="Compile, preprocess, and solve integer constraint models.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="decompose a model to a ternary network")
    c.add_argument("model")
    c.add_argument("--preprocess", action="store_true")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("solve", help="search a model for solutions")
    s.add_argument("model")
    s.add_argument("--all-solutions", action="store_true")
    s.add_argument("--no-preprocess", action="store_true")
    s.add_argument("--timeout", type=float, default=None)
    s.add_argument("--stats", action="store_true")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("stats", help="size and operator statistics")
    t.add_argument("model", help="a model file, or a directory of .mod files")
    t.set_defaults(func=cmd_stats)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
