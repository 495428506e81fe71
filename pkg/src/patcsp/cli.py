"""Command line: ``patcsp classify|solve|occurs|generate``.

Exit codes: ``classify`` 0 tractable, 1 intractable; ``occurs`` 0 when the
pattern is absent, 1 when present; ``solve`` 0 on success, 1 when
``--oracle`` disagrees; 2 for any error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import generators, io
from .library import canonical_name, make_named
from .model import ModelError, is_solution
from .occurrence import occurs
from .reduction import UnsupportedPattern, classify
from .solvers import BudgetExceeded, PatternPresent, StructureViolation, oracle_solve, solve


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    verdict: str = ""
    timings: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


class CliError(Exception):
    pass


def _digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit(args, report: RunReport, lines):
    if args.json:
        print(report.to_json())
    else:
        for line in lines:
            print(line)


def cmd_classify(args) -> int:
    pattern = io.load_pattern(args.pattern)
    report = RunReport("classify", {"pattern": _digest(args.pattern)})
    t = time.perf_counter()
    result = classify(pattern)
    report.timings["classify_s"] = round(time.perf_counter() - t, 6)
    report.verdict = str(result)
    lines = [str(result)]
    if result.tractable:
        steps = [list(s) for s in result.trace.steps]
        report.trace = {"steps": steps, "target": result.target,
                        "point_map": dict(result.trace.witness.point_map)}
        for s in steps:
            lines.append("  " + " ".join(map(str, s)))
        lines.append(f"  occurs in {result.target}: {dict(result.trace.witness.point_map)}")
    else:
        report.details["reason"] = result.reason
    if args.dot:
        report.details["dot"] = io.pattern_to_dot(pattern)
        lines.append(report.details["dot"].rstrip())
    _emit(args, report, lines)
    return 0 if result.tractable else 1


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    name = canonical_name(args.cls)
    report = RunReport("solve", {"instance": _digest(args.instance)})
    report.details["class"] = name
    t = time.perf_counter()
    result = solve(inst, name, check_free=args.check_free)
    report.timings["solve_s"] = round(time.perf_counter() - t, 6)
    report.verdict = "SAT" if result.sat else "UNSAT"
    report.trace = dict(Counter(type(e).__name__ for e in result.trace))
    lines = [report.verdict]
    if result.sat:
        assert is_solution(inst, result.assignment)
        report.details["assignment"] = result.assignment
        lines += [f"  {v} = {result.assignment[v]}" for v in inst.variables]
    code = 0
    if args.oracle:
        t = time.perf_counter()
        ref = oracle_solve(inst)
        report.timings["oracle_s"] = round(time.perf_counter() - t, 6)
        report.details["oracle"] = "SAT" if ref.sat else "UNSAT"
        if ref.sat != result.sat:
            lines.append(f"oracle disagrees: {report.details['oracle']}")
            code = 1
        else:
            lines.append("oracle agrees")
    _emit(args, report, lines)
    return code


def cmd_occurs(args) -> int:
    pattern = io.load_pattern(args.pattern)
    inst = io.load_instance(args.instance)
    report = RunReport("occurs", {"pattern": _digest(args.pattern), "instance": _digest(args.instance)})
    t = time.perf_counter()
    w = occurs(pattern, inst)
    report.timings["occurs_s"] = round(time.perf_counter() - t, 6)
    if w is None:
        report.verdict = "none"
        _emit(args, report, ["none"])
        return 0
    report.verdict = "occurs"
    report.details = {"var_map": dict(w.var_map), "point_map": dict(w.point_map)}
    _emit(args, report, [f"{p} -> {x}" for p, x in sorted(w.point_map.items())])
    return 1


def cmd_generate(args) -> int:
    prov = {"kind": args.kind, "seed": args.seed}
    if args.kind == "sat1":
        _need(args, "cnf")
        formula = generators.read_dimacs(Path(args.cnf).read_text())
        inst = generators.sat1_to_csp(formula)
        prov["source"] = _digest(args.cnf)
    elif args.kind == "z-free":
        _need(args, "from_graph")
        graph = generators.read_edge_list(Path(args.from_graph).read_text())
        inst = generators.coloring_to_z_free(graph)
        prov["source"] = _digest(args.from_graph)
    elif args.kind == "two-v-free":
        _need(args, "from_instance")
        inst = generators.csp_to_2v_free(io.load_instance(args.from_instance))
        prov["source"] = _digest(args.from_instance)
    else:
        _need(args, "cls")
        name = canonical_name(args.cls)
        prov.update({"class": name, "n": args.n, "d": args.d, "density": args.density,
                     "tightness": args.tightness, "family": args.family})
        inst = generators.random_pattern_free(name, args.n, args.d, args.density, args.seed,
                                              args.tightness, args.family)
    text = io.dump_json(io.instance_to_dict(inst, provenance=prov), args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def _need(args, attr):
    if getattr(args, attr) is None:
        raise CliError(f"generate {args.kind} needs --{attr.replace('_', '-')}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="patcsp", description="Forbidden-pattern binary CSP toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a pattern on at most two constraints")
    p.add_argument("pattern")
    p.add_argument("--dot", action="store_true", help="also print the pattern as Graphviz")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", parents=[common], help="solve an instance free of a tractable pattern")
    p.add_argument("instance")
    p.add_argument("--class", dest="cls", required=True,
                   help="OneI, TwoI or T1..T5 (aliases 1I, 2I)")
    p.add_argument("--check-free", action="store_true", help="verify the pattern is absent first")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("occurs", parents=[common], help="look for a pattern in an instance")
    p.add_argument("pattern")
    p.add_argument("instance")
    p.set_defaults(func=cmd_occurs)

    p = sub.add_parser("generate", parents=[common], help="write a generated instance as JSON")
    p.add_argument("kind", choices=["sat1", "z-free", "two-v-free", "random-free"])
    p.add_argument("--cnf", help="DIMACS CNF file (sat1)")
    p.add_argument("--from-graph", help="edge-list file (z-free)")
    p.add_argument("--from-instance", help="instance JSON file (two-v-free)")
    p.add_argument("--class", dest="cls", help="pattern to avoid (random-free)")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--tightness", type=float, default=0.5)
    p.add_argument("--family", choices=["uniform", "structured"], default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, UnsupportedPattern, PatternPresent, StructureViolation,
            BudgetExceeded, generators.GenerationBudgetExceeded, CliError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
