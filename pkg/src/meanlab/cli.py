"""Command-line front end.

Subcommands:

    verify      run law checks against a mean
    extract     build the generator table, check monotonicity/gaps,
                optionally cross-check path independence
    reconstruct extract + interpolate + replay against the original mean
    falsify     produce an impossibility witness at a pair of points
    catalog     list built-in means

Means are selected with --mean catalog:NAME (plus repeated --param k=v)
or --mean "expr:SOURCE".  Reports serialize to JSON with fixed key order
and 17-significant-digit numbers, so equal invocations produce
byte-identical output.  Exit codes: 0 all requested checks passed,
1 a check failed, 2 usage or evaluation error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__
from .core import (
    ClosureError,
    DyadicRational,
    Interval,
    MeanLabError,
    ToleranceConfig,
    TwoPlaceFunction,
)
from .extract import (
    ConsistencyReport,
    GapReport,
    GeneratorTable,
    MAX_CROSS_CHECK_DEPTH,
    ReconstructionReport,
    cross_check_consistency,
    extract_generator,
    gap_analysis,
    interpolate_generator,
    reconstruct_and_compare,
    table_monotone_check,
    table_to_csv,
)
from .expr import EvaluationError, ParseError, mean_from_expression
from .means import catalog_describe, catalog_get
from .verify import (
    ImpossibilityReport,
    PropertyReport,
    Witness,
    check_associative,
    check_bisymmetric,
    check_cancellative,
    check_partial_strict_increase,
    check_reflexive,
    check_strict_mean,
    check_symmetric,
    find_neutral_element,
    impossibility_witness,
)

__all__ = ["RunReport", "run_command", "emit_report", "main"]

_CHECKS = {
    "refl": ("reflexive", check_reflexive),
    "sym": ("symmetric", check_symmetric),
    "bisym": ("bisymmetric", check_bisymmetric),
    "assoc": ("associative", check_associative),
    "strict-inc": ("partial_strict_increase", check_partial_strict_increase),
    "strict-mean": ("strict_mean", check_strict_mean),
    "cancel": ("cancellative", check_cancellative),
    "neutral": ("neutral_element", None),  # handled specially
}


@dataclass
class RunReport:
    version: str
    command: list[str]
    config: ToleranceConfig
    results: list[Any]
    verdict: str
    tables: list[GeneratorTable] = field(default_factory=list)
    extras: dict[int, dict[str, Any]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# deterministic serialization

def _fmt_float(v: float) -> str:
    s = format(v, ".17g")
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def _json(value: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {_json(k)}: {_json(v, indent + 1)}' for k, v in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(f"{pad}  {_json(v, indent + 1)}" for v in value)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _witness_doc(w: Witness | None) -> Any:
    if w is None:
        return None
    return {
        "points": list(w.points),
        "lhs": w.lhs,
        "rhs": w.rhs,
        "detail": w.detail,
    }


def _dyadic_doc(d: DyadicRational | None) -> Any:
    if d is None:
        return None
    return {"num": d.num, "exp": d.exp, "t": d.value}


def _result_doc(result: Any, extra: dict[str, Any]) -> dict[str, Any]:
    if isinstance(result, PropertyReport):
        doc: dict[str, Any] = {
            "kind": "property",
            "property": result.property,
            "passed": result.passed,
            "max_violation": result.max_violation,
            "samples_used": result.samples_used,
            "witness": _witness_doc(result.witness),
        }
    elif isinstance(result, ConsistencyReport):
        doc = {
            "kind": "consistency",
            "depth": result.depth,
            "max_discrepancy": result.max_discrepancy,
            "worst_target": _dyadic_doc(result.worst_target),
            "paths_checked": result.paths_checked,
        }
    elif isinstance(result, GapReport):
        doc = {
            "kind": "gap",
            "depth": result.depth,
            "max_gap": result.max_gap,
            "gap_location": [_dyadic_doc(result.gap_location[0]),
                             _dyadic_doc(result.gap_location[1])],
            "jump_detected": result.jump_detected,
            "X": result.X,
            "Y": result.Y,
            "threshold": result.threshold,
        }
    elif isinstance(result, ReconstructionReport):
        doc = {
            "kind": "reconstruction",
            "sup_error": result.sup_error,
            "argmax": list(result.argmax),
            "grid_n": result.grid_n,
            "depth": result.depth,
        }
    elif isinstance(result, ImpossibilityReport):
        doc = {
            "kind": "falsification",
            "refutation": result.kind,
            "pair": list(result.pair),
            "witness": _witness_doc(result.witness),
            "description": result.description,
        }
    else:
        raise TypeError(f"cannot serialize result {type(result).__name__}")
    doc.update(extra)
    return doc


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    """Serialize a run report; fmt is 'json' or 'csv-tables'."""
    if fmt == "json":
        doc = {
            "version": report.version,
            "command": list(report.command),
            "config": {
                "eq_tol": report.config.eq_tol,
                "strict_margin": report.config.strict_margin,
                "grid_n": report.config.grid_n,
                "samples": report.config.samples,
                "seed": report.config.seed,
            },
            "results": [
                _result_doc(r, report.extras.get(i, {}))
                for i, r in enumerate(report.results)
            ],
            "verdict": report.verdict,
        }
        return (_json(doc) + "\n").encode("utf-8")
    if fmt == "csv-tables":
        if not report.tables:
            raise ValueError("report carries no generator tables")
        return "".join(table_to_csv(t) for t in report.tables).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


# ---------------------------------------------------------------------------
# argument handling

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanlab",
        description="construct, verify and reverse-engineer two-place means",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mean", required=True,
                       help="catalog:NAME or expr:SOURCE")
        p.add_argument("--param", action="append", default=[],
                       metavar="NAME=VALUE", help="catalog mean parameter")
        p.add_argument("--interval", required=True, metavar="A,B")
        p.add_argument("--tol", type=float, default=1e-9,
                       help="absolute equality tolerance")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, metavar="FILE.json",
                       help="write the JSON report here (default stdout)")

    p = sub.add_parser("verify", help="run law checks")
    common(p)
    p.add_argument("--checks", default=",".join(_CHECKS),
                   help="comma list from: " + ",".join(_CHECKS))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--grid", type=int, default=21)

    p = sub.add_parser("extract", help="extract the generator table")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cross-check", action="store_true",
                   help="verify path independence of the recursion")
    p.add_argument("--jump-factor", type=float, default=4.0)
    p.add_argument("--table", default=None, metavar="FILE.csv",
                   help="write the generator table here")

    p = sub.add_parser("reconstruct",
                       help="extract, interpolate and replay against the mean")
    common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--grid", type=int, default=101)

    p = sub.add_parser("falsify",
                       help="impossibility witness at a pair of points")
    common(p)
    p.add_argument("--pair", required=True, metavar="A0,B0")

    sub.add_parser("catalog", help="list built-in means")
    return parser


def _parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected A,B, got {text!r}")
    return Interval(float(parts[0]), float(parts[1]))


def _parse_pair(text: str, iv: Interval) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected A0,B0, got {text!r}")
    a, b = float(parts[0]), float(parts[1])
    if not (iv.contains(a) and iv.contains(b) and a < b):
        raise ValueError(f"need a < b inside {iv}, got {a!r}, {b!r}")
    return a, b


def _build_mean(args: argparse.Namespace, iv: Interval) -> TwoPlaceFunction:
    spec = args.mean
    if spec.startswith("catalog:"):
        params = {}
        for item in args.param:
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"--param expects NAME=VALUE, got {item!r}")
            params[key.strip()] = float(value)
        return catalog_get(spec[len("catalog:"):], iv, params)
    if spec.startswith("expr:"):
        return mean_from_expression(spec[len("expr:"):], iv)
    raise ValueError(f"--mean must start with catalog: or expr:, got {spec!r}")


def _check_closure(F: TwoPlaceFunction, n: int = 21) -> None:
    witness = F.closure_witness(n)
    if witness is not None:
        x, y, v = witness
        raise ClosureError(
            f"{F.label} does not close on {F.domain}: F({x!r}, {y!r}) = {v!r}"
        )


def _write(path: str | None, data: bytes) -> None:
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(path, "wb") as fh:
            fh.write(data)


# ---------------------------------------------------------------------------
# subcommand handlers

def _handle_verify(args, argv) -> tuple[int, RunReport]:
    cfg = ToleranceConfig(eq_tol=args.tol, grid_n=args.grid,
                          samples=args.samples, seed=args.seed)
    iv = _parse_interval(args.interval)
    F = _build_mean(args, iv)
    _check_closure(F, cfg.grid_n)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    report = RunReport(__version__, argv, cfg, [], "")
    failures = []
    for name in names:
        if name not in _CHECKS:
            raise ValueError(
                f"unknown check {name!r}; known: {', '.join(_CHECKS)}"
            )
        prop, runner = _CHECKS[name]
        if name == "neutral":
            e, pr = find_neutral_element(F, cfg)
            if e is not None:
                report.extras[len(report.results)] = {"neutral": e}
            report.results.append(pr)
        else:
            pr = runner(F, cfg)
            report.results.append(pr)
        if not pr.passed:
            failures.append(prop)
    report.verdict = "pass" if not failures else "fail: " + ", ".join(failures)
    return (0 if not failures else 1), report


def _handle_extract(args, argv) -> tuple[int, RunReport]:
    cfg = ToleranceConfig(eq_tol=args.tol, seed=args.seed)
    iv = _parse_interval(args.interval)
    F = _build_mean(args, iv)
    if args.cross_check and not 1 <= args.depth <= MAX_CROSS_CHECK_DEPTH:
        raise ValueError(
            f"--cross-check supports depth 1..{MAX_CROSS_CHECK_DEPTH}"
        )
    _check_closure(F)
    table = extract_generator(F, args.depth)
    mono = table_monotone_check(table, cfg)
    report = RunReport(__version__, argv, cfg, [mono], "", tables=[table])
    problems = []
    if not mono.passed:
        problems.append("table not strictly monotone")
    if mono.passed:
        gap = gap_analysis(table, args.jump_factor)
        report.results.append(gap)
        if gap.jump_detected:
            problems.append("jump detected in the generator")
    if args.cross_check:
        cons = cross_check_consistency(F, args.depth, cfg)
        report.results.append(cons)
        if cons.max_discrepancy > cfg.eq_tol:
            problems.append(
                f"path dependence: discrepancy {cons.max_discrepancy:.3g}"
            )
    if args.table is not None:
        _write(args.table, emit_report(report, "csv-tables"))
    if not mono.passed:
        report.verdict = (
            "fail: table not strictly monotone; gap analysis skipped "
            "(hypotheses unverified)"
        )
    elif problems:
        report.verdict = "fail: " + "; ".join(problems)
    else:
        report.verdict = "pass"
    return (0 if not problems else 1), report


def _handle_reconstruct(args, argv) -> tuple[int, RunReport]:
    cfg = ToleranceConfig(eq_tol=args.tol, grid_n=args.grid, seed=args.seed)
    iv = _parse_interval(args.interval)
    F = _build_mean(args, iv)
    _check_closure(F)
    table = extract_generator(F, args.depth)
    mono = table_monotone_check(table, cfg)
    report = RunReport(__version__, argv, cfg, [mono], "", tables=[table])
    if not mono.passed:
        report.verdict = (
            "fail: table not strictly monotone; reconstruction skipped "
            "(hypotheses unverified)"
        )
        return 1, report
    gen = interpolate_generator(table)
    rec = reconstruct_and_compare(F, gen, cfg)
    report.results.append(rec)
    report.verdict = f"sup_error {_fmt_float(rec.sup_error)} at depth {args.depth}"
    return 0, report


def _handle_falsify(args, argv) -> tuple[int, RunReport]:
    cfg = ToleranceConfig(eq_tol=args.tol, seed=args.seed)
    iv = _parse_interval(args.interval)
    F = _build_mean(args, iv)
    a, b = _parse_pair(args.pair, iv)
    rep = impossibility_witness(F, a, b, cfg)
    report = RunReport(__version__, argv, cfg, [rep], rep.description)
    return (0 if rep.found else 1), report


def _handle_catalog() -> int:
    for name, params, note in catalog_describe():
        suffix = f"({params})" if params else ""
        sys.stdout.write(f"{name}{suffix}: {note}\n")
    return 0


def run_command(argv: Sequence[str]) -> tuple[int, RunReport | None]:
    """Execute one CLI invocation; returns (exit code, report or None).

    Exit codes: 0 all requested checks passed, 1 a check failed,
    2 usage or evaluation error.
    """
    argv = list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    if args.subcommand == "catalog":
        return _handle_catalog(), None
    try:
        if args.subcommand == "verify":
            code, report = _handle_verify(args, argv)
        elif args.subcommand == "extract":
            code, report = _handle_extract(args, argv)
        elif args.subcommand == "reconstruct":
            code, report = _handle_reconstruct(args, argv)
        else:
            code, report = _handle_falsify(args, argv)
    except (ValueError, ParseError, EvaluationError, ClosureError,
            MeanLabError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2, None
    payload = emit_report(report, "json")
    _write(args.out, payload)
    if args.out is not None:
        sys.stdout.write(f"{report.verdict}\n")
    return code, report


def main() -> None:
    sys.exit(run_command(sys.argv[1:])[0])


if __name__ == "__main__":
    main()
