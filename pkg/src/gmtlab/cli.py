"""The ``gmtlab`` command.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from . import __version__
from .algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    multiply,
    parse_matrix_literal,
    projective_distance,
)
from .catalog import (
    GROUP_NAMES,
    catalog_group,
    catalog_matrix,
    export_group,
    figure_eight_generators,
    gamma_gmt_upper_bound,
    solve_conjugator,
)
from .classification import classify, is_involution
from .errors import (
    AmbiguousClassification,
    AmbiguousSolution,
    BadIndex,
    GmtLabError,
    NoSolution,
    SingularMatrix,
    UnboundSymbol,
    UnknownLabel,
    UnknownName,
)
from .gmt import InequalityStatus, gmt_inequality_check, gmt_value, lemma3_case_residuals
from .verify import SUITES, run_all, run_suite
from .words import Word, evaluate_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOL_ENV = "GMT_TOL"
MAX_TABLE_N = 10_000


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: Any = None
    residuals: list = field(default_factory=list)
    verdict: str = "pass"  # "pass", "fail" or "not-applicable"
    tolerance: Tolerance = DEFAULT_TOL

    def add_residual(self, name: str, value: float, bound: float) -> None:
        self.residuals.append({"name": name, "value": float(value), "bound": float(bound), "passed": value <= bound})

    def to_dict(self) -> dict:
        return _plain(
            {
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "residuals": self.residuals,
                "verdict": self.verdict,
                "tolerance": self.tolerance.to_dict(),
            }
        )


def _plain(obj):
    """Convert complex numbers, matrices and enums into JSON-ready values."""
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, ProjectiveMatrix):
        return obj.to_literal()
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(_plain(k)): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float):
        # + 0.0 folds -0.0 into 0.0
        return obj + 0.0 if math.isfinite(obj) else repr(obj)
    return obj


def resolve_tolerance(flag: Optional[float], environ=os.environ) -> Tolerance:
    """--tol beats GMT_TOL, which beats the default."""
    if flag is not None:
        value = flag
    elif environ.get(TOL_ENV):
        try:
            value = float(environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV}={environ[TOL_ENV]!r} is not a number") from None
    else:
        return DEFAULT_TOL
    try:
        return DEFAULT_TOL.with_absolute(value)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def resolve_matrix(text: str, tol: Tolerance) -> ProjectiveMatrix:
    """A JSON literal ``[[re,im],...]`` or a catalog reference such as ``gamma:4:rho``."""
    if text.lstrip().startswith("["):
        return parse_matrix_literal(text, tol)
    return catalog_matrix(text, tol)


# ---- commands ---------------------------------------------------------------


def cmd_classify(args, tol: Tolerance) -> Report:
    if args.catalog:
        ref = args.catalog.lower()
        if args.n is not None:
            ref += f":{args.n}"
        if args.gen:
            ref += f":{args.gen}"
        source = ref
    elif args.matrix:
        source = args.matrix
    else:
        raise UsageError("give a matrix literal or --catalog")
    M = resolve_matrix(source, tol)
    report = Report("classify", {"matrix": source, "entries": M}, tolerance=tol)
    try:
        cls = classify(M, tol)
    except AmbiguousClassification as exc:
        report.results = {"error": str(exc), "candidates": list(exc.candidates)}
        report.verdict = "fail"
        return report
    report.results = cls.to_dict()
    report.add_residual("det residual", M.det_residual, tol.det_tol)
    return report


def cmd_gmt(args, tol: Tolerance) -> Report:
    f = resolve_matrix(args.f, tol)
    g = resolve_matrix(args.g, tol)
    ev = gmt_value(f, g, tol)
    status = gmt_inequality_check(f, g, tol)
    report = Report("gmt", {"f": args.f, "g": args.g}, tolerance=tol)
    report.results = {**ev.to_dict(), "status": status.value}
    if not ev.commutator_trace_is_one:
        report.add_residual("shortfall 1 - G", max(0.0, 1 - ev.value), tol.absolute)
    report.verdict = {
        InequalityStatus.VIOLATED: "fail",
        InequalityStatus.NOT_APPLICABLE: "not-applicable",
    }.get(status, "pass")
    return report


TABLE_COLUMNS = ("n", "tr_sq_rho_re", "tr_sq_rho_im", "tr_comm_re", "tr_comm_im", "gmt", "bound", "abs_diff", "branch")


def cmd_table(args, tol: Tolerance) -> Report:
    lo, hi = args.n_min, args.n_max
    if not 4 <= lo <= hi <= MAX_TABLE_N:
        raise UsageError(f"need 4 <= n-min <= n-max <= {MAX_TABLE_N}, got {lo}, {hi}")
    rows = []
    worst = 0.0
    for n in range(lo, hi + 1):
        data = figure_eight_generators(n, tol)
        ev = gmt_value(data.rho, data.b, tol)
        bound = gamma_gmt_upper_bound(n)
        diff = abs(ev.value - bound)
        worst = max(worst, diff)
        t2, tc = ev.tr_squared_f, ev.tr_commutator
        rows.append(dict(zip(TABLE_COLUMNS, (n, t2.real, t2.imag, tc.real, tc.imag, ev.value, bound, diff, data.branch_tag))))
    report = Report("table", {"n_min": lo, "n_max": hi}, rows, tolerance=tol)
    report.add_residual("max |G - (3 - 4 sin^2(pi/n))|", worst, tol.absolute)
    report.verdict = "pass" if worst <= tol.absolute else "fail"
    return report


def cmd_verify(args, tol: Tolerance) -> Report:
    results = run_all(tol) if args.target == "all" else [run_suite(args.target, tol)]
    report = Report("verify", {"target": args.target}, [r.to_dict() for r in results], tolerance=tol)
    for r in results:
        for c in r.checks:
            if c.op == "<=":
                report.add_residual(f"{r.name}: {c.name}", c.value, c.bound)
    report.verdict = "pass" if all(r.passed for r in results) else "fail"
    return report


def _constraint_matrix(entry, rep, tol: Tolerance) -> ProjectiveMatrix:
    if isinstance(entry, list):
        return parse_matrix_literal(entry, tol)
    if not isinstance(entry, str):
        raise ValueError(f"constraint entries must be words or matrix literals, got {entry!r}")
    if rep is not None:
        return evaluate_word(rep, Word.parse(entry))
    return catalog_matrix(entry, tol)


def load_constraints(path: str, tol: Tolerance):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("constraints"), list) or not doc["constraints"]:
        raise UsageError('constraint file needs a nonempty "constraints" list')
    rep = None
    if "group" in doc:
        spec = catalog_group(doc["group"], doc.get("n"), tol)
        if spec.representation is None:
            raise UsageError(f"{spec.name} has no representation")
        rep = spec.representation
    pairs = []
    for item in doc["constraints"]:
        if not isinstance(item, list) or len(item) != 2:
            raise UsageError(f"each constraint is a [source, target] pair, got {item!r}")
        pairs.append(tuple(_constraint_matrix(x, rep, tol) for x in item))
    pair = doc.get("pair")
    if pair is not None:
        pair = tuple(_constraint_matrix(x, rep, tol) for x in pair)
    elif len(pairs) >= 2:
        pair = (pairs[0][0], pairs[1][0])
    return doc, pairs, pair


def cmd_conjugator(args, tol: Tolerance) -> Report:
    doc, pairs, pair = load_constraints(args.file, tol)
    anti = bool(doc.get("antiholomorphic", False))
    report = Report("conjugator", {"file": args.file, "document": doc}, tolerance=tol)
    try:
        h = solve_conjugator(pairs, tol, antiholomorphic=anti)
    except (NoSolution, AmbiguousSolution) as exc:
        report.results = {"error": type(exc).__name__, "message": str(exc), "null_space_dimension": exc.dimension}
        report.verdict = "fail"
        return report
    results: dict = {"h": h, "involution": is_involution(h, tol)}
    report.add_residual("det residual", h.det_residual, tol.det_tol)
    if not anti:
        for i, (g, t) in enumerate(pairs):
            report.add_residual(f"constraint {i}", projective_distance(multiply(multiply(h, g), h.inverse()), t), tol.absolute)
    results["h_squared_distance_to_identity"] = projective_distance(multiply(h, h), IDENTITY)
    if pair is not None:
        residuals = lemma3_case_residuals(pair[0], pair[1], h)
        matches = [c.value for c, r in residuals.items() if r <= tol.absolute]
        results["case"] = matches[0] if matches else None
        results["case_residuals"] = {c.value: r for c, r in residuals.items()}
    report.results = results
    report.verdict = "pass" if all(r["passed"] for r in report.residuals) else "fail"
    return report


def cmd_catalog(args, tol: Tolerance) -> Report:
    if args.name == "list":
        names = sorted(set(GROUP_NAMES.values()))
        return Report("catalog", {"name": "list"}, {"groups": names}, tolerance=tol)
    doc = export_group(args.name, args.n, tol)
    report = Report("catalog", {"name": args.name, "n": args.n}, doc, tolerance=tol)
    if doc["relators"] is None:
        report.verdict = "not-applicable"
        return report
    for r in doc["relators"]["relators"]:
        report.add_residual(f"relator {r['relator']}", r["residual"], r["bound"])
    report.verdict = "pass" if doc["relators"]["passed"] else "fail"
    return report


COMMANDS = {
    "classify": cmd_classify,
    "gmt": cmd_gmt,
    "table": cmd_table,
    "verify": cmd_verify,
    "conjugator": cmd_conjugator,
    "catalog": cmd_catalog,
}


# ---- parsing and output -----------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="absolute tolerance (default 1e-9)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit the report as JSON")
    fmt.add_argument("--csv", action="store_true", default=argparse.SUPPRESS, help="emit rows or residuals as CSV")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="gmtlab", description="Trace computations for two-generator subgroups of PSL(2,C).", parents=[common]
    )
    parser.add_argument("--version", action="version", version=f"gmtlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify one element")
    p.add_argument("matrix", nargs="?", help="matrix literal or catalog reference")
    p.add_argument("--catalog", help="catalog name such as gamma, o3 or h1")
    p.add_argument("--n", type=int, help="orbifold index")
    p.add_argument("--gen", help="generator or word in the catalog group")

    p = sub.add_parser("gmt", parents=[common], help="evaluate |tr^2 f - 2| + |tr[f,g] - 1|")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("table", parents=[common], help="G(rho_n, b_n) against 3 - 4 sin^2(pi/n)")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=24)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("target", choices=sorted(SUITES) + ["all"])

    p = sub.add_parser("conjugator", parents=[common], help="solve h g h^-1 = t from a constraint file")
    p.add_argument("file")

    p = sub.add_parser("catalog", parents=[common], help="export a catalog group, or 'list'")
    p.add_argument("name")
    p.add_argument("--n", type=int)
    return parser


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return json.dumps(_plain(v))


def render(report: Report, mode: str, out) -> None:
    if mode == "json":
        out.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
        return
    if mode == "csv":
        writer = csv.writer(out, lineterminator="\n")
        if report.command == "table":
            writer.writerow(TABLE_COLUMNS)
            for row in report.results:
                writer.writerow(repr(row[c]) if isinstance(row[c], float) else row[c] for c in TABLE_COLUMNS)
        else:
            writer.writerow(("name", "value", "bound", "passed"))
            for r in report.residuals:
                writer.writerow((r["name"], repr(r["value"]), repr(r["bound"]), r["passed"]))
        return
    out.write(f"{report.command}: {report.verdict}\n")
    results = report.to_dict()["results"]
    if report.command == "table":
        out.write("  ".join(TABLE_COLUMNS) + "\n")
        for row in results:
            out.write("  ".join(_format_value(row[c]) for c in TABLE_COLUMNS) + "\n")
    elif report.command == "verify":
        for suite in results:
            out.write(f"[{'PASS' if suite['passed'] else 'FAIL'}] {suite['suite']}\n")
            for c in suite["checks"]:
                mark = "ok" if c["passed"] else "FAILED"
                out.write(f"    {mark:6} {c['name']}: {c['value']!r} {c['op']} {c['bound']!r}\n")
    elif isinstance(results, dict):
        for k, v in results.items():
            out.write(f"  {k}: {_format_value(v)}\n")
    elif results is not None:
        out.write(f"  {_format_value(results)}\n")
    if report.command != "verify":
        for r in report.residuals:
            out.write(f"  residual {r['name']}: {r['value']!r} (bound {r['bound']!r})\n")


def main(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    mode = "json" if getattr(args, "json", False) else "csv" if getattr(args, "csv", False) else "text"
    try:
        tol = resolve_tolerance(getattr(args, "tol", None))
        report = COMMANDS[args.command](args, tol)
    except UsageError as exc:
        err.write(f"gmtlab: error: {exc}\n")
        return EXIT_USAGE
    except SingularMatrix as exc:
        err.write(f"gmtlab: singular matrix: {exc}\n")
        return EXIT_FAIL
    except (UnknownName, UnknownLabel, UnboundSymbol, BadIndex, ValueError) as exc:
        err.write(f"gmtlab: error: {exc}\n")
        return EXIT_USAGE
    except GmtLabError as exc:
        err.write(f"gmtlab: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    render(report, mode, out)
    return EXIT_FAIL if report.verdict == "fail" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
