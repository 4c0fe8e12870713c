"""Command-line front end.

Subcommands:

* ``examples`` replays the packaged golden cases and prints a residual
  table (the expected values live in the fixture file, not in code).
* ``verify`` runs the invariant suite and emits the verification report.
* ``field`` samples a field (a pair, an operator output, or a reflected
  continuation) over a polar grid as CSV or JSON.
* ``reflect`` evaluates one reflection formula at a point and prints the
  result record; ``--check`` also evaluates the supplied solution at the
  reflected point and reports the residual.

Exit codes: 0 success, 1 residual failures, 2 malformed input.  The
environment variable ``HARMONIA_CUT_ANGLE`` overrides the branch-cut
direction used when parsing expressions.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .algebra import DEFAULT_CUT_ANGLE, BivariateLaurentExpr
from .errors import HarmoniaError
from .geometry import BiPoint, SchwarzMap, reflect_bipoint
from .harmonic import HarmonicPair, RobinParams, eval_pair, eval_real
from .numerics import DEFAULT_SEED, run_verification_suite
from .operators import neumann_from_dirichlet_pair, neumann_from_robin_pair
from .reflection import (
    reflect_dirichlet_study,
    reflect_neumann_circle,
    reflect_neumann_schwarz,
    reflect_robin_circle,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2

_REFLECT_R = tuple(np.linspace(0.6, 0.95, 5))
_REFLECT_TH = tuple(np.linspace(-2.0, 2.0, 4))


@dataclass(frozen=True)
class GridSpec:
    r_min: float
    r_max: float
    n_r: int
    theta_min: float
    theta_max: float
    n_theta: int

    def __post_init__(self):
        if self.n_r < 2 or self.n_theta < 2:
            raise ValueError("grid counts must be >= 2")
        if not self.r_min > 0:
            raise ValueError("r_min must be positive")
        if not (self.r_max > self.r_min and self.theta_max > self.theta_min):
            raise ValueError("grid bounds must be increasing")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 6:
            raise ValueError("grid must be rmin:rmax:nr:tmin:tmax:nt")
        return cls(
            float(parts[0]), float(parts[1]), int(parts[2]),
            float(parts[3]), float(parts[4]), int(parts[5]),
        )

    def points(self):
        for r in np.linspace(self.r_min, self.r_max, self.n_r):
            for th in np.linspace(self.theta_min, self.theta_max, self.n_theta):
                yield float(r), float(th)


@dataclass(frozen=True)
class RunSpec:
    command: str
    input: str | None = None
    example: str | None = None
    output: str | None = None
    fmt: str = "table"
    tolerance: float | None = None
    seed: int = DEFAULT_SEED
    grid: GridSpec | None = None
    formula: str | None = None
    check: bool = False
    point: tuple | None = None
    targets: tuple | None = None
    cut_angle: float = DEFAULT_CUT_ANGLE


def _cut_angle_from_env() -> float:
    raw = os.environ.get("HARMONIA_CUT_ANGLE")
    if raw is None:
        return DEFAULT_CUT_ANGLE
    return float(raw)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _load_fixture_examples() -> list:
    data = resources.files("harmonia").joinpath("fixtures/examples.json").read_text("utf-8")
    return json.loads(data)["examples"]


def _pair(rec: dict, cut: float) -> HarmonicPair:
    return HarmonicPair.from_json(rec, cut)


def _grid_residual_mod_constant(computed: HarmonicPair, expected: HarmonicPair, grid: GridSpec) -> float:
    pin_c = eval_real(computed, 1.0, 0.0)
    pin_e = eval_real(expected, 1.0, 0.0)
    worst = 0.0
    for r, th in grid.points():
        x, y = r * math.cos(th), r * math.sin(th)
        worst = max(
            worst,
            abs((eval_real(computed, x, y) - pin_c) - (eval_real(expected, x, y) - pin_e)),
        )
    return worst


def _reflection_points():
    for r in _REFLECT_R:
        for th in _REFLECT_TH:
            yield float(r), float(th)


def _run_example_row(row: dict, cut: float, tol_override: float | None) -> dict:
    kind = row["kind"]
    tol = tol_override if tol_override is not None else row["tolerance"]
    record = {
        "id": row["id"],
        "title": row["title"],
        "kind": kind,
        "tolerance": tol,
    }
    default_grid = GridSpec(0.6, 1.4, 10, -2.0, 2.0, 10)
    if kind == "dtn_pair":
        v = neumann_from_dirichlet_pair(_pair(row["u"], cut))
        residual = _grid_residual_mod_constant(v, _pair(row["expected_v"], cut), default_grid)
        record.update(samples=default_grid.n_r * default_grid.n_theta, max_residual=residual)
        record["status"] = "PASS" if residual <= tol else "FAIL"
        return record
    if kind == "rtn_pair":
        params = RobinParams(row["a"], row["b"])
        v = neumann_from_robin_pair(_pair(row["w"], cut), params)
        residual = _grid_residual_mod_constant(v, _pair(row["expected_v"], cut), default_grid)
        record.update(samples=default_grid.n_r * default_grid.n_theta, max_residual=residual)
        record["status"] = "PASS" if residual <= tol else "FAIL"
        return record
    if kind in ("reflect_neumann", "reflect_robin"):
        solution = _pair(row["v" if kind == "reflect_neumann" else "w"], cut)
        data = BivariateLaurentExpr.from_json(row["data"])
        expected = _pair(row["expected_correction"], cut)
        params = RobinParams(row["a"], row["b"]) if kind == "reflect_robin" else None
        smap = SchwarzMap.unit_circle()
        worst = 0.0
        alt_worst = 0.0
        count = 0
        ratio = row.get("alt_coefficient_ratio")
        for r, th in _reflection_points():
            p = BiPoint.from_polar(r, th)
            if kind == "reflect_neumann":
                res = reflect_neumann_circle(solution, data, p, verify_numeric=True)
            else:
                res = reflect_robin_circle(solution, data, params, p, verify_numeric=True)
            expected_corr = eval_pair(expected, p)
            direct = eval_pair(solution, reflect_bipoint(smap, p))
            worst = max(worst, abs(res.correction - expected_corr), abs(res.value - direct))
            if ratio is not None:
                alt_worst = max(alt_worst, abs(res.correction - ratio * expected_corr))
            count += 1
        record.update(samples=count, max_residual=worst)
        if row.get("discrepancy"):
            record["status"] = "DISCREPANCY"
            record["passed_derived"] = worst <= tol
            record["alt_coefficient_ratio"] = ratio
            record["alt_residual"] = alt_worst
            record["note"] = row.get("note", "")
        else:
            record["status"] = "PASS" if worst <= tol else "FAIL"
        return record
    raise ValueError(f"unknown example kind {kind!r}")


def _examples_gate(records: list) -> bool:
    for rec in records:
        if rec["status"] == "FAIL":
            return False
        if rec["status"] == "DISCREPANCY" and not rec.get("passed_derived", False):
            return False
    return True


def _examples_table(records: list) -> str:
    lines = [
        f"{'id':26s} {'kind':16s} {'n':>3s} {'max residual':>13s} {'tol':>8s} status"
    ]
    for rec in records:
        lines.append(
            f"{rec['id']:26s} {rec['kind']:16s} {rec['samples']:>3d} "
            f"{rec['max_residual']:>13.3e} {rec['tolerance']:>8.0e} {rec['status']}"
        )
        if rec["status"] == "DISCREPANCY":
            lines.append(
                f"    derived coefficient residual {rec['max_residual']:.3e} "
                f"({'PASS' if rec['passed_derived'] else 'FAIL'}); half-scale variant "
                f"residual {rec['alt_residual']:.3e} (not asserted)"
            )
    return "\n".join(lines)


def _examples_csv(records: list) -> str:
    lines = ["id,kind,samples,max_residual,tolerance,status"]
    for rec in records:
        lines.append(
            f"{rec['id']},{rec['kind']},{rec['samples']},{rec['max_residual']!r},"
            f"{rec['tolerance']!r},{rec['status']}"
        )
    return "\n".join(lines)


def cmd_examples(spec: RunSpec) -> int:
    records = [
        _run_example_row(row, spec.cut_angle, spec.tolerance)
        for row in _load_fixture_examples()
    ]
    if spec.fmt == "json":
        text = json.dumps({"examples": records}, indent=2)
    elif spec.fmt == "csv":
        text = _examples_csv(records)
    else:
        text = _examples_table(records)
    _emit(text, spec.output)
    return EXIT_OK if _examples_gate(records) else EXIT_FAIL


def cmd_verify(spec: RunSpec) -> int:
    report = run_verification_suite(targets=spec.targets, seed=spec.seed)
    if spec.tolerance is not None:
        from .numerics import CheckRecord, VerificationReport

        report = VerificationReport(
            seed=report.seed,
            corrupt=report.corrupt,
            checks=tuple(
                CheckRecord(c.name, c.tag, c.samples, c.max_residual, spec.tolerance)
                for c in report.checks
            ),
        )
    text = report.to_json() if spec.fmt == "json" else report.summary_table()
    _emit(text, spec.output)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _field_source(source: dict, cut: float):
    kind = source["kind"]
    if kind == "pair":
        pair = _pair(source["pair"], cut)
        return lambda r, th: eval_real(pair, r * math.cos(th), r * math.sin(th))
    if kind == "dtn_pair":
        v = neumann_from_dirichlet_pair(_pair(source["u"], cut))
        return lambda r, th: eval_real(v, r * math.cos(th), r * math.sin(th))
    if kind == "rtn_pair":
        params = RobinParams(source["a"], source["b"])
        v = neumann_from_robin_pair(_pair(source["w"], cut), params)
        return lambda r, th: eval_real(v, r * math.cos(th), r * math.sin(th))
    if kind == "reflect_neumann":
        v = _pair(source["v"], cut)
        data = BivariateLaurentExpr.from_json(source["data"])

        # the continuation value at (r, theta) comes from the mirror source
        # point at radius 1/r
        def continued(r, th):
            res = reflect_neumann_circle(v, data, BiPoint.from_polar(1.0 / r, th))
            return res.value.real

        return continued
    if kind == "reflect_robin":
        w = _pair(source["w"], cut)
        data = BivariateLaurentExpr.from_json(source["data"])
        params = RobinParams(source["a"], source["b"])

        def continued(r, th):
            res = reflect_robin_circle(w, data, params, BiPoint.from_polar(1.0 / r, th))
            return res.value.real

        return continued
    raise ValueError(f"unknown field kind {kind!r}")


def _example_field_source(example_id: str) -> dict:
    for row in _load_fixture_examples():
        if row["id"] == example_id:
            if row["kind"] in ("dtn_pair", "rtn_pair"):
                return {k: row[k] for k in ("kind", "u", "w", "a", "b") if k in row}
            return {k: row[k] for k in ("kind", "v", "w", "data", "a", "b") if k in row}
    raise ValueError(f"unknown example id {example_id!r}")


_ROW_ERROR_REASONS = {
    "CutProximityError": "cut_proximity",
    "PoleError": "pole",
    "DomainError": "domain_error",
    "NonSymmetricPairError": "non_symmetric_pair",
}


def cmd_field(spec: RunSpec) -> int:
    if spec.example:
        source = _example_field_source(spec.example)
    elif spec.input:
        with open(spec.input, "r", encoding="utf-8") as fh:
            source = json.load(fh)["field"]
    else:
        raise ValueError("field requires --input or --example")
    evaluator = _field_source(source, spec.cut_angle)
    grid = spec.grid or GridSpec(0.6, 1.4, 10, -2.0, 2.0, 10)
    rows = []
    for r, th in grid.points():
        x, y = r * math.cos(th), r * math.sin(th)
        try:
            value, reason = evaluator(r, th), ""
        except HarmoniaError as exc:
            value, reason = None, _ROW_ERROR_REASONS.get(type(exc).__name__, "error")
        rows.append({"r": r, "theta": th, "x": x, "y": y, "value": value, "reason": reason})
    if spec.fmt == "json":
        text = json.dumps({"rows": rows}, indent=2)
    else:
        lines = ["r,theta,x,y,value,reason"]
        for row in rows:
            value = "" if row["value"] is None else repr(row["value"])
            lines.append(
                f"{row['r']!r},{row['theta']!r},{row['x']!r},{row['y']!r},{value},{row['reason']}"
            )
        text = "\n".join(lines)
    _emit(text, spec.output)
    return EXIT_OK


def _example_reflect_input(example_id: str) -> dict:
    for row in _load_fixture_examples():
        if row["id"] == example_id and row["kind"] in ("reflect_neumann", "reflect_robin"):
            rec = {
                "solution": row["v" if row["kind"] == "reflect_neumann" else "w"],
                "data": row["data"],
            }
            if "a" in row:
                rec["params"] = {"a": row["a"], "b": row["b"]}
            return rec
    raise ValueError(f"example id {example_id!r} is not a reflection fixture")


def cmd_reflect(spec: RunSpec) -> int:
    if spec.example:
        payload = _example_reflect_input(spec.example)
    elif spec.input:
        with open(spec.input, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        raise ValueError("reflect requires --input or --example")
    cut = spec.cut_angle
    solution = _pair(payload["solution"], cut)
    data = BivariateLaurentExpr.from_json(payload.get("data", []))
    smap = SchwarzMap.from_json(payload["map"]) if "map" in payload else SchwarzMap.unit_circle()
    if spec.point is not None:
        r, th = spec.point
        p = BiPoint.from_polar(r, th)
    elif "point" in payload:
        rec = payload["point"]
        if "r" in rec:
            p = BiPoint.from_polar(rec["r"], rec["theta"])
        else:
            p = BiPoint(
                complex(rec["z"]["re"], rec["z"].get("im", 0.0)),
                complex(rec["zeta"]["re"], rec["zeta"].get("im", 0.0)),
            )
    else:
        p = BiPoint.from_polar(0.8, 0.0)
    formula = spec.formula or "neumann"
    if formula == "dirichlet":
        result = reflect_dirichlet_study(solution, data, smap, p)
    elif formula == "neumann":
        result = reflect_neumann_circle(solution, data, p)
    elif formula == "robin":
        params_rec = payload.get("params", {"a": 1.0, "b": 1.0})
        result = reflect_robin_circle(
            solution, data, RobinParams(params_rec["a"], params_rec["b"]), p
        )
    elif formula == "schwarz":
        result = reflect_neumann_schwarz(solution, data, smap, p)
    else:
        raise ValueError(f"unknown formula {formula!r}")
    record = result.to_json()
    exit_code = EXIT_OK
    if spec.check:
        direct = eval_pair(solution, result.reflected_point)
        residual = abs(direct - result.value)
        record["check_residual"] = residual
        tol = spec.tolerance if spec.tolerance is not None else 1e-10
        if residual > tol:
            exit_code = EXIT_FAIL
    _emit(json.dumps(record, indent=2), spec.output)
    return exit_code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonia",
        description="Boundary operators and reflection formulas for harmonic "
        "functions near circular arcs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices, fmt_default):
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="suite seed")
        p.add_argument("--format", choices=fmt_choices, default=fmt_default)
        p.add_argument("--output", default=None, help="write to file instead of stdout")

    p = sub.add_parser("examples", help="replay the packaged golden cases")
    common(p, ("table", "json", "csv"), "table")

    p = sub.add_parser("verify", help="run the invariant verification suite")
    common(p, ("table", "json"), "json")
    p.add_argument(
        "--targets",
        default=None,
        help="comma-separated check names or tags (default: all)",
    )

    p = sub.add_parser("field", help="sample a field over a polar grid")
    common(p, ("csv", "json"), "csv")
    p.add_argument("--input", default=None, help="JSON file describing the field")
    p.add_argument("--example", default=None, help="packaged example id as the field")
    p.add_argument("--grid", default="0.6:1.4:10:-2.0:2.0:10", help="rmin:rmax:nr:tmin:tmax:nt")

    p = sub.add_parser("reflect", help="evaluate a reflection formula at a point")
    common(p, ("json",), "json")
    p.add_argument("--input", default=None, help="JSON file with solution/data/point")
    p.add_argument("--example", default=None, help="packaged reflection example id")
    p.add_argument(
        "--formula",
        choices=("dirichlet", "neumann", "robin", "schwarz"),
        default="neumann",
    )
    p.add_argument("--point", default=None, help="evaluation point as r:theta")
    p.add_argument(
        "--check",
        action="store_true",
        help="also evaluate the solution at the reflected point and report the residual",
    )
    return parser


def _spec_from_args(args: argparse.Namespace) -> RunSpec:
    grid = None
    if getattr(args, "grid", None) is not None:
        grid = GridSpec.parse(args.grid)
    point = None
    if getattr(args, "point", None):
        r_text, th_text = args.point.split(":")
        point = (float(r_text), float(th_text))
    targets = None
    if getattr(args, "targets", None):
        targets = tuple(t.strip() for t in args.targets.split(",") if t.strip())
    return RunSpec(
        command=args.command,
        input=getattr(args, "input", None),
        example=getattr(args, "example", None),
        output=args.output,
        fmt=args.format,
        tolerance=args.tol,
        seed=args.seed,
        grid=grid,
        formula=getattr(args, "formula", None),
        check=getattr(args, "check", False),
        point=point,
        targets=targets,
        cut_angle=_cut_angle_from_env(),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    handlers = {
        "examples": cmd_examples,
        "verify": cmd_verify,
        "field": cmd_field,
        "reflect": cmd_reflect,
    }
    try:
        return handlers[spec.command](spec)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HarmoniaError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
