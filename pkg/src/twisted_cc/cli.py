"""Command-line front end.

    twisted-cc verify -N 2 -a 1 -b 1 -h 1.41421356237 --theta pi/2
    twisted-cc solve h-equal -N 3 --theta pi/3
    twisted-cc scan theta -N 5 -a 0.7 -h 1.3 --grid 1000 -o f.csv
    twisted-cc audit --max-n 12

Exit codes: 0 pass, 1 fail / no solution, 2 invalid input. ``-h`` is the
layer distance; help is ``--help`` only.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateConfigurationError, InvalidArgumentError, NoSolutionError, TwistedCCError
from .geometry import TwistedPairParams, build_configuration, canonical_twist, classify_twist, reduce_twist
from .kernels import (
    check_identities,
    derivative_recursion_error,
    ring_self_force,
    ring_self_force_pairwise,
)
from .oracle import central_residual
from .reduced import planar_mass_ratio, residuals_general
from .solvers import (
    ORACLE_TOL,
    ROOT_TOL,
    default_a_grid,
    planar_profile,
    scan_planar_a,
    scan_theta,
    solve_h_equal,
    solve_spatial_pair,
    zero_height_margin,
)

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
REDUCED_TOL = 1e-10
IDENTITY_TOL = 1e-12
RECURSION_TOL = 1e-6

_ANGLE = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<num>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d*)\s*(?P<n>N)?)?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str, n_gon: int | None = None) -> float:
    """Radians from a literal float or a rational multiple of pi.

    Accepts ``0``, ``1.2``, ``pi``, ``pi/3``, ``2pi/3``, and ``pi/N``, ``pi/2N``
    where ``N`` stands for the polygon size.
    """
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _ANGLE.match(text.replace("π", "pi"))
    if not m:
        raise InvalidArgumentError(f"cannot parse angle {text!r}")
    num = float(m.group("num")) if m.group("num") else 1.0
    den = int(m.group("den")) if m.group("den") else 1
    if m.group("n"):
        if n_gon is None:
            raise InvalidArgumentError(f"angle {text!r} refers to N but no N was given")
        den *= n_gon
    elif m.group("den") == "":
        raise InvalidArgumentError(f"cannot parse angle {text!r}")
    if den == 0:
        raise InvalidArgumentError(f"zero denominator in angle {text!r}")
    value = math.pi / den if num == 1.0 else num * math.pi / den
    return -value if m.group("sign") == "-" else value


@dataclass
class RunRecord:
    command: str
    params: dict | None
    result: dict
    tolerances: dict
    verdict: str
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.verdict == "pass" else EXIT_FAIL

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "tolerances": self.tolerances,
            "verdict": self.verdict,
        }
        if self.notes:
            payload["notes"] = self.notes
        return json.dumps(payload, allow_nan=True)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.params:
            lines.append("params: " + ", ".join(f"{k}={v!r}" for k, v in self.params.items()))
        for key, value in self.result.items():
            lines.append(f"{key}: {value!r}" if not isinstance(value, dict) else f"{key}:")
            if isinstance(value, dict):
                lines.extend(f"  {k}: {v!r}" for k, v in value.items())
        lines.append("tolerances: " + ", ".join(f"{k}={v:g}" for k, v in self.tolerances.items()))
        lines.extend(f"note: {n}" for n in self.notes)
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _oracle_check(params: TwistedPairParams) -> float:
    return central_residual(build_configuration(params)).max_relative


def cmd_verify(params: TwistedPairParams, tol: float = ORACLE_TOL, reduced_tol: float = REDUCED_TOL) -> RunRecord:
    report = central_residual(build_configuration(params))
    red = residuals_general(params)
    ok = report.max_relative < tol and red.max_abs() < reduced_tol
    return RunRecord(
        command="verify",
        params=params.as_dict(),
        result={
            "lambda": report.lam,
            "mu": red.mu,
            "residuals": red.as_dict(),
            "reduced_max": red.max_abs(),
            "oracle_max_relative": report.max_relative,
        },
        tolerances={"oracle": tol, "reduced": reduced_tol},
        verdict="pass" if ok else "fail",
    )


def _twist_notes(n_gon: int, twist: float) -> tuple[float, list[str]]:
    kind = classify_twist(n_gon, twist)
    canonical = canonical_twist(n_gon, kind)
    notes = []
    if reduce_twist(n_gon, twist) != twist:
        notes.append(f"twist {twist!r} reduced to {canonical!r} (period 2*pi/{n_gon})")
    return canonical, notes


def cmd_solve(mode: str, n_gon: int, twist: float, size_ratio: float | None = None,
              tol: float = ORACLE_TOL, root_tol: float = ROOT_TOL) -> RunRecord:
    theta, notes = _twist_notes(n_gon, twist)
    tolerances = {"oracle": tol, "root": root_tol}
    try:
        if mode == "h-equal":
            root = solve_h_equal(n_gon, theta, tol=root_tol)
            params = TwistedPairParams(n_gon, 1.0, 1.0, root.value, theta)
            result = {"layer_distance": root.value, "root_residual": root.residual, "iterations": root.iterations}
        elif mode == "b-planar":
            _need(size_ratio, "-a")
            b = planar_mass_ratio(n_gon, size_ratio, theta)
            params = TwistedPairParams(n_gon, size_ratio, b, 0.0, theta)
            result = {"mass_ratio": b}
        elif mode == "pair-spatial":
            _need(size_ratio, "-a")
            sol = solve_spatial_pair(n_gon, size_ratio, theta, tol=root_tol)
            params = TwistedPairParams(n_gon, size_ratio, sol.mass_ratio, sol.layer_distance, theta)
            result = {"mass_ratio": sol.mass_ratio, "layer_distance": sol.layer_distance,
                      "candidates": sol.candidates}
            if sol.note:
                notes.append(sol.note)
        else:
            raise InvalidArgumentError(f"unknown solve mode {mode!r}")
    except NoSolutionError as exc:
        return RunRecord(f"solve {mode}", {"n_gon": n_gon, "twist": theta, "size_ratio": size_ratio},
                         {"error": str(exc)}, tolerances, "no-solution", notes)
    oracle = _oracle_check(params)
    result["oracle_max_relative"] = oracle
    result["reduced_max"] = residuals_general(params).max_abs()
    return RunRecord(f"solve {mode}", params.as_dict(), result, tolerances,
                     "pass" if oracle < tol else "fail", notes)


def _need(value, flag):
    if value is None:
        raise InvalidArgumentError(f"{flag} is required for this mode")


def _write_csv(path: Path, header, rows):
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise InvalidArgumentError(f"cannot write {path}: {exc}") from exc


def roots_path_for(path: Path) -> Path:
    return path.with_name(path.stem + "_roots" + (path.suffix or ".csv"))


def cmd_scan_theta(n_gon: int, size_ratio: float, layer_distance: float, grid: int = 1000,
                   out: Path | None = None) -> RunRecord:
    report = scan_theta(n_gon, size_ratio, layer_distance, grid)
    cell = 2.0 * math.pi / n_gon / grid
    allowed = (0.0, math.pi / n_gon, 2.0 * math.pi / n_gon)
    stray = [z for z in report.zeros_found if min(abs(z - t) for t in allowed) > cell]
    if out is not None:
        _write_csv(out, ["theta", "f"], ((repr(float(t)), repr(float(v))) for t, v in zip(report.thetas, report.values)))
    ok = not stray and report.min_positive > 0
    return RunRecord(
        command="scan theta",
        params={"n_gon": n_gon, "size_ratio": size_ratio, "layer_distance": layer_distance},
        result={"zeros": report.zeros_found, "stray_zeros": stray, "min_positive": report.min_positive,
                "grid": grid, "excluded": report.excluded, "data_file": str(out) if out else None},
        tolerances={"zero_location": cell},
        verdict="pass" if ok else "fail",
    )


def cmd_scan_a_count(n_gon: int, mass_ratio: float, twist: float = 0.0, grid: int = 10_000,
                     out: Path | None = None, roots_out: Path | None = None,
                     tol: float = ORACLE_TOL) -> RunRecord:
    theta, notes = _twist_notes(n_gon, twist)
    a_grid = default_a_grid(points=grid)
    roots = scan_planar_a(n_gon, mass_ratio, theta, a_grid)
    rows, oracle = [], []
    for r in roots:
        rows.append((r.value, planar_mass_ratio(n_gon, r.value, theta)))
        oracle.append(_oracle_check(TwistedPairParams(n_gon, r.value, mass_ratio, 0.0, theta)))
    if out is not None:
        xs, vs = planar_profile(n_gon, mass_ratio, theta, a_grid)
        _write_csv(out, ["a", "residual"], ((repr(float(x)), repr(float(v))) for x, v in zip(xs, vs)))
        roots_out = roots_out or roots_path_for(out)
    if roots_out is not None:
        _write_csv(roots_out, ["a_root", "b_implied"], ((repr(float(a)), repr(float(b))) for a, b in rows))
    values = [r.value for r in roots]
    ok = (len(values) == 2 and values[0] < 1.0 < values[1] and all(o < tol for o in oracle))
    return RunRecord(
        command="scan a-count",
        params={"n_gon": n_gon, "mass_ratio": mass_ratio, "twist": theta},
        result={"count": len(values), "roots": values, "b_implied": [b for _, b in rows],
                "oracle_max_relative": oracle, "grid": len(a_grid),
                "data_file": str(out) if out else None, "roots_file": str(roots_out) if roots_out else None},
        tolerances={"oracle": tol},
        verdict="pass" if ok else "fail",
        notes=notes,
    )


def cmd_audit(max_n: int, seed: int = 0) -> RunRecord:
    if not 2 <= max_n <= 64:
        raise InvalidArgumentError(f"--max-n must lie in 2..64, got {max_n}")
    rng = np.random.default_rng(seed)
    per_n = []
    ok = True
    for n in range(2, max_n + 1):
        A = ring_self_force(n)
        csc_rel = abs(A - ring_self_force_pairwise(n)) / A
        ident = 0.0
        for _ in range(4):
            a, h, th = rng.uniform(0.2, 3.0), rng.uniform(0.25, 3.0), rng.uniform(-math.pi, math.pi)
            ident = max(ident, check_identities(n, a, h, th).max())
        th = rng.uniform(0.05, 0.95) * math.pi / n
        a, x = rng.uniform(0.3, 3.0), rng.uniform(0.0, 2.0)
        # beyond N = 8 the sine sums cancel to below finite-difference resolution
        rec = max(derivative_recursion_error(k, n, a, x, th) for k in (1, 2, 3)) if n <= 8 else None
        margin = zero_height_margin(n)
        row_ok = csc_rel <= IDENTITY_TOL and ident <= IDENTITY_TOL and margin > 0 and (rec is None or rec <= RECURSION_TOL)
        ok &= row_ok
        per_n.append({"n_gon": n, "ring_constant": A, "csc_vs_pairwise_rel": csc_rel,
                      "identity_max": ident, "recursion_rel": rec, "zero_height_margin": margin,
                      "ok": row_ok})
    return RunRecord(
        command="audit",
        params={"max_n": max_n, "seed": seed},
        result={"rows": per_n},
        tolerances={"identity": IDENTITY_TOL, "recursion": RECURSION_TOL},
        verdict="pass" if ok else "fail",
    )


def _common(p: argparse.ArgumentParser):
    p.add_argument("--help", action="help", help="show this help message and exit")
    p.add_argument("--tol", type=float, default=ORACLE_TOL, help="oracle relative tolerance")
    p.add_argument("--json", action="store_true", help="emit one JSON record")
    p.add_argument("-o", "--output", type=Path, default=None, help="output path")


def _ring_args(p, a=False, b=False, h=False, theta=False):
    p.add_argument("-N", dest="n_gon", type=int, required=True)
    if a:
        p.add_argument("-a", dest="size_ratio", type=float, required=a == "required")
    if b:
        p.add_argument("-b", dest="mass_ratio", type=float, required=b == "required")
    if h:
        p.add_argument("-h", dest="layer_distance", type=float, required=h == "required")
    if theta:
        p.add_argument("--theta", default="0", help="twist: radians or pi/k, pi/N, pi/2N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twisted-cc", description=__doc__.splitlines()[0], add_help=False)
    parser.add_argument("--help", action="help")
    sub = parser.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", add_help=False, help="check a parameter point")
    _ring_args(v, a="required", b="required", h="required", theta=True)
    v.add_argument("--reduced-tol", type=float, default=REDUCED_TOL)
    _common(v)

    s = sub.add_parser("solve", add_help=False, help="solve for a missing parameter")
    s.add_argument("--help", action="help")
    smodes = s.add_subparsers(dest="mode", required=True)
    for mode, needs_a in (("b-planar", True), ("h-equal", False), ("pair-spatial", True)):
        m = smodes.add_parser(mode, add_help=False)
        _ring_args(m, a="required" if needs_a else False, theta=True)
        m.add_argument("--root-tol", type=float, default=ROOT_TOL)
        _common(m)

    sc = sub.add_parser("scan", add_help=False, help="grid scans")
    sc.add_argument("--help", action="help")
    kinds = sc.add_subparsers(dest="kind", required=True)
    t = kinds.add_parser("theta", add_help=False)
    _ring_args(t, a="required", h="required")
    t.add_argument("--grid", type=int, default=1000)
    _common(t)
    ac = kinds.add_parser("a-count", add_help=False)
    _ring_args(ac, b="required", theta=True)
    ac.add_argument("--grid", type=int, default=10_000)
    ac.add_argument("--roots-out", type=Path, default=None)
    _common(ac)

    au = sub.add_parser("audit", add_help=False, help="identity and inequality audit")
    au.add_argument("--max-n", type=int, default=12)
    au.add_argument("--seed", type=int, default=0)
    _common(au)
    return parser


def run(args) -> RunRecord:
    theta = parse_angle(args.theta, args.n_gon) if hasattr(args, "theta") else None
    if args.verb == "verify":
        params = TwistedPairParams(args.n_gon, args.size_ratio, args.mass_ratio, args.layer_distance, theta)
        return cmd_verify(params, args.tol, args.reduced_tol)
    if args.verb == "solve":
        return cmd_solve(args.mode, args.n_gon, theta, getattr(args, "size_ratio", None), args.tol, args.root_tol)
    if args.verb == "scan":
        if args.grid < 16:
            raise InvalidArgumentError(f"--grid must be >= 16, got {args.grid}")
        if args.kind == "theta":
            return cmd_scan_theta(args.n_gon, args.size_ratio, args.layer_distance, args.grid, args.output)
        return cmd_scan_a_count(args.n_gon, args.mass_ratio, theta, args.grid, args.output, args.roots_out, args.tol)
    if args.verb == "audit":
        return cmd_audit(args.max_n, args.seed)
    raise InvalidArgumentError(f"unknown command {args.verb!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record = run(args)
    except (InvalidArgumentError, DegenerateConfigurationError) as exc:
        print(f"twisted-cc: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TwistedCCError as exc:
        print(f"twisted-cc: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = record.to_json() if args.json else record.to_text()
    print(text)
    if args.output is not None and args.verb not in ("scan",):
        try:
            Path(args.output).write_text(record.to_json() + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"twisted-cc: error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
