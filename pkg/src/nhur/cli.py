"""Command-line front end.

Four subcommands:

  example1   sweep the polar-part scenario over theta0, write CSV
  example2   sweep the PT scenario over alpha, write CSV
  check      evaluate one problem from a JSON file, write a JSON report
  metric     print metric diagnostics for the PT model at one gamma

Exit codes: 0 when every evaluated inequality holds, 1 when at least one
is violated beyond tolerance, 2 for usage, parse, or validation errors.

CSV is written with full double precision (17 significant digits), '.'
decimal points, and LF line endings.  JSON problem files carry complex
numbers as [re, im] pairs, either as flat row-major entry lists or nested
row lists.
"""

import argparse
import json
import math
import sys

import numpy as np

from .errors import NhurError
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, as_operator
from .metric import (
    Metric,
    identity_metric,
    is_good_observable,
    metric_from_matrix,
    metric_from_right_eigenvectors,
    validate_metric,
)
from .relations import Formalism, evaluate_all
from .scenarios import (
    BROKEN,
    SYMMETRIC,
    Example1Config,
    Example2Config,
    broken_eigensystem,
    example1_sweep,
    example2_sweep,
    pt_hamiltonian,
    symmetric_eigensystem,
)
from .tolerances import EPS_NORM, ur_tolerance

_RELATIONS = ("ur1", "ur2", "ur3", "ur4")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _bool(b) -> str:
    return "true" if b else "false"


def csv_header(param_name: str) -> str:
    cols = [param_name]
    for rel in ("ur1", "ur2"):
        cols += [f"{rel}_lhs", f"{rel}_rhs", f"{rel}_gap", f"{rel}_holds"]
    cols += ["ur3_lhs", "ur3_rhs", "ur3_gap", "ur3_holds", "ur3_branch"]
    cols += ["ur4_lhs", "ur4_rhs", "ur4_gap", "ur4_holds", "ur4_branch",
             "ur4_degenerate"]
    return ",".join(cols)


def csv_row(point) -> str:
    e1, e2, e3, e4 = point.evaluations
    row = [_fmt(point.param)]
    for ev in (e1, e2):
        row += [_fmt(ev.lhs), _fmt(ev.rhs), _fmt(ev.gap), _bool(ev.holds)]
    row += [_fmt(e3.lhs), _fmt(e3.rhs), _fmt(e3.gap), _bool(e3.holds),
            e3.sign_branch]
    row += [_fmt(e4.lhs), _fmt(e4.rhs), _fmt(e4.gap), _bool(e4.holds),
            e4.sign_branch, _bool(e4.degenerate)]
    return ",".join(row)


def write_sweep_csv(path: str, param_name: str, points) -> int:
    """Write rows for the successful points; returns how many were written."""
    lines = [csv_header(param_name)]
    written = 0
    for pt in points:
        if pt.ok:
            lines.append(csv_row(pt))
            written += 1
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return written


def _summarize_sweep(points, param_name: str, tol: float) -> int:
    """Print per-relation minima and the verdict; returns the exit code."""
    errors = [pt for pt in points if not pt.ok]
    ok_points = [pt for pt in points if pt.ok]
    for idx, rel in enumerate(_RELATIONS):
        best = None
        for pt in ok_points:
            ev = pt.evaluations[idx]
            if best is None or ev.gap < best[0]:
                best = (ev.gap, pt.param)
        if best is not None:
            print(f"{rel}: min gap {best[0]:.6g} at {param_name} = {best[1]:.9g}")
    violations = [
        (pt.param, ev.relation, ev.gap)
        for pt in ok_points
        for ev in pt.evaluations
        if not ev.holds
    ]
    for param, rel, gap in violations:
        print(f"VIOLATION: {rel} gap {gap:.6g} at {param_name} = {param:.9g}")
    for pt in errors:
        print(f"error at {param_name} = {pt.param:.9g}: {pt.error}",
              file=sys.stderr)
    if errors:
        return 2
    if violations:
        print(f"{len(violations)} inequality violations beyond tolerance {tol:g}")
        return 1
    print(f"all inequalities hold ({len(ok_points)} points, tolerance {tol:g})")
    return 0


def cmd_example1(args) -> int:
    if args.points < 2:
        print("error: --points must be at least 2", file=sys.stderr)
        return 2
    cfg = Example1Config(
        theta1=args.theta1, theta3=args.theta3,
        theta5=args.theta5, theta7=args.theta7,
    )
    tol = ur_tolerance()
    points = example1_sweep(cfg, points=args.points, ur_tol=tol)
    written = write_sweep_csv(args.out, "theta0", points)
    print(f"wrote {args.out} ({written} rows)")
    return _summarize_sweep(points, "theta0", tol)


def cmd_example2(args) -> int:
    if args.points < 2:
        print("error: --points must be at least 2", file=sys.stderr)
        return 2
    defaults = (
        Example2Config.symmetric_default()
        if args.phase == SYMMETRIC
        else Example2Config.broken_default()
    )
    cfg = Example2Config(
        gamma=defaults.gamma if args.gamma is None else args.gamma,
        p=defaults.p if args.p is None else args.p,
        phase=args.phase,
    )
    cfg.validated()
    tol = ur_tolerance()
    points = example2_sweep(
        cfg, points=args.points, formalism=Formalism.parse(args.formalism),
        ur_tol=tol,
    )
    written = write_sweep_csv(args.out, "alpha", points)
    print(f"wrote {args.out} ({written} rows)")
    return _summarize_sweep(points, "alpha", tol)


class ProblemParseError(NhurError):
    """A problem file is malformed; message carries the field path."""


def _reject_constant(token: str):
    raise ValueError(f"non-finite number {token!r} is not allowed")


def _is_pair(node) -> bool:
    return (
        isinstance(node, list)
        and len(node) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                for x in node)
    )


def _collect_pairs(node, where: str, out: list) -> None:
    if _is_pair(node):
        if not all(math.isfinite(x) for x in node):
            raise ProblemParseError(f"{where}: non-finite entry {node}")
        out.append(complex(node[0], node[1]))
        return
    if isinstance(node, list):
        for child in node:
            _collect_pairs(child, where, out)
        return
    raise ProblemParseError(
        f"{where}: expected [re, im] pairs, got {node!r}"
    )


def _parse_complex(node, count: int, where: str) -> np.ndarray:
    entries: list = []
    _collect_pairs(node, where, entries)
    if len(entries) != count:
        raise ProblemParseError(
            f"{where}: expected {count} complex entries, got {len(entries)}"
        )
    return np.array(entries, dtype=complex)


def parse_problem(payload: dict) -> dict:
    """Validate a problem dict into arrays plus formalism and options."""
    if not isinstance(payload, dict):
        raise ProblemParseError("problem file must be a JSON object")
    try:
        dim = int(payload["dim"])
    except KeyError:
        raise ProblemParseError("missing required field 'dim'")
    except (TypeError, ValueError):
        raise ProblemParseError("'dim' must be an integer")
    if dim < 1:
        raise ProblemParseError(f"'dim' must be positive, got {dim}")
    out = {"dim": dim}
    for field in ("A", "B"):
        if field not in payload:
            raise ProblemParseError(f"missing required field {field!r}")
        flat = _parse_complex(payload[field], dim * dim, field)
        out[field.lower()] = flat.reshape(dim, dim)
    if "psi" not in payload:
        raise ProblemParseError("missing required field 'psi'")
    out["psi"] = _parse_complex(payload["psi"], dim, "psi")
    if "formalism" not in payload:
        raise ProblemParseError("missing required field 'formalism'")
    try:
        out["formalism"] = Formalism.parse(str(payload["formalism"]))
    except ValueError:
        raise ProblemParseError(
            f"unknown formalism {payload['formalism']!r} "
            "(use plain, gmetric, or good)"
        )
    out["g"] = (
        _parse_complex(payload["G"], dim * dim, "G").reshape(dim, dim)
        if "G" in payload
        else None
    )
    out["psi_perp"] = (
        _parse_complex(payload["psi_perp"], dim, "psi_perp")
        if "psi_perp" in payload
        else None
    )
    return out


def _pairs(arr: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.ravel(arr, order="C")]


def problem_payload(a, b, psi, g: Metric | None = None,
                    formalism: str = "plain", psi_perp=None) -> dict:
    """Serialize one problem to the JSON problem-file schema."""
    a = np.asarray(a, dtype=complex)
    payload = {
        "dim": int(a.shape[0]),
        "A": _pairs(a),
        "B": _pairs(np.asarray(b, dtype=complex)),
        "psi": _pairs(np.asarray(psi, dtype=complex)),
        "formalism": formalism,
    }
    if g is not None and not g.is_identity:
        payload["G"] = _pairs(g.g)
    if psi_perp is not None:
        payload["psi_perp"] = _pairs(np.asarray(psi_perp, dtype=complex))
    return payload


def _normalize_if_needed(vec: np.ndarray, metric: Metric, name: str) -> np.ndarray:
    """Leave exactly-normalized input untouched so results are reproducible
    bit for bit; rescale only when the norm is visibly off."""
    nsq = complex(np.vdot(vec, metric.g @ vec)).real
    if abs(nsq - 1.0) <= EPS_NORM:
        return vec
    if nsq <= 0.0:
        raise ProblemParseError(
            f"{name} has non-positive metric norm^2 = {nsq:.6g}"
        )
    return vec / math.sqrt(nsq)


def _evaluation_record(ev) -> dict:
    return {
        "relation": ev.relation,
        "formalism": ev.formalism.value,
        "sign_branch": ev.sign_branch,
        "lhs": ev.lhs,
        "rhs": ev.rhs,
        "gap": ev.gap,
        "holds": ev.holds,
        "degenerate": ev.degenerate,
    }


def cmd_check(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            payload = json.load(fh, parse_constant=_reject_constant)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    problem = parse_problem(payload)
    report: dict = {"dim": problem["dim"],
                    "formalism": problem["formalism"].value}
    tol = ur_tolerance()
    report["tolerance_ur"] = tol
    if problem["g"] is not None:
        metric_report = validate_metric(problem["g"])
        report["metric"] = {
            "provenance": "explicit",
            "hermitian": metric_report.hermitian,
            "positive_definite": metric_report.positive_definite,
            "min_eigenvalue": metric_report.min_eigenvalue,
        }
        if not metric_report.ok:
            report["error"] = "metric failed validation"
            _write_report(args.out, report)
            print("error: metric failed validation "
                  f"(hermitian={_bool(metric_report.hermitian)}, "
                  f"positive_definite={_bool(metric_report.positive_definite)})",
                  file=sys.stderr)
            return 2
        metric = metric_from_matrix(problem["g"])
    else:
        metric = identity_metric(problem["dim"])
        report["metric"] = {
            "provenance": "identity",
            "hermitian": True,
            "positive_definite": True,
            "min_eigenvalue": 1.0,
        }
    check_a = is_good_observable(problem["a"], metric)
    check_b = is_good_observable(problem["b"], metric)
    report["good_observable"] = {
        "A": {"is_good": check_a.is_good, "residual": check_a.residual},
        "B": {"is_good": check_b.is_good, "residual": check_b.residual},
    }
    stats_metric = (
        identity_metric(problem["dim"])
        if problem["formalism"] is Formalism.PLAIN
        else metric
    )
    psi = _normalize_if_needed(problem["psi"], stats_metric, "psi")
    psi_perp = problem["psi_perp"]
    if psi_perp is not None:
        psi_perp = _normalize_if_needed(psi_perp, stats_metric, "psi_perp")
    evaluations = evaluate_all(
        problem["a"], problem["b"], psi, metric, problem["formalism"],
        psi_perp=psi_perp, ur_tol=tol,
    )
    report["evaluations"] = [_evaluation_record(ev) for ev in evaluations]
    all_hold = all(ev.holds for ev in evaluations)
    report["all_hold"] = all_hold
    _write_report(args.out, report)
    print(f"metric: hermitian={_bool(report['metric']['hermitian'])} "
          f"positive_definite={_bool(report['metric']['positive_definite'])}")
    print(f"good observable A: residual={check_a.residual:.6g} "
          f"-> {_bool(check_a.is_good)}")
    print(f"good observable B: residual={check_b.residual:.6g} "
          f"-> {_bool(check_b.is_good)}")
    for ev in evaluations:
        branch = f" branch={ev.sign_branch}" if ev.sign_branch else ""
        degen = " degenerate" if ev.degenerate else ""
        print(f"{ev.relation}: lhs={ev.lhs:.12g} rhs={ev.rhs:.12g} "
              f"gap={ev.gap:.12g} holds={_bool(ev.holds)}{branch}{degen}")
    if all_hold:
        print(f"all inequalities hold (tolerance {tol:g})")
        return 0
    print(f"inequality violation beyond tolerance {tol:g}")
    return 1


def _write_report(path, report: dict) -> None:
    if path:
        with open(path, "w", encoding="ascii", newline="") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")


def cmd_metric(args) -> int:
    gamma = args.gamma
    phase = args.phase
    if phase is None:
        phase = SYMMETRIC if gamma * gamma < 1.0 else BROKEN
    Example2Config(gamma=gamma, p=0.0, phase=phase).validated()
    sys_ = (
        symmetric_eigensystem(gamma) if phase == SYMMETRIC
        else broken_eigensystem(gamma)
    )
    h = pt_hamiltonian(gamma)
    metric = metric_from_right_eigenvectors(sys_, hamiltonian=h)
    rep = metric.validation
    print(f"phase: {phase}, gamma = {gamma:g}")
    print("G =")
    for row in metric.g:
        cells = "  ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in row)
        print(f"  [ {cells} ]")
    eigs = np.linalg.eigvalsh(metric.g)
    print("eigenvalues: " + ", ".join(f"{v:.12g}" for v in eigs))
    print(f"hermitian: {_bool(rep.hermitian)}")
    print(f"positive definite: {_bool(rep.positive_definite)} "
          f"(min eigenvalue {rep.min_eigenvalue:.6g})")
    print(f"stationarity residual |GH - H^dag G|_F vs H(gamma): "
          f"{rep.stationarity_residual:.6g}")
    table = [
        ("H(gamma)", h),
        ("H(1/gamma)", pt_hamiltonian(1.0 / gamma) if gamma != 0 else None),
        ("sigma_x", np.array(SIGMA_X)),
        ("sigma_y", np.array(SIGMA_Y)),
        ("sigma_z", np.array(SIGMA_Z)),
    ]
    print("good observables:")
    for name, op in table:
        if op is None:
            continue
        check = is_good_observable(as_operator(op), metric)
        print(f"  {name:<12} residual={check.residual:.6g} "
              f"-> {_bool(check.is_good)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhur",
        description="Sum uncertainty relations for non-Hermitian operators "
                    "under a Hilbert-space metric",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser(
        "example1",
        help="sweep the polar-part operator pair over theta0 in [0, pi]",
    )
    p1.add_argument("--points", type=int, default=721,
                    help="grid size including endpoints (default 721)")
    p1.add_argument("--theta1", type=float, default=math.pi / 4)
    p1.add_argument("--theta3", type=float, default=math.pi / 3)
    p1.add_argument("--theta5", type=float, default=math.pi / 4)
    p1.add_argument("--theta7", type=float, default=3 * math.pi / 4)
    p1.add_argument("--out", required=True, help="CSV output path")
    p1.set_defaults(func=cmd_example1)

    p2 = sub.add_parser(
        "example2",
        help="sweep the PT-model scenario over alpha in [0, 2 pi]",
    )
    p2.add_argument("--phase", choices=(SYMMETRIC, BROKEN), required=True)
    p2.add_argument("--gamma", type=float, default=None,
                    help="defaults to 0.9 (symmetric) or 1.2 (broken)")
    p2.add_argument("--p", type=float, default=None,
                    help="superposition weight, defaults 0.5 / 1.5 by phase")
    p2.add_argument("--points", type=int, default=721)
    p2.add_argument("--formalism", choices=("plain", "gmetric", "good"),
                    default="good")
    p2.add_argument("--out", required=True, help="CSV output path")
    p2.set_defaults(func=cmd_example2)

    pc = sub.add_parser("check", help="evaluate one problem from a JSON file")
    pc.add_argument("--input", required=True, help="problem JSON path")
    pc.add_argument("--out", default=None, help="report JSON path (optional)")
    pc.set_defaults(func=cmd_check)

    pm = sub.add_parser(
        "metric",
        help="print metric diagnostics for the PT model at one gamma",
    )
    pm.add_argument("--gamma", type=float, required=True)
    pm.add_argument("--phase", choices=(SYMMETRIC, BROKEN), default=None,
                    help="inferred from gamma when omitted")
    pm.set_defaults(func=cmd_metric)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NhurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
