"""``cyk``: JSON-in/JSON-out front end and the acceptance runner.

Exit status: 0 when every check passes, 1 when a check or numerical step
fails, 2 for malformed input. Matrices are nested JSON arrays whose entries are
numbers, [re, im] pairs or strings such as "1+2j"; an argument naming an
existing file is read from that file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any, Sequence

import numpy as np

from . import acceptance, cover, curve, deform, domain, theta
from .errors import CykError, DimensionMismatch
from .exact import QI, parse_qi

SCHEMA = "cyk/1"
TOL_RANGE = (1e-14, 1e-2)


class InputError(CykError):
    code = "InvalidInput"


# --- input helpers ------------------------------------------------------------------


def _load(text: str) -> Any:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}") from None


def _scalar(x: Any) -> complex:
    if isinstance(x, bool):
        raise InputError("booleans are not numbers")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, str):
        try:
            return complex(x.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise InputError(f"cannot parse number {x!r}") from None
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise InputError(f"cannot parse number {x!r}")


def parse_vector(text: str) -> np.ndarray:
    data = _load(text)
    if not isinstance(data, list):
        data = [data]
    return np.array([_scalar(x) for x in data], dtype=complex)


def parse_matrix(text: str) -> np.ndarray:
    data = _load(text)
    if not isinstance(data, list) or _is_pair(data):
        return np.array([[_scalar(data)]], dtype=complex)
    if not all(isinstance(row, list) for row in data):
        raise InputError("a matrix must be a list of rows")
    rows = [[_scalar(x) for x in row] for row in data]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix rows must be nonempty and of equal length")
    return np.array(rows, dtype=complex)


def _is_pair(data: list) -> bool:
    return len(data) == 2 and all(isinstance(v, (int, float)) for v in data)


def parse_lambda(text: str) -> list[complex]:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise InputError("no branch points given")
    return [_scalar(p.strip()) for p in parts]


def parse_points(text: str) -> list[tuple[complex, int]]:
    """``"0.5+0.2j:1;2.5:-1"`` -> [(x, sheet), ...]."""
    out = []
    for item in text.split(";"):
        if not item.strip():
            continue
        x, _, s = item.partition(":")
        sheet = int(s) if s.strip() else 1
        if sheet not in (1, -1):
            raise InputError("sheet must be 1 or -1")
        out.append((_scalar(x.strip()), sheet))
    return out


# --- output helpers ------------------------------------------------------------------


def jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else str(v)
    return x


def _report(command: str, args: argparse.Namespace, result: dict, checks: dict[str, bool]) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "tol": args.tol,
        "seed": args.seed,
        "ok": all(checks.values()),
        "checks": checks,
        "result": result,
    }


# --- subcommands ------------------------------------------------------------------------


def cmd_periods(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    c = curve.new_curve(parse_lambda(args.lam))
    pm = curve.period_matrix(c, tol=args.tol)
    res = {"genus": c.genus, "branch_points": c.branch_points, "Z": pm.Z, "residuals": pm.residuals,
           "error_estimate": pm.error_estimate}
    checks = {"symmetric": pm.residuals["symmetry"] < 1e-6, "im_positive_definite": pm.residuals["min_eig_im"] > 0}
    return res, checks


def cmd_theta(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    Z = parse_matrix(args.Z)
    g = Z.shape[0]
    z = parse_vector(args.z) if args.z else np.zeros(g, dtype=complex)
    if z.shape != (g,):
        raise DimensionMismatch(f"z has length {z.shape[0]}, expected {g}")
    char = theta.ThetaCharacteristic.parse(args.char) if args.char else theta.ThetaCharacteristic.zero(g)
    if len(char.delta) != g:
        raise DimensionMismatch("characteristic length does not match Z")
    info = theta.theta_with_info(char, z, Z, tol=args.tol)
    return {"value": info.value, "characteristic": str(char), "radius": info.radius, "terms": info.terms}, {}


def cmd_abel(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    c = curve.new_curve(parse_lambda(args.lam))
    pm = curve.period_matrix(c, tol=args.tol)
    pts = parse_points(args.points)
    aj = curve.abel_jacobi(c, pm, pts, tol=args.tol)
    red = aj.reduced()
    return {"vector": aj.vector, "reduced": red.vector, "Z": pm.Z, "distance_to_zero": aj.distance_to_zero()}, {}


def cmd_domain(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    if args.action == "check":
        Z = parse_matrix(args.Z)
        margin = domain.domain_margin(Z)
        return {"margin": margin, "contains": margin > args.tol}, {"contains": margin > args.tol}
    M = parse_matrix(args.M)
    if M.shape[0] % 2:
        raise DimensionMismatch("M must be 2g x 2g")
    g = M.shape[0] // 2
    if args.action == "act":
        Z = parse_matrix(args.Z)
        if Z.shape != (g, g):
            raise DimensionMismatch("Z and M have incompatible sizes")
        checks = {"su": domain.su_check(M, 1e-10), "input_in_domain": domain.contains(Z)}
        out = domain.act(M, Z)
        checks["output_in_domain"] = domain.contains(out)
        return {"Z": out}, checks
    S = domain.embed_sp(M)
    J = domain.symplectic_form(g)
    resid = float(np.abs(S.T @ J @ S - J).max())
    return {"S": S, "symplectic_residual": resid}, {"su": domain.su_check(M, 1e-10), "symplectic": resid <= 1e-12 * max(1.0, float(np.abs(S).max()) ** 2)}


def cmd_wp(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    tau = parse_matrix(args.tau)
    if tau.shape != (args.g, args.g):
        raise DimensionMismatch(f"tau has shape {tau.shape}, expected ({args.g}, {args.g})")
    pairing = deform.wp_potential_pairing(tau)
    closed = deform.wp_potential(tau)
    metric = deform.wp_metric(tau)
    eig = float(np.linalg.eigvalsh(metric).min())
    curv = deform.wp_curvature(tau)
    rng = np.random.default_rng(args.seed)
    direction = rng.normal(size=tau.shape) + 1j * rng.normal(size=tau.shape)
    nab = deform.nabla_R_check(tau, direction)
    res = {"potential": closed, "potential_pairing_sum": pairing,
           "potential_discrepancy": abs(pairing - closed), "metric": metric, "metric_min_eig": eig,
           "curvature_max": float(np.abs(curv.R).max()), "nabla_R_max": nab.max}
    checks = {"pairing_matches_closed_form": abs(pairing - closed) <= 1e-12, "metric_positive": eig > 0,
              "nabla_R_small": nab.max < 1e-3}
    if args.g <= 2:
        rep = deform.metric_taylor_check(args.g, seed=args.seed)
        res["third_order_max"] = rep.odd_max
        checks["no_third_order"] = rep.odd_max < 1e-7
    else:
        res["third_order_max"] = None
    return res, checks


def cmd_cover(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    if args.lam:
        parts = [p.strip() for p in args.lam.replace(";", ",").split(",") if p.strip()]
        try:
            exact = [parse_qi(p) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"branch points must be exact rationals or Gaussian rationals: {exc}") from None
    else:
        exact = [QI.of(k) for k in range(2 * args.g + 1)]
    arr = cover.branch_arrangement(exact)
    if arr.g != args.g:
        raise DimensionMismatch(f"{len(lam)} branch points give g={arr.g}, not {args.g}")
    gp = cover.general_position(arr)
    res: dict[str, Any] = {"general_position": gp.ok, "violation": gp.violation}
    checks = {"general_position": gp.ok}
    if gp.ok:
        flats = cover.pairwise_intersections(arr)
        res["pairwise_flats"] = len(flats)
        res["flat_dimension"] = flats[0].dimension
        checks["flat_count"] = len(flats) == math.comb(2 * args.g + 2, 2)
    N = cover.group_N(args.g)
    res.update({"order_N": N.order, "index_N": N.index})
    checks["order_N"] = N.order == 2 ** (args.g - 1) * math.factorial(args.g) and N.index == 2
    inv = cover.invariance_report(args.g)
    res["invariance"] = {"N": inv.N_invariant, "full_group": inv.full_group_invariant, "classes": inv.classes}
    checks["invariance"] = inv.N_invariant
    if args.g >= 2:
        hd = cover.hodge_numbers(args.g)
        res["hodge"] = {"middle": hd.middle, "b2": hd.b2, "b2_flag": hd.b2_flag}
    return res, checks


def cmd_verify_all(args: argparse.Namespace) -> tuple[dict, dict[str, bool]]:
    results = acceptance.run_all(seed=args.seed, g_max=args.g)
    for r in results:
        print(r.line(), file=sys.stderr)
    return ({"criteria": [r.as_json() for r in results], "g_max": args.g},
            {f"criterion_{r.number}": r.passed for r in results})


# --- parser -----------------------------------------------------------------------------------


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not TOL_RANGE[0] <= v <= TOL_RANGE[1]:
        raise argparse.ArgumentTypeError(f"tolerance must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_tol, default=1e-10, help="numerical tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--report", help="also write the JSON report to this path")
    common.add_argument("--json", action="store_true", help="print the full JSON report on stdout")

    p = argparse.ArgumentParser(prog="cyk", description="Hyperelliptic periods, theta functions, "
                                "the domain D_{g,g} and its Weil-Petersson geometry.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("periods", parents=[common], help="normalized period matrix")
    s.add_argument("--lambda", dest="lam", required=True, help="branch points, e.g. 0,1,4")
    s.set_defaults(func=cmd_periods)

    s = sub.add_parser("theta", parents=[common], help="Riemann theta with characteristic")
    s.add_argument("--Z", required=True, help="period matrix (JSON or file)")
    s.add_argument("--z", help="argument vector (JSON or file), default 0")
    s.add_argument("--char", help="characteristic 'delta,epsilon', e.g. 01,10")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("abel", parents=[common], help="Abel-Jacobi image of a divisor")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--points", required=True, help="'x:sheet;x:sheet', sheet = +1 or -1")
    s.set_defaults(func=cmd_abel)

    s = sub.add_parser("domain", parents=[common], help="the domain D_{g,g} and SU(g,g)")
    s.add_argument("action", choices=["check", "act", "embed"])
    s.add_argument("--Z", help="g x g matrix")
    s.add_argument("--M", help="2g x 2g matrix")
    s.set_defaults(func=cmd_domain)

    s = sub.add_parser("wp", parents=[common], help="Weil-Petersson potential, metric, curvature")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--tau", required=True, help="g x g matrix or scalar (JSON or file)")
    s.set_defaults(func=cmd_wp)

    s = sub.add_parser("cover", parents=[common], help="arrangement and covering-group checks")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--lambda", dest="lam", help="2g+1 exact branch points (default 0..2g)")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance criteria")
    s.add_argument("--g", type=int, default=None, help="cap on the genus used by each criterion")
    s.set_defaults(func=cmd_verify_all)
    return p


def _emit(report: dict, args: argparse.Namespace) -> None:
    text = json.dumps(jsonable(report), sort_keys=True, indent=2)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if getattr(args, "json", False) or not getattr(args, "report", None):
        print(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "domain":
            need = {"check": ["Z"], "act": ["M", "Z"], "embed": ["M"]}[args.action]
            missing = [n for n in need if getattr(args, n) is None]
            if missing:
                parser.error(f"domain {args.action} needs --" + ", --".join(missing))
        if args.command in ("cover", "wp") and args.g < 1:
            parser.error("--g must be positive")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, checks = args.func(args)
    except CykError as exc:
        report = {"schema": SCHEMA, "command": args.command, "tol": args.tol, "seed": args.seed, "ok": False,
                  "error": {"code": exc.code, "message": str(exc)}}
        _emit(report, args)
        return exc.exit_status
    except (ValueError, TypeError) as exc:
        report = {"schema": SCHEMA, "command": args.command, "tol": args.tol, "seed": args.seed, "ok": False,
                  "error": {"code": "InvalidInput", "message": str(exc)}}
        _emit(report, args)
        return 2
    report = _report(args.command, args, result, checks)
    _emit(report, args)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
