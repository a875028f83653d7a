"""Command-line front end.

Subcommands: greens, projectors, condition, solve, experiment, verify.
Numeric output uses 17 significant digits, which round-trips doubles
exactly; every subcommand is deterministic given its inputs and the seed.

Exit codes: 0 success, 1 verify threshold exceeded, 2 usage or parse error,
3 dichotomy violation, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bounded import (
    ForcingFunction,
    bounded_solution,
    constant_forcing,
    load_forcing_table,
    trig_forcing,
)
from .experiment import ExperimentConfig, run_experiment
from .greens import GreensEvaluator, verify_greens
from .matrices import EigenvalueConvergenceError, load_matrix, matrix_to_json_dict
from .quadrature import QuadratureError, QuadratureSpec
from .sensitivity import condition_bound
from .spectrum import DichotomyError

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_USAGE = 2
EXIT_DICHOTOMY = 3
EXIT_NONCONVERGENCE = 4


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _complex_cells(z: complex) -> list[str]:
    return [_fmt(z.real), _fmt(z.imag)]


def _quad_spec(args) -> QuadratureSpec:
    return QuadratureSpec(horizon=args.horizon, rel_tol=args.rel_tol)


def _nonzero_times(values) -> list[float]:
    ts = [float(v) for v in values]
    if any(t == 0.0 for t in ts):
        raise ValueError("t = 0 is not allowed: the Green's function jumps there")
    return ts


# ---------------------------------------------------------------------------
# Subcommand handlers; each returns (text, exit_code)
# ---------------------------------------------------------------------------


def cmd_greens(args) -> tuple[str, int]:
    a = load_matrix(args.matrix)
    ts = _nonzero_times(args.t)
    ev = GreensEvaluator(a, axis_tol=args.axis_tol)
    n = a.shape[0]
    if args.format == "json":
        payload = [
            {"t": t, "matrix": matrix_to_json_dict(ev.green(t))} for t in ts
        ]
        return json.dumps(payload, indent=2), EXIT_OK
    header = ["t"]
    for i in range(n):
        for j in range(n):
            header += [f"re_{i}_{j}", f"im_{i}_{j}"]
    lines = [",".join(header)]
    for t in ts:
        cells = [_fmt(t)]
        for z in ev.green(t).ravel():
            cells += _complex_cells(z)
        lines.append(",".join(cells))
    return "\n".join(lines), EXIT_OK


def cmd_projectors(args) -> tuple[str, int]:
    a = load_matrix(args.matrix)
    ev = GreensEvaluator(a, axis_tol=args.axis_tol)
    p_plus, p_minus = ev.projectors()
    ident = np.eye(a.shape[0], dtype=complex)
    residual = float(np.linalg.norm(p_plus - p_minus - ident, 2))
    if args.format == "json":
        payload = {
            "p_plus": matrix_to_json_dict(p_plus),
            "p_minus": matrix_to_json_dict(p_minus),
            "partition_residual": residual,
        }
        return json.dumps(payload, indent=2), EXIT_OK
    n = a.shape[0]
    header = ["matrix", "row"]
    for j in range(n):
        header += [f"re_{j}", f"im_{j}"]
    lines = [",".join(header)]
    for name, mat in (("P_plus", p_plus), ("P_minus", p_minus)):
        for i in range(n):
            cells = [name, str(i)]
            for z in mat[i]:
                cells += _complex_cells(z)
            lines.append(",".join(cells))
    lines.append(f"partition_residual,,{_fmt(residual)}")
    return "\n".join(lines), EXIT_OK


def cmd_condition(args) -> tuple[str, int]:
    a = load_matrix(args.matrix)
    ts = _nonzero_times(args.t)
    ev = GreensEvaluator(a, axis_tol=args.axis_tol)
    spec = _quad_spec(args)
    estimates = [condition_bound(a, t, spec, ev) for t in ts]
    if args.format == "json":
        payload = [
            {
                "t": e.t,
                "bound": e.bound,
                "spectrum_extent": e.spectrum_extent,
                "truncation_error_est": e.truncation_error_est,
            }
            for e in estimates
        ]
        return json.dumps(payload, indent=2), EXIT_OK
    lines = ["t,bound,spectrum_extent,truncation_error_est"]
    for e in estimates:
        lines.append(
            ",".join(
                [_fmt(e.t), _fmt(e.bound), _fmt(e.spectrum_extent), _fmt(e.truncation_error_est)]
            )
        )
    return "\n".join(lines), EXIT_OK


def _resolve_forcing(args, n: int) -> ForcingFunction:
    if args.forcing is not None:
        f = load_forcing_table(args.forcing)
        if f.dimension != n:
            raise ValueError(
                f"forcing table dimension {f.dimension} does not match matrix size {n}"
            )
        return f
    if args.builtin == "ones":
        return constant_forcing(np.ones(n))
    return trig_forcing(n)


def cmd_solve(args) -> tuple[str, int]:
    a = load_matrix(args.matrix)
    n = a.shape[0]
    f = _resolve_forcing(args, n)
    ev = GreensEvaluator(a, axis_tol=args.axis_tol)
    spec = _quad_spec(args)
    grid = [float(t) for t in args.grid]
    h = args.fd_step
    if f.table_window is not None:
        lo, hi = f.table_window
        outside = [t for t in grid if t < lo or t > hi]
        if outside:
            print(
                f"warning: grid points {outside} lie outside the forcing table "
                f"window [{lo:g}, {hi:g}]; the forcing is extended by constant "
                "continuation there",
                file=sys.stderr,
            )
    rows = []
    for t in grid:
        x = bounded_solution(a, f, t, spec, ev)
        deriv = (
            bounded_solution(a, f, t + h, spec, ev)
            - bounded_solution(a, f, t - h, spec, ev)
        ) / (2.0 * h)
        residual = float(np.linalg.norm(deriv - a @ x - f(t)))
        rows.append((t, x, residual))
    if args.format == "json":
        payload = [
            {
                "t": t,
                "x": [[z.real, z.imag] for z in x],
                "residual": residual,
                "extrapolated": bool(
                    f.table_window is not None
                    and not (f.table_window[0] <= t <= f.table_window[1])
                ),
            }
            for t, x, residual in rows
        ]
        return json.dumps(payload, indent=2), EXIT_OK
    header = ["t"]
    for i in range(n):
        header += [f"x_re_{i}", f"x_im_{i}"]
    header.append("residual")
    lines = [",".join(header)]
    for t, x, residual in rows:
        cells = [_fmt(t)]
        for z in x:
            cells += _complex_cells(z)
        cells.append(_fmt(residual))
        lines.append(",".join(cells))
    return "\n".join(lines), EXIT_OK


def cmd_experiment(args) -> tuple[str, int]:
    config = ExperimentConfig(
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        t_grid=tuple(_nonzero_times(args.t_grid)),
        axis_tol=args.axis_tol,
        quad=_quad_spec(args),
        with_condition_bounds=not args.no_bounds,
    )
    result = run_experiment(config)
    if args.format == "json":
        payload = {
            "config": {
                "n": config.n,
                "trials": config.trials,
                "seed": config.seed,
                "t_grid": list(config.t_grid),
            },
            "trials": [
                {
                    "trial": r.trial,
                    "n": r.n,
                    "seed": r.seed,
                    "resamples": r.resamples,
                    "max_residual": r.max_residual,
                    "oracle_deviation": r.oracle_deviation,
                    "bound_pos": r.bound_pos,
                    "bound_neg": r.bound_neg,
                    "grid_deviations": list(r.grid_deviations),
                }
                for r in result.rows
            ],
            "summary": result.summary(),
        }
        return json.dumps(payload, indent=2), EXIT_OK
    ngrid = len(config.t_grid)
    header = [
        "trial",
        "n",
        "seed",
        "resamples",
        "max_residual",
        "oracle_deviation",
        "bound_pos",
        "bound_neg",
    ] + [f"dev_{i}" for i in range(ngrid)]
    lines = [",".join(header)]
    for r in result.rows:
        cells = [
            str(r.trial),
            str(r.n),
            str(r.seed),
            str(r.resamples),
            _fmt(r.max_residual),
            _fmt(r.oracle_deviation),
            _fmt(r.bound_pos),
            _fmt(r.bound_neg),
        ] + [_fmt(d) for d in r.grid_deviations]
        lines.append(",".join(cells))
    # aggregate rows: each numeric column reduced by the named statistic
    columns = {
        "resamples": [float(r.resamples) for r in result.rows],
        "max_residual": [r.max_residual for r in result.rows],
        "oracle_deviation": [r.oracle_deviation for r in result.rows],
        "bound_pos": [r.bound_pos for r in result.rows],
        "bound_neg": [r.bound_neg for r in result.rows],
    }
    for i in range(ngrid):
        columns[f"dev_{i}"] = [r.grid_deviations[i] for r in result.rows]

    def reduce(stat, vals):
        arr = np.array(vals)
        arr = arr[np.isfinite(arr)]
        if arr.size == 0:
            return math.nan
        if stat == "median":
            return float(np.median(arr))
        if stat == "q90":
            return float(np.quantile(arr, 0.9))
        return float(arr.max())

    for stat in ("median", "q90", "max"):
        cells = [stat, str(config.n), str(config.seed)]
        cells.append(_fmt(reduce(stat, columns["resamples"])))
        for name in ("max_residual", "oracle_deviation", "bound_pos", "bound_neg"):
            cells.append(_fmt(reduce(stat, columns[name])))
        for i in range(ngrid):
            cells.append(_fmt(reduce(stat, columns[f"dev_{i}"])))
        lines.append(",".join(cells))
    return "\n".join(lines), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    a = load_matrix(args.matrix)
    ev = GreensEvaluator(a, axis_tol=args.axis_tol)
    samples = _nonzero_times(args.samples)
    if any(t < 0.0 for t in samples):
        raise ValueError("verify samples must be positive (both signs are probed)")
    report = verify_greens(a, ev.products, samples)
    code = EXIT_OK
    if args.fail_above is not None and report.max_residual() > args.fail_above:
        code = EXIT_THRESHOLD
    if args.format == "json":
        payload = report.as_dict()
        payload["max_residual"] = report.max_residual()
        return json.dumps(payload, indent=2), code
    lines = [f"{name}  {_fmt(value)}" for name, value in report.as_dict().items()]
    lines.append(f"max_residual  {_fmt(report.max_residual())}")
    return "\n".join(lines), code


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="greensfn",
        description=(
            "Green's function of the bounded-solutions problem x' = Ax + f "
            "via Newton interpolation: evaluation, spectral projectors, "
            "condition bounds, bounded solutions, and a random-ensemble "
            "experiment harness."
        ),
    )
    p.add_argument("--axis-tol", type=float, default=None, help="dichotomy tolerance (default 1e-8 * max(1, ||A||))")
    p.add_argument("--horizon", type=float, default=None, help="truncation horizon T (default 40/gap)")
    p.add_argument("--rel-tol", type=float, default=1e-9, help="quadrature relative tolerance")
    p.add_argument("--seed", type=int, default=0, help="root RNG seed for the experiment harness")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path, default=None, help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("greens", help="evaluate the Green's matrix at sample times")
    sp.add_argument("matrix", type=Path)
    sp.add_argument("t", type=float, nargs="+")
    sp.set_defaults(handler=cmd_greens)

    sp = sub.add_parser("projectors", help="spectral projectors P+ and P-")
    sp.add_argument("matrix", type=Path)
    sp.set_defaults(handler=cmd_projectors)

    sp = sub.add_parser("condition", help="condition bound, spectral extent, truncation estimate")
    sp.add_argument("matrix", type=Path)
    sp.add_argument("t", type=float, nargs="+")
    sp.set_defaults(handler=cmd_condition)

    sp = sub.add_parser("solve", help="bounded solution on a time grid")
    sp.add_argument("matrix", type=Path)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--forcing", type=Path, default=None, help="forcing table CSV")
    group.add_argument("--builtin", choices=("ones", "trig"), default=None)
    sp.add_argument("--grid", type=float, nargs="+", required=True)
    sp.add_argument("--fd-step", type=float, default=1e-3, help="step for the residual probe")
    sp.set_defaults(handler=cmd_solve)

    sp = sub.add_parser("experiment", help="random-ensemble harness")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--t-grid", type=float, nargs="+", default=[1.0, -1.0])
    sp.add_argument("--no-bounds", action="store_true", help="skip the condition bounds")
    sp.set_defaults(handler=cmd_experiment)

    sp = sub.add_parser("verify", help="residuals of the defining identities")
    sp.add_argument("matrix", type=Path)
    sp.add_argument("--samples", type=float, nargs="+", default=[0.5, 1.0])
    sp.add_argument("--fail-above", type=float, default=None)
    sp.set_defaults(handler=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.handler(args)
    except DichotomyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DICHOTOMY
    except (QuadratureError, EigenvalueConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output is not None:
        args.output.write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
