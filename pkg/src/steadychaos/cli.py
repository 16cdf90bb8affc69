"""Command-line front end emitting machine-readable scan, simulation, and
verdict data.

Exit codes: 0 success, 1 usage/parse error, 2 infeasible domain input,
3 numerical failure (no root in range, divergence).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import chaos, equilibrium, mean_dynamics, selfcheck, simulate
from .equilibrium import InfeasibleError, NoRootError, NoiseSpec
from .gamma_core import GammaParams

# Fixed default so bare invocations are reproducible.
DEFAULT_SEED = 20250823

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the exit-code contract reserves 2
    # for infeasible inputs
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return str(value)


def _emit(header: list[str], rows: list[list], fmt: str, output: Optional[str]) -> None:
    lines = []
    if fmt == "csv":
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
    else:
        for row in rows:
            obj = {
                key: (bool(v) if isinstance(v, (bool, np.bool_)) else v)
                for key, v in zip(header, row)
            }
            lines.append(json.dumps(obj))
    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


def _solve(map_kind: str, k: float, var_eps: float, r_max: float):
    if map_kind == "logistic":
        return equilibrium.logistic_solve(k, var_eps)
    return equilibrium.ricker_solve(k, var_eps, r_max=r_max)


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    sol = _solve(args.map, args.k, args.var_eps, args.r_max)
    print(f"map={sol.map} k={_fmt(sol.k)} var_eps={_fmt(sol.var_eps)} bound_var={_fmt(sol.bound_var)}")
    for b in sol.branches:
        print(
            f"branch={b.label} r={_fmt(b.r)} theta={_fmt(b.theta)}"
            + (" degenerate" if b.degenerate else "")
        )
    if sol.roots_beyond_rmax:
        print(f"note: residual still positive at r_max={_fmt(args.r_max)}; roots may exist beyond it")
    return EXIT_OK


def cmd_scan(args) -> int:
    header = ["k", "var_eps", "branch", "r", "theta", "feasible"]
    grid = np.linspace(0.0, args.var_eps_max, args.steps)
    rows = []
    for k in args.k:
        for v in grid:
            v = float(v)
            try:
                sol = _solve(args.map, k, v, args.r_max)
            except (InfeasibleError, NoRootError):
                rows.append([k, v, "none", float("nan"), float("nan"), False])
                continue
            for b in sol.branches:
                rows.append([k, v, b.label, b.r, b.theta, True])
    _emit(header, rows, args.format, args.output)
    return EXIT_OK


def cmd_ricker_curve(args) -> int:
    header = ["k", "r"]
    rows = []
    for k in np.linspace(args.k_min, args.k_max, args.steps):
        sol = equilibrium.ricker_solve(float(k), 0.0, r_max=args.r_max)
        rows.append([float(k), sol.branches[0].r])
    _emit(header, rows, args.format, args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.x0 is not None and (args.init_k is not None or args.init_theta is not None):
        raise UsageError("give either --x0 or --init-k/--init-theta, not both")
    if args.x0 is not None:
        init = args.x0
    elif args.init_k is not None and args.init_theta is not None:
        init = GammaParams(args.init_k, args.init_theta)
    else:
        raise UsageError("initial condition required: --x0 or --init-k with --init-theta")
    stats = simulate.run_ensemble(
        simulate.MapSpec(args.map, args.r),
        init,
        NoiseSpec(args.noise_var, args.family),
        t_max=args.t_max,
        n_traj=args.n_traj,
        seed=args.seed,
        n_workers=args.n_workers,
    )
    header = ["t", "mean", "variance", "se_mean", "se_variance", "extinct_fraction"]
    rows = [
        [int(t), float(stats.mean[t]), float(stats.variance[t]),
         float(stats.se_mean[t]), float(stats.se_variance[t]), stats.extinct_fraction]
        for t in stats.times
    ]
    _emit(header, rows, args.format, args.output)
    print(f"extinct_fraction={_fmt(stats.extinct_fraction)} n_traj={stats.n_traj}", file=sys.stderr)
    return EXIT_OK


def cmd_stationarity(args) -> int:
    report = simulate.stationarity_check(
        args.map, args.k, args.var_eps, args.branch,
        n_traj=args.n_traj, seed=args.seed, family=args.family,
    )
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict} mean_z={_fmt(report.mean_z)} var_z={_fmt(report.var_z)}")
    return EXIT_OK


def cmd_bifurcate(args) -> int:
    records = chaos.bifurcation_scan(
        args.map, args.r_min, args.r_max, args.steps, samples_per_r=args.samples
    )
    header = ["r", "x_sample", "lyapunov"]
    rows = []
    for rec in records:
        for x in rec.samples:
            rows.append([rec.r, float(x), rec.lyapunov])
    _emit(header, rows, args.format, args.output)
    return EXIT_OK


def cmd_lyapunov(args) -> int:
    lam = chaos.lyapunov(args.map, args.r, x0=args.x0, burn_in=args.burn_in, iters=args.iters)
    print(f"lyapunov={_fmt(lam)}")
    return EXIT_OK


def cmd_transition(args) -> int:
    report = chaos.transition_report(args.map, args.k, args.var_eps)
    print("TRANSITION" if report.transition_found else "NO TRANSITION")
    for label, regime in report.branches:
        suffix = f" period={regime.period}" if regime.period is not None else ""
        print(
            f"branch={label} r={_fmt(regime.r)} regime={regime.regime} "
            f"lyapunov={_fmt(regime.lyapunov)}{suffix}"
        )
    return EXIT_OK


def cmd_converge(args) -> int:
    results = mean_dynamics.convergence_sweep(
        args.map, args.r, args.ladder, t_max=args.t_max,
        n_traj=args.n_traj, seed=args.seed,
    )
    header = ["var", "max_deviation"]
    rows = [[v, dev] for v, dev in results]
    _emit(header, rows, args.format, args.output)
    return EXIT_OK


def cmd_self_check(args) -> int:
    failures = 0
    for name, passed, detail in selfcheck.run_all():
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        failures += 0 if passed else 1
    return EXIT_OK if failures == 0 else EXIT_NUMERICAL


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="output file path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="steadychaos", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="equilibrium branches r+/- and theta for (k, var_eps)")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--var-eps", type=float, required=True)
    p.add_argument("--r-max", type=float, default=equilibrium.RICKER_DEFAULT_R_MAX)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("scan", help="branch curves r(var_eps) over a uniform grid")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--k", type=_comma_floats, required=True, help="comma-separated shape values")
    p.add_argument("--var-eps-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--r-max", type=float, default=equilibrium.RICKER_DEFAULT_R_MAX)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("ricker-curve", help="positive Ricker root r(k) at var_eps=0")
    p.add_argument("--k-min", type=float, default=0.5)
    p.add_argument("--k-max", type=float, default=100.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--r-max", type=float, default=equilibrium.RICKER_DEFAULT_R_MAX)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_ricker_curve)

    p = sub.add_parser("simulate", help="Monte Carlo ensemble statistics per time step")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--noise-var", type=float, default=0.0)
    p.add_argument("--family", choices=("gamma", "lognormal"), default="gamma")
    p.add_argument("--x0", type=float, default=None, help="point-mass initial condition")
    p.add_argument("--init-k", type=float, default=None, help="gamma initial shape")
    p.add_argument("--init-theta", type=float, default=None, help="gamma initial scale")
    p.add_argument("--t-max", type=int, default=50)
    p.add_argument("--n-traj", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n-workers", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("stationarity", help="one-step moment preservation z-test")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--var-eps", type=float, required=True)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--family", choices=("gamma", "lognormal"), default="gamma")
    p.add_argument("--n-traj", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_stationarity)

    p = sub.add_parser("bifurcate", help="attractor samples and Lyapunov exponents over r")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--samples", type=int, default=100)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_bifurcate)

    p = sub.add_parser("lyapunov", help="Lyapunov exponent of the deterministic map")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--burn-in", type=int, default=chaos.DEFAULT_BURN_IN)
    p.add_argument("--iters", type=int, default=chaos.DEFAULT_ITERS)
    p.set_defaults(handler=cmd_lyapunov)

    p = sub.add_parser("transition", help="steady-state-to-chaos verdict for (k, var_eps)")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--var-eps", type=float, required=True)
    p.set_defaults(handler=cmd_transition)

    p = sub.add_parser("converge", help="stochastic-to-deterministic convergence sweep")
    p.add_argument("--map", choices=("logistic", "ricker"), required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--ladder", type=_comma_floats, required=True,
                   help="strictly decreasing variance levels, e.g. 1e-2,1e-3,1e-4")
    p.add_argument("--t-max", type=int, default=20)
    p.add_argument("--n-traj", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_converge)

    p = sub.add_parser("self-check", help="run the built-in invariant battery")
    p.set_defaults(handler=cmd_self_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc} (bound={_fmt(exc.bound)})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (NoRootError, chaos.DivergenceError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
