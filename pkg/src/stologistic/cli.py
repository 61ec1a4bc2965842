"""Command-line frontend.

Subcommands: roots, moments, sweep, figure, simulate, verify.  Output is
a pure function of the flags (seed included): JSON on stdout for the
analysis commands, CSV/SVG files for sweeps.  Exit codes: 0 ok,
2 validation error, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .cubic import ModelParams
from .errors import NumericalError, ValidationError
from .feasibility import (
    DEFAULT_MU_MAX,
    DEFAULT_MU_MIN,
    DEFAULT_POINTS,
    DEFAULT_REFINE_TOL,
    GridSpec,
    compare_sweeps,
    infeasible_intervals,
    sweep_mu,
)
from .moments import NormalParams
from .montecarlo import MIN_SAMPLES, EpsilonSpec, simulate_step, verify_root
from .output import (
    branch_svg,
    classification_document,
    comparison_document,
    curve_to_csv,
    moments_document,
    render_json,
    sim_report_document,
    verify_document,
)
from .roots import classify

# Figure-reproduction presets: (label, (alpha, beta, v)) pairs.
FIGURE_PRESETS: dict[str, tuple[tuple[str, tuple[float, float, float]], ...]] = {
    "fig3": (
        ("alpha=1.1", (1.1, 1.1, 1.2)),
        ("alpha=1.4", (1.4, 1.1, 1.2)),
    ),
    "fig4": (
        ("beta=1.1", (0.5, 1.1, 1.2)),
        ("beta=1.9", (0.5, 1.9, 1.2)),
    ),
    "fig5": (
        ("v=1.2", (0.5, 1.0, 1.2)),
        ("v=2.2", (0.5, 1.0, 2.2)),
    ),
}


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _emit(args: argparse.Namespace, text: str) -> None:
    sys.stdout.write(text)
    if getattr(args, "output", None):
        _write_text(args.output, text)


def _check_simulation_flags(n: int, z: float | None, threads: int) -> None:
    if n < MIN_SAMPLES:
        raise ValidationError(f"--n must be >= {MIN_SAMPLES}, got {n}")
    if z is not None and z <= 0.0:
        raise ValidationError(f"--z must be > 0, got {z}")
    if threads < 1:
        raise ValidationError(f"--threads must be >= 1, got {threads}")


def cmd_roots(args: argparse.Namespace) -> int:
    params = ModelParams(alpha=args.alpha, beta=args.beta, v=args.v, mu=args.mu)
    doc = classification_document(params, classify(params))
    _emit(args, render_json(doc))
    return 0


def cmd_moments(args: argparse.Namespace) -> int:
    p = NormalParams(mu=args.mu, sigma2=args.sigma2)
    _emit(args, render_json(moments_document(p)))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    _check_simulation_flags(args.n, None, args.threads)
    report = simulate_step(
        NormalParams(mu=args.mu, sigma2=args.sigma2),
        args.r,
        EpsilonSpec(v=args.v),
        args.n,
        args.seed,
        args.threads,
    )
    _emit(args, render_json(sim_report_document(report)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    _check_simulation_flags(args.n, args.z, args.threads)
    params = ModelParams(alpha=args.alpha, beta=args.beta, v=args.v, mu=args.mu)
    cls = classify(params)
    results = [
        verify_root(params, value, args.n, args.seed, args.z, args.threads)
        for value, _ in cls.positive_roots
    ]
    _emit(args, render_json(verify_document(params, args.n, args.seed, args.z, results)))
    return 0


def _grid_from_args(args: argparse.Namespace) -> GridSpec:
    return GridSpec(mu_min=args.mu_min, mu_max=args.mu_max, points=args.points)


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.refine_tol <= 0.0:
        raise ValidationError(f"--refine-tol must be > 0, got {args.refine_tol}")
    curve = sweep_mu(args.alpha, args.beta, args.v, _grid_from_args(args))
    _write_text(args.output, curve_to_csv(curve))
    print(f"wrote {args.output}", file=sys.stderr)
    if args.svg:
        intervals = infeasible_intervals(curve, args.refine_tol)
        _write_text(args.svg, branch_svg(curve, intervals))
        print(f"wrote {args.svg}", file=sys.stderr)
    return 0


def cmd_figure(args: argparse.Namespace) -> int:
    presets = FIGURE_PRESETS[args.figure_id]
    os.makedirs(args.output_dir, exist_ok=True)
    grid = GridSpec()

    curves = []
    for tag, (label, (alpha, beta, v)) in zip(("baseline", "variant"), presets):
        curve = sweep_mu(alpha, beta, v, grid)
        curves.append((label, curve))
        stem = os.path.join(args.output_dir, f"{args.figure_id}_{tag}")
        _write_text(stem + ".csv", curve_to_csv(curve))
        intervals = infeasible_intervals(curve)
        _write_text(stem + ".svg", branch_svg(curve, intervals))
        print(f"wrote {stem}.csv and {stem}.svg", file=sys.stderr)

    (label_a, curve_a), (label_b, curve_b) = curves
    report = compare_sweeps(curve_a, curve_b)
    doc = comparison_document(
        report,
        label_a,
        {"alpha": curve_a.alpha, "beta": curve_a.beta, "v": curve_a.v},
        label_b,
        {"alpha": curve_b.alpha, "beta": curve_b.beta, "v": curve_b.v},
    )
    path = os.path.join(args.output_dir, f"{args.figure_id}_comparison.json")
    _write_text(path, render_json(doc))
    print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stologistic",
        description=(
            "Growth-rate branch analysis for the stochastic logistic map "
            "with normally distributed population state."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=float, required=True, help="mean scaling factor (> 0)")
        p.add_argument("--beta", type=float, required=True, help="variance scaling factor (> 0)")
        p.add_argument("--v", type=float, required=True, help="perturbation second moment E[eps^2]")
        p.add_argument("--mu", type=float, required=True, help="population mean in (0, 1)")

    def add_output_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", help="also write the JSON document to this path")

    p_roots = sub.add_parser("roots", help="classify the growth-rate cubic")
    add_model_flags(p_roots)
    add_output_flag(p_roots)
    p_roots.set_defaults(handler=cmd_roots)

    p_mom = sub.add_parser("moments", help="closed-form normal moments")
    p_mom.add_argument("--mu", type=float, required=True)
    p_mom.add_argument("--sigma2", type=float, required=True)
    add_output_flag(p_mom)
    p_mom.set_defaults(handler=cmd_moments)

    p_sweep = sub.add_parser("sweep", help="sweep mu and write the branch-curve CSV")
    p_sweep.add_argument("--alpha", type=float, required=True)
    p_sweep.add_argument("--beta", type=float, required=True)
    p_sweep.add_argument("--v", type=float, required=True)
    p_sweep.add_argument("--mu-min", type=float, default=DEFAULT_MU_MIN)
    p_sweep.add_argument("--mu-max", type=float, default=DEFAULT_MU_MAX)
    p_sweep.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p_sweep.add_argument("--output", required=True, help="CSV output path")
    p_sweep.add_argument("--svg", help="optional SVG plot path")
    p_sweep.add_argument("--refine-tol", type=float, default=DEFAULT_REFINE_TOL)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a two-sweep comparison preset")
    p_fig.add_argument("figure_id", choices=sorted(FIGURE_PRESETS))
    p_fig.add_argument("--output-dir", default=".")
    p_fig.set_defaults(handler=cmd_figure)

    p_sim = sub.add_parser("simulate", help="simulate one step of the recurrence")
    p_sim.add_argument("--mu", type=float, required=True)
    p_sim.add_argument("--sigma2", type=float, required=True)
    p_sim.add_argument("--v", type=float, required=True)
    p_sim.add_argument("--r", type=float, required=True)
    p_sim.add_argument("--n", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--threads", type=int, default=1)
    add_output_flag(p_sim)
    p_sim.set_defaults(handler=cmd_simulate)

    p_ver = sub.add_parser("verify", help="Monte Carlo check of every positive root")
    add_model_flags(p_ver)
    p_ver.add_argument("--n", type=int, default=1_000_000)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--z", type=float, default=5.0, help="pass/fail threshold in standard errors")
    p_ver.add_argument("--threads", type=int, default=1)
    add_output_flag(p_ver)
    p_ver.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
