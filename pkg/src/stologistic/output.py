"""Serialization: canonical JSON, the sweep CSV schema, and SVG plots.

Every emitter here is a pure function of its inputs, producing the same
bytes on every run: JSON is rendered with sorted keys and Python's
shortest-round-trip float repr, CSV renders floats with 17 significant
digits (lossless for doubles), and the SVG writer uses fixed-precision
coordinates with no timestamps or generated ids.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .cubic import CubicCoeffs, ModelParams, build_coefficients
from .feasibility import BranchCurve, ComparisonReport, Status
from .moments import NormalParams, normal_raw_moment, structural_second_moment
from .montecarlo import SimReport, VerifyResult
from .roots import RootClassification

CSV_HEADER = "mu,status,lower_r,upper_r,lower_sigma2,upper_sigma2"


def render_json(doc: dict[str, Any]) -> str:
    """Canonical JSON bytes: parse-and-reserialize is the identity."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _f17(value: float | None) -> str:
    return "" if value is None else format(value, ".17g")


def curve_to_csv(curve: BranchCurve) -> str:
    """Render a sweep as CSV, one row per grid point, empty for absent."""
    lines = [CSV_HEADER]
    for row in curve.rows:
        lines.append(
            ",".join(
                (
                    _f17(row.mu),
                    row.status.value,
                    _f17(row.lower_r),
                    _f17(row.upper_r),
                    _f17(row.lower_sigma2),
                    _f17(row.upper_sigma2),
                )
            )
        )
    return "\n".join(lines) + "\n"


def params_document(params: ModelParams) -> dict[str, Any]:
    return {
        "alpha": params.alpha,
        "beta": params.beta,
        "v": params.v,
        "mu": params.mu,
    }


def coeffs_document(coeffs: CubicCoeffs) -> dict[str, Any]:
    return {"a": coeffs.a, "b": coeffs.b, "c": coeffs.c, "d": coeffs.d}


def classification_document(
    params: ModelParams, cls: RootClassification
) -> dict[str, Any]:
    stationary = None
    if cls.stationary is not None:
        stationary = {"r_minus": cls.stationary[0], "r_plus": cls.stationary[1]}
    return {
        "params": params_document(params),
        "coefficients": coeffs_document(build_coefficients(params)),
        "negative_root": cls.negative_root,
        "positive_roots": [
            {"value": value, "multiplicity": mult}
            for value, mult in cls.positive_roots
        ],
        "delta": cls.delta,
        "stationary": stationary,
        "inflection": cls.inflection,
        "condition_holds": cls.condition_holds,
        "p_at_r_plus": cls.p_at_r_plus,
        "per_root_sigma2": [
            {
                "root": entry.root,
                "sigma2": entry.sigma2,
                "model_consistent": entry.model_consistent,
            }
            for entry in cls.per_root_sigma2
        ],
    }


def moments_document(p: NormalParams) -> dict[str, Any]:
    return {
        "mu": p.mu,
        "sigma2": p.sigma2,
        "raw_moments": [normal_raw_moment(p, n) for n in (1, 2, 3, 4)],
        "structural_second_moment": structural_second_moment(p),
    }


def sim_report_document(report: SimReport) -> dict[str, Any]:
    return {
        "n": report.n,
        "seed": report.seed,
        "alpha_hat": report.alpha_hat,
        "beta_hat": report.beta_hat,
        "se_alpha": report.se_alpha,
        "se_beta": report.se_beta,
        "mean_next": report.mean_next,
        "var_next": report.var_next,
        "mean_prev": report.mean_prev,
        "var_prev": report.var_prev,
    }


def verify_document(
    params: ModelParams,
    n: int,
    seed: int,
    z_threshold: float,
    results: list[VerifyResult],
) -> dict[str, Any]:
    return {
        "params": params_document(params),
        "n": n,
        "seed": seed,
        "z_threshold": z_threshold,
        "verdicts": [
            {
                "root": res.root,
                "sigma2": res.sigma2,
                "verdict": res.verdict,
                "alpha_target": res.alpha_target,
                "beta_target": res.beta_target,
                "report": None if res.report is None else sim_report_document(res.report),
            }
            for res in results
        ],
    }


def comparison_document(
    report: ComparisonReport,
    label_a: str,
    base_a: dict[str, Any],
    label_b: str,
    base_b: dict[str, Any],
) -> dict[str, Any]:
    return {
        "curve_a": {"label": label_a, **base_a},
        "curve_b": {"label": label_b, **base_b},
        "common_feasible": report.common_feasible,
        "lower_a_greater": report.lower_a_greater,
        "lower_b_greater": report.lower_b_greater,
        "upper_a_greater": report.upper_a_greater,
        "upper_b_greater": report.upper_b_greater,
        "infeasible_intervals_a": [list(iv) for iv in report.intervals_a],
        "infeasible_intervals_b": [list(iv) for iv in report.intervals_b],
        "a_contains_b": report.a_contains_b,
        "b_contains_a": report.b_contains_a,
        "deltas": [
            {"mu": d.mu, "lower_diff": d.lower_diff, "upper_diff": d.upper_diff}
            for d in report.deltas
        ],
    }


# --- SVG -----------------------------------------------------------------

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 64, 16, 34, 46
_UPPER_CLIP_QUANTILE = 0.98


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def branch_svg(curve: BranchCurve, intervals: list[tuple[float, float]]) -> str:
    """Static polyline plot of both branches with infeasible bands shaded.

    The upper branch diverges as mu approaches 1 (the leading coefficient
    vanishes there), which would flatten everything else under a naive
    autoscale; values above the 98th percentile of the plotted rates are
    clipped out, splitting the polyline.
    """
    xs_lo = [(r.mu, r.lower_r) for r in curve.rows if r.lower_r is not None]
    xs_up = [(r.mu, r.upper_r) for r in curve.rows if r.upper_r is not None]
    values = [y for _, y in xs_lo] + [y for _, y in xs_up]

    x_min, x_max = curve.grid[0], curve.grid[-1]
    if values:
        y_max = 1.05 * float(np.quantile(np.asarray(values), _UPPER_CLIP_QUANTILE))
    else:
        y_max = 1.0
    y_min = 0.0

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(mu: float) -> float:
        return _ML + (mu - x_min) / (x_max - x_min) * plot_w

    def py(r: float) -> float:
        return _MT + (y_max - r) / (y_max - y_min) * plot_h

    def polylines(points: list[tuple[float, float]], color: str) -> list[str]:
        out = []
        run: list[str] = []
        last_mu = None
        grid_step = (x_max - x_min) / (len(curve.grid) - 1)
        for mu, y in points:
            broken = y > y_max or (last_mu is not None and mu - last_mu > 1.5 * grid_step)
            if broken and run:
                if len(run) >= 2:
                    out.append(
                        f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                        f'points="{" ".join(run)}"/>'
                    )
                run = []
            if y <= y_max:
                run.append(f"{px(mu):.2f},{py(y):.2f}")
                last_mu = mu
            else:
                last_mu = None
        if len(run) >= 2:
            out.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{" ".join(run)}"/>'
            )
        return out

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
    ]
    for lo, hi in intervals:
        x0, x1 = px(max(lo, x_min)), px(min(hi, x_max))
        parts.append(
            f'<rect x="{x0:.2f}" y="{_MT}" width="{x1 - x0:.2f}" '
            f'height="{plot_h}" fill="#dddddd"/>'
        )
    # axes
    parts.append(
        f'<line x1="{_ML}" y1="{_MT + plot_h}" x2="{_ML + plot_w}" '
        f'y2="{_MT + plot_h}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT + plot_h}" '
        f'stroke="black" stroke-width="1"/>'
    )
    for tick in _ticks(x_min, x_max):
        x = px(tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MT + plot_h}" x2="{x:.2f}" '
            f'y2="{_MT + plot_h + 5}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_MT + plot_h + 20}" font-size="11" '
            f'text-anchor="middle">{tick:.3g}</text>'
        )
    for tick in _ticks(y_min, y_max):
        y = py(tick)
        parts.append(
            f'<line x1="{_ML - 5}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" '
            f'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_ML - 9}" y="{y + 4:.2f}" font-size="11" '
            f'text-anchor="end">{tick:.3g}</text>'
        )
    parts.extend(polylines(xs_lo, "#1f77b4"))
    parts.extend(polylines(xs_up, "#d62728"))
    parts.append(
        f'<text x="{_ML + plot_w / 2:.2f}" y="20" font-size="13" text-anchor="middle">'
        f"growth rate vs mu (alpha={curve.alpha:g}, beta={curve.beta:g}, "
        f"v={curve.v:g})</text>"
    )
    parts.append(
        f'<text x="{_ML + plot_w / 2:.2f}" y="{_H - 8}" font-size="12" '
        f'text-anchor="middle">mu</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
