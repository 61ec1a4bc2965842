"""Mean sweeps: branch curves and infeasible intervals.

Sweeping mu across (0, 1) at fixed (alpha, beta, v) traces the two
branches of admissible growth rates and exposes the interior band of
means for which no uniform structural growth rate exists.  Grid points
are classified independently and deterministically; interval endpoints
are then sharpened by bisection on the feasibility predicate, since the
grid alone misplaces them by up to one grid step.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cubic import ModelParams
from .errors import NumericalError, ValidationError
from .roots import RootClassification, classify

#: Default grid: 2001 uniform points on [0.0005, 0.9995], resolving the
#: infeasible band to about 5e-4 while keeping sweeps sub-second.
DEFAULT_MU_MIN = 0.0005
DEFAULT_MU_MAX = 0.9995
DEFAULT_POINTS = 2001

DEFAULT_REFINE_TOL = 1e-8


class Status(str, Enum):
    """Row status: tangent marks the measure-zero double-root boundary."""

    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    TANGENT = "tangent"
    ERROR = "error"


@dataclass(frozen=True)
class GridSpec:
    """Uniform discretization of a mu interval inside (0, 1)."""

    mu_min: float = DEFAULT_MU_MIN
    mu_max: float = DEFAULT_MU_MAX
    points: int = DEFAULT_POINTS

    def __post_init__(self) -> None:
        if not (0.0 < self.mu_min < self.mu_max < 1.0):
            raise ValidationError(
                "grid bounds must satisfy 0 < mu_min < mu_max < 1, got "
                f"[{self.mu_min}, {self.mu_max}]"
            )
        if self.points < 2:
            raise ValidationError(f"grid needs at least 2 points, got {self.points}")

    def values(self) -> tuple[float, ...]:
        return tuple(float(x) for x in np.linspace(self.mu_min, self.mu_max, self.points))


@dataclass(frozen=True)
class BranchRow:
    """One grid point of a sweep.

    Feasible rows carry both branches; a tangent row reports its double
    root in the lower columns only, so "both branches present" remains
    synonymous with "feasible".
    """

    mu: float
    status: Status
    lower_r: float | None = None
    upper_r: float | None = None
    lower_sigma2: float | None = None
    upper_sigma2: float | None = None


@dataclass(frozen=True)
class BranchCurve:
    """Sweep result: one row per grid point, in grid order."""

    alpha: float
    beta: float
    v: float
    grid: tuple[float, ...]
    rows: tuple[BranchRow, ...]


def _row_from_classification(mu: float, cls: RootClassification) -> BranchRow:
    positives = cls.positive_roots
    if len(positives) == 2:
        (lower, _), (upper, _) = positives
        sigmas = {entry.root: entry.sigma2 for entry in cls.per_root_sigma2}
        return BranchRow(
            mu=mu,
            status=Status.FEASIBLE,
            lower_r=lower,
            upper_r=upper,
            lower_sigma2=sigmas[lower],
            upper_sigma2=sigmas[upper],
        )
    if len(positives) == 1:
        value, _ = positives[0]
        return BranchRow(
            mu=mu,
            status=Status.TANGENT,
            lower_r=value,
            lower_sigma2=cls.per_root_sigma2[0].sigma2,
        )
    return BranchRow(mu=mu, status=Status.INFEASIBLE)


def sweep_mu(alpha: float, beta: float, v: float, grid: GridSpec | None = None) -> BranchCurve:
    """Classify the cubic at every grid mu and collect the branch rows.

    A numerical failure at one grid point marks that row with the error
    status and the sweep continues; identical inputs always produce an
    identical curve.
    """
    spec = grid if grid is not None else GridSpec()
    values = spec.values()
    rows = []
    for mu in values:
        params = ModelParams(alpha=alpha, beta=beta, v=v, mu=mu)
        try:
            rows.append(_row_from_classification(mu, classify(params)))
        except NumericalError:
            rows.append(BranchRow(mu=mu, status=Status.ERROR))
    return BranchCurve(alpha=alpha, beta=beta, v=v, grid=values, rows=tuple(rows))


def _is_feasible(alpha: float, beta: float, v: float, mu: float) -> bool:
    """Feasibility predicate for boundary refinement.

    Requires both the sufficient condition and an actual pair of distinct
    positive roots, so the bisection never chases a borderline tangent.
    """
    params = ModelParams(alpha=alpha, beta=beta, v=v, mu=mu)
    try:
        cls = classify(params)
    except NumericalError:
        return False
    return (
        cls.condition_holds
        and len(cls.positive_roots) == 2
        and all(mult == 1 for _, mult in cls.positive_roots)
    )


def _refine_boundary(
    curve: BranchCurve, feasible_mu: float, infeasible_mu: float, tol: float
) -> float:
    """Bisect the feasibility transition between two adjacent grid points."""
    lo, hi = feasible_mu, infeasible_mu
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _is_feasible(curve.alpha, curve.beta, curve.v, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def infeasible_intervals(
    curve: BranchCurve, refine_tol: float = DEFAULT_REFINE_TOL
) -> list[tuple[float, float]]:
    """Maximal infeasible mu ranges, boundaries refined by bisection.

    Runs are collected over grid rows with the infeasible status; each
    boundary adjacent to a feasible row is then refined to width
    refine_tol.  A run touching the grid edge keeps the unrefined edge
    value, since there is no feasible point to bisect against.
    """
    if refine_tol <= 0.0:
        raise ValidationError(f"refine_tol must be > 0, got {refine_tol}")
    rows = curve.rows
    intervals: list[tuple[float, float]] = []
    i = 0
    while i < len(rows):
        if rows[i].status is not Status.INFEASIBLE:
            i += 1
            continue
        j = i
        while j + 1 < len(rows) and rows[j + 1].status is Status.INFEASIBLE:
            j += 1
        lo = rows[i].mu
        if i > 0 and rows[i - 1].status is Status.FEASIBLE:
            lo = _refine_boundary(curve, rows[i - 1].mu, rows[i].mu, refine_tol)
        hi = rows[j].mu
        if j + 1 < len(rows) and rows[j + 1].status is Status.FEASIBLE:
            hi = _refine_boundary(curve, rows[j + 1].mu, rows[j].mu, refine_tol)
        intervals.append((lo, hi))
        i = j + 1
    return intervals


@dataclass(frozen=True)
class BranchDelta:
    """Branch differences A - B at one grid mu (None unless both feasible)."""

    mu: float
    lower_diff: float | None
    upper_diff: float | None


@dataclass(frozen=True)
class ComparisonReport:
    """Quantified two-sweep comparison on a shared grid.

    Dominance counts use strict inequalities over the common-feasible
    points; containment verdicts compare refined infeasible intervals
    (X contains Y when every Y interval sits strictly inside an X one).
    """

    mu_values: tuple[float, ...]
    deltas: tuple[BranchDelta, ...]
    common_feasible: int
    lower_a_greater: int
    lower_b_greater: int
    upper_a_greater: int
    upper_b_greater: int
    intervals_a: tuple[tuple[float, float], ...]
    intervals_b: tuple[tuple[float, float], ...]
    a_contains_b: bool
    b_contains_a: bool


def _strictly_contains(
    outer: tuple[tuple[float, float], ...], inner: tuple[tuple[float, float], ...]
) -> bool:
    return all(
        any(o_lo < i_lo and i_hi < o_hi for o_lo, o_hi in outer)
        for i_lo, i_hi in inner
    )


def compare_sweeps(
    curve_a: BranchCurve,
    curve_b: BranchCurve,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> ComparisonReport:
    """Per-mu branch differences plus dominance and containment verdicts."""
    if curve_a.grid != curve_b.grid:
        raise ValidationError("curves were swept on different grids")

    deltas = []
    common = lower_a = lower_b = upper_a = upper_b = 0
    for row_a, row_b in zip(curve_a.rows, curve_b.rows):
        both = row_a.status is Status.FEASIBLE and row_b.status is Status.FEASIBLE
        if both:
            common += 1
            lower_diff = row_a.lower_r - row_b.lower_r
            upper_diff = row_a.upper_r - row_b.upper_r
            lower_a += lower_diff > 0.0
            lower_b += lower_diff < 0.0
            upper_a += upper_diff > 0.0
            upper_b += upper_diff < 0.0
            deltas.append(BranchDelta(row_a.mu, lower_diff, upper_diff))
        else:
            deltas.append(BranchDelta(row_a.mu, None, None))

    intervals_a = tuple(infeasible_intervals(curve_a, refine_tol))
    intervals_b = tuple(infeasible_intervals(curve_b, refine_tol))
    return ComparisonReport(
        mu_values=curve_a.grid,
        deltas=tuple(deltas),
        common_feasible=common,
        lower_a_greater=lower_a,
        lower_b_greater=lower_b,
        upper_a_greater=upper_a,
        upper_b_greater=upper_b,
        intervals_a=intervals_a,
        intervals_b=intervals_b,
        a_contains_b=_strictly_contains(intervals_a, intervals_b),
        b_contains_a=_strictly_contains(intervals_b, intervals_a),
    )
