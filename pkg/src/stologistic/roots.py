"""Robust real-root extraction and branch classification for the cubic.

The closed-form cubic formulas cancel catastrophically near the tangent
configuration, so the solver works structurally instead: the stationary
points of p partition the real line into intervals of strict
monotonicity, and every real root lies inside the Cauchy bound
R = 1 + max(|b|, |c|, |d|) / |a|.  Bracketing sign changes between the
partition nodes therefore finds every simple root; a stationary point
whose polynomial value sits inside the residual tolerance is reported
as a double root.

For coefficients built from valid model parameters the sign pattern
(a > 0, b < 0, d > 0) forces exactly one negative root, and the number
of positive roots is 0, 1 (the tangent boundary, multiplicity 2) or 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cubic import (
    CubicCoeffs,
    ModelParams,
    build_coefficients,
    eval_poly,
    sigma2_from_root,
)
from .errors import NumericalError, ValidationError

#: Scaled residual tolerance: a reported root r must satisfy
#: |p(r)| <= RESIDUAL_REL * monomial_scale(coeffs, r).  The same threshold
#: decides when a stationary point counts as a double (tangent) root.
RESIDUAL_REL = 1e-12

# Bisection stops when the bracket width falls below this relative to
# max(1, |midpoint|); a short safeguarded Newton polish then sharpens the
# residual to rounding level.
_BISECT_REL_WIDTH = 1e-14
_MAX_BISECT_ITERS = 200
_MAX_POLISH_ITERS = 4


def monomial_scale(coeffs: CubicCoeffs, r: float) -> float:
    """Largest of the four monomial magnitudes of p at r.

    Used as the natural scale for residual checks: against it, a residual
    of order machine epsilon means the root is as good as doubles allow.
    """
    return max(
        abs(coeffs.a * r * r * r),
        abs(coeffs.b * r * r),
        abs(coeffs.c * r),
        abs(coeffs.d),
    )


def discriminant_delta(coeffs: CubicCoeffs) -> float:
    """Discriminant of p'(r): 4 b^2 - 12 a c."""
    return 4.0 * coeffs.b * coeffs.b - 12.0 * coeffs.a * coeffs.c


def stationary_points(coeffs: CubicCoeffs) -> tuple[float, float] | None:
    """Critical points of p, ordered; absent when the discriminant is <= 0.

    For valid model parameters b < 0 guarantees the larger critical point
    is positive.
    """
    delta = discriminant_delta(coeffs)
    if delta <= 0.0:
        return None
    root = math.sqrt(delta)
    lo = (-2.0 * coeffs.b - root) / (6.0 * coeffs.a)
    hi = (-2.0 * coeffs.b + root) / (6.0 * coeffs.a)
    return (lo, hi) if lo <= hi else (hi, lo)


def inflection_point(coeffs: CubicCoeffs) -> float:
    """The inflection point -b / (3a); positive for valid parameters."""
    if coeffs.a == 0.0:
        raise ValidationError("degenerate cubic: leading coefficient is zero")
    return -coeffs.b / (3.0 * coeffs.a)


def cauchy_bound(coeffs: CubicCoeffs) -> float:
    """Radius R = 1 + max(|b|, |c|, |d|) / |a| containing every real root."""
    if coeffs.a == 0.0:
        raise ValidationError("degenerate cubic: leading coefficient is zero")
    return 1.0 + max(abs(coeffs.b), abs(coeffs.c), abs(coeffs.d)) / abs(coeffs.a)


def _bisect_polish(
    a: float, b: float, c: float, d: float, lo: float, hi: float, fhi: float
) -> float:
    """Locate the single root of p inside a strict sign-change bracket."""
    for _ in range(_MAX_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = ((a * mid + b) * mid + c) * mid + d
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (fhi > 0.0):
            hi, fhi = mid, fmid
        else:
            lo = mid
        if hi - lo <= _BISECT_REL_WIDTH * max(1.0, abs(mid)):
            break

    x = 0.5 * (lo + hi)
    fx = ((a * x + b) * x + c) * x + d
    best, best_abs = x, abs(fx)
    for _ in range(_MAX_POLISH_ITERS):
        if fx == 0.0:
            break
        dfx = (3.0 * a * x + 2.0 * b) * x + c
        if dfx == 0.0:
            break
        step = fx / dfx
        nxt = x - step
        if not lo <= nxt <= hi:
            break
        x = nxt
        fx = ((a * x + b) * x + c) * x + d
        if abs(fx) < best_abs:
            best, best_abs = x, abs(fx)
    return best


def real_roots(coeffs: CubicCoeffs) -> list[tuple[float, int]]:
    """All real roots of p in increasing order as (value, multiplicity).

    A stationary point s with |p(s)| inside the residual tolerance is a
    double root (triple when the two stationary points coincide there).
    Every reported root satisfies the scaled residual bound; if a located
    root fails it, a NumericalError carrying the achieved residual is
    raised rather than returning a degraded answer.
    """
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d
    if a == 0.0:
        raise ValidationError("degenerate cubic: leading coefficient is zero")

    bound = cauchy_bound(coeffs)
    delta = discriminant_delta(coeffs)

    # Partition nodes: the stationary points (the repeated one when
    # delta == 0, to catch a stationary root) clipped into (-R, R).
    interior: list[float] = []
    if delta > 0.0:
        interior = [s for s in stationary_points(coeffs) if -bound < s < bound]
    elif delta == 0.0:
        s = inflection_point(coeffs)
        if -bound < s < bound:
            interior = [s]

    roots: list[tuple[float, int]] = []

    # Tangent detection at stationary nodes; flagged nodes are treated as
    # exact zeros so the adjacent intervals cannot double-report them.
    node_vals: list[float] = []
    flagged: list[bool] = []
    for s in interior:
        ps = eval_poly(coeffs, s)
        is_tangent = abs(ps) <= RESIDUAL_REL * monomial_scale(coeffs, s)
        node_vals.append(0.0 if is_tangent else ps)
        flagged.append(is_tangent)

    if len(interior) == 2 and all(flagged):
        # Both stationary values vanish within tolerance: the (near-)
        # triple-root configuration.  All mass sits at the inflection
        # point; bracketing the leftover sign change would only rediscover
        # it, so return directly.
        return [(inflection_point(coeffs), 3)]
    for s, tangent in zip(interior, flagged):
        if tangent:
            roots.append((s, 3 if delta == 0.0 else 2))

    nodes = [-bound] + interior + [bound]
    vals = [eval_poly(coeffs, -bound)] + node_vals + [eval_poly(coeffs, bound)]

    for i in range(len(nodes) - 1):
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0 or fhi == 0.0 or (flo > 0.0) == (fhi > 0.0):
            continue
        roots.append((_bisect_polish(a, b, c, d, nodes[i], nodes[i + 1], fhi), 1))

    roots.sort(key=lambda item: item[0])

    for value, _ in roots:
        residual = abs(eval_poly(coeffs, value))
        if residual > RESIDUAL_REL * monomial_scale(coeffs, value):
            raise NumericalError(
                f"root {value!r} failed the scaled residual bound: "
                f"|p(root)| = {residual:.3e}"
            )
    return roots


@dataclass(frozen=True)
class ConditionWitness:
    """Evaluation of the two-positive-root sufficient condition.

    holds is True when the discriminant is positive and p is negative at
    its larger critical point.  "Negative" uses the same scaled tolerance
    as the tangent-root convention, so holds stays synonymous with "two
    distinct positive roots" even on the measure-zero boundary;
    p_at_r_plus reports the raw value (None without stationary points).
    """

    holds: bool
    delta: float
    p_at_r_plus: float | None


def _condition(coeffs: CubicCoeffs) -> ConditionWitness:
    delta = discriminant_delta(coeffs)
    stationary = stationary_points(coeffs)
    if stationary is None:
        return ConditionWitness(holds=False, delta=delta, p_at_r_plus=None)
    p_plus = eval_poly(coeffs, stationary[1])
    holds = p_plus < -RESIDUAL_REL * monomial_scale(coeffs, stationary[1])
    return ConditionWitness(holds=holds, delta=delta, p_at_r_plus=p_plus)


def two_root_condition(params: ModelParams) -> ConditionWitness:
    """Sufficient condition for exactly two positive growth rates.

    Both witnesses (the discriminant and the value of p at the larger
    critical point) are returned so callers can report near-boundary
    behaviour instead of a bare boolean.
    """
    return _condition(build_coefficients(params))


@dataclass(frozen=True)
class RootSigma:
    """A positive root with its implied variance and consistency flag.

    model_consistent applies the strict sign test sigma2 > 0 with no
    epsilon; borderline values surface through the reported sigma2.
    """

    root: float
    sigma2: float
    model_consistent: bool


@dataclass(frozen=True)
class RootClassification:
    """Complete root-structure analysis of one parameter set."""

    negative_root: float
    positive_roots: tuple[tuple[float, int], ...]
    delta: float
    stationary: tuple[float, float] | None
    inflection: float
    condition_holds: bool
    p_at_r_plus: float | None
    per_root_sigma2: tuple[RootSigma, ...]


def classify(params: ModelParams) -> RootClassification:
    """Solve and classify the growth-rate cubic for one parameter set.

    Populates the root lists, the critical/inflection points, the
    sufficient-condition witnesses, and the per-root implied variances.
    Positive roots with sigma2 <= 0 are reported, not discarded; the
    consistency flag carries the verdict.
    """
    coeffs = build_coefficients(params)
    witness = _condition(coeffs)
    all_roots = real_roots(coeffs)

    negatives = [(value, mult) for value, mult in all_roots if value < 0.0]
    positives = tuple((value, mult) for value, mult in all_roots if value > 0.0)
    if len(negatives) != 1:
        raise NumericalError(
            f"expected exactly one negative root, found {len(negatives)} "
            f"for coefficients {coeffs!r}"
        )

    per_root = tuple(
        RootSigma(root=value, sigma2=s2, model_consistent=s2 > 0.0)
        for value, _ in positives
        for s2 in (sigma2_from_root(params, value),)
    )
    return RootClassification(
        negative_root=negatives[0][0],
        positive_roots=positives,
        delta=witness.delta,
        stationary=stationary_points(coeffs),
        inflection=inflection_point(coeffs),
        condition_holds=witness.holds,
        p_at_r_plus=witness.p_at_r_plus,
        per_root_sigma2=per_root,
    )
