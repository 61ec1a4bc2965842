"""Construction of the growth-rate cubic and its inverse (forward) map.

For a population state X ~ N(mu, sigma2) evolved by
X' = r X (1 - X) eps with E[eps] = 1 and E[eps^2] = v, imposing the
scaling conditions E[X'] = alpha E[X] and Var[X'] = beta Var[X]
eliminates sigma and leaves a cubic p(r) = a r^3 + b r^2 + c r + d
whose positive roots are the admissible uniform structural growth
rates.  This module builds p from (alpha, beta, v, mu), recovers the
implied sigma2 from a candidate root, and inverts the construction:
given (mu, sigma2, v) and a target rate r, it returns the (alpha, beta)
that make r an exact root.  That inverse is the library's primary
correctness oracle (see the round-trip tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .moments import NormalParams, structural_second_moment


@dataclass(frozen=True)
class ModelParams:
    """The quadruple (alpha, beta, v, mu) defining one cubic instance.

    alpha: imposed mean scaling factor, E[X'] = alpha E[X]
    beta:  imposed variance scaling factor, Var[X'] = beta Var[X]
    v:     second moment of the perturbation, E[eps^2]
    mu:    population mean, strictly inside (0, 1)

    v > 0 suffices for every algebraic operation; sampling additionally
    requires v >= 1 (no nonnegative mean-1 distribution has E[eps^2] < 1),
    which the simulation layer enforces.
    """

    alpha: float
    beta: float
    v: float
    mu: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "v", "mu"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value}")
        if self.alpha <= 0.0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha}")
        if self.beta <= 0.0:
            raise ValidationError(f"beta must be > 0, got {self.beta}")
        if self.v <= 0.0:
            raise ValidationError(f"v must be > 0, got {self.v}")
        if not 0.0 < self.mu < 1.0:
            raise ValidationError(
                f"mu must satisfy 0 < mu < 1 strictly, got {self.mu}"
            )


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of p(r) = a r^3 + b r^2 + c r + d, with provenance.

    When built from a valid ModelParams the signs a > 0, b < 0, d > 0 are
    structural (see leading_mu_factor for why a stays positive).
    """

    a: float
    b: float
    c: float
    d: float
    source: ModelParams | None = None


def leading_mu_factor(mu: float) -> float:
    """The mu-dependent factor of the leading coefficient.

    a factors as v * mu * (-2 mu^3 + 4 mu^2 - 3 mu + 1).  The cubic factor
    equals 1 at mu = 0, 0 at mu = 1, and its derivative -6 mu^2 + 8 mu - 3
    has negative discriminant, so the factor is strictly decreasing and
    positive on (0, 1).  Hence a > 0 on the whole valid domain.
    """
    return ((-2.0 * mu + 4.0) * mu - 3.0) * mu + 1.0


def build_coefficients(params: ModelParams) -> CubicCoeffs:
    """Assemble the cubic's coefficients from model parameters.

    The expressions are kept exactly in their defining form (no
    refactoring of the mu-polynomials) so each coefficient stays
    traceable; the round-trip identity test guards against
    transcription slips.
    """
    alpha, beta, v, mu = params.alpha, params.beta, params.v, params.mu
    a = v * (-2.0 * mu**4 + 4.0 * mu**3 - 3.0 * mu**2 + mu)
    b = -v * alpha * mu
    c = v * (3.0 * alpha**2 * mu**2) + beta * mu * (mu - 1.0) - alpha**2 * mu**2
    d = beta * alpha * mu
    return CubicCoeffs(a=a, b=b, c=c, d=d, source=params)


def eval_poly(coeffs: CubicCoeffs, r: float) -> float:
    """Horner-form evaluation of p(r)."""
    return ((coeffs.a * r + coeffs.b) * r + coeffs.c) * r + coeffs.d


def eval_deriv(coeffs: CubicCoeffs, r: float) -> float:
    """First derivative p'(r) = 3 a r^2 + 2 b r + c."""
    return (3.0 * coeffs.a * r + 2.0 * coeffs.b) * r + coeffs.c


def eval_second(coeffs: CubicCoeffs, r: float) -> float:
    """Second derivative p''(r) = 6 a r + 2 b."""
    return 6.0 * coeffs.a * r + 2.0 * coeffs.b


def sigma2_from_root(params: ModelParams, r: float) -> float:
    """Population variance implied by a candidate growth rate.

    From the expectation condition, sigma2 = mu - mu^2 - alpha mu / r.
    The value may be zero or negative; callers interpret its sign as the
    model-consistency verdict for the root instead of discarding it.
    """
    if r <= 0.0:
        raise ValidationError(f"growth rate must be > 0, got {r}")
    mu = params.mu
    return mu - mu * mu - params.alpha * mu / r


@dataclass(frozen=True)
class ForwardMap:
    """Result of the inverse construction: scaling factors for a given rate.

    within_hypotheses is False when alpha or beta came out nonpositive;
    the values are still returned so round-trip checks can run on the
    full algebraic domain.
    """

    alpha: float
    beta: float
    within_hypotheses: bool


def forward_alpha_beta(p: NormalParams, v: float, r: float) -> ForwardMap:
    """Recover (alpha, beta) that make r an exact root of the cubic.

    alpha follows from the expectation condition,
    alpha = r (mu - mu^2 - sigma2) / mu, and beta from the second-moment
    balance, beta = (r^2 v E[X^2 (1-X)^2] - alpha^2 mu^2) / sigma2.
    Building coefficients from the returned pair and evaluating at r must
    give a residual at rounding level; that round-trip is the module's
    central invariant.
    """
    if p.sigma2 <= 0.0:
        raise ValidationError("forward map requires sigma2 > 0")
    if not 0.0 < p.mu < 1.0:
        raise ValidationError(f"mu must satisfy 0 < mu < 1, got {p.mu}")
    if v <= 0.0:
        raise ValidationError(f"v must be > 0, got {v}")
    if r <= 0.0:
        raise ValidationError(f"growth rate must be > 0, got {r}")

    mu, s2 = p.mu, p.sigma2
    alpha = r * (mu - mu * mu - s2) / mu
    beta = (r * r * v * structural_second_moment(p) - alpha * alpha * mu * mu) / s2
    return ForwardMap(
        alpha=alpha, beta=beta, within_hypotheses=alpha > 0.0 and beta > 0.0
    )
