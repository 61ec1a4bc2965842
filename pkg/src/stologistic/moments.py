"""Closed-form raw moments of the normal distribution.

The analytic path rests on the even-moment identity for the standard
normal, E[Z^(2n)] = (2n)!/(2^n n!), combined with the binomial expansion
of (mu + sigma*Z)^n.  Everything the growth-rate cubic needs is covered
by the raw moments of order 1..4 and the combination
E[X^2 (1-X)^2] = E[X^2] - 2 E[X^3] + E[X^4].

An independent Gauss-Legendre quadrature oracle is provided for the test
suite.  The analytic code paths never call it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NumericalError, ValidationError

#: Largest moment order served by exact integer arithmetic.
EXACT_ORDER_LIMIT = 20

# Integration window half-width in standard deviations.  The normal tail
# mass beyond 12 sigma is below 1e-32, invisible at the 1e-12 oracle
# tolerance, so a finite window sidesteps improper-integral machinery.
_WINDOW_SIGMAS = 12.0

# Escalating Gauss-Legendre orders; convergence is declared when two
# successive orders agree within the requested tolerance.
_ORACLE_ORDERS = (80, 140, 200, 260)

_leggauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


@dataclass(frozen=True)
class NormalParams:
    """Mean and variance of the population state distribution.

    sigma2 = 0 is admitted so tests can exercise the point-mass limit;
    the simulation layer separately requires sigma2 > 0.
    """

    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise ValidationError(f"mu must be finite, got {self.mu}")
        if not math.isfinite(self.sigma2) or self.sigma2 < 0.0:
            raise ValidationError(f"sigma2 must be >= 0 and finite, got {self.sigma2}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


def std_normal_moment(k: int) -> float:
    """Raw moment E[Z^k] of the standard normal.

    Zero for odd k by symmetry; for even k the value is
    (k)! / (2^(k/2) (k/2)!), evaluated in exact integer arithmetic
    before the final conversion to float.
    """
    if k < 0:
        raise ValidationError(f"moment order must be >= 0, got {k}")
    if k > EXACT_ORDER_LIMIT:
        raise ValidationError(
            f"moment order {k} exceeds the exact-arithmetic limit "
            f"{EXACT_ORDER_LIMIT}; use raw_moment_oracle instead"
        )
    if k % 2 == 1:
        return 0.0
    half = k // 2
    return float(math.factorial(k) // (2**half * math.factorial(half)))


def normal_raw_moment(p: NormalParams, n: int) -> float:
    """Raw moment E[X^n] of X ~ N(mu, sigma2) for n in 1..4."""
    mu, s2 = p.mu, p.sigma2
    if n == 1:
        return mu
    if n == 2:
        return mu * mu + s2
    if n == 3:
        return mu**3 + 3.0 * mu * s2
    if n == 4:
        return mu**4 + 6.0 * mu * mu * s2 + 3.0 * s2 * s2
    raise ValidationError(f"closed forms cover orders 1..4, got {n}")


def structural_second_moment(p: NormalParams) -> float:
    """E[X^2 (1-X)^2], the moment combination driving the variance condition.

    Assembled as E[X^2] - 2 E[X^3] + E[X^4]; being the expectation of a
    square it is nonnegative for every (mu, sigma2).
    """
    return (
        normal_raw_moment(p, 2)
        - 2.0 * normal_raw_moment(p, 3)
        + normal_raw_moment(p, 4)
    )


def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes = _leggauss_cache.get(order)
    if nodes is None:
        nodes = np.polynomial.legendre.leggauss(order)
        _leggauss_cache[order] = nodes
    return nodes


def expectation_oracle(
    p: NormalParams,
    func: Callable[[np.ndarray], np.ndarray],
    rel_tol: float = 1e-12,
) -> float:
    """Numerically integrate func(x) against the normal density.

    Fixed-order Gauss-Legendre quadrature over mu +/- 12 sigma at
    escalating orders; the estimate is accepted once two successive
    orders agree within rel_tol relative to max(1, |estimate|).

    This is the reference used by the test suite to validate the closed
    forms; it must never back an analytic code path.
    """
    if p.sigma2 <= 0.0:
        raise ValidationError("expectation_oracle requires sigma2 > 0")
    sigma = p.sigma
    half_width = _WINDOW_SIGMAS * sigma
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    previous = None
    achieved = math.inf
    estimate = math.nan
    for order in _ORACLE_ORDERS:
        t, w = _leggauss(order)
        x = p.mu + half_width * t
        z = (x - p.mu) / sigma
        integrand = np.asarray(func(x), dtype=float) * np.exp(-0.5 * z * z)
        estimate = half_width * norm * float(np.dot(w, integrand))
        if previous is not None:
            achieved = abs(estimate - previous)
            if achieved <= rel_tol * max(1.0, abs(estimate)):
                return estimate
        previous = estimate
    raise NumericalError(
        f"quadrature did not converge to rel_tol={rel_tol:g}; "
        f"achieved |difference| {achieved:.3e} at order {_ORACLE_ORDERS[-1]}"
    )


def raw_moment_oracle(p: NormalParams, n: int, rel_tol: float = 1e-12) -> float:
    """Quadrature value of E[X^n]; independent check of the closed forms."""
    if n < 0 or n > EXACT_ORDER_LIMIT:
        raise ValidationError(
            f"oracle supports orders 0..{EXACT_ORDER_LIMIT}, got {n}"
        )
    return expectation_oracle(p, lambda x: x**n, rel_tol)
