"""Coefficient assembly, evaluation, and the forward-map round trip."""

import math

import numpy as np
import pytest

from stologistic.cubic import (
    CubicCoeffs,
    ModelParams,
    build_coefficients,
    eval_deriv,
    eval_poly,
    eval_second,
    forward_alpha_beta,
    leading_mu_factor,
    sigma2_from_root,
)
from stologistic.errors import ValidationError
from stologistic.moments import NormalParams

FIG1 = ModelParams(alpha=2.0, beta=1.2, v=1.5, mu=0.05)
FIG2 = ModelParams(alpha=2.0, beta=1.2, v=1.5, mu=0.5)


def scaled_residual(coeffs, r):
    scale = max(
        abs(coeffs.a * r**3), abs(coeffs.b * r**2), abs(coeffs.c * r), abs(coeffs.d)
    )
    return abs(eval_poly(coeffs, r)) / scale


class TestModelParams:
    @pytest.mark.parametrize(
        "kwargs,needle",
        [
            (dict(alpha=0.0, beta=1.0, v=1.0, mu=0.5), "alpha"),
            (dict(alpha=1.0, beta=-0.1, v=1.0, mu=0.5), "beta"),
            (dict(alpha=1.0, beta=1.0, v=0.0, mu=0.5), "v"),
            (dict(alpha=1.0, beta=1.0, v=1.0, mu=0.0), "0 < mu < 1"),
            (dict(alpha=1.0, beta=1.0, v=1.0, mu=1.0), "0 < mu < 1"),
            (dict(alpha=1.0, beta=1.0, v=1.0, mu=1.5), "0 < mu < 1"),
            (dict(alpha=math.nan, beta=1.0, v=1.0, mu=0.5), "finite"),
        ],
    )
    def test_violations_name_the_bound(self, kwargs, needle):
        with pytest.raises(ValidationError, match=needle):
            ModelParams(**kwargs)

    def test_small_v_is_algebraically_valid(self):
        # v in (0, 1) cannot be sampled but the cubic is still defined.
        ModelParams(alpha=1.0, beta=1.0, v=0.5, mu=0.5)


class TestBuildCoefficients:
    def test_first_reference_set(self):
        coeffs = build_coefficients(FIG1)
        assert coeffs.a == pytest.approx(0.06448125, rel=1e-14)
        assert coeffs.b == pytest.approx(-0.15, rel=1e-14)
        assert coeffs.c == pytest.approx(-0.022, rel=1e-13)
        assert coeffs.d == pytest.approx(0.12, rel=1e-14)
        assert coeffs.source == FIG1

    def test_second_reference_set(self):
        coeffs = build_coefficients(FIG2)
        assert coeffs.a == pytest.approx(0.1875, rel=1e-14)
        assert coeffs.b == pytest.approx(-1.5, rel=1e-14)
        assert coeffs.c == pytest.approx(3.2, rel=1e-14)
        assert coeffs.d == pytest.approx(1.2, rel=1e-14)

    def test_sign_pattern_on_random_draws(self):
        rng = np.random.default_rng(2)
        for _ in range(2000):
            params = ModelParams(
                alpha=float(rng.uniform(0.05, 4.0)),
                beta=float(rng.uniform(0.05, 4.0)),
                v=float(rng.uniform(0.1, 5.0)),
                mu=float(rng.uniform(1e-3, 1.0 - 1e-3)),
            )
            coeffs = build_coefficients(params)
            assert coeffs.a > 0.0
            assert coeffs.b < 0.0
            assert coeffs.d > 0.0

    def test_leading_coefficient_factorization(self):
        rng = np.random.default_rng(9)
        for _ in range(500):
            params = ModelParams(
                alpha=1.0,
                beta=1.0,
                v=float(rng.uniform(0.1, 5.0)),
                mu=float(rng.uniform(1e-3, 1.0 - 1e-3)),
            )
            coeffs = build_coefficients(params)
            factored = params.v * params.mu * leading_mu_factor(params.mu)
            assert coeffs.a == pytest.approx(factored, rel=1e-13)


class TestLeadingMuFactor:
    def test_endpoint_values(self):
        assert leading_mu_factor(0.0) == 1.0
        assert leading_mu_factor(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_positive_and_strictly_decreasing(self):
        grid = np.linspace(0.001, 0.999, 999)
        values = [leading_mu_factor(float(mu)) for mu in grid]
        assert all(value > 0.0 for value in values)
        assert all(earlier > later for earlier, later in zip(values, values[1:]))


class TestEvaluation:
    def test_constant_term_at_zero(self):
        coeffs = build_coefficients(FIG1)
        assert eval_poly(coeffs, 0.0) == coeffs.d

    def test_reference_sum_at_one(self):
        coeffs = build_coefficients(FIG1)
        assert eval_poly(coeffs, 1.0) == pytest.approx(0.01248125, rel=1e-12)

    def test_cube_root(self):
        coeffs = CubicCoeffs(a=1.0, b=0.0, c=0.0, d=-8.0)
        assert eval_poly(coeffs, 2.0) == 0.0

    def test_derivatives_of_pure_cubic(self):
        coeffs = CubicCoeffs(a=1.0, b=0.0, c=0.0, d=0.0)
        assert eval_deriv(coeffs, 1.0) == 3.0
        assert eval_second(coeffs, 1.0) == 6.0

    def test_derivative_constant_term(self):
        coeffs = build_coefficients(FIG1)
        assert eval_deriv(coeffs, 0.0) == coeffs.c

    def test_second_derivative_vanishes_at_inflection(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            params = ModelParams(
                alpha=float(rng.uniform(0.1, 3.0)),
                beta=float(rng.uniform(0.1, 3.0)),
                v=float(rng.uniform(0.5, 4.0)),
                mu=float(rng.uniform(0.01, 0.99)),
            )
            coeffs = build_coefficients(params)
            assert abs(eval_second(coeffs, -coeffs.b / (3.0 * coeffs.a))) <= 1e-14 * abs(
                coeffs.b
            ) + 1e-14


class TestSigma2FromRoot:
    def test_direct_substitution(self):
        params = ModelParams(alpha=1.0, beta=1.0, v=1.0, mu=0.5)
        assert sigma2_from_root(params, 4.0) == pytest.approx(0.125, rel=1e-15)

    def test_algebraic_zero(self):
        params = ModelParams(alpha=1.3, beta=0.8, v=1.1, mu=0.4)
        r_zero = params.alpha * params.mu / (params.mu - params.mu**2)
        assert sigma2_from_root(params, r_zero) == pytest.approx(0.0, abs=1e-16)

    def test_rejects_nonpositive_rate(self):
        params = ModelParams(alpha=1.0, beta=1.0, v=1.0, mu=0.5)
        with pytest.raises(ValidationError):
            sigma2_from_root(params, 0.0)
        with pytest.raises(ValidationError):
            sigma2_from_root(params, -1.0)

    def test_strictly_increasing_in_rate(self):
        params = ModelParams(alpha=1.7, beta=1.0, v=1.2, mu=0.3)
        rates = np.linspace(0.05, 12.0, 400)
        values = [sigma2_from_root(params, float(r)) for r in rates]
        assert all(earlier < later for earlier, later in zip(values, values[1:]))


class TestForwardMap:
    def test_rejects_zero_variance(self):
        with pytest.raises(ValidationError):
            forward_alpha_beta(NormalParams(mu=0.5, sigma2=0.0), v=1.0, r=2.0)

    def test_alpha_formula(self):
        fm = forward_alpha_beta(NormalParams(mu=0.2, sigma2=0.01), v=1.5, r=1.0)
        assert fm.alpha == pytest.approx(0.75, rel=1e-14)
        assert fm.within_hypotheses

    @pytest.mark.parametrize(
        "mu,sigma2,v,r",
        [(0.3, 0.05, 1.2, 2.0), (0.2, 0.01, 1.5, 1.0), (0.7, 0.12, 3.0, 4.0)],
    )
    def test_round_trip_examples(self, mu, sigma2, v, r):
        fm = forward_alpha_beta(NormalParams(mu=mu, sigma2=sigma2), v=v, r=r)
        coeffs = build_coefficients(ModelParams(alpha=fm.alpha, beta=fm.beta, v=v, mu=mu))
        assert scaled_residual(coeffs, r) <= 1e-9

    def test_round_trip_property(self):
        rng = np.random.default_rng(2024)
        for _ in range(2000):
            mu = float(rng.uniform(0.01, 0.99))
            sigma2 = float(rng.uniform(0.05, 0.95)) * (mu - mu * mu)
            v = float(rng.uniform(1.0, 5.0))
            r = float(math.exp(rng.uniform(math.log(0.1), math.log(10.0))))
            fm = forward_alpha_beta(NormalParams(mu=mu, sigma2=sigma2), v=v, r=r)
            assert fm.within_hypotheses
            coeffs = build_coefficients(
                ModelParams(alpha=fm.alpha, beta=fm.beta, v=v, mu=mu)
            )
            assert scaled_residual(coeffs, r) <= 1e-9

    def test_flag_for_negative_alpha(self):
        # sigma2 above mu - mu^2 flips the expectation condition's sign.
        fm = forward_alpha_beta(NormalParams(mu=0.5, sigma2=0.3), v=1.2, r=2.0)
        assert fm.alpha < 0.0
        assert not fm.within_hypotheses

    def test_flag_for_negative_beta(self):
        # Small v can push the second-moment balance negative.
        fm = forward_alpha_beta(NormalParams(mu=0.5, sigma2=0.2), v=0.02, r=2.0)
        assert fm.alpha > 0.0
        assert fm.beta < 0.0
        assert not fm.within_hypotheses
