"""Special-function contracts against series / quadrature oracles."""

import math

import mpmath
import numpy as np
import pytest

from wlsubspace.numerics import (
    EXPECTED_COS_EXACT_MAX_RHO,
    RiceanParam,
    bessel_i,
    erf,
    expected_cos,
    gaussian_q,
    reg_lower_gamma,
    ricean_phase_pdf,
)

import oracles


class TestErf:
    def test_zero(self):
        assert erf(0.0) == 0.0

    def test_odd_symmetry(self):
        assert erf(-1.0) == -erf(1.0)
        for x in np.linspace(0.1, 3.0, 17):
            assert erf(-x) == -erf(x)

    def test_against_series_oracle(self):
        # frozen from the 40-term Maclaurin oracle
        assert erf(1.0) == pytest.approx(0.8427007929497149, abs=1e-10)
        # wider grid needs more terms purely for series truncation, not accuracy
        for x in np.arange(-3.0, 3.01, 0.25):
            assert erf(float(x)) == pytest.approx(
                oracles.erf_maclaurin(float(x), terms=60), abs=1e-12
            )

    def test_rejects_non_finite(self):
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValueError):
                erf(bad)


class TestGaussianQ:
    def test_half_at_zero(self):
        assert gaussian_q(0.0) == 0.5

    def test_tail_complement(self):
        for x in np.linspace(-5.0, 5.0, 21):
            assert gaussian_q(float(x)) + gaussian_q(float(-x)) == pytest.approx(1.0, abs=1e-14)

    def test_five_percent_quantile(self):
        # expected value frozen from the erf-series identity Q(x) = (1 - erf(x/sqrt 2))/2
        expected = 0.5 * (1.0 - oracles.erf_maclaurin(1.6448536 / math.sqrt(2.0), terms=60))
        assert gaussian_q(1.6448536) == pytest.approx(expected, abs=1e-12)
        assert gaussian_q(1.6448536) == pytest.approx(0.05, abs=1e-7)

    def test_open_unit_interval(self):
        for x in np.linspace(-8.0, 8.0, 33):
            q = gaussian_q(float(x))
            assert 0.0 < q < 1.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            gaussian_q(math.nan)


class TestBesselI:
    def test_series_constant_terms(self):
        assert bessel_i(0, 0.0) == 1.0
        assert bessel_i(1, 0.0) == 0.0

    def test_small_argument_value(self):
        # frozen from the 50-term power-series oracle
        assert bessel_i(0, 0.5) == pytest.approx(1.0634833707413236, abs=1e-9)

    def test_against_series_oracle(self):
        # documented oracle grid: the ascending series is reliable up to x ~ 30
        for order in (0, 1):
            for x in (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0):
                expected = oracles.bessel_i_series(order, x)
                assert bessel_i(order, x) == pytest.approx(expected, rel=1e-10)

    def test_against_high_precision_oracle(self):
        # complements the series oracle on the large-argument part of the contract range
        for order in (0, 1):
            for x in (50.0, 120.0, 300.0, 500.0, 700.0):
                expected = float(mpmath.besseli(order, x))
                assert bessel_i(order, x) == pytest.approx(expected, rel=1e-10)

    def test_nonnegativity_identities(self):
        for x in (0.0, 0.3, 1.0, 4.0, 25.0):
            assert bessel_i(0, x) >= 1.0
            assert bessel_i(1, x) >= 0.0

    def test_overflow_distinct_from_domain_error(self):
        with pytest.raises(OverflowError):
            bessel_i(0, 800.0)
        with pytest.raises(ValueError):
            bessel_i(0, -1.0)
        with pytest.raises(ValueError):
            bessel_i(2, 1.0)


class TestRegLowerGamma:
    def test_empty_integral(self):
        assert reg_lower_gamma(0.0, 3.0) == 0.0

    def test_unit_shape_closed_form(self):
        assert reg_lower_gamma(1.0, 1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-13)

    def test_against_quadrature_oracle(self):
        assert reg_lower_gamma(0.5, 5.0) == pytest.approx(
            oracles.reg_lower_gamma_quad(0.5, 5.0), abs=1e-10
        )
        for x, s in ((0.2, 0.7), (1.5, 2.0), (3.0, 4.5), (10.0, 3.0)):
            assert reg_lower_gamma(x, s) == pytest.approx(
                oracles.reg_lower_gamma_quad(x, s), abs=1e-10
            )

    def test_tail_complement(self):
        for x, s in ((0.5, 5.0), (2.0, 2.0), (7.0, 4.0)):
            upper = oracles.reg_upper_gamma_quad(x, s)
            assert reg_lower_gamma(x, s) + upper == pytest.approx(1.0, abs=1e-9)

    def test_strictly_increasing_in_x(self):
        grid = np.linspace(0.0, 8.0, 33)
        values = [reg_lower_gamma(float(x), 3.5) for x in grid]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            reg_lower_gamma(-0.1, 2.0)
        with pytest.raises(ValueError):
            reg_lower_gamma(1.0, 0.0)


class TestRiceanPhasePdf:
    def test_uniform_at_zero_concentration(self):
        for theta in (-3.0, -1.0, 0.0, 2.5):
            assert ricean_phase_pdf(theta, 0.0) == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-15)

    def test_even_in_theta(self):
        for rho in (0.5, 3.0, 40.0):
            for theta in (0.3, 1.1, 2.9):
                assert ricean_phase_pdf(theta, rho) == pytest.approx(
                    ricean_phase_pdf(-theta, rho), abs=1e-15
                )

    def test_normalizes_to_one(self):
        for rho in (0.1, 1.0, 10.0, 100.0):
            assert oracles.phase_pdf_integral(rho) == pytest.approx(1.0, abs=1e-8)

    def test_nonnegative(self):
        for rho in (0.0, 0.2, 5.0, 200.0):
            for theta in np.linspace(-math.pi, math.pi, 101):
                assert ricean_phase_pdf(float(theta), rho) >= 0.0

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            ricean_phase_pdf(4.0, 1.0)
        with pytest.raises(ValueError):
            ricean_phase_pdf(0.0, -1.0)
        with pytest.raises(ValueError):
            RiceanParam(math.inf)


class TestExpectedCos:
    def test_uniform_phase_limit(self):
        assert expected_cos(0.0, "exact") == 0.0

    def test_approx_saturates(self):
        assert expected_cos(1e12, "approx") == pytest.approx(1.0, abs=1e-12)

    def test_approx_rejects_zero(self):
        with pytest.raises(ValueError):
            expected_cos(0.0, "approx")

    def test_exact_matches_quadrature(self):
        for rho in (0.1, 1.0, 5.0, 10.0, 100.0):
            assert expected_cos(rho, "exact") == pytest.approx(
                oracles.expected_cos_quad(rho), abs=1e-8
            )

    def test_monotone_and_bounded(self):
        grid = np.arange(0.0, 100.05, 0.1)
        values = np.array([expected_cos(float(r), "exact") for r in grid])
        assert np.all(values >= 0.0) and np.all(values <= 1.0)
        assert np.all(np.diff(values) >= -1e-14)

    def test_approx_within_one_percent_above_ten(self):
        for rho in (10.0, 15.0, 25.0, 50.0, 100.0, 400.0, 700.0):
            exact = expected_cos(rho, "exact")
            approx = expected_cos(rho, "approx")
            assert abs(approx - exact) / exact <= 0.01

    def test_documented_switchover_is_seamless(self):
        below = expected_cos(EXPECTED_COS_EXACT_MAX_RHO, "exact")
        above = expected_cos(EXPECTED_COS_EXACT_MAX_RHO + 1e-9, "exact")
        assert abs(above - below) < 1e-6

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            expected_cos(1.0, "bessel")

    def test_accepts_param_object(self):
        assert expected_cos(RiceanParam(2.0)) == expected_cos(2.0)
