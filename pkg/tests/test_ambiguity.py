"""Phase / sign correction schemes and their statistical contracts."""

import math

import numpy as np
import pytest

from wlsubspace.ambiguity import (
    DegenerateCorrectionWarning,
    PilotBlock,
    Scenario,
    apply,
    largest_mag_index,
    make_pilots,
    optimal_phase,
    optimal_sign,
    squared_error,
    suboptimal_phase,
    suboptimal_sign,
    training_phase,
    training_sign,
)
from wlsubspace.analysis import error_decomposition
from wlsubspace.channel import (
    ChannelRealization,
    draw_block,
    draw_channel,
    substream,
    to_real,
)
from wlsubspace.estimators import conventional_estimate, wl_estimate
from wlsubspace.numerics import expected_cos

import oracles

SEED = 20260810


def unit_channel(g, gamma2=1.0):
    return ChannelRealization(g=np.asarray(g, dtype=complex), gamma2=gamma2)


class TestScenario:
    def test_kinds_and_parameters(self):
        assert Scenario.optimal().kind == "optimal"
        assert Scenario.suboptimal(2).ell == 2
        assert Scenario.training(5).K == 5
        with pytest.raises(ValueError):
            Scenario("sideways")
        with pytest.raises(ValueError):
            Scenario("suboptimal")
        with pytest.raises(ValueError):
            Scenario("training", K=0)
        with pytest.raises(ValueError):
            Scenario("optimal", K=1)


class TestOptimalPhase:
    def test_aligned(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 0))
        assert optimal_phase(ch.h, ch.h) == 0.0

    def test_pure_rotation(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 1))
        for phi in (0.3, 1.9, 4.4):
            raw = ch.h * np.exp(1j * phi)
            theta = optimal_phase(raw, ch.h)
            assert oracles.angle_distance(theta, -phi) <= 1e-12

    def test_matches_brute_force_minimizer(self):
        rng = substream(SEED, "grid")
        for _ in range(3):
            u = rng.normal(size=5) + 1j * rng.normal(size=5)
            h = rng.normal(size=5) + 1j * rng.normal(size=5)
            u, h = u / np.linalg.norm(u), h / np.linalg.norm(h)
            theta = optimal_phase(u, h)
            grid_theta = oracles.phase_grid_minimizer(u, h)
            assert oracles.angle_distance(theta, grid_theta) <= 1e-5

    def test_never_beaten_on_a_grid(self):
        rng = substream(SEED, "never-beaten")
        u = rng.normal(size=4) + 1j * rng.normal(size=4)
        h = rng.normal(size=4) + 1j * rng.normal(size=4)
        u, h = u / np.linalg.norm(u), h / np.linalg.norm(h)
        best = np.linalg.norm(np.exp(1j * optimal_phase(u, h)) * u - h)
        for theta in np.linspace(0.0, 2.0 * math.pi, 10_000, endpoint=False):
            assert best <= np.linalg.norm(np.exp(1j * theta) * u - h) + 1e-12

    def test_orthogonal_flagged(self):
        u = np.array([1.0 + 0.0j, 0.0j])
        h = np.array([0.0j, 1.0 + 0.0j])
        with pytest.warns(DegenerateCorrectionWarning):
            assert optimal_phase(u, h) == 0.0


class TestSuboptimalPhase:
    def test_aligned(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 2))
        assert suboptimal_phase(ch.h, ch.h[1], 1) == pytest.approx(0.0, abs=1e-15)

    def test_single_coefficient_equals_optimal(self):
        ch = draw_channel(1, 1.0, substream(SEED, "channel", 3))
        rng = substream(SEED, "j1")
        u = rng.normal(size=1) + 1j * rng.normal(size=1)
        u = u / np.linalg.norm(u)
        assert suboptimal_phase(u, ch.h[0], 0) == pytest.approx(
            optimal_phase(u, ch.h), abs=1e-12
        )

    def test_defining_property(self):
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 4))
        rng = substream(SEED, "phase-prop")
        u = rng.normal(size=5) + 1j * rng.normal(size=5)
        u = u / np.linalg.norm(u)
        for ell in range(5):
            theta = suboptimal_phase(u, ch.h[ell], ell)
            corrected = np.exp(1j * theta) * u
            assert oracles.angle_distance(
                np.angle(corrected[ell]), np.angle(ch.h[ell])
            ) <= 1e-12

    def test_zero_coefficient_rejected(self):
        u = np.array([0.0j, 1.0 + 0.0j])
        with pytest.raises(ValueError):
            suboptimal_phase(u, 1.0 + 0.0j, 0)
        with pytest.raises(ValueError):
            suboptimal_phase(np.array([1.0 + 0.0j]), 0.0j, 0)


class TestLargestMagIndex:
    def test_direct_comparison(self):
        assert largest_mag_index(np.array([0.6, 0.8], dtype=complex)) == 1

    def test_tie_break_lowest(self):
        assert largest_mag_index(np.ones(4, dtype=complex) / 2.0) == 0

    def test_matches_linear_scan(self):
        rng = substream(SEED, "scan")
        for _ in range(25):
            h = rng.normal(size=6) + 1j * rng.normal(size=6)
            best = 0
            for j in range(6):
                if abs(h[j]) > abs(h[best]):
                    best = j
            assert largest_mag_index(h) == best
            assert largest_mag_index(to_real(h)) == best

    def test_matches_channel_field(self):
        ch = draw_channel(7, 1.0, substream(SEED, "channel", 5))
        assert largest_mag_index(ch.h) == ch.L


class TestMakePilots:
    def test_noiseless(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 6))
        pilots = make_pilots(ch, 3, 0.0, substream(SEED, "pilots", 6))
        np.testing.assert_array_equal(pilots.averaged, ch.g)

    def test_deterministic(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 7))
        a = make_pilots(ch, 2, 0.5, substream(SEED, "pilots", 7))
        b = make_pilots(ch, 2, 0.5, substream(SEED, "pilots", 7))
        np.testing.assert_array_equal(a.averaged, b.averaged)

    @pytest.mark.parametrize("K", [1, 4])
    def test_averaging_reduces_variance(self, K):
        # 2e4 draws x J=5 -> 1e5 residual components; tolerance 3%
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 8))
        sigma2 = 0.8
        rng = substream(SEED, "pilots", 8, K)
        residuals = np.concatenate(
            [make_pilots(ch, K, sigma2, rng).averaged - ch.g for _ in range(20_000)]
        )
        total_var = residuals.real.var() + residuals.imag.var()
        assert total_var == pytest.approx(sigma2 / K, rel=0.03)

    def test_real_view(self):
        ch = draw_channel(3, 1.0, substream(SEED, "channel", 9))
        pilots = make_pilots(ch, 1, 0.2, substream(SEED, "pilots", 9))
        np.testing.assert_allclose(pilots.averaged_real, to_real(pilots.averaged))


class TestTrainingPhase:
    def test_noiseless_equals_optimal(self):
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 10))
        block = draw_block(ch, 100, 0.1, substream(SEED, "symbols", 10))
        raw = conventional_estimate(block)
        pilots = make_pilots(ch, 2, 0.0, substream(SEED, "pilots", 10))
        assert training_phase(raw, pilots) == pytest.approx(
            optimal_phase(raw, ch.h), abs=1e-12
        )

    def test_error_distribution_and_mean_cosine(self):
        # concentration K ||g||^2 / sigma2 = 10; 1e5 pilot realizations
        g = np.zeros(5, dtype=complex)
        g[0] = 1.0 + 1.0j
        g[1:] = [0.8, -0.9j, 0.7 - 0.6j, 0.5 + 0.5j]
        g = g * math.sqrt(5.0) / np.linalg.norm(g)
        ch = unit_channel(g)
        assert ch.norm2 == pytest.approx(5.0, abs=1e-12)
        sigma2, K, trials = 0.5, 1, 100_000
        rho_t = K * ch.norm2 / sigma2

        raw = ch.h * np.exp(0.7j)  # exact direction, nonzero reference phase
        theta_o = optimal_phase(raw, ch.h)
        rng = substream(SEED, "pilots", 11)
        errors = np.empty(trials)
        for i in range(trials):
            pilots = make_pilots(ch, K, sigma2, rng)
            errors[i] = np.angle(np.exp(1j * (training_phase(raw, pilots) - theta_o)))

        thetas, cdf = oracles.phase_cdf_grid(rho_t)
        sorted_errors = np.sort(errors)
        model_cdf = np.interp(sorted_errors, thetas, cdf)
        empirical_cdf = (np.arange(trials) + 0.5) / trials
        assert np.max(np.abs(model_cdf - empirical_cdf)) <= 0.01

        assert np.cos(errors).mean() == pytest.approx(expected_cos(rho_t), rel=0.01)


class TestOptimalSign:
    def test_aligned_and_flipped(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 12))
        assert optimal_sign(ch.h_bar, ch.h_bar) == 1.0
        assert optimal_sign(-ch.h_bar, ch.h_bar) == -1.0

    def test_matches_cosine_of_optimal_phase(self):
        rng = substream(SEED, "sign-pairs")
        for _ in range(10_000):
            u = rng.normal(size=3) + 1j * rng.normal(size=3)
            h = rng.normal(size=3) + 1j * rng.normal(size=3)
            u, h = u / np.linalg.norm(u), h / np.linalg.norm(h)
            b = optimal_sign(to_real(u), to_real(h))
            assert b == math.copysign(1.0, math.cos(optimal_phase(u, h)))

    def test_never_beaten(self):
        rng = substream(SEED, "sign-opt")
        u = rng.normal(size=8)
        h = rng.normal(size=8)
        u, h = u / np.linalg.norm(u), h / np.linalg.norm(h)
        b = optimal_sign(u, h)
        assert np.linalg.norm(b * u - h) <= np.linalg.norm(-b * u - h)

    def test_orthogonal_flagged(self):
        with pytest.warns(DegenerateCorrectionWarning):
            assert optimal_sign(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0


class TestSuboptimalSign:
    def test_aligned(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 13))
        assert suboptimal_sign(ch.h_bar, ch.h_bar, 2) == 1.0

    def test_single_coefficient_equals_optimal(self):
        rng = substream(SEED, "sign-j1")
        for _ in range(50):
            u = rng.normal(size=2)
            h = rng.normal(size=2)
            assert suboptimal_sign(u, h, 0) == optimal_sign(u, h)

    def test_equals_cosine_sign_of_suboptimal_phase(self):
        rng = substream(SEED, "sign-sub")
        for _ in range(200):
            u = rng.normal(size=4) + 1j * rng.normal(size=4)
            h = rng.normal(size=4) + 1j * rng.normal(size=4)
            u, h = u / np.linalg.norm(u), h / np.linalg.norm(h)
            for ell in range(4):
                theta_s = suboptimal_phase(u, h[ell], ell)
                b = suboptimal_sign(to_real(u), to_real(h), ell)
                assert b == math.copysign(1.0, math.cos(theta_s))

    def test_agreement_rate_matches_prediction(self):
        # 1e5 estimation trials at J=5, N=100, 10 dB
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 14))
        ell = 3
        sigma2, N, trials = 0.1, 100, 100_000
        cw = (0.5 * sigma2 * ch.norm2 + 0.25 * sigma2**2) / (N * ch.norm2**2)
        mag2 = abs(ch.h[ell]) ** 2
        from wlsubspace.numerics import gaussian_q

        predicted = gaussian_q(-math.sqrt(mag2 / (cw * (1.0 - mag2))))
        agreements = 0
        for b in range(trials):
            block = draw_block(
                ch,
                N,
                sigma2,
                substream(SEED, "symbols", 14, b),
                noise_rng=substream(SEED, "noise", 14, b),
            )
            wl = wl_estimate(block)
            agreements += suboptimal_sign(wl, ch.h_bar, ell) == optimal_sign(wl, ch.h_bar)
        assert agreements / trials == pytest.approx(predicted, abs=0.01)


class TestTrainingSign:
    def test_noiseless(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 15))
        block = draw_block(ch, 60, 0.2, substream(SEED, "symbols", 15))
        wl = wl_estimate(block)
        pilots = make_pilots(ch, 1, 0.0, substream(SEED, "pilots", 15))
        assert training_sign(wl, pilots) == optimal_sign(wl, ch.h_bar)

    def test_error_rate_matches_gaussian_tail(self):
        # ||g||^2 = 2, sigma2 = 1, K = 1 -> error probability Q(2); 1e6 pilot draws
        ch = unit_channel([1.0, 1.0j])
        sigma2, K, trials = 1.0, 1, 1_000_000
        raw = ch.h_bar  # b_o = +1 by construction
        rng = substream(SEED, "pilots", 16)
        errors = 0
        for _ in range(trials):
            pilots = make_pilots(ch, K, sigma2, rng)
            errors += training_sign(raw, pilots) != 1.0
        from wlsubspace.numerics import gaussian_q

        expected = gaussian_q(2.0)
        assert expected == pytest.approx(0.02275, abs=2e-5)
        assert errors / trials == pytest.approx(expected, rel=0.10)

    def test_many_pilots_make_errors_vanish(self):
        ch = unit_channel([1.0, 1.0j])
        rng = substream(SEED, "pilots", 17)
        errors = 0
        for _ in range(100_000):
            pilots = make_pilots(ch, 25, 1.0, rng)
            errors += training_sign(ch.h_bar, pilots) != 1.0
        assert errors == 0

    def test_matches_cosine_sign_of_phase_error(self):
        # one pilot block feeding both the phase and the sign correction:
        # the estimated sign equals the optimal sign times sgn(cos eps)
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 18))
        rng_p = substream(SEED, "pilots", 18)
        for b in range(300):
            block = draw_block(ch, 100, 1.0, substream(SEED, "symbols", 18, b))
            raw = conventional_estimate(block)
            pilots = make_pilots(ch, 1, 1.0, rng_p)
            theta_o = optimal_phase(raw, ch.h)
            eps = training_phase(raw, pilots) - theta_o
            aligned = np.exp(1j * theta_o) * raw.vector
            for s in (1.0, -1.0):
                u_bar = s * to_real(aligned)
                b_o = optimal_sign(u_bar, ch.h_bar)
                b_hat = training_sign(u_bar, pilots)
                assert b_hat == b_o * math.copysign(1.0, math.cos(eps))


class TestApplyAndSquaredError:
    def test_optimal_on_truth_is_exact(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 19))
        block = draw_block(ch, 16, 0.0, substream(SEED, "symbols", 19))
        conv = apply(conventional_estimate(block), Scenario.optimal(), ch)
        assert squared_error(conv, ch.h) == pytest.approx(0.0, abs=1e-20)
        wl = apply(wl_estimate(block), Scenario.optimal(), ch)
        assert squared_error(wl, ch.h_bar) == pytest.approx(0.0, abs=1e-20)

    def test_noiseless_pilots_reproduce_optimal(self):
        ch = draw_channel(4, 1.0, substream(SEED, "channel", 20))
        block = draw_block(ch, 64, 0.3, substream(SEED, "symbols", 20))
        pilots = make_pilots(ch, 1, 0.0, substream(SEED, "pilots", 20))
        for estimate, truth in (
            (conventional_estimate(block), ch.h),
            (wl_estimate(block), ch.h_bar),
        ):
            trained = apply(estimate, Scenario.training(1), ch, pilots)
            optimal = apply(estimate, Scenario.optimal(), ch)
            np.testing.assert_allclose(trained.vector, optimal.vector, atol=1e-12)

    def test_norm_preserved_by_every_scenario(self):
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 21))
        block = draw_block(ch, 50, 0.5, substream(SEED, "symbols", 21))
        pilots = make_pilots(ch, 2, 0.5, substream(SEED, "pilots", 21))
        scenarios = [
            Scenario.optimal(),
            Scenario.suboptimal(1),
            Scenario.largest_magnitude(),
            Scenario.training(2),
        ]
        for estimate in (conventional_estimate(block), wl_estimate(block)):
            for scen in scenarios:
                corrected = apply(estimate, scen, ch, pilots)
                assert np.linalg.norm(corrected.vector) == pytest.approx(1.0, abs=1e-12)

    def test_training_requires_pilots(self):
        ch = draw_channel(3, 1.0, substream(SEED, "channel", 22))
        block = draw_block(ch, 10, 0.1, substream(SEED, "symbols", 22))
        with pytest.raises(ValueError):
            apply(conventional_estimate(block), Scenario.training(1), ch)

    def test_pilot_validation(self):
        with pytest.raises(ValueError):
            PilotBlock(averaged=np.array([1.0 + 0j]), K=0, sigma2=0.1)


class TestOptimalErrorStructure:
    def test_decomposition_identity_per_trial(self):
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 23))
        alpha_sq = 0.0
        q_sq = 0.0
        trials = 2000
        for b in range(trials):
            block = draw_block(ch, 100, 0.1, substream(SEED, "symbols", 23, b))
            conv = apply(conventional_estimate(block), Scenario.optimal(), ch)
            q, alpha = error_decomposition(conv, ch.h)
            assert abs(np.vdot(ch.h, q)) <= 1e-10
            norm_q_sq = float(np.vdot(q, q).real)
            assert alpha == pytest.approx(-1.0 + math.sqrt(1.0 - norm_q_sq), abs=1e-10)
            alpha_sq += alpha * alpha
            q_sq += norm_q_sq
        assert alpha_sq <= 0.02 * q_sq

    def test_real_domain_structure(self):
        ch = draw_channel(5, 1.0, substream(SEED, "channel", 24))
        mu_sq = 0.0
        q_sq = 0.0
        trials = 2000
        for b in range(trials):
            block = draw_block(ch, 100, 0.1, substream(SEED, "symbols", 24, b))
            wl = apply(wl_estimate(block), Scenario.optimal(), ch)
            q, mu = error_decomposition(wl, ch.h_bar)
            assert abs(float(q @ ch.h_bar)) <= 1e-10
            norm_q_sq = float(q @ q)
            assert mu == pytest.approx(-1.0 + math.sqrt(1.0 - norm_q_sq), abs=1e-10)
            mu_sq += mu * mu
            q_sq += norm_q_sq
        assert mu_sq <= 0.02 * q_sq
