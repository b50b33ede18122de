"""Closed-form error analysis for both estimators and all four scenarios.

Conditioned on a channel realization, the mean squared estimation error
under optimal correction is, to first perturbation order,

    conventional:  (J - 1)  (sigma2 ||g||^2 + sigma2^2) / (N ||g||^4)
    widely linear: (2J - 1) (sigma2 ||g||^2 / 2 + sigma2^2 / 4) / (N ||g||^4)

and every other scenario adds a penalty for imperfect phase / sign
recovery.  This module evaluates those expressions (with their exact and
approximate variants), the error-vector decomposition they are derived
from, the MSE difference between the estimators, and the probability /
bound expressions for which estimator wins once the channel statistics are
averaged over.

Where the source expressions are printed in two mutually inconsistent
forms, both variants are exposed and a Monte Carlo oracle (see
:mod:`wlsubspace.harness`) adjudicates; nothing is silently corrected.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .ambiguity import CorrectedEstimate, Scenario
from .channel import ChannelRealization
from .numerics import expected_cos, gaussian_q, reg_lower_gamma

__all__ = [
    "AnalysisValidityWarning",
    "TheoryQuery",
    "BoundsRecord",
    "theory_mse",
    "error_decomposition",
    "delta_mse",
    "prob_wl_wins_optimal",
    "prob_sign_error_training",
    "prob_sign_error_unconditional",
    "lmag_bounds",
]

ESTIMATORS = ("conventional", "wl")
MSE_VARIANTS = ("exact", "approx", "taylor")

_DECOMPOSITION_TOL = 1e-8


class AnalysisValidityWarning(UserWarning):
    """An expression was evaluated outside its stated validity region."""


@dataclass(frozen=True)
class TheoryQuery:
    """Inputs of the closed-form MSE expressions for one channel realization.

    ``h_ell_mag2`` / ``h_L_mag2`` are |h_ell|^2 and |h_L|^2 and are only
    required by the scenarios that use them; the pilot count rides on the
    scenario itself.
    """

    estimator: str
    scenario: Scenario
    J: int
    N: int
    sigma2: float
    g_norm2: float
    h_ell_mag2: float | None = None
    h_L_mag2: float | None = None

    def __post_init__(self) -> None:
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}, got {self.estimator!r}")
        if int(self.J) < 1 or int(self.N) < 1:
            raise ValueError("J and N must be >= 1")
        if float(self.sigma2) < 0.0:
            raise ValueError("sigma2 must be nonnegative")
        if float(self.g_norm2) <= 0.0:
            raise ValueError("g_norm2 must be positive")
        for name in ("h_ell_mag2", "h_L_mag2"):
            value = getattr(self, name)
            if value is not None and not 0.0 < float(value) <= 1.0 + 1e-12:
                raise ValueError(f"{name} must lie in (0, 1], got {value}")
        if self.h_L_mag2 is not None and self.h_L_mag2 < 1.0 / int(self.J) - 1e-12:
            raise ValueError("h_L_mag2 cannot be below 1/J for a unit-norm channel")
        object.__setattr__(self, "J", int(self.J))
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        object.__setattr__(self, "g_norm2", float(self.g_norm2))

    @classmethod
    def for_channel(
        cls,
        estimator: str,
        scenario: Scenario,
        ch: ChannelRealization,
        N: int,
        sigma2: float,
    ) -> "TheoryQuery":
        """Build a query from a channel realization's functionals."""
        h_mag2 = np.abs(ch.h) ** 2
        return cls(
            estimator=estimator,
            scenario=scenario,
            J=ch.J,
            N=N,
            sigma2=sigma2,
            h_ell_mag2=float(h_mag2[scenario.ell]) if scenario.kind == "suboptimal" else None,
            h_L_mag2=float(h_mag2[ch.L]),
            g_norm2=ch.norm2,
        )


@dataclass(frozen=True)
class BoundsRecord:
    """One candidate bound set on P{conventional MSE > WL MSE} (largest magnitude).

    Two-antenna channels carry two mutually inconsistent printed bound
    pairs, labelled by ``variant``; for J >= 3 there is a single lower
    bound plus the SNR-independent looser one.
    """

    variant: str
    lower: float
    upper: float | None = None
    looser_lower: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= 1.0:
            raise ValueError(f"lower bound {self.lower} outside [0, 1]")
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")


def _optimal_factor(q: TheoryQuery) -> float:
    """Per-mode noise factor of the optimal-correction MSE."""
    g2 = q.g_norm2
    if q.estimator == "conventional":
        return (q.sigma2 * g2 + q.sigma2**2) / (q.N * g2 * g2)
    return (0.5 * q.sigma2 * g2 + 0.25 * q.sigma2**2) / (q.N * g2 * g2)


def _optimal_mse(q: TheoryQuery) -> float:
    modes = q.J - 1 if q.estimator == "conventional" else 2 * q.J - 1
    return modes * _optimal_factor(q)


def _require_mag2(q: TheoryQuery) -> float:
    if q.scenario.kind == "suboptimal":
        if q.h_ell_mag2 is None:
            raise ValueError("suboptimal scenario requires h_ell_mag2")
        return q.h_ell_mag2
    if q.h_L_mag2 is None:
        raise ValueError("largest_magnitude scenario requires h_L_mag2")
    return q.h_L_mag2


def theory_mse(q: TheoryQuery, variant: str = "exact") -> float:
    """Closed-form MSE for one (estimator, scenario, channel) combination.

    ``variant`` selects the expression layer where more than one is printed:
    ``"exact"`` uses the Bessel form of the mean phase-error cosine,
    ``"approx"`` the exponential approximation, and ``"taylor"`` (only for
    conventional / largest_magnitude) the two-term expansion of that
    exponential.  Scenarios with a single printed expression return it for
    both ``"exact"`` and ``"approx"``.  The |h|^2 -> 1 (rho -> infinity)
    singularity returns the optimal-scenario value, its analytic limit.
    """
    if variant not in MSE_VARIANTS:
        raise ValueError(f"variant must be one of {MSE_VARIANTS}, got {variant!r}")
    if variant == "taylor" and not (
        q.estimator == "conventional" and q.scenario.kind == "largest_magnitude"
    ):
        raise ValueError("the taylor variant only exists for conventional/largest_magnitude")
    if q.sigma2 == 0.0:
        return 0.0

    base = _optimal_mse(q)
    kind = q.scenario.kind
    if kind == "optimal":
        return base

    if q.estimator == "conventional":
        factor = _optimal_factor(q)
        if kind == "training":
            rho_t = q.scenario.K * q.g_norm2 / q.sigma2
            mean_cos = expected_cos(rho_t, "exact" if variant == "exact" else "approx")
            return base + 2.0 - 2.0 * mean_cos
        mag2 = _require_mag2(q)
        if variant == "taylor":
            modes = q.J + 0.5 / mag2 - 1.5
            return modes * factor
        if mag2 >= 1.0:
            return base
        if variant == "exact":
            rho = mag2 / (factor * (1.0 - mag2))
            return base + 2.0 - 2.0 * expected_cos(rho, "exact")
        exponent = 0.25 * factor * (1.0 / mag2 - 1.0)
        return base + 2.0 - 2.0 * math.exp(-exponent)

    # widely linear branch
    if kind == "training":
        return base + 4.0 * gaussian_q(math.sqrt(2.0 * q.scenario.K * q.g_norm2 / q.sigma2))
    mag2 = _require_mag2(q)
    if mag2 >= 1.0:
        return base
    factor = _optimal_factor(q)
    rho = mag2 / (factor * (1.0 - mag2))
    return base + 4.0 - 4.0 * gaussian_q(-math.sqrt(rho))


def error_decomposition(corrected, truth: np.ndarray):
    """Split an optimally corrected error into channel-orthogonal and parallel parts.

    Writes ``corrected = truth + q + alpha * truth`` with ``q`` orthogonal to
    ``truth`` and ``alpha`` real, and returns ``(q, alpha)``.  Unit norms
    give the exact identity ``alpha = -1 + sqrt(1 - ||q||^2)``.  Inputs must
    be unit-norm and optimally corrected (the inner product with the truth
    must be real); anything else raises ``ValueError``.
    """
    v = corrected.vector if isinstance(corrected, CorrectedEstimate) else np.asarray(corrected)
    truth = np.asarray(truth)
    if v.shape != truth.shape:
        raise ValueError("estimate and truth must have the same shape")
    for name, vec in (("estimate", v), ("truth", truth)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > _DECOMPOSITION_TOL:
            raise ValueError(f"{name} must be unit-norm, got ||.|| = {norm!r}")
    ip = complex(np.vdot(truth, v))
    if abs(ip.imag) > _DECOMPOSITION_TOL:
        raise ValueError(
            "estimate is not optimally corrected: inner product with truth is not real "
            f"(imaginary part {ip.imag:.3e})"
        )
    alpha = ip.real - 1.0
    q = v - (1.0 + alpha) * truth
    return q, float(alpha)


def _require_matching(conv: TheoryQuery, wl: TheoryQuery, kind: str) -> None:
    if conv.estimator != "conventional" or wl.estimator != "wl":
        raise ValueError("delta_mse expects a (conventional, wl) query pair")
    if conv.scenario.kind != kind or wl.scenario.kind != kind:
        raise ValueError(f"both queries must use the {kind!r} scenario")
    same = (
        conv.J == wl.J
        and conv.N == wl.N
        and conv.sigma2 == wl.sigma2
        and conv.g_norm2 == wl.g_norm2
        and conv.h_L_mag2 == wl.h_L_mag2
    )
    if not same:
        raise ValueError("queries describe different channels or sample sizes")


def delta_mse(conv: TheoryQuery, wl: TheoryQuery, form: str = "full") -> float:
    """MSE difference, conventional minus widely linear.

    Optimal scenario (either ``form``):

        (1 / (N ||g||^4)) (-sigma2 ||g||^2 / 2 + sigma2^2 (J/2 - 3/4))

    Largest-magnitude scenario: ``form="full"`` is the Taylor conventional
    expression minus the complete WL expression (including its 4 - 4Q
    sign-error term); ``form="simplified"`` drops that vanishing term.
    """
    if form not in ("full", "simplified"):
        raise ValueError(f"form must be 'full' or 'simplified', got {form!r}")
    kind = conv.scenario.kind
    if kind == "optimal":
        _require_matching(conv, wl, "optimal")
        g2 = conv.g_norm2
        s2 = conv.sigma2
        return (-0.5 * s2 * g2 + s2 * s2 * (conv.J / 2.0 - 0.75)) / (conv.N * g2 * g2)
    if kind != "largest_magnitude":
        raise ValueError("delta_mse is defined for the optimal and largest_magnitude scenarios")
    _require_matching(conv, wl, "largest_magnitude")
    g2, s2, N, J = conv.g_norm2, conv.sigma2, conv.N, conv.J
    mag2 = conv.h_L_mag2
    if mag2 is None:
        raise ValueError("largest_magnitude delta requires h_L_mag2")
    lead = s2 / (N * g2) * (0.5 / mag2 - 1.0)
    quad = s2 * s2 / (N * g2 * g2) * (J / 2.0 + 0.5 / mag2 - 1.25)
    if form == "simplified":
        return lead + quad
    if mag2 >= 1.0:
        sign_term = 0.0
    else:
        factor = (0.5 * s2 * g2 + 0.25 * s2 * s2) / (N * g2 * g2)
        rho = mag2 / (factor * (1.0 - mag2))
        sign_term = 4.0 * gaussian_q(-math.sqrt(rho)) - 4.0
    return lead + quad + sign_term


def prob_wl_wins_optimal(J: int, sigma2: float, gamma2: float) -> float:
    """P{conventional MSE exceeds WL MSE} under optimal correction.

    With ||g||^2 Gamma-distributed this is the regularized lower incomplete
    gamma G((sigma2/gamma2)(J - 3/2), J); requires J >= 2.
    """
    J = int(J)
    if J < 2:
        raise ValueError(f"J must be >= 2, got {J}")
    if float(sigma2) < 0.0 or float(gamma2) <= 0.0:
        raise ValueError("sigma2 must be >= 0 and gamma2 > 0")
    return reg_lower_gamma(float(sigma2) / float(gamma2) * (J - 1.5), J)


def prob_sign_error_training(g_norm2: float, K: int, sigma2: float) -> float:
    """Conditional pilot sign-error probability Q(sqrt(2 K ||g||^2 / sigma2))."""
    if int(K) < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if float(g_norm2) <= 0.0 or float(sigma2) <= 0.0:
        raise ValueError("g_norm2 and sigma2 must be positive")
    return gaussian_q(math.sqrt(2.0 * int(K) * float(g_norm2) / float(sigma2)))


def prob_sign_error_unconditional(
    J: int,
    K: int,
    gamma2: float,
    sigma2: float,
    variant: str = "power_corrected",
) -> float:
    """Channel-averaged pilot sign-error probability.

        (1/2) [1 - sqrt(K gamma2 / (K gamma2 + sigma2))
                   * sum_{l=0}^{J-1} C(2l, l) t^{p(l)}],
        t = sigma2 / (4 (K gamma2 + sigma2)).

    The printed source carries no exponent on t (``variant="as_printed"``,
    p(l) = 1); a Gamma-MGF expansion gives p(l) = l
    (``variant="power_corrected"``).  Both are exposed; the Monte Carlo
    oracle in the harness adjudicates.  Outside the stated validity region
    K gamma2 / sigma2 > 1 the value is still computed but a
    ``AnalysisValidityWarning`` is issued.
    """
    J, K = int(J), int(K)
    if J < 1 or K < 1:
        raise ValueError("J and K must be >= 1")
    gamma2, sigma2 = float(gamma2), float(sigma2)
    if gamma2 <= 0.0 or sigma2 <= 0.0:
        raise ValueError("gamma2 and sigma2 must be positive")
    if variant not in ("as_printed", "power_corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    if K * gamma2 / sigma2 <= 1.0:
        warnings.warn(
            "K*gamma2/sigma2 <= 1: outside the stated validity region",
            AnalysisValidityWarning,
            stacklevel=2,
        )
    mu = math.sqrt(K * gamma2 / (K * gamma2 + sigma2))
    t = sigma2 / (4.0 * (K * gamma2 + sigma2))
    total = sum(
        math.comb(2 * l, l) * t ** (l if variant == "power_corrected" else 1)
        for l in range(J)
    )
    return 0.5 * (1.0 - mu * total)


def lmag_bounds(J: int, sigma2: float, gamma2: float) -> list[BoundsRecord]:
    """Bounds on P{conventional MSE > WL MSE} under largest-magnitude correction.

    J = 2 returns both printed candidate pairs (they disagree; the harness
    adjudicates which one the simulation respects):

        theorem_statement:   (1 - e^{-r/2}, 1 - e^{-r})
        appendix_derivation: (1 - e^{-r},   1 - e^{-2r})

    with r = sigma2 / gamma2.  J >= 3 returns the single lower bound
    1 - J (1/2)^{J-1} e^{-r} together with the SNR-independent looser bound
    1 - J (1/2)^{J-1}.
    """
    J = int(J)
    if J < 2:
        raise ValueError(f"J must be >= 2, got {J}")
    sigma2, gamma2 = float(sigma2), float(gamma2)
    if sigma2 < 0.0 or gamma2 <= 0.0:
        raise ValueError("sigma2 must be >= 0 and gamma2 > 0")
    r = sigma2 / gamma2
    if J == 2:
        return [
            BoundsRecord(
                variant="theorem_statement",
                lower=1.0 - math.exp(-0.5 * r),
                upper=1.0 - math.exp(-r),
            ),
            BoundsRecord(
                variant="appendix_derivation",
                lower=1.0 - math.exp(-r),
                upper=1.0 - math.exp(-2.0 * r),
            ),
        ]
    weight = J * 0.5 ** (J - 1)
    return [
        BoundsRecord(
            variant="theorem_statement",
            lower=1.0 - weight * math.exp(-r),
            upper=None,
            looser_lower=1.0 - weight,
        )
    ]
