"""Phase and sign ambiguity resolution for raw subspace estimates.

A complex-domain estimate is known only up to a unit-modulus rotation; a
real-domain (widely linear) estimate only up to a sign.  Four correction
schemes are implemented in both domains:

* optimal        -- minimizes the Euclidean distance to the true channel;
* suboptimal     -- aligns one known channel coefficient (index ``ell``);
* largest_magnitude -- aligns the coefficient of largest magnitude;
* training       -- estimates the optimal correction from K averaged pilots.

Exact orthogonality / zero-coefficient degeneracies are measure-zero; they
resolve to a flagged default (phase 0, sign +1) via
``DegenerateCorrectionWarning`` so long Monte Carlo runs are never aborted,
except for ``suboptimal_phase`` where the phase of a zero coefficient is
genuinely undefined and an error is raised.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .channel import ChannelRealization, to_real
from .estimators import RawEstimate

__all__ = [
    "DegenerateCorrectionWarning",
    "Scenario",
    "CorrectedEstimate",
    "PilotBlock",
    "optimal_phase",
    "suboptimal_phase",
    "largest_mag_index",
    "make_pilots",
    "training_phase",
    "optimal_sign",
    "suboptimal_sign",
    "training_sign",
    "apply",
    "squared_error",
]

_TWO_PI = 2.0 * math.pi

SCENARIO_KINDS = ("optimal", "suboptimal", "largest_magnitude", "training")


class DegenerateCorrectionWarning(UserWarning):
    """A measure-zero degeneracy resolved to the default correction."""


def _warn_degenerate(message: str) -> None:
    warnings.warn(message, DegenerateCorrectionWarning, stacklevel=3)


@dataclass(frozen=True)
class Scenario:
    """Which ambiguity-resolution scheme is in force.

    ``ell`` (0-based coefficient index) is required for ``suboptimal``;
    ``K`` (pilot count, >= 1) for ``training``.
    """

    kind: str
    ell: int | None = None
    K: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.kind == "suboptimal":
            if self.ell is None or int(self.ell) < 0:
                raise ValueError("suboptimal scenario requires a coefficient index ell >= 0")
            object.__setattr__(self, "ell", int(self.ell))
        elif self.ell is not None:
            raise ValueError(f"ell is only meaningful for the suboptimal scenario")
        if self.kind == "training":
            if self.K is None or int(self.K) < 1:
                raise ValueError("training scenario requires a pilot count K >= 1")
            object.__setattr__(self, "K", int(self.K))
        elif self.K is not None:
            raise ValueError("K is only meaningful for the training scenario")

    @classmethod
    def optimal(cls) -> "Scenario":
        return cls("optimal")

    @classmethod
    def suboptimal(cls, ell: int) -> "Scenario":
        return cls("suboptimal", ell=ell)

    @classmethod
    def largest_magnitude(cls) -> "Scenario":
        return cls("largest_magnitude")

    @classmethod
    def training(cls, K: int) -> "Scenario":
        return cls("training", K=K)


@dataclass(frozen=True)
class PilotBlock:
    """Noise-averaged pilot observation z_m = g + (1/K) sum_k n_k.

    All K pilot symbols are +1, so averaging the received pilot vectors
    reduces the effective noise variance to ``sigma2 / K``.
    """

    averaged: np.ndarray
    K: int
    sigma2: float

    def __post_init__(self) -> None:
        averaged = np.asarray(self.averaged, dtype=complex).copy()
        if averaged.ndim != 1 or averaged.size < 1:
            raise ValueError("averaged must be a nonempty 1-d vector")
        if not np.all(np.isfinite(averaged.view(float))):
            raise ValueError("averaged must be finite")
        if int(self.K) < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if float(self.sigma2) < 0.0:
            raise ValueError(f"sigma2 must be nonnegative, got {self.sigma2}")
        averaged.setflags(write=False)
        object.__setattr__(self, "averaged", averaged)
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "sigma2", float(self.sigma2))

    @cached_property
    def averaged_real(self) -> np.ndarray:
        """Real-stacked view of z_m, used by sign training."""
        z = to_real(self.averaged)
        z.setflags(write=False)
        return z


@dataclass(frozen=True)
class CorrectedEstimate:
    """A raw estimate with its ambiguity correction applied.

    ``correction`` is the applied phase in [0, 2pi) for complex-domain
    estimates or the applied sign (+/-1.0) for real-domain ones; in both
    cases ``vector = correction-applied raw`` and the norm is preserved.
    """

    vector: np.ndarray
    correction: float
    scenario: Scenario

    def __post_init__(self) -> None:
        vector = np.asarray(self.vector)
        vector.setflags(write=False)
        object.__setattr__(self, "vector", vector)


def _vector_of(raw) -> np.ndarray:
    return raw.vector if isinstance(raw, RawEstimate) else np.asarray(raw)


def _wrap_phase(theta: float) -> float:
    return float(theta) % _TWO_PI


def optimal_phase(raw, h: np.ndarray) -> float:
    """Phase minimizing || e^{j theta} u - h ||^2: the angle of u^H h.

    Exact orthogonality of the two vectors leaves the phase undefined; that
    measure-zero event returns 0 with a ``DegenerateCorrectionWarning``.
    """
    u = _vector_of(raw)
    ip = complex(np.vdot(u, h))
    if ip == 0:
        _warn_degenerate("estimate exactly orthogonal to channel; phase set to 0")
        return 0.0
    return _wrap_phase(np.angle(ip))


def suboptimal_phase(raw, h_ell: complex, ell: int) -> float:
    """Phase that gives the ell-th corrected entry the phase of h_ell.

    theta_s = angle(conj(u_ell) * h_ell).  Either coefficient being exactly
    zero makes the phase undefined and raises ``ValueError``.
    """
    u = _vector_of(raw)
    ell = int(ell)
    if not 0 <= ell < u.size:
        raise ValueError(f"ell = {ell} out of range for length-{u.size} estimate")
    u_ell = complex(u[ell])
    h_ell = complex(h_ell)
    if u_ell == 0:
        raise ValueError(f"estimate coefficient {ell} is zero; its phase is undefined")
    if h_ell == 0:
        raise ValueError(f"channel coefficient {ell} is zero; its phase is undefined")
    return _wrap_phase(np.angle(u_ell.conjugate() * h_ell))


def largest_mag_index(h: np.ndarray) -> int:
    """Index of the largest-magnitude coefficient, ties broken by lowest index.

    Accepts a complex vector of length J or its real-stacked form of length
    2J (pairs (x_ell, x_{J+ell}) are treated as one complex coefficient).
    """
    h = np.asarray(h)
    if h.ndim != 1 or h.size < 1:
        raise ValueError("expected a nonempty 1-d vector")
    if not np.iscomplexobj(h):
        if h.size % 2 != 0:
            raise ValueError("real-stacked input must have even length")
        J = h.size // 2
        h = h[:J] + 1j * h[J:]
    return int(np.argmax(np.abs(h)))


def make_pilots(
    ch: ChannelRealization,
    K: int,
    sigma2: float,
    rng: np.random.Generator,
) -> PilotBlock:
    """Receive K all-plus-one pilot symbols and average them."""
    K = int(K)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    sigma2 = float(sigma2)
    if sigma2 < 0.0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")
    scale = math.sqrt(sigma2 / 2.0)
    noise = rng.normal(0.0, 1.0, size=(2, K, ch.J)) * scale
    averaged = ch.g + (noise[0] + 1j * noise[1]).mean(axis=0)
    return PilotBlock(averaged=averaged, K=K, sigma2=sigma2)


def training_phase(raw, pilots: PilotBlock) -> float:
    """Estimate the optimal phase from pilots: angle of u^H z_m."""
    u = _vector_of(raw)
    ip = complex(np.vdot(u, pilots.averaged))
    if ip == 0:
        _warn_degenerate("estimate exactly orthogonal to pilot average; phase set to 0")
        return 0.0
    return _wrap_phase(np.angle(ip))


def _sign_of(t: float, what: str) -> float:
    if t == 0.0:
        _warn_degenerate(f"{what} is exactly zero; sign set to +1")
        return 1.0
    return 1.0 if t > 0.0 else -1.0


def optimal_sign(raw, h_bar: np.ndarray) -> float:
    """Sign minimizing || b u_bar - h_bar ||^2: sgn(u_bar^T h_bar)."""
    u = _vector_of(raw)
    return _sign_of(float(u @ np.asarray(h_bar, dtype=float)), "inner product with channel")


def suboptimal_sign(raw, h_bar: np.ndarray, ell: int) -> float:
    """Sign from one known complex coefficient's real-stacked pair.

    b_s = sgn(h_bar[ell] u_bar[ell] + h_bar[J+ell] u_bar[J+ell]), which
    equals sgn(cos theta_s) of the matching complex-domain correction.
    """
    u = _vector_of(raw)
    h_bar = np.asarray(h_bar, dtype=float)
    if u.size % 2 != 0 or h_bar.size != u.size:
        raise ValueError("expected matching real-stacked vectors of even length")
    J = u.size // 2
    ell = int(ell)
    if not 0 <= ell < J:
        raise ValueError(f"ell = {ell} out of range for J = {J}")
    t = h_bar[ell] * u[ell] + h_bar[J + ell] * u[J + ell]
    return _sign_of(float(t), f"paired inner product at coefficient {ell}")


def training_sign(raw, pilots: PilotBlock) -> float:
    """Estimate the optimal sign from pilots: sgn(u_bar^T z_bar_m)."""
    u = _vector_of(raw)
    return _sign_of(float(u @ pilots.averaged_real), "inner product with pilot average")


def apply(
    raw: RawEstimate,
    scenario: Scenario,
    ch: ChannelRealization,
    pilots: PilotBlock | None = None,
) -> CorrectedEstimate:
    """Apply the scenario's correction to a raw estimate.

    Complex-domain estimates get a phase rotation, real-domain estimates a
    sign flip; the correction is recorded on the result.  The training
    scenario requires a ``pilots`` block.
    """
    if scenario.kind == "training" and pilots is None:
        raise ValueError("training scenario requires a pilot block")
    if raw.domain == "complex":
        if scenario.kind == "optimal":
            theta = optimal_phase(raw, ch.h)
        elif scenario.kind == "suboptimal":
            theta = suboptimal_phase(raw, ch.h[scenario.ell], scenario.ell)
        elif scenario.kind == "largest_magnitude":
            theta = suboptimal_phase(raw, ch.h[ch.L], ch.L)
        else:
            theta = training_phase(raw, pilots)
        vector = np.exp(1j * theta) * raw.vector
        return CorrectedEstimate(vector=vector, correction=theta, scenario=scenario)

    if scenario.kind == "optimal":
        b = optimal_sign(raw, ch.h_bar)
    elif scenario.kind == "suboptimal":
        b = suboptimal_sign(raw, ch.h_bar, scenario.ell)
    elif scenario.kind == "largest_magnitude":
        b = suboptimal_sign(raw, ch.h_bar, ch.L)
    else:
        b = training_sign(raw, pilots)
    return CorrectedEstimate(vector=b * raw.vector, correction=b, scenario=scenario)


def squared_error(corrected, truth: np.ndarray) -> float:
    """Squared Euclidean distance between an estimate and the true channel."""
    v = corrected.vector if isinstance(corrected, CorrectedEstimate) else np.asarray(corrected)
    delta = v - np.asarray(truth)
    return float(np.vdot(delta, delta).real)
