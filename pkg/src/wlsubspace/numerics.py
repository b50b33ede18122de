"""Scalar special functions and phase-error statistics.

Thin, strictly validated wrappers around ``math`` / ``scipy.special`` plus
the Ricean phase density and its mean cosine, which drive every closed-form
accuracy expression in :mod:`wlsubspace.analysis`.  All functions are pure
and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import special as _special

__all__ = [
    "RiceanParam",
    "erf",
    "gaussian_q",
    "bessel_i",
    "reg_lower_gamma",
    "ricean_phase_pdf",
    "expected_cos",
    "EXPECTED_COS_EXACT_MAX_RHO",
]

_SQRT2 = math.sqrt(2.0)
_TWO_PI = 2.0 * math.pi

# Above this concentration the exact Bessel form and exp(-1/(4 rho)) agree
# to ~1/(8 rho^2) < 3e-7, and expected_cos() switches to the approximation.
EXPECTED_COS_EXACT_MAX_RHO = 700.0


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RiceanParam:
    """Concentration of a Ricean-distributed phase.

    ``rho`` is the ratio (mean magnitude)^2 / (total noise variance) of the
    underlying nonzero-mean proper complex Gaussian.  ``rho = 0`` is the
    uniform-phase limit.
    """

    rho: float

    def __post_init__(self) -> None:
        rho = _require_finite("rho", self.rho)
        if rho < 0.0:
            raise ValueError(f"rho must be nonnegative, got {rho}")
        object.__setattr__(self, "rho", rho)


def _as_param(param: "RiceanParam | float") -> RiceanParam:
    if isinstance(param, RiceanParam):
        return param
    return RiceanParam(float(param))


def erf(x: float) -> float:
    """Error function, erf(x) = 2/sqrt(pi) * integral_0^x exp(-t^2) dt."""
    return math.erf(_require_finite("x", x))


def gaussian_q(x: float) -> float:
    """Gaussian tail probability Q(x) = 0.5 * (1 - erf(x / sqrt(2))).

    Evaluated through ``erfc`` so the upper tail keeps full relative
    accuracy instead of cancelling against 1.
    """
    return 0.5 * math.erfc(_require_finite("x", x) / _SQRT2)


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function of the first kind, order 0 or 1.

    Raises ``ValueError`` for ``order`` outside {0, 1} or ``x < 0`` and
    ``OverflowError`` when I_order(x) exceeds the double range (x beyond
    roughly 709), so callers can tell the two failure modes apart.
    """
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")
    x = _require_finite("x", x)
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    scaled = _special.i0e(x) if order == 0 else _special.i1e(x)
    try:
        value = float(scaled) * math.exp(x)
    except OverflowError:
        raise OverflowError(f"I{order}({x}) overflows double precision") from None
    if math.isinf(value):
        raise OverflowError(f"I{order}({x}) overflows double precision")
    return value


def reg_lower_gamma(x: float, s: float) -> float:
    """Regularized lower incomplete gamma, G(x, s) = gamma(s, x) / Gamma(s).

    Equals the CDF at ``x`` of a unit-scale Gamma(s) variable; strictly
    increasing in ``x`` with range [0, 1].
    """
    x = _require_finite("x", x)
    s = _require_finite("s", s)
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if s <= 0.0:
        raise ValueError(f"s must be positive, got {s}")
    return float(_special.gammainc(s, x))


def ricean_phase_pdf(theta: float, param: "RiceanParam | float") -> float:
    """Density of the phase of a nonzero-mean proper complex Gaussian.

    f(theta) = (1/2pi) e^{-rho} (1 + sqrt(pi rho) cos(theta)
               e^{rho cos^2(theta)} [1 + erf(sqrt(rho) cos(theta))])

    on theta in [-pi, pi).  Reduces to the uniform density 1/(2 pi) at
    ``rho = 0``.  The exponentials are regrouped as e^{-rho sin^2(theta)}
    so large concentrations neither overflow nor underflow.
    """
    rho = _as_param(param).rho
    theta = _require_finite("theta", theta)
    if not -math.pi <= theta <= math.pi:
        raise ValueError(f"theta must lie in [-pi, pi], got {theta}")
    if rho == 0.0:
        return 1.0 / _TWO_PI
    c = math.cos(theta)
    s = math.sin(theta)
    bump = math.sqrt(math.pi * rho) * c * math.exp(-rho * s * s)
    value = math.exp(-rho) + bump * (1.0 + math.erf(math.sqrt(rho) * c))
    return max(value, 0.0) / _TWO_PI


def expected_cos(param: "RiceanParam | float", mode: str = "exact") -> float:
    """Mean cosine of a Ricean-distributed phase error.

    ``mode="exact"`` evaluates

        sqrt(pi rho / 4) e^{-rho/2} [I0(rho/2) + I1(rho/2)]

    through the scaled Bessel functions; for ``rho`` above
    ``EXPECTED_COS_EXACT_MAX_RHO`` it returns the approximation instead
    (documented switchover; the two branches agree to ~3e-7 there).
    ``mode="approx"`` is exp(-1/(4 rho)) and requires ``rho > 0``.
    """
    rho = _as_param(param).rho
    if mode == "exact":
        if rho > EXPECTED_COS_EXACT_MAX_RHO:
            return math.exp(-0.25 / rho)
        half = 0.5 * rho
        scaled_sum = float(_special.i0e(half) + _special.i1e(half))
        return math.sqrt(0.25 * math.pi * rho) * scaled_sum
    if mode == "approx":
        if rho == 0.0:
            raise ValueError("approx mode is undefined at rho = 0")
        return math.exp(-0.25 / rho)
    raise ValueError(f"mode must be 'exact' or 'approx', got {mode!r}")
