"""Random SIMO flat-fading channels and BPSK received blocks.

The signal model: each symbol period the transmitter sends b = +/-1 with
equal probability and a J-antenna receiver observes

    r = b * g + n,

where ``g`` holds i.i.d. circularly symmetric complex Gaussian fading
coefficients (variance ``gamma2`` each, fixed for the whole block) and
``n`` is complex AWGN with covariance ``sigma2 * I``.  Second-order methods
are blind to ``||g||``, so estimation targets the unit-norm direction
``h = g / ||g||``.

This module also provides the exact covariances of ``r`` in the complex,
real-stacked and conjugate-augmented domains, and the maps between those
representations.
"""

from __future__ import annotations

import logging
import math
import zlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "ChannelRealization",
    "ReceivedBlock",
    "substream",
    "draw_channel",
    "draw_block",
    "true_covariance",
    "true_real_covariance",
    "augmented_covariance",
    "to_real",
    "from_real",
    "psi_apply",
    "psi_adjoint",
    "psi_matrix",
]

logger = logging.getLogger(__name__)


def _spawn_key_part(part) -> int:
    """Map a path component to a stable nonnegative integer."""
    if isinstance(part, (int, np.integer)):
        value = int(part)
        if value < 0:
            raise ValueError(f"substream path integers must be >= 0, got {value}")
        return value
    return zlib.crc32(str(part).encode("utf-8"))


def substream(master_seed: int, *path) -> np.random.Generator:
    """Independent counter-based generator for one named draw.

    The stream is a pure function of ``(master_seed, path)``: results do not
    depend on the order in which substreams are created or consumed, which
    makes parallel Monte Carlo runs reproducible.  Path components are small
    integers (trial indices) or short strings (draw purpose).
    """
    key = tuple(_spawn_key_part(p) for p in path)
    seq = np.random.SeedSequence(int(master_seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the fading vector ``g`` with its derived representations.

    Attributes
    ----------
    g : complex ndarray, shape (J,)
        Fading coefficients.
    gamma2 : float
        Per-coefficient variance the draw came from.
    """

    g: np.ndarray
    gamma2: float

    def __post_init__(self) -> None:
        g = np.asarray(self.g, dtype=complex).copy()
        if g.ndim != 1 or g.size < 1:
            raise ValueError("g must be a 1-d vector with at least one entry")
        if not np.all(np.isfinite(g.view(float))):
            raise ValueError("g must be finite")
        if float(self.gamma2) <= 0.0:
            raise ValueError(f"gamma2 must be positive, got {self.gamma2}")
        if np.linalg.norm(g) == 0.0:
            raise ValueError("g must be nonzero; h is undefined otherwise")
        object.__setattr__(self, "g", _readonly(g))
        object.__setattr__(self, "gamma2", float(self.gamma2))

    @property
    def J(self) -> int:
        return self.g.size

    @cached_property
    def norm2(self) -> float:
        """Squared channel magnitude ||g||^2."""
        return float(np.vdot(self.g, self.g).real)

    @cached_property
    def h(self) -> np.ndarray:
        """Unit-norm channel direction g / ||g||."""
        return _readonly(self.g / math.sqrt(self.norm2))

    @cached_property
    def g_bar(self) -> np.ndarray:
        return _readonly(to_real(self.g))

    @cached_property
    def h_bar(self) -> np.ndarray:
        return _readonly(to_real(self.h))

    @cached_property
    def L(self) -> int:
        """Index of the coefficient with the largest magnitude (ties: lowest)."""
        return int(np.argmax(np.abs(self.h)))


@dataclass(frozen=True)
class ReceivedBlock:
    """N received vectors, their BPSK symbols and the noise level.

    ``samples[i] = symbols[i] * g + n_i`` with noise variance ``sigma2``
    per complex component (``sigma2 / 2`` per real part).
    """

    samples: np.ndarray
    symbols: np.ndarray
    sigma2: float

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=complex).copy()
        symbols = np.asarray(self.symbols, dtype=int).copy()
        if samples.ndim != 2 or samples.shape[0] < 1:
            raise ValueError("samples must be a nonempty (N, J) array")
        if symbols.shape != (samples.shape[0],):
            raise ValueError("symbols must have one entry per sample")
        if not np.all(np.abs(symbols) == 1):
            raise ValueError("symbols must take values in {-1, +1}")
        if not np.all(np.isfinite(samples.view(float))):
            raise ValueError("samples must be finite")
        if float(self.sigma2) < 0.0:
            raise ValueError(f"sigma2 must be nonnegative, got {self.sigma2}")
        object.__setattr__(self, "samples", _readonly(samples))
        object.__setattr__(self, "symbols", _readonly(symbols))
        object.__setattr__(self, "sigma2", float(self.sigma2))

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def J(self) -> int:
        return self.samples.shape[1]

    @property
    def snr_db(self) -> float:
        """Transmit SNR, -10 log10(sigma2); +inf when noiseless."""
        if self.sigma2 == 0.0:
            return math.inf
        return -10.0 * math.log10(self.sigma2)

    @cached_property
    def samples_real(self) -> np.ndarray:
        """Real-stacked view, one (2J,) row [Re r; Im r] per sample."""
        stacked = np.concatenate([self.samples.real, self.samples.imag], axis=1)
        return _readonly(stacked)


def draw_channel(J: int, gamma2: float, rng: np.random.Generator) -> ChannelRealization:
    """Draw g with i.i.d. CN(0, gamma2) coefficients.

    Circularly symmetric convention: real and imaginary parts are
    independent N(0, gamma2 / 2).  The measure-zero outcome ||g|| = 0 is
    re-drawn (and logged) so the direction h is always defined.
    """
    J = int(J)
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    gamma2 = float(gamma2)
    if gamma2 <= 0.0:
        raise ValueError(f"gamma2 must be positive, got {gamma2}")
    scale = math.sqrt(gamma2 / 2.0)
    while True:
        parts = rng.normal(0.0, scale, size=(2, J))
        g = parts[0] + 1j * parts[1]
        if np.linalg.norm(g) > 0.0:
            return ChannelRealization(g=g, gamma2=gamma2)
        logger.warning("degenerate ||g|| = 0 draw; re-drawing")


def draw_block(
    ch: ChannelRealization,
    N: int,
    sigma2: float,
    rng: np.random.Generator,
    noise_rng: np.random.Generator | None = None,
) -> ReceivedBlock:
    """Draw N received vectors r_i = b_i * g + n_i.

    Symbols are equiprobable +/-1 and the noise is CN(0, sigma2 I).  When
    ``noise_rng`` is given the symbols come from ``rng`` and the noise from
    ``noise_rng``, so a harness can key the two draws to separate
    substreams.
    """
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    sigma2 = float(sigma2)
    if sigma2 < 0.0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")
    symbols = 2 * rng.integers(0, 2, size=N) - 1
    nrng = rng if noise_rng is None else noise_rng
    scale = math.sqrt(sigma2 / 2.0)
    noise = nrng.normal(0.0, 1.0, size=(2, N, ch.J)) * scale
    samples = symbols[:, None] * ch.g + (noise[0] + 1j * noise[1])
    return ReceivedBlock(samples=samples, symbols=symbols, sigma2=sigma2)


def true_covariance(ch: ChannelRealization, sigma2: float) -> np.ndarray:
    """Exact covariance E[r r^H] = ||g||^2 h h^H + sigma2 I.

    Eigenvalues: ||g||^2 + sigma2 (simple, eigenvector h) and sigma2 with
    multiplicity J - 1.
    """
    return np.outer(ch.g, ch.g.conj()) + float(sigma2) * np.eye(ch.J)


def true_real_covariance(ch: ChannelRealization, sigma2: float) -> np.ndarray:
    """Exact covariance of the real-stacked vector.

    E[r_bar r_bar^T] = ||g||^2 h_bar h_bar^T + (sigma2 / 2) I, a 2J x 2J
    symmetric matrix with top eigenvalue ||g||^2 + sigma2 / 2 and the
    remaining 2J - 1 eigenvalues equal to sigma2 / 2.
    """
    eye = np.eye(2 * ch.J)
    return ch.norm2 * np.outer(ch.h_bar, ch.h_bar) + 0.5 * float(sigma2) * eye


def augmented_covariance(ch: ChannelRealization, sigma2: float) -> np.ndarray:
    """Covariance of the conjugate-augmented vector [r; r*].

    Block form [[R, C], [C*, R*]] where C = E[r r^T] = ||g||^2 h h^T is the
    pseudo-covariance (nonzero because BPSK makes r improper).  Principal
    eigenvalue 2 ||g||^2 + sigma2 with eigenvector [h; h*].
    """
    R = true_covariance(ch, sigma2)
    C = ch.norm2 * np.outer(ch.h, ch.h)
    top = np.concatenate([R, C], axis=1)
    bottom = np.concatenate([C.conj(), R.conj()], axis=1)
    return np.concatenate([top, bottom], axis=0)


def to_real(v: np.ndarray) -> np.ndarray:
    """Stack a complex vector as [Re v; Im v].  Norm-preserving."""
    v = np.asarray(v)
    if v.ndim != 1:
        raise ValueError("to_real expects a 1-d vector")
    return np.concatenate([v.real, v.imag]).astype(float)


def from_real(x: np.ndarray) -> np.ndarray:
    """Inverse of :func:`to_real`."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size % 2 != 0:
        raise ValueError("from_real expects a 1-d vector of even length")
    J = x.size // 2
    return x[:J] + 1j * x[J:]


def psi_apply(x_bar: np.ndarray) -> np.ndarray:
    """Map a real-stacked vector to its augmented form: Psi x_bar = [v; v*]."""
    v = from_real(x_bar)
    return np.concatenate([v, v.conj()])


def psi_adjoint(v_tilde: np.ndarray) -> np.ndarray:
    """Adjoint map; (1/2) psi_adjoint(psi_apply(x)) = x."""
    v_tilde = np.asarray(v_tilde, dtype=complex)
    if v_tilde.ndim != 1 or v_tilde.size % 2 != 0:
        raise ValueError("psi_adjoint expects a 1-d vector of even length")
    J = v_tilde.size // 2
    upper, lower = v_tilde[:J], v_tilde[J:]
    return np.concatenate([upper + lower, 1j * (lower - upper)])


def psi_matrix(J: int) -> np.ndarray:
    """Dense 2J x 2J matrix of the real-to-augmented map, [[I, jI], [I, -jI]]."""
    J = int(J)
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    eye = np.eye(J)
    top = np.concatenate([eye, 1j * eye], axis=1)
    bottom = np.concatenate([eye, -1j * eye], axis=1)
    return np.concatenate([top, bottom], axis=0)
