"""Sample covariances and principal-eigenvector channel estimates.

The conventional estimator takes the unit-norm principal eigenvector of the
complex sample covariance; the widely linear (WL) estimator does the same
in the real-stacked domain, where the pseudo-covariance of the improper
BPSK signal contributes and the inherent phase ambiguity collapses to a
sign ambiguity.  Both estimates are "raw": the ambiguity is resolved
separately (:mod:`wlsubspace.ambiguity`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ReceivedBlock

__all__ = [
    "EigendecompositionError",
    "RawEstimate",
    "sample_covariance",
    "principal_eigenvector",
    "conventional_estimate",
    "wl_estimate",
]

# Tolerances of the estimator contract: inputs must be self-adjoint to
# SELF_ADJOINT_TOL (relative to scale), outputs satisfy
# ||A v - lam v|| <= RESIDUAL_RTOL * lam.
SELF_ADJOINT_TOL = 1e-10
RESIDUAL_RTOL = 1e-8


class EigendecompositionError(RuntimeError):
    """The eigensolver failed to produce a usable principal pair."""


@dataclass(frozen=True)
class RawEstimate:
    """Unit-norm principal eigenvector before ambiguity resolution.

    ``eigen_gap`` (top eigenvalue minus runner-up) is diagnostic only: the
    perturbation analysis presumes a gap, the estimator merely records it.
    """

    vector: np.ndarray
    eigenvalue: float
    domain: str
    eigen_gap: float

    def __post_init__(self) -> None:
        if self.domain not in ("complex", "real"):
            raise ValueError(f"domain must be 'complex' or 'real', got {self.domain!r}")
        vector = np.asarray(self.vector)
        vector.setflags(write=False)
        object.__setattr__(self, "vector", vector)


def sample_covariance(block: ReceivedBlock, domain: str = "complex") -> np.ndarray:
    """Plain sample average of r r^H (or r_bar r_bar^T), no bias correction."""
    if block.N < 1:
        raise ValueError("block must contain at least one sample")
    if domain == "complex":
        r = block.samples
        return r.T @ r.conj() / block.N
    if domain == "real":
        rb = block.samples_real
        return rb.T @ rb / block.N
    raise ValueError(f"domain must be 'complex' or 'real', got {domain!r}")


def principal_eigenvector(m: np.ndarray) -> RawEstimate:
    """Unit-norm eigenvector of the largest eigenvalue of a self-adjoint matrix.

    The eigenvector is canonically oriented: its largest-magnitude entry is
    made real-positive (complex input) or positive (real input), so repeated
    runs are reproducible; ambiguity corrections are defined relative to the
    raw vector and commute with this choice.

    Raises ``ValueError`` for non-square or non-self-adjoint input and
    ``EigendecompositionError`` when the solver does not converge.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.linalg.norm(m))
    adjoint_gap = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if adjoint_gap > SELF_ADJOINT_TOL * max(1.0, scale):
        raise ValueError(
            f"matrix is not self-adjoint: max |m - m^H| = {adjoint_gap:.3e}"
        )
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        # LAPACK does not expose its internal iteration count; forward its
        # diagnostic instead.
        raise EigendecompositionError(f"eigensolver did not converge: {exc}") from exc

    lam = float(eigenvalues[-1])
    v = eigenvectors[:, -1]
    gap = float(eigenvalues[-1] - eigenvalues[-2]) if m.shape[0] > 1 else float("inf")

    complex_domain = np.iscomplexobj(m)
    k = int(np.argmax(np.abs(v)))
    if complex_domain:
        pivot = v[k]
        if pivot != 0:
            v = v * (abs(pivot) / pivot)
    elif v[k] < 0:
        v = -v
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise EigendecompositionError("eigensolver returned a zero vector")
    v = v / norm

    residual = float(np.linalg.norm(m @ v - lam * v))
    floor = np.finfo(float).eps * max(scale, 1e-300)
    if residual > RESIDUAL_RTOL * max(abs(lam), floor):
        raise EigendecompositionError(
            f"eigenpair residual {residual:.3e} exceeds tolerance for eigenvalue {lam:.3e}"
        )
    if not complex_domain:
        v = v.astype(float)
    return RawEstimate(
        vector=v,
        eigenvalue=lam,
        domain="complex" if complex_domain else "real",
        eigen_gap=gap,
    )


def conventional_estimate(block: ReceivedBlock) -> RawEstimate:
    """Complex-domain subspace estimate of h, up to a unit-modulus phase."""
    return principal_eigenvector(sample_covariance(block, "complex"))


def wl_estimate(block: ReceivedBlock) -> RawEstimate:
    """Widely linear (real-domain) subspace estimate of h_bar, up to a sign."""
    return principal_eigenvector(sample_covariance(block, "real"))
