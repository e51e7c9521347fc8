"""Dense complex linear algebra primitives.

Everything operates on square complex128 numpy arrays. Functions are pure;
nothing here keeps state, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, config
from .errors import ContractError, DomainError, NumericError, SizeError

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-14
SWEEP_BUDGET = 100


@dataclass
class Spectrum:
    """Eigenvalues in ascending order with matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a square 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ContractError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product with a dimension guard.

    Raises SizeError when the product dimension exceeds the configured cap
    (TS_SIM_MAX_DIM, default 2**14).
    """
    a = as_matrix(a)
    b = as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    cap = config.max_dim()
    if dim > cap:
        raise SizeError(f"kron result dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)


def max_abs(a) -> float:
    """Largest entry magnitude; 0 for an empty array."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def inf_norm(a) -> float:
    """Maximum absolute row sum."""
    return float(np.max(np.sum(np.abs(as_matrix(a)), axis=1)))


def one_norm(a) -> float:
    """Maximum absolute column sum."""
    return float(np.max(np.sum(np.abs(as_matrix(a)), axis=0)))


def is_unitary(u, tol: float) -> bool:
    """Whether max-abs(u^H u - I) is at most tol."""
    u = as_matrix(u)
    return max_abs(u.conj().T @ u - np.eye(u.shape[0])) <= tol


def hermitian_eig(h) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Cyclic Jacobi with 2x2 unitary rotations, 100-sweep budget, off-diagonal
    threshold 1e-14 relative to the largest input entry. The input must be
    Hermitian within 1e-12 entrywise.
    """
    h = as_matrix(h)
    if max_abs(h - h.conj().T) > HERMITIAN_TOL:
        raise ContractError("matrix is not Hermitian within 1e-12")
    n = h.shape[0]
    a = np.ascontiguousarray((h + h.conj().T) / 2.0)
    v = np.eye(n, dtype=complex)
    scale = max(1.0, max_abs(a))
    tol = OFFDIAG_TOL * scale
    _kernels.jacobi_sweeps(a, v, tol, SWEEP_BUDGET)
    off = 0.0
    if n > 1:
        off = max_abs(a - np.diag(np.diag(a)))
    if off > tol:
        raise NumericError(f"Jacobi did not converge in {SWEEP_BUDGET} sweeps (off-diagonal {off:.3e})")
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return Spectrum(values=values[order], vectors=v[:, order])


def sqrtm_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative
    raises DomainError.
    """
    spec = hermitian_eig(a)
    w = spec.values
    if np.min(w) < -1e-10:
        raise DomainError(f"matrix is not PSD (eigenvalue {np.min(w):.3e})")
    w = np.clip(w, 0.0, None)
    root = (spec.vectors * np.sqrt(w)) @ spec.vectors.conj().T
    return (root + root.conj().T) / 2.0


def spectral_norm_hermitian(h) -> float:
    """Largest eigenvalue magnitude of a Hermitian matrix."""
    spec = hermitian_eig(h)
    return float(np.max(np.abs(spec.values)))


def backend() -> str:
    """Active eigensolver kernel, 'numba' or 'numpy'."""
    return _kernels.backend()
