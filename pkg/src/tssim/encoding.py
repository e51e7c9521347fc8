"""Block encodings built as explicit dense unitaries.

A block encoding is a unitary whose top-left system-sized block equals a
target operator divided by a known positive scale. Three constructions
live here: the exact two-block dilation of a Hermitian contraction, the
prepare/select sum-of-unitaries encoding of a Pauli sum, and the
second-order truncated-series circuit that combines two applications of
the sum encoding with a routing permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DegenerateProjectionError, DomainError
from .linalg import (
    as_matrix,
    hermitian_eig,
    is_unitary,
    kron,
    max_abs,
    sqrtm_psd,
)
from .pauli import PauliSum, sum_matrix, word_matrix

BLOCK_TOL = 1e-9


@dataclass
class BlockEncoding:
    """Unitary `matrix` whose top-left block is target/scale.

    ancilla_dim * system_dim equals the full dimension; post-selecting the
    ancilla on zero recovers the block.
    """

    matrix: np.ndarray
    system_dim: int
    ancilla_dim: int
    scale: float

    def top_block(self) -> np.ndarray:
        n = self.system_dim
        return self.matrix[:n, :n]


@dataclass
class EncodedTarget:
    """The operator a BlockEncoding claims to hold, with its check tolerance."""

    target: np.ndarray
    tolerance: float


def _checked(matrix, system_dim, ancilla_dim, scale, target, tol=BLOCK_TOL) -> tuple[BlockEncoding, EncodedTarget]:
    enc = BlockEncoding(matrix=matrix, system_dim=system_dim, ancilla_dim=ancilla_dim, scale=scale)
    if not is_unitary(matrix, tol):
        raise DomainError("constructed encoding is not unitary")
    resid = max_abs(scale * enc.top_block() - target)
    if resid > tol:
        raise DomainError(f"block equality failed (residual {resid:.3e})")
    return enc, EncodedTarget(target=target, tolerance=tol)


def dilation_sqrt(h) -> BlockEncoding:
    """Exact unitary dilation [[h, -s], [s, h]] with s = sqrt(I - h^2).

    Requires h Hermitian with spectral norm at most 1. Eigenphases come in
    conjugate pairs exp(+-i theta) with cos(theta) equal to the eigenvalues
    of h, so the block carries scale 1.
    """
    h = as_matrix(h)
    spec = hermitian_eig(h)
    if np.max(np.abs(spec.values)) > 1.0 + 1e-10:
        raise DomainError(f"spectral norm {np.max(np.abs(spec.values)):.6f} exceeds 1")
    n = h.shape[0]
    s = sqrtm_psd(np.eye(n) - h @ h)
    u = np.zeros((2 * n, 2 * n), dtype=complex)
    u[:n, :n] = h
    u[:n, n:] = -s
    u[n:, :n] = s
    u[n:, n:] = h
    enc, _ = _checked(u, n, 2, 1.0, h)
    return enc


def prepare_oracle(coeffs) -> np.ndarray:
    """Real orthogonal gate whose leading column is sqrt(coeffs)/norm.

    Built as the Householder reflection that maps the first basis vector to
    the normalized amplitude vector; the leading row matches the leading
    column and the (0, 0) entry is non-negative. Input is padded with zeros
    to the next power of two.
    """
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size == 0:
        raise ContractError("empty coefficient vector")
    if np.any(c < 0):
        raise ContractError("coefficients must be non-negative")
    total = float(np.sum(c))
    if total <= 0.0:
        raise ContractError("all coefficients are zero")
    dim = 1 << max(0, (c.size - 1).bit_length())
    amp = np.zeros(dim)
    amp[: c.size] = np.sqrt(c / total)
    v = amp.copy()
    v[0] -= 1.0
    nv = float(v @ v)
    if nv < 1e-30:
        return np.eye(dim)
    return np.eye(dim) - 2.0 * np.outer(v, v) / nv


def select_oracle(s: PauliSum) -> np.ndarray:
    """Block-diagonal of sign(coeff) * word matrices, identity padded.

    Coefficient signs are absorbed here so the prepare oracle only sees
    magnitudes. For a single-term sum this is the signed word itself.
    """
    L = len(s.terms)
    if L == 0:
        raise ContractError("empty sum")
    blocks = 1 << max(0, (L - 1).bit_length())
    n = s.dim
    sel = np.zeros((blocks * n, blocks * n), dtype=complex)
    for i in range(blocks):
        lo = i * n
        if i < L:
            coeff, word = s.terms[i]
            sign = -1.0 if coeff < 0 else 1.0
            sel[lo : lo + n, lo : lo + n] = sign * word_matrix(word)
        else:
            sel[lo : lo + n, lo : lo + n] = np.eye(n)
    return sel


def uh_from_sum(s: PauliSum) -> BlockEncoding:
    """Prepare/select encoding of a Pauli sum.

    The block equals sum_matrix(s) / scale with scale the coefficient
    1-norm. Ancilla dimension is the word count rounded up to a power of
    two; a single-term sum needs no ancilla at all.
    """
    L = len(s.terms)
    if L == 0:
        raise ContractError("empty sum")
    target = sum_matrix(s)
    scale = s.coefficient_one_norm()
    mags = np.array([abs(c) for c, _ in s.terms])
    if L == 1:
        coeff, word = s.terms[0]
        sign = -1.0 if coeff < 0 else 1.0
        u = sign * word_matrix(word)
        enc, _ = _checked(u, s.dim, 1, scale, target)
        return enc
    b = prepare_oracle(mags)
    sel = select_oracle(s)
    eye_n = np.eye(s.dim)
    u = kron(b, eye_n) @ sel @ kron(b, eye_n)
    enc, _ = _checked(u, s.dim, b.shape[0], scale, target)
    return enc


def b_gate(t: float) -> np.ndarray:
    """4x4 orthogonal coefficient gate for the three-branch series.

    Leading row and column are (sqrt(t), 1, t/sqrt(2), 0) / norm, loading
    the branch weights t, 1, t^2/2 that realize t*H + i(I - t^2 H^2 / 2).
    The fourth branch carries weight zero and stays inert.
    """
    if t < 0:
        raise ContractError("time step must be non-negative")
    st = math.sqrt(t)
    w = t / math.sqrt(2.0)
    b = np.array(
        [
            [st, 1.0, w, 0.0],
            [1.0, -st, 0.0, w],
            [w, 0.0, -st, -1.0],
            [0.0, -w, 1.0, -st],
        ]
    )
    return b / math.sqrt(t + 1.0 + t * t / 2.0)


def b_norm_sq(t: float) -> float:
    """Squared norm of the branch-weight vector, t + 1 + t^2/2."""
    return t + 1.0 + t * t / 2.0


def pi_permutation(L_dim: int, N: int) -> np.ndarray:
    """Routing permutation blkdiag(I_N, X (x) I_{L*N-N}, I_N).

    Acting on a (2 * L_dim * N)-dimensional register it fixes the first and
    last N states and swaps the two halves in between. Conjugating a
    controlled application of the sum encoding with it steers every
    non-zero ancilla branch away from the post-selected corner, which is
    what turns two applications into a squared block.
    """
    if L_dim < 2:
        raise ContractError("routing permutation needs L_dim >= 2")
    d = 2 * L_dim * N
    p = np.zeros((d, d))
    p[:N, :N] = np.eye(N)
    p[d - N :, d - N :] = np.eye(N)
    half = L_dim * N - N
    p[N : N + half, N + half : d - N] = np.eye(half)
    p[N + half : d - N, N : N + half] = np.eye(half)
    return p


# One phase per control branch (top qubit is the most significant bit):
# the identity branch picks up i, the squared branch -i, so the block sums
# to t*H + i*(I - t^2 H^2 / 2). Branch 3 has weight zero and stays at 1.
_BRANCH_PHASES = np.array([1.0, 1.0j, -1.0j, 1.0])


def taylor_encoding(uh: BlockEncoding, t: float) -> tuple[BlockEncoding, EncodedTarget]:
    """Second-order truncated-series encoding built from a sum encoding.

    Sandwiches two controlled applications of `uh` (one conjugated by the
    routing permutation) between coefficient gates on two control qubits.
    With tau = t * uh.scale the block equals
    (t H + i (I - t^2 H^2 / 2)) / (tau + 1 + tau^2 / 2)
    where H is the physical operator, scale * top block of uh. Requires
    0 <= tau <= 1.
    """
    if t < 0:
        raise ContractError("time step must be non-negative")
    tau = t * uh.scale
    if tau > 1.0 + 1e-12:
        raise DomainError(f"t * scale = {tau:.6f} exceeds 1; shrink the step")
    n = uh.system_dim
    a = uh.ancilla_dim
    d = a * n
    full = 4 * d
    eye_d = np.eye(d)
    uh_m = uh.matrix

    # open control on the second qubit: branches 00 and 10 get U_H
    c2o = np.zeros((full, full), dtype=complex)
    for q1 in (0, 1):
        for q2 in (0, 1):
            lo = (2 * q1 + q2) * d
            c2o[lo : lo + d, lo : lo + d] = uh_m if q2 == 0 else eye_d
    # filled control on the top qubit: routing permutation on (q2, ancilla, system)
    c1pi = np.eye(full, dtype=complex)
    if a > 1:
        c1pi[2 * d :, 2 * d :] = pi_permutation(a, n)
    # filled control on the top qubit: U_H on (ancilla, system) for either q2
    c1uh = np.eye(full, dtype=complex)
    c1uh[2 * d : 3 * d, 2 * d : 3 * d] = uh_m
    c1uh[3 * d :, 3 * d :] = uh_m

    v = c1uh @ c1pi @ c2o
    phases = np.kron(np.diag(_BRANCH_PHASES), eye_d)
    b = b_gate(tau)
    bw = np.kron(b, eye_d)
    u = bw @ phases @ v @ bw

    h_phys = uh.scale * uh.top_block()
    target = t * h_phys + 1j * (np.eye(n) - (t * t / 2.0) * (h_phys @ h_phys))
    enc, tgt = _checked(u, n, 4 * a, b_norm_sq(tau), target)
    return enc, tgt


def apply_postselect(enc: BlockEncoding, psi) -> tuple[np.ndarray, float]:
    """Apply the encoded block to a unit vector and renormalize.

    Returns (normalized output, success probability). The probability is
    the squared norm of block @ psi, i.e. the chance of finding every
    ancilla in zero after one application.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != enc.system_dim:
        raise ContractError(f"state has dim {psi.size}, system is {enc.system_dim}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > 1e-10:
        raise ContractError("state must be normalized")
    out = enc.top_block() @ psi
    prob = float(np.real(np.vdot(out, out)))
    if prob < 1e-14:
        raise DegenerateProjectionError("post-selection probability below 1e-14")
    return out / math.sqrt(prob), prob


def power_postselect(enc: BlockEncoding, psi, k: int) -> tuple[np.ndarray, float]:
    """k successive post-selected applications; probability is the product."""
    if k < 0 or int(k) != k:
        raise ContractError("power must be a non-negative integer")
    psi = np.asarray(psi, dtype=complex).ravel()
    prob = 1.0
    for _ in range(int(k)):
        psi, p = apply_postselect(enc, psi)
        prob *= p
    return psi, prob
