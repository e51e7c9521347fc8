"""Cyclic Jacobi sweep kernels for the Hermitian eigensolver.

Two interchangeable implementations of the same rotation schedule: a
numba-compiled loop and a pure-numpy fallback. Selection happens once at
import time via TS_SIM_NUMBA (see config). Both mutate their arguments in
place and return the number of completed sweeps; the caller owns
convergence checking and error reporting.

The rotation for the (p, q) pair zeroes a[p, q] with a complex Givens
rotation J (J_pp = c, J_pq = s, J_qp = -conj(s), J_qq = c, c real), i.e.
a <- J^H a J and v <- v J. Serial schedule, bitwise deterministic for a
fixed build.
"""

from __future__ import annotations

import math

import numpy as np

from . import config


def _jacobi_sweeps_numpy(a: np.ndarray, v: np.ndarray, off_tol: float, max_sweeps: int) -> int:
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            m = np.max(np.abs(a[i, i + 1 :]))
            if m > off:
                off = m
        if off <= off_tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t * phase
                rp = c * a[p, :] - s * a[q, :]
                rq = np.conj(s) * a[p, :] + c * a[q, :]
                a[p, :] = rp
                a[q, :] = rq
                cp = c * a[:, p] - np.conj(s) * a[:, q]
                cq = s * a[:, p] + c * a[:, q]
                a[:, p] = cp
                a[:, q] = cq
                vp = c * v[:, p] - np.conj(s) * v[:, q]
                vq = s * v[:, p] + c * v[:, q]
                v[:, p] = vp
                v[:, q] = vq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return max_sweeps


def _jacobi_sweeps_serial(a, v, off_tol, max_sweeps):  # pragma: no cover - numba source
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                m = abs(a[i, j])
                if m > off:
                    off = m
        if off <= off_tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t * phase
                sc = s.conjugate()
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = sc * akp + c * akq
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sc * akq
                    a[k, q] = s * akp + c * akq
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sc * vkq
                    v[k, q] = s * vkp + c * vkq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return max_sweeps


_jacobi_sweeps_numba = None
if config.numba_requested():
    try:
        from numba import njit

        _jacobi_sweeps_numba = njit(cache=True)(_jacobi_sweeps_serial)
    except ImportError:
        _jacobi_sweeps_numba = None

if _jacobi_sweeps_numba is not None:
    jacobi_sweeps = _jacobi_sweeps_numba
    BACKEND = "numba"
else:
    jacobi_sweeps = _jacobi_sweeps_numpy
    BACKEND = "numpy"


def backend() -> str:
    """Name of the active kernel backend, 'numba' or 'numpy'."""
    return BACKEND
