"""Timing comparison of the two Jacobi sweep kernels.

Runs the compiled kernel against the pure-numpy fallback on identical random
Hermitian matrices and prints per-size medians with the speedup. The JIT is
warmed on a small matrix before timing so compilation cost stays out of the
numbers. From the repo root:

    python3 benchmarks/bench_eig.py
    python3 benchmarks/bench_eig.py --sizes 8 16 32 64 128 --repeats 9
"""

import argparse
import statistics
import time

import numpy as np

from tssim._kernels import _jacobi_sweeps_numpy, _jacobi_sweeps_serial, backend, jacobi_sweeps


def compiled_kernel():
    if backend() == "numba":
        return jacobi_sweeps
    try:
        from numba import njit
    except ImportError:
        return None
    return njit(cache=True)(_jacobi_sweeps_serial)


def random_hermitian(n, rng):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return np.ascontiguousarray((m + m.conj().T) / 2.0)


def run_once(kernel, m):
    a = m.copy()
    v = np.eye(m.shape[0], dtype=np.complex128)
    t0 = time.perf_counter()
    sweeps = kernel(a, v, 1e-13, 100)
    dt = time.perf_counter() - t0
    return dt, np.sort(np.diag(a).real), sweeps


def median_time(kernel, mats, repeats):
    times = []
    for m in mats:
        times.append(min(run_once(kernel, m)[0] for _ in range(repeats)))
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--matrices", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    numba_kernel = compiled_kernel()
    rng = np.random.default_rng(args.seed)

    if numba_kernel is None:
        print("numba unavailable: timing the numpy kernel only")
    else:
        # warm the JIT and check both kernels against the LAPACK eigenvalues
        probe = random_hermitian(12, rng)
        _, d_fast, _ = run_once(numba_kernel, probe)
        _, d_ref, _ = run_once(_jacobi_sweeps_numpy, probe)
        lapack = np.linalg.eigvalsh(probe)
        worst = max(np.max(np.abs(d_fast - lapack)), np.max(np.abs(d_ref - lapack)))
        print(f"kernel agreement vs LAPACK on 12x12 probe: {worst:.2e}")

    header = f"{'n':>5} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        mats = [random_hermitian(n, rng) for _ in range(args.matrices)]
        t_np = median_time(_jacobi_sweeps_numpy, mats, args.repeats)
        if numba_kernel is None:
            print(f"{n:>5} {1e3 * t_np:>12.3f} {'-':>12} {'-':>9}")
            continue
        t_nb = median_time(numba_kernel, mats, args.repeats)
        print(f"{n:>5} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
