#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Run:  python benchmarks/bench_kernels.py

Times the Hermitian Jacobi eigensolver over the dimensions the library
actually uses (4..32) and the Poisson click sums that sit inside the
attenuation bisections, then a composite end-to-end workload (the sifted
2 -> 3 cloning sweep, which is eigensolver-bound).
"""
import math
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from pnsqkd._kernels import _py  # noqa: E402

try:
    from pnsqkd._kernels import _ext
except ImportError:
    _ext = None


def timeit(fn, *args, repeat=200):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def bench_jacobi():
    rng = np.random.default_rng(7)
    print(f"{'jacobi_eigh':<18}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for n in (4, 8, 16, 32):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        t_py = timeit(_py.jacobi_eigh, a, repeat=50)
        if _ext is None:
            print(f"  n={n:<14}{t_py * 1e6:>10.1f}us{'-':>12}{'-':>10}")
            continue
        t_c = timeit(_ext.jacobi_eigh, a, repeat=200)
        print(f"  n={n:<14}{t_py * 1e6:>10.1f}us{t_c * 1e6:>10.1f}us{t_py / t_c:>9.1f}x")


def bench_poisson():
    print(f"{'poisson_click_sum':<18}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for mu, off in ((0.2, 1), (1.37, 3), (10.5, 15)):
        nmax = int(math.ceil(mu + 12 * math.sqrt(mu) + 30))
        t_py = timeit(_py.poisson_click_sum, mu, 0.1, off, nmax, repeat=2000)
        if _ext is None:
            print(f"  mu={mu:<12}{t_py * 1e6:>10.2f}us{'-':>12}{'-':>10}")
            continue
        t_c = timeit(_ext.poisson_click_sum, mu, 0.1, off, nmax, repeat=2000)
        print(f"  mu={mu:<13}{t_py * 1e6:>9.2f}us{t_c * 1e6:>10.2f}us{t_py / t_c:>9.1f}x")


def bench_attack_sweep():
    """End-to-end: one sifted 2 -> 3 cloning sweep (40 grid points)."""
    from pnsqkd import cloning

    grid = np.linspace(1e-3, math.pi / 2, 40)

    def sweep():
        cloning.sifted_cloning_attack(cloning.make_ngs23, grid)

    results = {}
    for label, env in (("compiled", ""), ("python", "1")):
        if label == "compiled" and _ext is None:
            continue
        os.environ["PNSQKD_PURE_PYTHON"] = env
        # reload backend selection
        for mod in [m for m in list(sys.modules) if m.startswith("pnsqkd")]:
            del sys.modules[mod]
        from pnsqkd import cloning  # noqa: F811
        t0 = time.perf_counter()
        cloning.sifted_cloning_attack(cloning.make_ngs23, grid)
        results[label] = time.perf_counter() - t0
    os.environ.pop("PNSQKD_PURE_PYTHON", None)
    print("sifted 2->3 sweep (40 points):")
    for label, t in results.items():
        print(f"  {label:<10}{t * 1e3:>10.1f} ms")
    if len(results) == 2:
        print(f"  speedup {results['python'] / results['compiled']:>8.1f}x")


if __name__ == "__main__":
    print("kernel backends:", "python" + (", compiled" if _ext else " only"))
    bench_jacobi()
    print()
    bench_poisson()
    print()
    bench_attack_sweep()
