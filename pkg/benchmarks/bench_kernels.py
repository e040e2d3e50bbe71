"""Benchmark the compiled kernels against the pure-Python twins.

Run as: python3 benchmarks/bench_kernels.py [repeats]
"""

import sys
import time

import numpy as np

from hyperhs import _kernels_py

try:
    from hyperhs import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def bench(name, make, repeats):
    rows = []
    for label, mod in [("python", _kernels_py), ("c", _ckernels)]:
        if mod is None:
            rows.append((label, None))
            continue
        rows.append((label, timeit(make(mod), repeats)))
    py_t = rows[0][1]
    line = f"{name:24s}"
    for label, t in rows:
        line += f"  {label}: " + (f"{t * 1e6:9.2f} us" if t else "   (absent)")
    if _ckernels is not None and py_t:
        line += f"  speedup: {py_t / rows[1][1]:6.1f}x"
    print(line)


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    xs = np.linspace(0.0, 60.0, 4096)
    scalars = [0.3, 7.7, 14.9, 15.1, 33.0]

    bench("bessel_j0 (5 scalars)",
          lambda m: lambda: [m.bessel_j0(x) for x in scalars], repeats)
    bench("bessel_j0_array (4096)",
          lambda m: lambda: m.bessel_j0_array(xs), repeats)
    bench("erfi (small+large)",
          lambda m: lambda: (m.erfi(2.5), m.erfi(14.0)), repeats)
    bench("exp_erfi_product",
          lambda m: lambda: m.exp_erfi_product(400.0, 20.0), repeats)
    bench("phi1_series",
          lambda m: lambda: m.phi1_series(1.0, 0.5, 1.5, 0.4, -3.0), repeats)


if __name__ == "__main__":
    main()
