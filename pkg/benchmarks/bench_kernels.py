"""Benchmark the numba-jitted kernels against the pure-numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--n 200000] [--repeat 7]

Selecting the backend for the whole package is separate (ZETADIST_BACKEND);
this script imports both implementations directly and times them on the same
inputs, so it runs identically under either setting.
"""

import argparse
import time

import numpy as np

from zetadist import kernels
from zetadist.backend import HAVE_NUMBA


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    x = rng.uniform(1e-6, 40.0, args.n)
    y = rng.uniform(-20.0, 3.0, args.n)
    eta = np.ascontiguousarray(y)
    xk = np.linspace(0.0, 1.0, 512)
    yk = np.sort(rng.random(512))
    dk = kernels.pchip_slopes(xk, yk)
    q = rng.random(args.n)

    cases = [
        ("h_kernel", lambda f: f(0.7, x),
         kernels.h_kernel_numpy, "h_kernel_numba"),
        ("cal_h", lambda f: f(0.7, x, x * 0.5 + 1e-3),
         kernels.cal_h_numpy, "cal_h_numba"),
        ("lerch_y (t=2)", lambda f: f(y, 1.5, 2.0, 0.7, -0.5),
         kernels.lerch_y_numpy, "lerch_y_numba"),
        ("hr1_y", lambda f: f(y, 0.8, 1.0, 0.5),
         kernels.hr1_y_numpy, "hr1_y_numba"),
        ("dz_plane", lambda f: f(eta, 0.3, 2.0, 1.0, 2.0, 0.5, 1.0, 1.0, -0.5),
         kernels.dz_plane_numpy, "dz_plane_numba"),
        ("dz_strip", lambda f: f(eta, 0.3, 0.5, 0.0, 1.3, 0.0, 0.5),
         kernels.dz_strip_numpy, "dz_strip_numba"),
        ("pchip_eval", lambda f: f(xk, yk, dk, q),
         kernels.pchip_eval_numpy, "pchip_eval_numba"),
    ]

    print(f"n = {args.n}, best of {args.repeat}; numba available: {HAVE_NUMBA}")
    header = f"{'kernel':<16}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call, np_impl, nb_name in cases:
        t_np = best_of(lambda: call(np_impl), args.repeat) * 1e3
        if HAVE_NUMBA:
            nb_impl = getattr(kernels, nb_name)
            call(nb_impl)  # compile outside the timed region
            t_nb = best_of(lambda: call(nb_impl), args.repeat) * 1e3
            print(f"{name:<16}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.2f}x")
        else:
            print(f"{name:<16}{t_np:>12.3f}{'-':>12}{'-':>9}")

    # end to end: one strip quadrature through whichever backend is active
    from zetadist.double_zeta import zeta2_continued

    zeta2_continued(0.5, 1.3, 0.5)  # warm the jit cache
    t = best_of(lambda: zeta2_continued(0.5, 1.3, 0.5), 3) * 1e3
    print(f"\nzeta2_continued(0.5, 1.3, 0.5) via backend "
          f"'{kernels.BACKEND}': {t:.1f} ms")


if __name__ == "__main__":
    main()
