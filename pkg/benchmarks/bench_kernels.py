"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--words 256 4096 16384] [--parity 20000 100000]

Both backends are imported directly, so ETAQ_DISABLE_NUMBA does not matter
here. The first numba call is a warm-up and is not timed.
"""
import argparse
import time

import numpy as np

from etaq.kernels import _numba, _numpy


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, nargs="+", default=[256, 4096, 16384])
    ap.add_argument("--parity", type=int, nargs="+", default=[20000, 100000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    _numba.gf2_mul_words(np.ones(4, np.uint64), np.ones(4, np.uint64))
    _numba.regular_parity(3, 100)

    print(f"{'kernel':<24}{'size':>10}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for n in args.words:
        a = rng.integers(0, 2**64, n, dtype=np.uint64)
        b = rng.integers(0, 2**64, n, dtype=np.uint64)
        t_nb, r_nb = best_of(lambda: _numba.gf2_mul_words(a, b), args.repeat)
        t_np, r_np = best_of(lambda: _numpy.gf2_mul_words(a, b), args.repeat)
        assert np.array_equal(r_nb, r_np)
        print(f"{'gf2_mul_words':<24}{n:>10}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}")
    for n in args.parity:
        t_nb, r_nb = best_of(lambda: _numba.regular_parity(25, n), args.repeat)
        t_np, r_np = best_of(lambda: _numpy.regular_parity(25, n), args.repeat)
        assert np.array_equal(r_nb, r_np)
        print(f"{'regular_parity t=25':<24}{n:>10}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
