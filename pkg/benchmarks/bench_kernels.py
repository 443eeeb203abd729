"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --n 1000000 --repeat 3
"""
import argparse
import time

import numpy as np

from cannonball import _fallback, kernels
from cannonball.exact import frac_u64_values


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n):
    _, _, a = _fallback.sequence_block(0, n)
    v = a[1:].astype(np.float64)
    u = frac_u64_values(list(range(1, 10_001)))
    ms = np.arange(1, 1001, dtype=np.int64)
    cre = np.array([0.0, 1.0, -1.0])
    cim = np.zeros(3)
    return {
        f"sequence_block n={n}": lambda k: k.sequence_block(0, n),
        f"divisor_sieve n={n}": lambda k: k.divisor_sieve(a),
        "exp_sums N=1e4 K=1e3": lambda k: k.exp_sums(u, ms),
        f"chi_weighted_sum n={n}": lambda k: k.chi_weighted_sum(a, 0, cre, cim),
        f"power_sum n={n}": lambda k: k.power_sum(v, 1, 2.6),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.native is None:
        raise SystemExit("compiled extension not available; build with pip install -e .")
    print(f"{'kernel':32s} {'cython s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases(args.n).items():
        tn = best_of(lambda: fn(kernels.native), args.repeat)
        tf = best_of(lambda: fn(_fallback), args.repeat)
        print(f"{name:32s} {tn:10.4f} {tf:10.4f} {tf / tn:8.1f}")


if __name__ == "__main__":
    main()
