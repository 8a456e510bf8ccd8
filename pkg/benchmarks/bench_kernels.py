"""Time the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py [--n 120] [--repeat 5]``.
"""

import argparse
import random
import timeit

from tslog import _pykernels, kernels


def inputs(n, seed=0):
    rng = random.Random(seed)
    ts = sorted(rng.sample(range(10 * n), n))
    ts = [t / 10 for t in ts]
    fs = [rng.uniform(-1, 1) for _ in ts]
    ws = [rng.uniform(0, 1) for _ in ts]
    return ts, fs, ws


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=120, help="points per kernel call")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _pykernels}
    if kernels.compiled_backend is not None:
        backends["cython"] = kernels.compiled_backend
    else:
        print("compiled kernels not built; timing the Python fallback only")

    ts, fs, ws = inputs(args.n)
    big = inputs(200 * args.n, seed=1)
    cases = {
        "triple_extrema": lambda k: k.triple_extrema(ts, fs),
        "slope_extrema": lambda k: k.slope_extrema(ts, fs),
        "weighted_sum": lambda k: k.weighted_sum(big[1], big[2]),
    }
    print(f"{'kernel':<16}{'backend':<9}{'best [ms]':>11}{'speedup':>9}")
    for name, call in cases.items():
        best = {}
        for label, k in backends.items():
            best[label] = min(timeit.repeat(lambda: call(k), number=1, repeat=args.repeat))
        for label, secs in best.items():
            print(f"{name:<16}{label:<9}{1e3 * secs:>11.3f}{best['python'] / secs:>8.1f}x")
        if len(backends) == 2:
            assert call(backends["python"]) == call(backends["cython"]), f"{name}: backends disagree"


if __name__ == "__main__":
    main()
