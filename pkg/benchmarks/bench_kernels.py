"""Compiled kernels against the pure-Python fallback.

Run ``python3 benchmarks/bench_kernels.py``.  Each workload is timed with
both modules on identical inputs; outputs are compared before timing.
"""
from __future__ import annotations

import argparse
import random
import time

from tamecert import _pykernels

try:
    from tamecert import _kernels
except ImportError:  # extension not built
    _kernels = None


def _matrix(rng, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def _weyl(rng, dim, nterms, deg):
    out = {}
    for _ in range(nterms):
        a = tuple(rng.randint(0, deg) for _ in range(dim))
        b = tuple(rng.randint(0, deg) for _ in range(dim))
        out[(a, b)] = rng.randint(-5, 5) or 1
    return out


def workloads(seed=0):
    rng = random.Random(seed)
    mats = [_matrix(rng, 24) for _ in range(4)]
    ps = [(_weyl(rng, 3, 12, 3), _weyl(rng, 3, 12, 3)) for _ in range(6)]
    return {
        "bareiss 24x24": lambda k: [k.bareiss_echelon([r[:] for r in m], 24) for m in mats],
        "berkowitz 24x24": lambda k: [k.berkowitz(m) for m in mats],
        "weyl product dim 3": lambda k: [k.weyl_mul_terms(p, q, 3) for p, q in ps],
        "euler product dim 3": lambda k: [k.weyl_mul_euler(p, [1, 2, 3], 5) for p, _ in ps],
    }


def bench(fn, mod, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(mod)
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; timing the pure backend only")
    print(f"{'workload':24} {'pure [s]':>10} {'cython [s]':>11} {'speedup':>8}")
    for name, fn in workloads().items():
        tp = bench(fn, _pykernels, args.repeat)
        if _kernels is None:
            print(f"{name:24} {tp:10.4f} {'-':>11} {'-':>8}")
            continue
        if fn(_kernels) != fn(_pykernels):
            raise SystemExit(f"backend outputs differ on {name}")
        tc = bench(fn, _kernels, args.repeat)
        print(f"{name:24} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
