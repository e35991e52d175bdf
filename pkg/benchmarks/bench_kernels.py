"""Numba against pure-numpy kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--sizes 64 256 1024] [--repeat 5]

Each row is the best-of-repeat wall time per backend and the speedup.
Outputs of the two backends are compared before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from fqreduce import _kernels as K
from fqreduce.field import PrimeField, Rng
from fqreduce.poly import ModCtx, random_monic_squarefree

P = 1_000_003


def _cases(n: int, rng: Rng):
    field = PrimeField(P)
    a = rng.elements(field, n)
    b = rng.elements(field, n)
    f = random_monic_squarefree(n, field, rng)
    ctx = ModCtx(f)
    fa = f.c
    big = rng.elements(field, 2 * n - 1)
    return {
        "mul": lambda: K.mul(a, b, P),
        "rem": lambda: K.rem(big, fa, P),
        "gcd": lambda: K.gcd(a, fa, P),
        "powmod x^p": lambda: ctx.powmod(ctx.reduce(f.x(field)), P).c,
        "frob matrix": lambda: ModCtx(f).frob_matrix,
    }


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'kernel':<12} {'n':>6} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        cases = _cases(n, Rng(args.seed + n))
        for name, fn in cases.items():
            times, outs = {}, {}
            for backend in ("numba", "numpy"):
                prev = K.set_backend(backend)
                try:
                    outs[backend] = fn()  # also pays jit compilation
                    times[backend] = _best(fn, args.repeat)
                finally:
                    K.set_backend(prev)
            if not np.array_equal(np.asarray(outs["numba"]), np.asarray(outs["numpy"])):
                raise SystemExit(f"{name} n={n}: backends disagree")
            t1, t2 = times["numba"] * 1e3, times["numpy"] * 1e3
            print(f"{name:<12} {n:>6} {t1:>10.3f} {t2:>10.3f} {t2 / t1:>7.1f}x")


if __name__ == "__main__":
    main()
