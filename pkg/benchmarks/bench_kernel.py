"""Compare the compiled and pure-Python PBW straightening kernels.

Each workload normalises a fixed set of random words with a fresh kernel
(cold memo), checks that both backends agree term by term, and reports the
best of several repeats.

    python3 benchmarks/bench_kernel.py --words 300 --length 7
"""

from __future__ import annotations

import argparse
import random
import time

from colorquant.colorlie import double
from colorquant.fixtures import borel2, gl11, sl2, sl2_bialgebra
from colorquant.kernel import PureStraightener, compiled_straightener
from colorquant.uea import UEA


def workloads():
    yield "sl2", sl2()
    yield "gl11", gl11()
    yield "double(borel2)", double(borel2()).algebra
    yield "double(sl2)", double(sl2_bialgebra()).algebra


def run(alg, cls, words, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        u = UEA(alg, straightener=cls)
        t0 = time.perf_counter()
        result = [u.kernel.normalize(w) for w in words]
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--words", type=int, default=200, help="random words per workload")
    parser.add_argument("--length", type=int, default=6, help="word length")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    compiled = compiled_straightener()
    if compiled is None:
        print("compiled kernel not available; only the pure-Python timings are shown")
    rng = random.Random(args.seed)
    print(f"{'workload':<16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, alg in workloads():
        words = [tuple(rng.randrange(alg.dim) for _ in range(args.length)) for _ in range(args.words)]
        t_py, r_py = run(alg, PureStraightener, words, args.repeats)
        if compiled is None:
            print(f"{name:<16} {t_py:>10.4f} {'-':>10} {'-':>8}")
            continue
        t_c, r_c = run(alg, compiled, words, args.repeats)
        if r_py != r_c:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<16} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
