"""Time the compiled and numpy descent kernels on the same batch of restarts.

    python3 benchmarks/bench_descent.py [--restarts 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from tau_engine.brieskorn import backend
from tau_engine.brieskorn.seifert import seifert_presentation, su3_candidates
from tau_engine.brieskorn.solver import haar_unitary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--restarts", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seifert", default="2,3,7")
    ap.add_argument("--index", type=int, default=62)
    args = ap.parse_args()

    ra = su3_candidates(seifert_presentation(*map(int, args.seifert.split(","))))[args.index]
    d, c = ra.eigenvalues(), ra.target()
    u0 = haar_unitary(np.random.default_rng(0), (args.restarts, 3), ra.n)

    names = ["numpy"] + (["cython"] if backend._compiled is not None else [])
    results = {}
    for name in names:
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            out = backend.descend(u0, d, c, backend=name)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
        converged = int(np.sum(out[1] < 1e-18))
        print(f"{name:>7}: {best:8.3f} s  ({args.restarts} restarts, {converged} converged, "
              f"{int(np.sum(out[2]))} iterations)")
    if len(results) == 2:
        print(f"speedup: {results['numpy'][0] / results['cython'][0]:.1f}x")
        fa, fb = results["numpy"][1][1], results["cython"][1][1]
        print(f"same converged set: {bool(np.array_equal(fa < 1e-18, fb < 1e-18))}")
    else:
        print("compiled kernel not built; only the numpy path was timed")


if __name__ == "__main__":
    main()
