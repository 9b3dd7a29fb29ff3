"""Time the compiled kernels against the numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from carlitz_tower import _kernels as K
from carlitz_tower.carlitz import residue_group
from carlitz_tower.curve_zeta import log_field
from carlitz_tower.field import make_field
from carlitz_tower.poly import Poly, parse_poly
from carlitz_tower.stickelberger import _powers_mod
from carlitz_tower.zeta import _nu_tables, _redP_table


def cases():
    F3 = make_field(3)
    P = parse_poly(F3, "t^2+1")
    G = residue_group(P, 1)
    tables = F3.numpy_tables()
    red = _powers_mod(G, 10)
    yield "residue_histogram q=3 n=10", lambda impl: K.residue_histogram(tables, 3, 10, red, impl=impl)

    F2 = make_field(2)
    yield "monic_power_sums q=2 n=14 J=8", lambda impl: K.monic_power_sums(F2.numpy_tables(), 2, 14, 8, impl=impl)

    T = _nu_tables(P, 4)
    M = T.M
    n = 9
    redM = np.zeros((n + 1, T.e), dtype=np.int64)
    x = Poly.one(F3)
    for i in range(n + 1):
        for k, c in enumerate(x.coeffs):
            redM[i, k] = c
        x = (x * Poly.t(F3)) % M
    yield "unit_power_table q=3 n=9 m=4", lambda impl: K.unit_power_table(
        tables, 3, n, redM, _redP_table(P, n), np.array(M.coeffs), T.teich_inv, T.E, impl=impl)

    yield "reducible_mask q=2 n=16", lambda impl: K.reducible_mask(F2.numpy_tables(), 2, 16, impl=impl)

    L = log_field(2, 9)
    Q = L.Q
    rng = np.random.default_rng(0)
    logs = rng.integers(-1, Q - 1, size=(Q, 5))
    exps = np.array([0, 1, 3, 7, 15])
    skip = np.zeros(Q, dtype=np.uint8)
    yield "count_sparse_roots Q=512", lambda impl: K.count_sparse_roots(L.zech, Q - 1, logs, exps, skip, impl=impl)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        fast = K.backend("cython")
    except ImportError:
        print("compiled kernels not built; nothing to compare")
        return
    slow = K.backend("python")
    print(f"{'kernel':38s} {'cython s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fn in cases():
        timings = {}
        results = {}
        for label, impl in (("c", fast), ("py", slow)):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[label] = fn(impl)
                best = min(best, time.perf_counter() - t0)
            timings[label] = best
        same = np.array_equal(np.asarray(results["c"]), np.asarray(results["py"]))
        flag = "" if same else "  MISMATCH"
        print(f"{name:38s} {timings['c']:10.4f} {timings['py']:10.4f} {timings['py'] / timings['c']:8.1f}{flag}")


if __name__ == "__main__":
    main()
