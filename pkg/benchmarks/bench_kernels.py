"""Compiled kernels against the numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row times one workload on both backends, checks that the outputs agree
and prints the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ferro import kernels
from ferro.construct import construct_invariance, gabidulin
from ferro.ferrers import FerrersDiagram
from ferro.gf import field_of_order


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    rng = np.random.default_rng(0)
    for q in (2, 3):
        tabs = field_of_order(q).kernel_tables()
        mats = rng.integers(0, q, (20000, 6, 6), dtype=np.uint8)
        yield f"rank_batch 20000x6x6 q={q}", lambda k, m=mats, t=tabs: k.rank_batch(m, t)

    C = construct_invariance(2, 6, 6, 4, 2)
    tabs = C.ctx.kernel_tables()
    B = C.array.astype(np.uint8)
    total = kernels.n_projective(C.k, 2)
    yield "min_rank_projective invariance q=2 k=8", \
        lambda k, B=B, t=tabs, n=total: k.min_rank_projective(B, t, 0, n)

    G = gabidulin(3, 4, 3, 3).code
    tabs = G.ctx.kernel_tables()
    B = G.array.astype(np.uint8)
    total = kernels.n_projective(G.k, 3)
    yield "min_rank_projective gabidulin q=3 k=4", \
        lambda k, B=B, t=tabs, n=total: k.min_rank_projective(B, t, 0, n)

    F = FerrersDiagram([1, 3, 3, 4])
    tabs = field_of_order(2).kernel_tables()
    S = np.zeros((4000, 4, 4, 4), dtype=np.uint8)
    mask = np.array([[i < c for c in F.cols] for i in range(4)])
    S[:, :, mask] = rng.integers(0, 2, (4000, 4, int(mask.sum())), dtype=np.uint8)
    yield "maximal_trials [1,3,3,4] q=2 4000", lambda k, S=S, t=tabs: k.maximal_trials(S, t, 3)

    tabs = field_of_order(3).kernel_tables()
    S3 = rng.integers(0, 3, (4000, 2, 4, 4), dtype=np.uint8)
    yield "spectrum_free_trials pairs 4x4 q=3 4000", lambda k, S=S3, t=tabs: k.spectrum_free_trials(S, t)

    table = rng.random(1 << 10) < 0.3
    yield "count_sf_tuples_gf2 2^10 k=2", lambda k, tb=table: k.count_sf_tuples_gf2(tb, 2)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `python3 setup.py build_ext --inplace`")
    print(f"{'workload':44s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn in workloads():
        tc, oc = _best(lambda: fn(kernels.compiled), args.repeat)
        tp, op = _best(lambda: fn(kernels.pure), args.repeat)
        same = np.array_equal(np.asarray(oc), np.asarray(op))
        flag = "" if same else "  OUTPUT MISMATCH"
        print(f"{name:44s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x{flag}")


if __name__ == "__main__":
    main()
