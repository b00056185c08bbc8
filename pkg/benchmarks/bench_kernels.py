"""Numba vs numpy/python timings for the hot kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call both implementations directly; the end-to-end rows
rerun the n = 4 lower-bound search in a subprocess with and without
PLUMGRAPH_NO_NUMBA=1.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from plumgraph import _kernels
from plumgraph.diagram import restrict_to_cycles, standard_plum_diagram
from plumgraph.graph import build_plum_graph
from plumgraph.invariants import _bracket_tables


def best_of(fn, repeat):
    fn()  # warm-up (and numba compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def layer_case(m=200_000, dim=4, seed=0):
    rng = np.random.default_rng(seed)
    states = rng.integers(-8, 9, size=(m, dim)).astype(np.int64)
    gens = rng.integers(-2, 3, size=(22, dim)).astype(np.int64)
    lo = np.full(dim, -10, dtype=np.int64)
    hi = np.full(dim, 10, dtype=np.int64)
    target = np.array([9] + [0] * (dim - 1), dtype=np.int64)
    pinned = np.ones(dim, dtype=bool)
    return states, gens, lo, hi, target, pinned, 12


def end_to_end(no_numba):
    code = ("import time; t=time.perf_counter(); "
            "from plumgraph.l1 import verify_unknotting_number as v; r=v(4); "
            "print(r['lower'], time.perf_counter()-t)")
    env = dict(os.environ)
    if no_numba:
        env["PLUMGRAPH_NO_NUMBA"] = "1"
    else:
        env.pop("PLUMGRAPH_NO_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return int(out[0]), float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.expand_layer_numba is None:
        sys.exit("numba is not installed; nothing to compare")

    rows = []
    case = layer_case()
    t_np = best_of(lambda: _kernels.expand_layer_numpy(*case), args.repeat)
    t_nb = best_of(lambda: _kernels.expand_layer_numba(*case), args.repeat)
    rows.append(("expand_layer 200k x 22 gens", t_np, t_nb))

    P = build_plum_graph(6)
    K = restrict_to_cycles(standard_plum_diagram(6), [P.equator])  # 13 crossings
    tables = _bracket_tables(K)
    t_py = best_of(lambda: _kernels.state_loops_python(*tables), 1)
    t_nb = best_of(lambda: _kernels.state_loops_numba(*tables), args.repeat)
    rows.append(("state_loops 2^13 states", t_py, t_nb))

    print(f"{'kernel':32s} {'fallback':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, a, b in rows:
        print(f"{name:32s} {a:10.4f} {b:10.4f} {a / b:8.1f}x")

    lo_np, e_np = end_to_end(True)
    lo_nb, e_nb = end_to_end(False)
    assert lo_np == lo_nb == 8
    print(f"{'lower bound n=4, end to end':32s} {e_np:10.4f} {e_nb:10.4f} "
          f"{e_np / e_nb:8.1f}x  (numba column includes JIT/cache load)")


if __name__ == "__main__":
    main()
