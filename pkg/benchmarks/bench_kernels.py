"""Benchmark the numba kernels against the interpreted fallback.

Run as: python benchmarks/bench_kernels.py

Both backends execute the identical source in kernels/_impl.py, so this
measures compilation payoff only; results are checked for bit-equality
while timing.
"""

from __future__ import annotations

import time

import numpy as np

from posr import kernels
from posr.autgroup import Coloring, equitable_refine
from posr.catalog import cyclic_posr_sets
from posr.cayley import build_cayley
from posr.groups import group_from_token


def _time(fn, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_refine():
    g = group_from_token("cyclic:24")
    pd = build_cayley(g, cyclic_posr_sets(24, 2))
    d = pd.digraph
    of, oo, inf_, io_ = d.csr()
    colors = np.zeros(d.n, dtype=np.int64)
    args = (d.n, of, oo, inf_, io_, colors)
    t_fast, r_fast = _time(lambda: kernels.refine_partition(*args), repeat=20)
    t_slow, r_slow = _time(lambda: kernels.fallback_refine_partition(*args), repeat=5)
    assert np.array_equal(r_fast, r_slow)
    return "refine_partition (48-vertex Cayley digraph)", t_fast, t_slow


def bench_regular_search():
    total = kernels.count_combinations(6, 3)
    args = (7, 3, 1, 0, total, 10**9)
    t_fast, r_fast = _time(lambda: kernels.regular_digraph_search(*args))
    t_slow, r_slow = _time(lambda: kernels.fallback_regular_digraph_search(*args), repeat=1)
    assert r_fast[0] == r_slow[0] == 0 and r_fast[1] == r_slow[1]
    return "regular_digraph_search (m=7 oriented, exhaustive)", t_fast, t_slow


def bench_rigidity():
    # the order-9 oriented rigid digraph, as bitmasks
    adj = {0: (2, 5, 8), 1: (0, 6, 8), 2: (3, 4, 7), 3: (0, 6, 7), 4: (1, 3, 7),
           5: (1, 2, 4), 6: (0, 2, 5), 7: (1, 5, 8), 8: (3, 4, 6)}
    masks = np.zeros(9, dtype=np.int64)
    for u, targets in adj.items():
        for v in targets:
            masks[u] |= np.int64(1) << v
    t_fast, r_fast = _time(lambda: kernels.has_nontrivial_automorphism(9, masks), repeat=20)
    t_slow, r_slow = _time(
        lambda: kernels.fallback_has_nontrivial_automorphism(9, masks), repeat=5
    )
    assert r_fast == r_slow == 0
    return "has_nontrivial_automorphism (rigid 9-vertex digraph)", t_fast, t_slow


def main():
    print(f"backend: {kernels.BACKEND}")
    if kernels.BACKEND != "numba":
        print("warning: numba backend unavailable; comparing fallback to itself")
    rows = [bench_refine(), bench_rigidity(), bench_regular_search()]
    width = max(len(name) for name, _, _ in rows)
    print(f"{'kernel'.ljust(width)}  {'numba':>10}  {'fallback':>10}  speedup")
    for name, fast, slow in rows:
        print(f"{name.ljust(width)}  {fast * 1e3:9.3f}ms  {slow * 1e3:9.3f}ms  {slow / fast:6.1f}x")


if __name__ == "__main__":
    main()
