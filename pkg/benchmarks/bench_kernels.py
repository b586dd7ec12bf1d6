"""Compare the compiled kernel against the pure-Python fallback.

Both implementations are importable side by side, so each workload runs
on both in the same process and reports the best of --repeat timings.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --heavy
"""

import argparse
import time

from spaving import _fallback
from spaving.census import _adjacency, _allowed_seconds
from spaving.johnson import random_stable_set, vertex_masks
from spaving.matroids import rank_table, sp_new

try:
    from spaving import _kernel
except ImportError:
    _kernel = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(heavy):
    fams84 = [sorted(random_stable_set(8, 4, seed=s)) for s in range(40)]
    tables = [
        rank_table(sp_new(8, 4, random_stable_set(8, 4, seed=s))) for s in range(10)
    ]
    adj84 = _adjacency(8, 4)
    masks73 = vertex_masks(7, 3)
    adj73 = _adjacency(7, 3)
    seconds73 = _allowed_seconds(7, 3)

    def canonical(mod):
        for fam in fams84:
            mod.canonical_masks(fam, 8, 4)

    def brute(mod):
        for table in tables:
            flats = mod.flats_of_table(table, 8)
            mod.brute_over_quadruples(table, flats)

    def count(mod):
        mod.count_stable(adj84, None)

    def scan(mod):
        mod.census_scan(masks73, adj73, 7, 3, seconds73)

    yield "canonical_masks, 40 families at (8,4)", canonical
    yield "flats + brute force, 10 tables at (8,4)", brute
    yield "count_stable, all of J(8,4)", count
    yield "census_scan at (7,3)", scan
    if heavy:
        masks84 = vertex_masks(8, 4)
        seconds84 = _allowed_seconds(8, 4)

        def scan84(mod):
            mod.census_scan(masks84, adj84, 8, 4, seconds84)

        yield "census_scan at (8,4)", scan84


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true",
                        help="include the (8,4) census scan (minutes in pure Python)")
    args = parser.parse_args()

    if _kernel is None:
        print("compiled kernel not built; showing the fallback alone")
    header = f"{'workload':44} {'python':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads(args.heavy):
        pure = best_of(lambda: fn(_fallback), args.repeat)
        if _kernel is None:
            print(f"{name:44} {pure:9.4f}s {'-':>10} {'-':>8}")
            continue
        fast = best_of(lambda: fn(_kernel), args.repeat)
        print(f"{name:44} {pure:9.4f}s {fast:9.4f}s {pure / fast:7.1f}x")


if __name__ == "__main__":
    main()
