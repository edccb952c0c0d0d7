"""Compare the compiled kernels with the interpreted fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

The interpreted column is measured in a child process with
LNFGRAPH_DISABLE_NUMBA=1, so helper kernels called from inside a kernel are
interpreted too. Times are best-of-N; the first compiled call is excluded.
"""
import argparse
import json
import os
import subprocess
import sys
import time

from lnfgraph import kernels
from lnfgraph._accel import DISABLE_ENV, USING_NUMBA
from lnfgraph.constructors import witness


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    for n in (200, 2000):
        g = witness(n)
        indptr, indices = g.csr
        yield f"local_structure n={n}", kernels.local_structure, (indptr, indices, n)
        yield f"small_vertex_cut n={n}", kernels.small_vertex_cut, (indptr, indices, n, 3)
    g = witness(60)
    indptr, indices = g.csr
    yield "pair_deletion_cut n=60", kernels.pair_deletion_cut, (indptr, indices, 60)
    yield "labeled_sweep n=5", kernels.labeled_sweep, (5,)
    yield "labeled_sweep n=6", kernels.labeled_sweep, (6,)


def measure(repeat):
    out = {}
    for name, fn, fargs in cases():
        fn(*fargs)  # warm up / compile
        out[name] = best_of(fn, fargs, repeat)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.emit_json:
        print(json.dumps(measure(args.repeat)))
        return
    if not USING_NUMBA:
        sys.exit(f"numba is disabled ({DISABLE_ENV}); nothing to compare")
    fast = measure(args.repeat)
    env = dict(os.environ, **{DISABLE_ENV: "1"})
    child = subprocess.run([sys.executable, __file__, "--emit-json", "--repeat", "1"],
                           env=env, capture_output=True, text=True, check=True)
    slow = json.loads(child.stdout)
    print(f"{'kernel':<26} {'numba (s)':>10} {'python (s)':>11} {'speedup':>8}")
    for name in fast:
        print(f"{name:<26} {fast[name]:>10.4f} {slow[name]:>11.4f} {slow[name] / fast[name]:>7.0f}x")


if __name__ == "__main__":
    main()
