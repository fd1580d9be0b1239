"""Timing comparison of the numba and pure-numpy kernel paths.

The path is chosen at import time from ORBITFORGE_PURE_NUMPY, so the
driver reruns this script in a subprocess once per path and prints the
side-by-side table.  Run directly:  python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _workloads():
    from orbitforge import constructions as cons
    from orbitforge.orbit_machine import inner_automorphisms

    rng = np.random.default_rng(0)
    n = 4096
    perms = np.array([rng.permutation(n) for _ in range(8)],
                     dtype=np.int64)

    b3 = cons.suzuki_B(3).group
    inner = inner_automorphisms(b3).perms

    big = cons.heisenberg_trace((3, 3), (3, 1), 2).group
    seeds = np.asarray(big.generating_sequence(), dtype=np.int64)

    flat = cons.line1_abelian(2, 5).group
    ident = np.arange(flat.n, dtype=np.int64)

    return {
        "orbit_labels(8 x 4096, random)": ("orbit_labels", (perms, n)),
        "orbit_labels(64 x 512, inner)": ("orbit_labels",
                                          (inner, b3.n)),
        "closure_subgroup(2187)": ("closure_subgroup", (big.mul, seeds)),
        "hom_table_ok(1024)": ("hom_table_ok",
                               (flat.mul, flat.mul, ident)),
        "hom_ok_batch(64 x 512)": ("hom_ok_batch", (b3.mul, inner)),
    }


def run_worker(repeats):
    from orbitforge import _kernels

    results = {"path": "numba" if _kernels.HAS_NUMBA else "numpy",
               "timings_ms": {}}
    for name, (fn_name, args) in _workloads().items():
        fn = getattr(_kernels, fn_name)
        fn(*args)                      # warm any JIT compilation
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(*args)
            best = min(best, time.perf_counter() - t0)
        results["timings_ms"][name] = best * 1000
    return results


def run_driver(repeats):
    here = os.path.abspath(__file__)
    rows = {}
    for flag in ("0", "1"):
        env = dict(os.environ, ORBITFORGE_PURE_NUMPY=flag)
        out = subprocess.run(
            [sys.executable, here, "--worker", str(repeats)],
            env=env, capture_output=True, text=True, check=True)
        rows[flag] = json.loads(out.stdout)

    fast, slow = rows["0"], rows["1"]
    print("kernel path: %s vs %s" % (fast["path"], slow["path"]))
    if fast["path"] == slow["path"]:
        print("note: numba unavailable; both runs used numpy")
    hdr = "%-34s %12s %12s %9s" % ("workload", fast["path"] + " ms",
                                   slow["path"] + " ms", "ratio")
    print(hdr)
    print("-" * len(hdr))
    for name in fast["timings_ms"]:
        a = fast["timings_ms"][name]
        b = slow["timings_ms"][name]
        ratio = b / a if a > 0 else float("inf")
        print("%-34s %12.3f %12.3f %8.1fx" % (name, a, b, ratio))


if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1] == "--worker":
        print(json.dumps(run_worker(int(sys.argv[2]))))
    else:
        reps = int(sys.argv[1]) if len(sys.argv) > 1 else 5
        run_driver(reps)
