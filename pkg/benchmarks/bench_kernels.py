"""Compare the compiled and pure-python kernel backends.

Times the six fitting objectives and the array cdf/logpdf evaluations on a
synthetic sample, which is exactly the workload the simulation harness
hammers (thousands of quasi-Newton objective evaluations).

Usage: python benchmarks/bench_kernels.py [sample_size] [repeats]
"""

from __future__ import annotations

import sys
import timeit

import numpy as np

from gtld._kernels import _ref

try:
    from gtld._kernels import _core
except ImportError:
    _core = None

N = int(sys.argv[1]) if len(sys.argv) > 1 else 200
REPEATS = int(sys.argv[2]) if len(sys.argv) > 2 else 2000

rng = np.random.default_rng(7)
xs = np.sort(rng.weibull(1.4, size=N) + 0.05)
ARGS = (4, 2.5, 0.0, 3.0, 0.5, 0.2, xs)  # gtwe at the study's truth


def bench(label, fn, *args):
    t = timeit.timeit(lambda: fn(*args), number=REPEATS) / REPEATS
    print(f"  {label:<12} {t * 1e6:9.2f} us/call")
    return t


def run(backend, name):
    print(f"{name} backend (n={N}, {REPEATS} calls):")
    out = {}
    out["cdf"] = bench("cdf_arr", backend.cdf_arr, *ARGS)
    out["logpdf"] = bench("logpdf_arr", backend.logpdf_arr, *ARGS)
    for mid, mname in enumerate(("ml", "ols", "wls", "cvm", "ad", "rtad")):
        out[mname] = bench(mname, backend.objective, mid, *ARGS)
    return out


ref_times = run(_ref, "python")
if _core is None:
    print("compiled backend not built; nothing to compare")
else:
    core_times = run(_core, "compiled")
    print("speedup (python / compiled):")
    for key in ref_times:
        print(f"  {key:<12} {ref_times[key] / core_times[key]:6.2f}x")
