"""Compare the compiled and pure-Python kernels on verification workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is checked for identical output before timing.
"""

import argparse
import itertools
import math
import time
import warnings

import numpy as np

from drestrict import _kernels_py, families

try:
    from drestrict import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def _phf_workload():
    fam = families.build_phf(60, 17, 3)
    subsets = np.array(list(itertools.combinations(range(60), 3)))
    pa, pb = zip(*itertools.combinations(range(3), 2))
    pairsets = np.stack([subsets[:, pa], subsets[:, pb]], axis=-1)
    return "separation_counts  PHF(60,17,3)", "separation_counts", (fam.functions, pairsets)


def _cff_workload():
    fam = families.build_cff(12, 1, 3)
    cons = [(j, K) for j in range(12) for K in itertools.combinations([x for x in range(12) if x != j], 3)]
    ones = np.array([[j] for j, _ in cons])
    zeros = np.array([K for _, K in cons])
    return "cff_counts         CFF(12,1,3)", "cff_counts", (fam.tests, ones, zeros)


def _greedy_workload():
    _, values = families._poly_evaluations(27, 3, 27)
    subsets = np.array(list(itertools.combinations(range(27), 3)))
    return "injective_table    GF(27), d=3", "injective_table", (values % 3, subsets)


def _time(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    warnings.simplefilter("ignore")
    print(f"{'workload':<34}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for label, name, data in (_phf_workload(), _cff_workload(), _greedy_workload()):
        a = np.asarray(getattr(compiled, name)(*data))
        b = np.asarray(getattr(_kernels_py, name)(*data))
        assert np.array_equal(a, b), name
        tp = _time(getattr(_kernels_py, name), data, args.repeat)
        tc = _time(getattr(compiled, name), data, args.repeat)
        print(f"{label:<34}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
