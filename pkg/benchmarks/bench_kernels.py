"""Time the compiled and pure-Python kernel backends side by side.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--number N]

Each row reports the best per-call time over ``--repeat`` runs for both
backends and the speed-up of the compiled one.  Without the compiled
extension only the Python column is filled.
"""
import argparse
import timeit

import numpy as np

from ratbez import ApproximationRequest, ConstraintSpec, JacobiWeight, approximate, kernels
from ratbez.curvedoc import load_fixture
from ratbez.dual import build_ctable


def workloads():
    rng = np.random.default_rng(0)
    ctrl = rng.uniform(-10, 10, (9, 3))
    t = np.linspace(0.0, 1.0, 2000)
    gamma = rng.standard_normal(65)
    a = np.linspace(0.0, 12.0, 40)
    b = a[::-1].copy()
    curve = load_fixture("closed8").segments[0]
    request = ApproximationRequest(curve, 10, ConstraintSpec(1, 1), JacobiWeight())
    return {
        "decasteljau (deg 8, 2000 params)": lambda: kernels.decasteljau(ctrl, t),
        "dual table fill (m=25, k=l=2)": lambda: build_ctable(25, ConstraintSpec(2, 2), JacobiWeight(0.5, 0.5)),
        "jacobi delta (64 terms, 40 weights)": lambda: kernels.jacobi_delta(gamma, a, b),
        "approximate closed8 (m=10)": lambda: approximate(request),
    }


def best_time(fn, repeat, number):
    fn()  # warm up
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=20)
    args = parser.parse_args(argv)

    names = [n for n in ("cython", "python") if n in kernels.BACKENDS]
    initial = kernels.BACKEND
    results = {}
    try:
        for backend in names:
            kernels.use_backend(backend)
            for label, fn in workloads().items():
                results[label, backend] = best_time(fn, args.repeat, args.number)
    finally:
        kernels.use_backend(initial)

    print(f"{'workload':40s} {'cython':>12s} {'python':>12s} {'speed-up':>9s}")
    for label in workloads():
        cy = results.get((label, "cython"))
        py = results[label, "python"]
        cy_txt = f"{cy * 1e6:10.1f}us" if cy else f"{'n/a':>12s}"
        ratio = f"{py / cy:8.1f}x" if cy else f"{'n/a':>9s}"
        print(f"{label:40s} {cy_txt} {py * 1e6:10.1f}us {ratio}")


if __name__ == "__main__":
    main()
