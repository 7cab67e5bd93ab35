"""Time the compiled and pure-Python kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from gridohm import kernels
from gridohm.graph import TorusSpec, build_torus

CASES = [
    ("lattice_inverse_sum M=64 d=3", lambda b: kernels.lattice_inverse_sum(64, 3, backend=b)),
    ("lattice_inverse_sum M=8 d=7", lambda b: kernels.lattice_inverse_sum(8, 7, backend=b)),
    ("displacement_resistances M=3 d=7", lambda b: kernels.displacement_resistances(3, 7, backend=b)),
    ("displacement_resistances M=16 d=3", lambda b: kernels.displacement_resistances(16, 3, backend=b)),
]


def walk_case(backend, _g=build_torus(TorusSpec(4, 3))):
    key = np.random.SeedSequence(1).generate_state(2, np.uint64)
    return kernels.walk_steps(_g, 0, _g.num_vertices - 1, 10**7, key, 2000, backend=backend)


CASES.append(("walk_steps T_4^3, 2000 walks", walk_case))


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), result


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b) or np.allclose(a, b, rtol=1e-12, atol=1e-15)
    return abs(a - b) <= 1e-12 * abs(b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in kernels.BACKENDS:
        raise SystemExit("compiled kernels not built; reinstall with a C compiler and Cython available")
    print(f"{'kernel':<38}{'cython s':>10}{'python s':>10}{'speedup':>9}  agree")
    for name, fn in CASES:
        tc, rc = best_of(fn, "cython", args.repeat)
        tp, rp = best_of(fn, "python", args.repeat)
        print(f"{name:<38}{tc:>10.4f}{tp:>10.4f}{tp / tc:>8.1f}x  {same(rc, rp)}")


if __name__ == "__main__":
    main()
