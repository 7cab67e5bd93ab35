"""Hot loops with a compiled backend and a numpy/pure-Python fallback.

The compiled extension ``gridohm._kernels`` is used when it imports and
``GRIDOHM_PURE_PYTHON`` is unset. Every public function takes an optional
``backend`` ("cython" or "python") so both can be exercised side by side.
"""
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = {"python": _kernels_py}
if _kernels_c is not None:
    BACKENDS["cython"] = _kernels_c

if _kernels_c is not None and not os.environ.get("GRIDOHM_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

PRNG = "numpy Philox4x64-10, key from SeedSequence(master_seed), counter [0, 0, replicate, 0]"


def _impl(backend):
    name = backend or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def summation_method(backend=None):
    return _impl(backend).SUMMATION


def default_threads():
    return max(1, int(os.environ.get("GRIDOHM_THREADS", "1")))


def _chunks(total, parts):
    parts = max(1, min(parts, total))
    bounds = np.linspace(0, total, parts + 1).astype(np.int64)
    return list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))


def half_angle_table(n, offset=0.0):
    """``2 - 2 cos(2 pi (j + offset) / n)`` for j in 0..n-1, as ``4 sin^2``.

    The sine form avoids cancellation for the small eigenvalues near the
    zero frequency.
    """
    return 4.0 * np.sin(np.pi * (np.arange(n) + offset) / n) ** 2


def lattice_inverse_sum(n, d, offset=0.0, backend=None):
    """Sum of ``1 / sum_i (2 - 2 cos(2 pi (j_i + offset) / n))`` over ``{0..n-1}^d``.

    With ``offset == 0`` the zero-frequency term is skipped.
    """
    tab = half_angle_table(n, offset)
    return float(_impl(backend).lattice_inverse_sum(tab, int(d), offset == 0))


def eigenvalues(M, d):
    """All N torus Laplacian eigenvalues in mixed-radix frequency order."""
    return _kernels_py._block_table(half_angle_table(M), d)


def inverse_eigenvalues(M, d):
    """``1/lambda_k`` for all k in mixed-radix order; entry 0 (k = 0) set to 0."""
    lam = eigenvalues(M, d)
    inv = np.zeros_like(lam)
    inv[1:] = 1.0 / lam[1:]
    return inv


def displacement_resistances(M, d, threads=1, backend=None):
    """Effective resistance for every displacement, indexed mixed-radix."""
    impl = _impl(backend)
    tab = half_angle_table(M)
    inv_lam = inverse_eigenvalues(M, d)
    N = inv_lam.size
    out = np.empty(N)

    def run(bounds):
        lo, hi = bounds
        impl.displacement_sums(tab, d, inv_lam, lo, hi, out[lo:hi])

    _run_chunks(run, _chunks(N, threads), threads)
    out[0] = 0.0
    return out


def walk_steps(graph, start, target, step_cap, key, replicates, threads=1, backend=None):
    """First-passage step counts, one per replicate; -1 marks a capped walk.

    Replicate r always draws from the same Philox stream regardless of how
    replicates are split across threads.
    """
    impl = _impl(backend)
    key = np.asarray(key, dtype=np.uint64)
    out = np.empty(replicates, dtype=np.int64)

    def run(bounds):
        lo, hi = bounds
        impl.walk_batch(graph.indptr, graph.indices, int(start), int(target), int(step_cap),
                        key, lo, hi, out[lo:hi])

    _run_chunks(run, _chunks(replicates, threads), threads)
    return out


def _run_chunks(fn, chunks, threads):
    if threads <= 1 or len(chunks) == 1:
        for c in chunks:
            fn(c)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(fn, chunks))


def midpoint_sum(n, d, backend=None):
    """Mean of the lattice integrand over the n^d cell midpoints of [0, 1]^d."""
    return lattice_inverse_sum(n, d, offset=0.5, backend=backend) / float(n) ** d


def term_count(n, d):
    return n**d if d * math.log2(max(n, 2)) < 62 else math.inf
