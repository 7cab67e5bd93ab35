"""numpy / pure-Python versions of the compiled kernels in _kernels.pyx.

Lattice and displacement sums agree with the compiled versions to rounding;
walk_batch consumes the Philox streams identically and is bit-for-bit equal.
"""
import itertools
import math

import numpy as np
from numpy.random import Philox

SUMMATION = "pairwise+fsum"

_BLOCK = 1 << 18


def _block_table(tab, r):
    """tab summed over r low-order axes, raveled with axis 0 fastest."""
    out = tab
    for _ in range(r - 1):
        out = np.add.outer(tab, out).ravel()
    return out


def lattice_inverse_sum(tab, d, skip_zero):
    tab = np.asarray(tab, dtype=float)
    n = tab.size
    r = max(1, min(d, int(math.log(_BLOCK) / math.log(n)) if n > 1 else d))
    low = _block_table(tab, r)
    partials = []
    # Upper digits in mixed-radix order: the highest coordinate varies slowest.
    for upper in itertools.product(range(n), repeat=d - r):
        base = math.fsum(tab[list(upper)]) if upper else 0.0
        with np.errstate(divide="ignore"):
            vals = 1.0 / (base + low)
        if skip_zero and not any(upper):
            vals[0] = 0.0
        partials.append(vals.sum())
    return math.fsum(partials)


def displacement_sums(tab, d, inv_lam, lo, hi, out):
    tab = np.asarray(tab, dtype=float)
    inv_lam = np.asarray(inv_lam, dtype=float)
    M, N = tab.size, inv_lam.size
    idx = np.arange(N, dtype=np.int64)
    coords = np.stack([(idx // M**i) % M for i in range(d)], axis=1)
    chunk = max(1, (1 << 22) // N)
    for start in range(lo, hi, chunk):
        stop = min(hi, start + chunk)
        q = np.arange(start, stop, dtype=np.int64)
        deltas = np.stack([(q // M**i) % M for i in range(d)], axis=1)
        phase = (deltas @ coords.T) % M
        out[start - lo:stop - lo] = (tab[phase] @ inv_lam) / N


def walk_batch(indptr, indices, start, target, cap, key, lo, hi, out):
    indptr = np.asarray(indptr).tolist()
    indices = np.asarray(indices).tolist()
    for r in range(lo, hi):
        bg = Philox(key=key, counter=[0, 0, r, 0])
        buf, pos, block = [], 0, 64
        v, steps = start, 0
        while v != target:
            if steps >= cap:
                steps = -1
                break
            if pos == len(buf):
                buf, pos = bg.random_raw(block).tolist(), 0
                block = min(2 * block, 1 << 16)
            a = indptr[v]
            v = indices[a + ((buf[pos] * (indptr[v + 1] - a)) >> 64)]
            pos += 1
            steps += 1
        out[r - lo] = steps
