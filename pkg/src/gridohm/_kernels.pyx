# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Same signatures as gridohm._kernels_py."""
import numpy as np
from numpy.random import Philox

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.stdint cimport int64_t, uint64_t
from numpy.random cimport bitgen_t

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t gridohm_mulhi(uint64_t a, uint64_t b) {
        return (uint64_t)(((unsigned __int128)a * b) >> 64);
    }
    """
    uint64_t gridohm_mulhi(uint64_t a, uint64_t b) nogil

SUMMATION = "kahan"


def lattice_inverse_sum(const double[::1] tab, int d, bint skip_zero):
    """Sum of 1/(tab[j_0] + ... + tab[j_{d-1}]) over {0..n-1}^d, mixed-radix order."""
    cdef Py_ssize_t n = tab.shape[0]
    cdef int64_t[::1] digits = np.zeros(d + 1, dtype=np.int64)
    cdef double[::1] partial = np.zeros(d + 1)
    cdef double acc = 0.0, comp = 0.0, y, t, base
    cdef Py_ssize_t i, l, j, j0
    cdef bint first = True
    with nogil:
        for i in range(d - 1, -1, -1):
            partial[i] = partial[i + 1] + tab[0]
        while True:
            base = partial[1]
            j0 = 1 if (first and skip_zero) else 0
            for j in range(j0, n):
                y = 1.0 / (base + tab[j]) - comp
                t = acc + y
                comp = (t - acc) - y
                acc = t
            first = False
            i = 1
            while i < d:
                digits[i] += 1
                if digits[i] < n:
                    break
                digits[i] = 0
                i += 1
            if i >= d:
                break
            for l in range(i, 0, -1):
                partial[l] = partial[l + 1] + tab[digits[l]]
    return acc


def displacement_sums(const double[::1] tab, int d, const double[::1] inv_lam,
                      int64_t lo, int64_t hi, double[::1] out):
    """out[q - lo] = (1/N) sum_k tab[k.delta_q mod M] * inv_lam[k] for q in [lo, hi)."""
    cdef Py_ssize_t M = tab.shape[0]
    cdef Py_ssize_t N = inv_lam.shape[0]
    cdef int64_t[::1] delta = np.zeros(d + 1, dtype=np.int64)
    cdef int64_t[::1] k = np.zeros(d + 1, dtype=np.int64)
    cdef int64_t[::1] phase = np.zeros(d + 1, dtype=np.int64)
    cdef int64_t q, rest, p, idx
    cdef Py_ssize_t i, l, k0
    cdef double acc
    with nogil:
        for q in range(lo, hi):
            rest = q
            for i in range(d):
                delta[i] = rest % M
                rest = rest // M
                k[i] = 0
                phase[i] = 0
            acc = 0.0
            idx = 0
            while True:
                p = phase[1]
                for k0 in range(M):
                    acc += tab[p] * inv_lam[idx]
                    idx += 1
                    p += delta[0]
                    if p >= M:
                        p -= M
                i = 1
                while i < d:
                    k[i] += 1
                    if k[i] < M:
                        break
                    k[i] = 0
                    i += 1
                if i >= d:
                    break
                for l in range(i, 0, -1):
                    phase[l] = (phase[l + 1] + k[l] * delta[l]) % M
            out[q - lo] = acc / N


cdef inline int64_t _walk(const int64_t* indptr, const int64_t* indices, int64_t start,
                          int64_t target, int64_t cap, bitgen_t* rng) noexcept nogil:
    cdef int64_t v = start, steps = 0, a
    cdef uint64_t deg
    while v != target:
        if steps >= cap:
            return -1
        a = indptr[v]
        deg = <uint64_t>(indptr[v + 1] - a)
        v = indices[a + <int64_t>gridohm_mulhi(rng.next_uint64(rng.state), deg)]
        steps += 1
    return steps


def walk_batch(const int64_t[::1] indptr, const int64_t[::1] indices, int64_t start,
               int64_t target, int64_t cap, key, int64_t lo, int64_t hi, int64_t[::1] out):
    """First-passage step counts for replicates lo..hi-1 (-1 marks a capped walk)."""
    cdef bitgen_t* rng
    cdef int64_t r
    for r in range(lo, hi):
        bg = Philox(key=key, counter=[0, 0, r, 0])
        rng = <bitgen_t*>PyCapsule_GetPointer(bg.capsule, "BitGenerator")
        with nogil:
            out[r - lo] = _walk(&indptr[0], &indices[0], start, target, cap, rng)
