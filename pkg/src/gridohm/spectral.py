"""Closed-form resistances on T_{M^d} from the Laplacian spectrum.

The eigenvalues of the torus Laplacian are indexed by frequency vectors
k in {0..M-1}^d, lambda_k = 2d - 2 sum_i cos(2 pi k_i / M). Resistance
quantities are sums of 1/lambda_k over k != 0, so no linear solves are
needed.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityError, DimensionError, VertexRangeError
from .graph import TorusSpec, vertex_decode  # noqa: F401

MAX_SPECTRAL_TERMS = 10**7
MAX_PAIRWISE_VERTICES = 20_000
# Values within this relative distance of the maximum count as tied.
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralResult:
    value: float
    terms: int
    backend: str
    summation: str


def _check_frequency(spec, k):
    k = tuple(int(c) for c in k)
    if len(k) != spec.d:
        raise DimensionError(f"expected {spec.d} components, got {len(k)}")
    if any(not 0 <= c < spec.M for c in k):
        raise VertexRangeError(f"frequency {k} outside [0, {spec.M})^{spec.d}")
    return k


def torus_eigenvalue(spec, k):
    """lambda_k = 2d - 2 sum cos(2 pi k_i / M); zero only at k = 0."""
    k = _check_frequency(spec, k)
    tab = kernels.half_angle_table(spec.M)
    return float(sum(tab[c] for c in k))


def average_resistance_spectral(spec, max_terms=MAX_SPECTRAL_TERMS, backend=None, details=False):
    """R_ave(T_{M^d}) = (1/N) sum_{k != 0} 1/lambda_k.

    Terms are streamed in mixed-radix order; memory is O(d) in the compiled
    backend and O(2^18) in the fallback.
    """
    if spec.N > max_terms:
        raise CapacityError(f"spectral sum with {spec.N} terms exceeds budget of {max_terms}")
    value = kernels.lattice_inverse_sum(spec.M, spec.d, 0.0, backend=backend) / spec.N
    if details:
        return SpectralResult(value, spec.N - 1, backend or kernels.BACKEND,
                              kernels.summation_method(backend))
    return value


def pair_resistance_spectral(spec, delta):
    """R_eff between two vertices whose coordinates differ by ``delta`` mod M."""
    delta = _check_frequency(spec, delta)
    if not any(delta):
        return 0.0
    if spec.N > MAX_SPECTRAL_TERMS:
        raise CapacityError(f"spectral sum with {spec.N} terms exceeds budget")
    inv_lam = kernels.inverse_eigenvalues(spec.M, spec.d)
    # Displacement phase k.delta mod M for every frequency k.
    idx = np.arange(spec.N, dtype=np.int64)
    phase = np.zeros(spec.N, dtype=np.int64)
    for i, c in enumerate(delta):
        phase += ((idx // spec.M**i) % spec.M) * c
    num = kernels.half_angle_table(spec.M)[phase % spec.M]
    return float(num @ inv_lam) / spec.N


def all_displacement_resistances(spec, threads=1, backend=None, max_vertices=MAX_PAIRWISE_VERTICES):
    """Array r with r[encode(delta)] = R_eff for displacement delta; O(N^2 d)."""
    if spec.N > max_vertices:
        raise CapacityError(f"pairwise search over {spec.N} vertices exceeds budget of {max_vertices}")
    return kernels.displacement_resistances(spec.M, spec.d, threads=threads, backend=backend)


def lexicographic_argmax(values, key):
    """Index of the maximum; near-ties resolved by the smallest ``key(index)``."""
    values = np.asarray(values)
    top = values.max()
    tied = np.flatnonzero(values >= top - TIE_RTOL * abs(top))
    return int(min(tied, key=key))


def max_resistance_spectral(spec, threads=1, backend=None, max_vertices=MAX_PAIRWISE_VERTICES):
    """Largest resistance over all nonzero displacements, brute force.

    Returns ``(value, delta)``; ties go to the lexicographically smallest
    displacement tuple.
    """
    r = all_displacement_resistances(spec, threads=threads, backend=backend, max_vertices=max_vertices)
    best = 1 + lexicographic_argmax(r[1:], lambda i: vertex_decode(i + 1, spec))
    return float(r[best]), vertex_decode(best, spec)


def eigenvalue_trace(spec):
    """Sum of all eigenvalues; equals trace(L) = 2 d N."""
    return float(kernels.eigenvalues(spec.M, spec.d).sum())

