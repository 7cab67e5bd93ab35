"""The lattice integral R_hydro(d) = int_{[0,1]^d} dx / (2d - 2 sum cos(2 pi x_i)).

It is finite for d >= 3 and is the large-M limit of the torus average
resistance. Two independent evaluations are provided:

laplace-1d
    1/lambda = int_0^inf exp(-lambda t) dt factorizes over coordinates, and
    each coordinate integral is e^{-2t} I_0(2t) (the exponentially scaled
    modified Bessel function), leaving the 1-D integral
    int_0^inf i0e(2t)^d dt. The tail decays like (4 pi t)^{-d/2}.
midpoint-dd
    Tensor midpoint rule with Richardson extrapolation. Cell midpoints never
    hit the singular corner; the error expansion starts at order n^{-(d-2)}.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import i0e

from . import kernels
from .errors import CapacityError, CrossValidationError, DimensionError, DivergenceError, SingularityError
from .graph import TorusSpec
from .spectral import average_resistance_spectral

METHODS = ("laplace-1d", "midpoint-dd")
DEFAULT_TARGET_ERROR = 1e-6
MIDPOINT_N0 = {3: 64, 4: 32, 5: 16}


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    method: str
    nodes_used: int

    def agrees_with(self, other):
        return abs(self.value - other.value) <= self.error_estimate + other.error_estimate


def hydro_integrand(x):
    """1 / (2d - 2 sum cos(2 pi x_i)) at one point of [0, 1]^d."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or x.size == 0:
        raise DimensionError("expected a non-empty d-tuple")
    if np.all((x == 0.0) | (x == 1.0)):
        raise SingularityError(f"integrand is singular at {tuple(x)}")
    # 2 - 2cos(2 pi x) = 4 sin^2(pi x), free of cancellation near the corners.
    return 1.0 / float(np.sum(4.0 * np.sin(np.pi * x) ** 2))


def bessel_average_scaled(s):
    """e^{-s} * int_0^1 exp(s cos(2 pi x)) dx, i.e. e^{-s} I_0(s)."""
    return i0e(s)


def laplace_integrand(t, d):
    return i0e(2.0 * t) ** d


def tail_bound(T, d):
    """Upper bound on int_T^inf i0e(2t)^d dt, valid for T >= 1.

    i0e(s) sqrt(2 pi s) decreases to 1 for s > 0.79, so
    i0e(2t)^d <= c (4 pi t)^{-d/2} with c = (i0e(2T) sqrt(4 pi T))^d.
    """
    if T < 1.0:
        raise ValueError("tail bound needs T >= 1")
    c = (i0e(2.0 * T) * math.sqrt(4.0 * math.pi * T)) ** d
    return c * (4.0 * math.pi) ** (-d / 2) * T ** (1.0 - d / 2) / (d / 2 - 1.0)


def _laplace_1d(d, target_error):
    T = 1.0
    while tail_bound(T, d) >= target_error / 10:
        T *= 2.0
    edges = [0.0] + [2.0**k for k in range(int(round(math.log2(T))) + 1)]
    npanel = len(edges) - 1
    values, errors, nodes = [], [], 0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err, info = quad(laplace_integrand, a, b, args=(d,), epsabs=target_error / (2 * npanel),
                              epsrel=1e-13, limit=200, full_output=1)[:3]
        values.append(val)
        errors.append(err)
        nodes += info["neval"]
    estimate = math.fsum(errors) + tail_bound(T, d)
    return QuadResult(math.fsum(values), estimate, "laplace-1d", nodes)


def _midpoint_dd(d, n0, backend=None):
    if d > 5:
        raise CapacityError(f"tensor midpoint rule is infeasible for d={d} > 5")
    n0 = n0 or MIDPOINT_N0[d]
    coarse = kernels.midpoint_sum(n0, d, backend=backend)
    fine = kernels.midpoint_sum(2 * n0, d, backend=backend)
    correction = (fine - coarse) / (2.0 ** (d - 2) - 1.0)
    return QuadResult(fine + correction, abs(correction), "midpoint-dd", n0**d + (2 * n0) ** d)


def hydro_integral(d, method="laplace-1d", target_error=DEFAULT_TARGET_ERROR, n0=None, backend=None):
    """Evaluate R_hydro(d) for d >= 3 with the chosen method."""
    if d < 3:
        raise DivergenceError(f"the lattice integral diverges for d={d} < 3")
    if method == "laplace-1d":
        return _laplace_1d(d, target_error)
    if method == "midpoint-dd":
        return _midpoint_dd(d, n0, backend=backend)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def cross_validate(d, target_error=DEFAULT_TARGET_ERROR, n0=None, backend=None):
    """Both methods; raises CrossValidationError if they disagree beyond their error estimates."""
    a = hydro_integral(d, "laplace-1d", target_error)
    b = hydro_integral(d, "midpoint-dd", n0=n0, backend=backend)
    if not a.agrees_with(b):
        raise CrossValidationError(
            f"d={d}: laplace-1d {a.value:.12g} +- {a.error_estimate:.2g} vs "
            f"midpoint-dd {b.value:.12g} +- {b.error_estimate:.2g}")
    return a, b


@dataclass(frozen=True)
class LatticeGap:
    M: int
    lattice: float
    hydro: float

    @property
    def gap(self):
        return abs(self.lattice - self.hydro)


@dataclass(frozen=True)
class LatticeLimitTable:
    d: int
    rows: list

    @property
    def gaps(self):
        return [r.gap for r in self.rows]

    @property
    def strictly_decreasing(self):
        return all(b < a for a, b in zip(self.gaps, self.gaps[1:]))


def lattice_limit_check(d, M_list, target_error=DEFAULT_TARGET_ERROR, backend=None):
    """Distance between R_ave(T_{M^d}) and R_hydro(d) along increasing M."""
    hydro = hydro_integral(d, "laplace-1d", target_error).value
    rows = [LatticeGap(M, average_resistance_spectral(TorusSpec(M, d), backend=backend), hydro)
            for M in M_list]
    return LatticeLimitTable(d, rows)
