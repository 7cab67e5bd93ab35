"""Effective resistance on arbitrary connected unit-resistance graphs.

Small graphs (N <= DENSE_LIMIT) use a Cholesky factorization of the
Laplacian with one vertex grounded. Larger graphs use conjugate gradients
with a Jacobi preconditioner, kept in the zero-sum subspace where L is
positive definite.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import ConvergenceError, InvalidSpecError
from .spectral import lexicographic_argmax

DENSE_LIMIT = 500


@dataclass(frozen=True)
class SolveConfig:
    tol: float = 1e-10
    max_iter: int = 10_000
    method: str = "auto"  # "auto", "dense" or "cg"

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidSpecError("tolerance must be positive")
        if self.max_iter < 1:
            raise InvalidSpecError("max_iter must be >= 1")
        if self.method not in ("auto", "dense", "cg"):
            raise InvalidSpecError(f"unknown solve method {self.method!r}")

    def use_dense(self, n):
        return self.method == "dense" or (self.method == "auto" and n <= DENSE_LIMIT)


DEFAULT = SolveConfig()


def laplacian_cg(g, b, cfg=DEFAULT):
    """Solve ``L x = b`` for zero-sum ``b``; returns the zero-sum solution.

    Raises ConvergenceError carrying the final relative residual.
    """
    lap = g.laplacian()
    dinv = 1.0 / g.degrees
    b = np.asarray(b, dtype=float)
    b = b - b.mean()
    x = np.zeros_like(b)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return x
    r = b.copy()
    z = dinv * r
    z -= z.mean()
    p = z.copy()
    rz = r @ z
    res = 1.0
    for it in range(1, cfg.max_iter + 1):
        ap = lap @ p
        alpha = rz / (p @ ap)
        x += alpha * p
        r -= alpha * ap
        res = np.linalg.norm(r) / bnorm
        if res <= cfg.tol:
            return x - x.mean()
        z = dinv * r
        z -= z.mean()
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    raise ConvergenceError("conjugate gradient did not converge", res, cfg.max_iter)


def _grounded(g, ground):
    """Cholesky factor of L with row and column ``ground`` removed."""
    keep = np.delete(np.arange(g.num_vertices), ground)
    return cho_factor(g.laplacian(dense=True)[np.ix_(keep, keep)]), keep


def effective_resistance(g, u, v, cfg=DEFAULT):
    """Potential difference between u and v for a unit current from u to v."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0.0
    g.require_connected()
    n = g.num_vertices
    if cfg.use_dense(n):
        # Ground the extraction vertex: x_v = 0, so R = x_u.
        factor, keep = _grounded(g, v)
        rhs = (keep == u).astype(float)
        x = cho_solve(factor, rhs)
        return float(x[np.searchsorted(keep, u)])
    b = np.zeros(n)
    b[u], b[v] = 1.0, -1.0
    x = laplacian_cg(g, b, cfg)
    return float(x[u] - x[v])


def green_matrix(g, cfg=DEFAULT):
    """A symmetric G with R_eff(u, v) = G_uu + G_vv - 2 G_uv.

    Dense path: inverse of the Laplacian grounded at vertex 0 (row and column
    0 zero). Iterative path: the pseudo-inverse, one CG solve per column.
    """
    g.require_connected()
    n = g.num_vertices
    if n == 1:
        return np.zeros((1, 1))
    if cfg.use_dense(n):
        factor, keep = _grounded(g, 0)
        out = np.zeros((n, n))
        out[1:, 1:] = cho_solve(factor, np.eye(n - 1))
        return 0.5 * (out + out.T)
    out = np.empty((n, n))
    for u in range(n):
        e = np.full(n, -1.0 / n)
        e[u] += 1.0
        out[:, u] = laplacian_cg(g, e, cfg)
    return 0.5 * (out + out.T)


def resistance_matrix(g, cfg=DEFAULT):
    """All-pairs effective resistances as an N x N array with zero diagonal."""
    G = green_matrix(g, cfg)
    diag = np.diag(G)
    R = diag[:, None] + diag[None, :] - 2.0 * G
    np.fill_diagonal(R, 0.0)
    return R


def average_resistance(g, cfg=DEFAULT):
    """(1 / 2N^2) times the sum of R_eff over ordered vertex pairs."""
    n = g.num_vertices
    if cfg.use_dense(n):
        R = resistance_matrix(g, cfg)
        return float(R.sum(axis=1).sum()) / (2.0 * n * n)
    # Sum over ordered pairs of R_eff is 2N trace(L^+); only diagonals needed.
    g.require_connected()
    trace = 0.0
    for u in range(n):
        e = np.full(n, -1.0 / n)
        e[u] += 1.0
        trace += laplacian_cg(g, e, cfg)[u]
    return trace / n


def max_resistance(g, cfg=DEFAULT):
    """Largest R_eff over unordered pairs and the lexicographically first pair attaining it."""
    n = g.num_vertices
    if n < 2:
        raise InvalidSpecError("max_resistance needs at least two vertices")
    R = resistance_matrix(g, cfg)
    iu, ju = np.triu_indices(n, 1)
    best = lexicographic_argmax(R[iu, ju], lambda i: (iu[i], ju[i]))
    return float(R[iu[best], ju[best]]), (int(iu[best]), int(ju[best]))
