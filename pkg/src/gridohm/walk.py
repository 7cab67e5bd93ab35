"""Simple random walks: exact hitting and commute times, tau_0 and Monte Carlo.

Exact hitting times to a target w come from first-step analysis. Multiplying
H_v = 1 + sum_u P_vu H_u by deg(v) turns the system into L_w h = deg,
where L_w is the Laplacian with row and column w removed (positive definite
on a connected graph).
"""
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla
from scipy.linalg import cho_factor, cho_solve

from . import kernels
from .errors import (
    CappedWalkWarning,
    DegeneracyError,
    EstimationError,
    InvalidSpecError,
)
from .resistance import DEFAULT, effective_resistance, resistance_matrix

DENSE_HITTING_LIMIT = 2000


@dataclass(frozen=True)
class WalkConfig:
    master_seed: int = 0
    replicates: int = 10_000
    step_cap: int | None = None  # None -> 100 N^2
    threads: int = 1

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise InvalidSpecError("master_seed must be a 64-bit unsigned integer")
        if self.replicates < 1:
            raise InvalidSpecError("replicates must be >= 1")
        if self.step_cap is not None and self.step_cap < 1:
            raise InvalidSpecError("step_cap must be >= 1")
        if self.threads < 1:
            raise InvalidSpecError("threads must be >= 1")

    def cap_for(self, g):
        return self.step_cap if self.step_cap is not None else 100 * g.num_vertices**2

    def key(self):
        return np.random.SeedSequence(self.master_seed).generate_state(2, np.uint64)


@dataclass(frozen=True)
class HittingEstimate:
    mean: float
    standard_error: float
    replicates_used: int
    capped: int = 0
    generator: str = field(default=kernels.PRNG, repr=False)


def transition_probabilities(g, v):
    """Neighbor -> probability map for one step from v."""
    deg = g.degree(v)
    if deg == 0:
        raise DegeneracyError(f"vertex {v} is isolated")
    return {int(w): 1.0 / deg for w in g.neighbors(v)}


def stationary_distribution(g):
    g.require_connected()
    return g.degrees / (2.0 * g.num_edges)


def hitting_time_exact(g, target):
    """Vector H with H[v] = expected steps from v to first reach ``target``."""
    g.check_vertex(target)
    g.require_connected()
    n = g.num_vertices
    h = np.zeros(n)
    if n == 1:
        return h
    keep = np.delete(np.arange(n), target)
    rhs = g.degrees[keep].astype(float)
    if n <= DENSE_HITTING_LIMIT:
        lap = g.laplacian(dense=True)[np.ix_(keep, keep)]
        h[keep] = cho_solve(cho_factor(lap), rhs)
    else:
        lap = g.laplacian()[keep][:, keep].tocsc()
        h[keep] = spla.spsolve(lap, rhs)
    return h


def hitting_time_matrix(g):
    """H[v, w] for all pairs, one solve per target column."""
    n = g.num_vertices
    H = np.empty((n, n))
    for w in range(n):
        H[:, w] = hitting_time_exact(g, w)
    return H


def commute_time(g, v, w):
    """C_vw = H_vw + H_wv.

    Beyond DENSE_HITTING_LIMIT vertices this uses 2|E| R_eff(v, w) instead of
    two hitting-time solves.
    """
    g.check_vertex(v)
    g.check_vertex(w)
    if v == w:
        return 0.0
    if g.num_vertices > DENSE_HITTING_LIMIT:
        return 2.0 * g.num_edges * effective_resistance(g, v, w)
    return float(hitting_time_exact(g, w)[v] + hitting_time_exact(g, v)[w])


@dataclass(frozen=True)
class CommuteReport:
    pairs: list
    commute: np.ndarray
    scaled_resistance: np.ndarray

    @property
    def residuals(self):
        return np.abs(self.commute - self.scaled_resistance) / np.abs(self.scaled_resistance)

    @property
    def max_residual(self):
        return float(self.residuals.max()) if len(self.pairs) else 0.0

    def passed(self, rtol=1e-8):
        return self.max_residual < rtol


def commute_identity_check(g, pairs=None, cfg=DEFAULT):
    """Compare C_vw with 2|E| R_eff(v, w) on each pair (all pairs by default).

    Hitting times come from first-step solves and resistances from grounded
    Laplacian solves, so the two sides are computed independently.
    """
    n = g.num_vertices
    if pairs is None:
        pairs = [(v, w) for v in range(n) for w in range(v + 1, n)]
    pairs = [(int(v), int(w)) for v, w in pairs if v != w]
    H = hitting_time_matrix(g)
    R = resistance_matrix(g, cfg)
    commute = np.array([H[v, w] + H[w, v] for v, w in pairs])
    scaled = np.array([2.0 * g.num_edges * R[v, w] for v, w in pairs])
    return CommuteReport(pairs, commute, scaled)


def tau0(g):
    """Average hitting time sum_{v,w} pi_v pi_w H_vw."""
    pi = stationary_distribution(g)
    H = hitting_time_matrix(g)
    return float(pi @ H @ pi)


def hitting_time_mc(g, v, w, cfg=WalkConfig(), backend=None):
    """Monte Carlo estimate of H_vw from independent first-passage walks.

    Replicate r draws from its own Philox stream keyed by the master seed,
    so the estimate does not depend on thread count or scheduling. Capped
    walks are excluded from the mean and reported.
    """
    g.check_vertex(v)
    g.check_vertex(w)
    if v == w:
        raise InvalidSpecError("hitting_time_mc needs distinct endpoints")
    g.require_connected()
    steps = kernels.walk_steps(g, v, w, cfg.cap_for(g), cfg.key(), cfg.replicates,
                               threads=cfg.threads, backend=backend)
    done = steps[steps >= 0].astype(float)
    capped = int(steps.size - done.size)
    if done.size == 0:
        raise EstimationError(f"all {steps.size} walks hit the step cap {cfg.cap_for(g)}")
    if capped:
        warnings.warn(f"{capped} of {steps.size} walks hit the step cap", CappedWalkWarning, stacklevel=2)
    sem = float(done.std(ddof=1) / np.sqrt(done.size)) if done.size > 1 else 0.0
    return HittingEstimate(float(done.mean()), sem, int(done.size), capped)
