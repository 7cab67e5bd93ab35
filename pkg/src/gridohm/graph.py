"""Unit-resistance graphs, toroidal grids and the graph Laplacian.

Vertices are integers ``0..N-1``. Torus vertices are d-tuples in
``{0..M-1}^d`` encoded mixed-radix base M with coordinate 0 least
significant, so ``(2, 1)`` on a 3x3 torus is vertex ``2 + 1*3 = 5``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    CapacityError,
    ConnectivityError,
    DimensionError,
    InvalidSpecError,
    VertexRangeError,
)

INDEX_LIMIT = 2**62
MAX_TORUS_VERTICES = 10**7


class Graph:
    """Immutable undirected simple graph stored as sorted CSR neighbor lists.

    Parameters
    ----------
    num_vertices : int
    edges : iterable of (u, v) pairs
        Each undirected edge exactly once, either orientation. Self-loops
        and repeated edges are rejected.
    """

    __slots__ = ("num_vertices", "num_edges", "indptr", "indices", "_connected")

    def __init__(self, num_vertices, edges):
        n = int(num_vertices)
        if n < 1:
            raise InvalidSpecError("graph needs at least one vertex")
        e = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise VertexRangeError(f"edge endpoint outside [0, {n})")
        if np.any(e[:, 0] == e[:, 1]):
            raise InvalidSpecError("self-loops are not allowed")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        if np.unique(lo * n + hi).size != lo.size:
            raise InvalidSpecError("duplicate edges are not allowed")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        self.num_vertices = n
        self.num_edges = int(lo.size)
        self.indptr = indptr
        self.indices = np.ascontiguousarray(dst, dtype=np.int64)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        self._connected = None

    def __repr__(self):
        return f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"

    @classmethod
    def from_adjacency(cls, adjacency):
        """Build from a list of neighbor lists (must be symmetric)."""
        n = len(adjacency)
        edges = [(v, w) for v, nbrs in enumerate(adjacency) for w in nbrs if v < w]
        g = cls(n, edges)
        if [list(g.neighbors(v)) for v in range(n)] != [sorted(a) for a in adjacency]:
            raise InvalidSpecError("adjacency lists are not symmetric or contain duplicates")
        return g

    def neighbors(self, v):
        self.check_vertex(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v):
        self.check_vertex(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self):
        return np.diff(self.indptr)

    @property
    def adjacency(self):
        return [self.indices[self.indptr[v]:self.indptr[v + 1]].tolist() for v in range(self.num_vertices)]

    def edges(self):
        """Array of shape (|E|, 2) with u < v, sorted."""
        src = np.repeat(np.arange(self.num_vertices), self.degrees)
        mask = src < self.indices
        return np.stack([src[mask], self.indices[mask]], axis=1)

    def check_vertex(self, v):
        if not 0 <= int(v) < self.num_vertices:
            raise VertexRangeError(f"vertex {v} outside [0, {self.num_vertices})")

    def regular_degree(self):
        """Common degree if the graph is regular, else None."""
        deg = self.degrees
        return int(deg[0]) if np.all(deg == deg[0]) else None

    def is_connected(self):
        if self._connected is None:
            ncomp, _ = connected_components(self.adjacency_matrix(), directed=False)
            self._connected = ncomp == 1
        return self._connected

    def require_connected(self):
        if not self.is_connected():
            raise ConnectivityError("graph is not connected")

    def adjacency_matrix(self):
        n = self.num_vertices
        data = np.ones(self.indices.size)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def laplacian(self, dense=False):
        lap = sp.diags(self.degrees.astype(float)) - self.adjacency_matrix()
        return lap.toarray() if dense else lap.tocsr()

    def without_edge(self, u, v):
        keep = [tuple(e) for e in self.edges() if set(e) != {u, v}]
        if len(keep) == self.num_edges:
            raise InvalidSpecError(f"no edge {{{u}, {v}}}")
        return Graph(self.num_vertices, keep)


def laplacian_apply(g, x):
    """Return ``L x`` with ``(L x)_v = deg(v) x_v - sum of x over neighbors``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.num_vertices,):
        raise DimensionError(f"expected vector of length {g.num_vertices}, got shape {x.shape}")
    src = np.repeat(np.arange(g.num_vertices), g.degrees)
    nbr_sum = np.bincount(src, weights=x[g.indices], minlength=g.num_vertices)
    return g.degrees * x - nbr_sum


@dataclass(frozen=True)
class TorusSpec:
    """Side length ``M >= 3`` and dimension ``d >= 1`` of the grid T_{M^d}."""

    M: int
    d: int

    def __post_init__(self):
        if int(self.M) != self.M or int(self.d) != self.d:
            raise InvalidSpecError("M and d must be integers")
        if self.M < 3:
            raise InvalidSpecError(f"side length M={self.M} < 3 would create parallel edges")
        if self.d < 1:
            raise InvalidSpecError(f"dimension d={self.d} < 1")
        if self.d * math.log2(self.M) >= 62:
            raise CapacityError(f"M^d = {self.M}^{self.d} overflows the vertex index type")

    @property
    def N(self):
        return self.M ** self.d


def vertex_encode(coords, spec):
    coords = tuple(int(c) for c in coords)
    if len(coords) != spec.d:
        raise DimensionError(f"expected {spec.d} coordinates, got {len(coords)}")
    index = 0
    for c in reversed(coords):
        if not 0 <= c < spec.M:
            raise VertexRangeError(f"coordinate {c} outside [0, {spec.M})")
        index = index * spec.M + c
    return index


def vertex_decode(index, spec):
    index = int(index)
    if not 0 <= index < spec.N:
        raise VertexRangeError(f"index {index} outside [0, {spec.N})")
    coords = []
    for _ in range(spec.d):
        index, c = divmod(index, spec.M)
        coords.append(c)
    return tuple(coords)


def torus_coordinates(spec):
    """All vertex coordinates as an (N, d) array, row i = vertex_decode(i)."""
    idx = np.arange(spec.N, dtype=np.int64)
    return np.stack([(idx // spec.M**i) % spec.M for i in range(spec.d)], axis=1)


def build_torus(spec, max_vertices=MAX_TORUS_VERTICES):
    """Toroidal grid: neighbors differ by +-1 (mod M) in exactly one coordinate."""
    if spec.N > max_vertices:
        raise CapacityError(f"torus with {spec.N} vertices exceeds budget of {max_vertices}")
    idx = np.arange(spec.N, dtype=np.int64)
    edges = []
    for axis in range(spec.d):
        stride = spec.M ** axis
        coord = (idx // stride) % spec.M
        up = idx + np.where(coord == spec.M - 1, -(spec.M - 1) * stride, stride)
        edges.append(np.stack([idx, up], axis=1))
    return Graph(spec.N, np.concatenate(edges))


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_connected_graph(n, edge_prob, rng):
    """Random spanning tree plus independent extra edges with probability ``edge_prob``."""
    rng = np.random.default_rng(rng)
    perm = rng.permutation(n)
    edges = {tuple(sorted((int(perm[i]), int(perm[rng.integers(i)])))) for i in range(1, n)}
    iu, ju = np.triu_indices(n, 1)
    extra = rng.random(iu.size) < edge_prob
    edges.update(zip(iu[extra].tolist(), ju[extra].tolist()))
    return Graph(n, sorted(edges))


def read_edge_list(path):
    """Parse ``u v`` pairs, 0-based, ``#`` comments; N = largest index + 1."""
    edges = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidSpecError(f"{path}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidSpecError(f"{path}:{lineno}: non-integer vertex in {line!r}") from None
        if u < 0 or v < 0:
            raise VertexRangeError(f"{path}:{lineno}: negative vertex index")
        edges.append((u, v))
    if not edges:
        raise InvalidSpecError(f"{path}: no edges")
    n = max(max(e) for e in edges) + 1
    return Graph(n, edges)
