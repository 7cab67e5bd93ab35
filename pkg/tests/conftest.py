from fractions import Fraction
from math import comb

import numpy as np
import pytest

from gridohm.graph import Graph, complete_graph, cycle_graph, path_graph, random_connected_graph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(number, name, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {name}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


@pytest.fixture
def p2():
    return Graph(2, [(0, 1)])


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def k5():
    return complete_graph(5)


def random_graphs(count, seed, n_range=(3, 12), p=0.25):
    rng = np.random.default_rng(seed)
    return [random_connected_graph(int(rng.integers(*n_range)), p, rng) for _ in range(count)]


# Independent oracles --------------------------------------------------------

def pinv_resistances(g):
    """All-pairs resistance from the dense Moore-Penrose pseudo-inverse."""
    lp = np.linalg.pinv(g.laplacian(dense=True))
    d = np.diag(lp)
    return d[:, None] + d[None, :] - 2 * lp


def eig_average_resistance(g):
    """(1/N) sum of reciprocal nonzero Laplacian eigenvalues, by eigvalsh."""
    lam = np.linalg.eigvalsh(g.laplacian(dense=True))
    return float(np.sum(1.0 / lam[1:])) / g.num_vertices


def absorbing_hitting_times(g, target):
    """H_{v,target} from the fundamental matrix of the absorbing chain built on P."""
    n = g.num_vertices
    P = np.zeros((n, n))
    for v in range(n):
        nb = g.neighbors(v)
        P[v, nb] = 1.0 / len(nb)
    keep = [v for v in range(n) if v != target]
    Q = P[np.ix_(keep, keep)]
    h = np.zeros(n)
    h[keep] = np.linalg.solve(np.eye(n - 1) - Q, np.ones(n - 1))
    return h


def cycle_average_closed_form(M):
    """From pairwise cycle resistances k(M-k)/M summed over ordered pairs."""
    return Fraction(M * M - 1, 12 * M)


def torus3_average_exact(d):
    """R_ave(T_{3^d}) exactly: eigenvalue 3j has multiplicity C(d, j) 2^j."""
    return sum(Fraction(comb(d, j) * 2**j, 3 * j) for j in range(1, d + 1)) / 3**d


def torus3_displacement_exact(d, m):
    """R_eff on T_{3^d} for a displacement with m nonzero coordinates, exactly.

    For M = 3, 1 - cos(2 pi p / 3) is 0 or 3/2, so
    R = (1/N) sum over k with k.delta != 0 (mod 3) of 1 / (#nonzero k_i).
    """
    total = Fraction(0)
    for a in range(1, m + 1):
        zero_sum = (2**a + 2 * (-1) ** a) // 3  # words in {1,2}^a summing to 0 mod 3
        live = comb(m, a) * (2**a - zero_sum)
        for b in range(d - m + 1):
            total += Fraction(live * comb(d - m, b) * 2**b, a + b)
    return total / 3**d
