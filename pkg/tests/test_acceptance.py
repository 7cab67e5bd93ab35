"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary."""
import itertools
import math
import time

import numpy as np

from gridohm.graph import (
    TorusSpec,
    build_torus,
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected_graph,
)
from gridohm.hydro import cross_validate, hydro_integral, lattice_limit_check
from gridohm.resistance import average_resistance, max_resistance, resistance_matrix
from gridohm.spectral import (
    all_displacement_resistances,
    average_resistance_spectral,
    max_resistance_spectral,
)
from gridohm.walk import WalkConfig, commute_identity_check, hitting_time_exact, hitting_time_mc, tau0

from conftest import cycle_average_closed_form, torus3_average_exact, torus3_displacement_exact

# Ratios R_ave(T_{M^2}) / (log(M) / 2 pi), frozen from the first oracle run
# (direct cosine-form eigenvalue sums, independent of the streaming kernel).
SQUARE_TORUS_RATIOS = {32: 1.088357804930115, 64: 1.0736636961500041, 128: 1.063147235721927, 256: 1.055255347481708}

# d * R_ave(T_{3^d}) and d * R_max(T_{3^d}) for d = 3..8, frozen from the
# first oracle run and cross-checked against exact rational sums.
DRAVE_BAND = (0.5432098765432098, 0.5706447187928668)
DRMAX_BAND = (1.0887800204672498, 1.2222222222222223)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_01_commute_identity(record):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20150401)
    graphs = [build_torus(TorusSpec(3, 2)), build_torus(TorusSpec(3, 3)), path_graph(10)]
    graphs += [random_connected_graph(int(rng.integers(4, 61)), float(rng.uniform(0.02, 0.3)), rng)
               for _ in range(20)]
    worst = max(commute_identity_check(g).max_residual for g in graphs)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 10
    record(1, "C_vw = 2|E| R_eff(v,w), all pairs, 23 graphs", ok,
           f"max rel residual {worst:.2e} (tol 1e-8), {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_02_regular_tau0(record):
    t0 = time.perf_counter()
    graphs = {
        "triangle": cycle_graph(3),
        "T_4": build_torus(TorusSpec(4, 1)),
        "T_3^2": build_torus(TorusSpec(3, 2)),
        "T_4^2": build_torus(TorusSpec(4, 2)),
        "T_3^3": build_torus(TorusSpec(3, 3)),
        "K_5": complete_graph(5),
    }
    errs = {}
    for name, g in graphs.items():
        delta = g.regular_degree()
        errs[name] = rel(tau0(g), delta * g.num_vertices * average_resistance(g))
    worst = max(errs.values())
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 10
    record(2, "tau0 = delta N R_ave on regular graphs", ok,
           f"max rel err {worst:.2e} (tol 1e-8), {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_03_torus_tau0(record):
    t0 = time.perf_counter()
    errs = []
    for M, d in [(3, 3), (4, 2)]:
        spec = TorusSpec(M, d)
        lhs = tau0(build_torus(spec))  # hitting-time solves
        rhs = 2 * d * M**d * average_resistance_spectral(spec)  # eigenvalue sum
        errs.append(rel(lhs, rhs))
    elapsed = time.perf_counter() - t0
    ok = max(errs) < 1e-8 and elapsed < 30
    record(3, "tau0(T_{M^d}) = 2 d M^d R_ave on T_3^3, T_4^2", ok,
           f"rel errs {', '.join(f'{e:.2e}' for e in errs)} (tol 1e-8), {elapsed:.2f}s (limit 30s)")
    assert ok


def test_criterion_04_cycle_asymptotics(record):
    t0 = time.perf_counter()
    worst, worst_ratio = 0.0, 0.0
    for M in range(3, 201):
        val = average_resistance_spectral(TorusSpec(M, 1))
        worst = max(worst, abs(val - float(cycle_average_closed_form(M))))
        if M >= 11:
            worst_ratio = max(worst_ratio, abs(val / (M / 12) - 1))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and worst_ratio < 0.01 and elapsed < 1
    record(4, "R_ave(T_M) = (M^2-1)/(12M), ratio to M/12 within 1% for M >= 11", ok,
           f"max abs err {worst:.2e} (tol 1e-10), max |ratio-1| {worst_ratio:.4f}, {elapsed:.3f}s (limit 1s)")
    assert ok


def test_criterion_05_square_torus_log(record):
    t0 = time.perf_counter()
    ratios = {M: average_resistance_spectral(TorusSpec(M, 2)) / (math.log(M) / (2 * math.pi)) for M in SQUARE_TORUS_RATIOS}
    elapsed = time.perf_counter() - t0
    seq = [ratios[M] for M in sorted(ratios)]
    decreasing = all(b < a for a, b in zip(seq, seq[1:]))
    in_band = 1.0 <= ratios[256] <= 1.5
    fixture = max(rel(ratios[M], SQUARE_TORUS_RATIOS[M]) for M in ratios)
    ok = decreasing and in_band and fixture < 1e-10 and elapsed < 60
    record(5, "R_ave(T_{M^2}) / (log M / 2pi) decreasing, in [1, 1.5] at M=256", ok,
           f"ratios {', '.join(f'{r:.6f}' for r in seq)}; fixture rel dev {fixture:.1e}; {elapsed:.2f}s (limit 60s)")
    assert ok


def test_criterion_06_hydro_bounds_and_limit(record):
    t0 = time.perf_counter()
    bounds_ok = all(1 / (4 * d) <= hydro_integral(d).value <= 4 / d for d in range(3, 13))
    agreement = []
    for d in (3, 4, 5):
        a, b = cross_validate(d)
        agreement.append(bool(abs(a.value - b.value) <= a.error_estimate + b.error_estimate))
    table = lattice_limit_check(3, [8, 16, 32])
    elapsed = time.perf_counter() - t0
    ok = bounds_ok and all(agreement) and table.strictly_decreasing and elapsed < 120
    record(6, "R_hydro(d) in [1/4d, 4/d] d=3..12; methods agree d=3..5; lattice gaps decreasing", ok,
           f"bounds {bounds_ok}, agreement {agreement}, gaps {', '.join(f'{g:.3e}' for g in table.gaps)}, "
           f"{elapsed:.2f}s (limit 120s)")
    assert ok


def test_criterion_07_lower_bound(record):
    t0 = time.perf_counter()
    violations = []
    for d, M in itertools.product(range(1, 9), (3, 4, 5)):
        val = average_resistance_spectral(TorusSpec(M, d))
        if val < 1 / (4 * d) - 1e-12:
            violations.append((M, d, val, 1 / (4 * d)))
    elapsed = time.perf_counter() - t0
    ok = not violations and elapsed < 60
    detail = "; ".join(f"(M={M}, d={d}): {v:.6f} < {b:.6f}" for M, d, v, b in violations) or "none"
    record(7, "R_ave(T_{M^d}) >= 1/(4d), d=1..8, M=3..5", ok,
           f"violations: {detail}; {elapsed:.2f}s (limit 60s)")
    assert ok, f"lower bound violated at {violations}"


def test_criterion_08_theta_one_over_d(record):
    t0 = time.perf_counter()
    dr_ave, dr_max = [], []
    for d in range(3, 9):
        spec = TorusSpec(3, d)
        dr_ave.append(d * average_resistance_spectral(spec))
        dr_max.append(d * max_resistance_spectral(spec)[0])
    elapsed = time.perf_counter() - t0
    exact_ave = [d * float(torus3_average_exact(d)) for d in range(3, 9)]
    exact_max = [d * max(float(torus3_displacement_exact(d, m)) for m in range(1, d + 1)) for d in range(3, 9)]
    oracle_ok = np.allclose(dr_ave, exact_ave, rtol=1e-12) and np.allclose(dr_max, exact_max, rtol=1e-12)
    ave_factor = max(dr_ave) / min(dr_ave)
    max_factor = max(dr_max) / min(dr_max)
    bands_ok = (abs(min(dr_ave) - DRAVE_BAND[0]) < 1e-12 and abs(max(dr_ave) - DRAVE_BAND[1]) < 1e-12
                and abs(min(dr_max) - DRMAX_BAND[0]) < 1e-12 and abs(max(dr_max) - DRMAX_BAND[1]) < 1e-12)
    ok = (ave_factor <= 4 and max_factor <= 4 and min(dr_ave) >= 0.25 and oracle_ok and bands_ok
          and elapsed < 120)
    record(8, "d R_ave and d R_max bounded across d=3..8 at M=3", ok,
           f"d*R_ave in [{min(dr_ave):.4f}, {max(dr_ave):.4f}] (x{ave_factor:.3f}), "
           f"d*R_max in [{min(dr_max):.4f}, {max(dr_max):.4f}] (x{max_factor:.3f}), "
           f"exact-rational oracle {oracle_ok}, {elapsed:.2f}s (limit 120s)")
    assert ok


def test_criterion_09_spectral_exact_equivalence(record):
    t0 = time.perf_counter()
    worst = 0.0
    for M, d in itertools.product((3, 4, 5), (1, 2, 3)):
        spec = TorusSpec(M, d)
        g = build_torus(spec)
        R = resistance_matrix(g)
        worst = max(worst, rel(average_resistance_spectral(spec), average_resistance(g)))
        pairs = all_displacement_resistances(spec)
        worst = max(worst, float(np.max(np.abs(pairs[1:] - R[0, 1:]) / R[0, 1:])))
        worst = max(worst, rel(max_resistance_spectral(spec)[0], max_resistance(g)[0]))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 60
    record(9, "spectral vs exact average/pair/max on {3,4,5}x{1,2,3}", ok,
           f"max rel err {worst:.2e} (tol 1e-8), {elapsed:.2f}s (limit 60s)")
    assert ok


def _mc_cases(seed=8675309, count=50):
    rng = np.random.default_rng(seed)
    pool = [build_torus(TorusSpec(3, 2)), build_torus(TorusSpec(4, 2)), build_torus(TorusSpec(3, 3)),
            cycle_graph(7), path_graph(6), complete_graph(6)]
    cases = []
    for i in range(count):
        if i % 3 == 0:
            g = pool[int(rng.integers(len(pool)))]
        else:
            g = random_connected_graph(int(rng.integers(4, 25)), float(rng.uniform(0.05, 0.35)), rng)
        v, w = rng.choice(g.num_vertices, size=2, replace=False)
        cases.append((g, int(v), int(w), int(rng.integers(2**63))))
    return cases


def test_criterion_10_monte_carlo(record):
    t0 = time.perf_counter()
    cases = _mc_cases()
    misses, zscores = 0, []
    first = []
    for g, v, w, seed in cases:
        est = hitting_time_mc(g, v, w, WalkConfig(master_seed=seed, replicates=10_000, threads=1))
        exact = hitting_time_exact(g, w)[v]
        z = abs(est.mean - exact) / est.standard_error
        zscores.append(z)
        misses += z >= 4
        first.append(est)
    again = [hitting_time_mc(g, v, w, WalkConfig(master_seed=s, replicates=10_000, threads=1)) for g, v, w, s in cases]
    threaded = [hitting_time_mc(g, v, w, WalkConfig(master_seed=s, replicates=10_000, threads=4))
                for g, v, w, s in cases]
    reproducible = first == again == threaded
    elapsed = time.perf_counter() - t0
    ok = misses == 0 and reproducible and elapsed < 120
    record(10, "MC hitting times within 4 SE on 50 cases; bitwise reproducible (runs x2, threads 1/4)", ok,
           f"misses {misses}/50, max |z| {max(zscores):.2f}, reproducible {reproducible}, {elapsed:.1f}s (limit 120s)")
    assert ok
