"""Self-check suites behind ``gridohm verify``.

Each suite returns a list of Check records; a suite passes when every
check does. Reports are plain dicts ready for JSON.
"""
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import CrossValidationError
from .graph import (
    TorusSpec,
    build_torus,
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected_graph,
)
from .hydro import cross_validate, hydro_integral
from .resistance import average_resistance, max_resistance, resistance_matrix
from .spectral import (
    all_displacement_resistances,
    average_resistance_spectral,
    eigenvalue_trace,
    max_resistance_spectral,
)
from .walk import commute_identity_check, tau0

RTOL = 1e-8
SUITES = ("commute", "tau0", "spectral", "hydro")


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def commute_suite(seed=0):
    rng = np.random.default_rng(seed)
    graphs = [
        ("T_3^2", build_torus(TorusSpec(3, 2))),
        ("triangle", cycle_graph(3)),
        ("path_10", path_graph(10)),
    ]
    for i in range(3):
        n = int(rng.integers(5, 30))
        graphs.append((f"random_{i}_n{n}", random_connected_graph(n, 0.15, rng)))
    checks = []
    for name, g in graphs:
        report = commute_identity_check(g)
        checks.append(Check(f"commute:{name}", report.passed(RTOL),
                            {"pairs": len(report.pairs), "max_residual": report.max_residual}))
    return checks


def tau0_suite(seed=0):
    graphs = [
        ("triangle", cycle_graph(3)),
        ("T_4", build_torus(TorusSpec(4, 1))),
        ("T_3^2", build_torus(TorusSpec(3, 2))),
        ("T_4^2", build_torus(TorusSpec(4, 2))),
        ("K_5", complete_graph(5)),
    ]
    checks = []
    for name, g in graphs:
        delta = g.regular_degree()
        lhs = tau0(g)
        rhs = delta * g.num_vertices * average_resistance(g)
        err = rel_err(lhs, rhs)
        checks.append(Check(f"tau0:{name}", err < RTOL, {"tau0": lhs, "delta_N_Rave": rhs, "rel_err": err}))
    return checks


def spectral_checks(M, d, threads=1):
    """Spectral quantities on T_{M^d} against grounded-Laplacian solves."""
    spec = TorusSpec(M, d)
    g = build_torus(spec)
    R = resistance_matrix(g)
    ave_err = rel_err(average_resistance_spectral(spec), average_resistance(g))
    pair_spec = all_displacement_resistances(spec, threads=threads)
    # Vertex 0 sits at the origin, so R[0, q] is the displacement-q resistance.
    pair_err = float(np.max(np.abs(pair_spec - R[0]) / np.max(R[0])))
    smax, sdelta = max_resistance_spectral(spec, threads=threads)
    emax, epair = max_resistance(g)
    max_err = rel_err(smax, emax)
    trace_err = rel_err(eigenvalue_trace(spec), 2.0 * d * spec.N)
    return Check(
        f"spectral:T_{M}^{d}",
        max(ave_err, pair_err, max_err, trace_err) < RTOL,
        {"average_rel_err": ave_err, "pair_rel_err": pair_err, "max_rel_err": max_err,
         "trace_rel_err": trace_err, "argmax_displacement": list(sdelta),
         "exact_argmax_pair": list(epair)},
    )


def spectral_suite(seed=0, threads=1):
    return [spectral_checks(M, d, threads) for M in (3, 4, 5) for d in (1, 2)] + [spectral_checks(3, 3, threads)]


def hydro_suite(seed=0):
    checks = []
    for d in range(3, 13):
        r = hydro_integral(d)
        ok = 1.0 / (4 * d) <= r.value <= 4.0 / d
        checks.append(Check(f"hydro:bounds:d={d}", ok, {"value": r.value, "error_estimate": r.error_estimate}))
    for d in (3, 4, 5):
        try:
            a, b = cross_validate(d)
            checks.append(Check(f"hydro:agreement:d={d}", True,
                                {"laplace_1d": a.value, "midpoint_dd": b.value,
                                 "combined_error": a.error_estimate + b.error_estimate}))
        except CrossValidationError as exc:
            checks.append(Check(f"hydro:agreement:d={d}", False, {"error": str(exc)}))
    return checks


def run(suite="all", seed=0, threads=1):
    names = SUITES if suite == "all" else (suite,)
    runners = {"commute": commute_suite, "tau0": tau0_suite,
               "spectral": lambda s: spectral_suite(s, threads), "hydro": hydro_suite}
    checks = []
    for name in names:
        checks.extend(runners[name](seed))
    return {
        "suite": suite,
        "seed": seed,
        "tolerance": RTOL,
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
