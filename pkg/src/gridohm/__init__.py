"""Effective resistance, random-walk hitting times and toroidal-grid spectra."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    Graph,
    TorusSpec,
    build_torus,
    laplacian_apply,
    read_edge_list,
    vertex_decode,
    vertex_encode,
)
from .hydro import QuadResult, hydro_integral, hydro_integrand, lattice_limit_check  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .resistance import (  # noqa: E402
    SolveConfig,
    average_resistance,
    effective_resistance,
    max_resistance,
)
from .spectral import (  # noqa: E402
    average_resistance_spectral,
    max_resistance_spectral,
    pair_resistance_spectral,
    torus_eigenvalue,
)
from .walk import (  # noqa: E402
    HittingEstimate,
    WalkConfig,
    commute_identity_check,
    commute_time,
    hitting_time_exact,
    hitting_time_mc,
    stationary_distribution,
    tau0,
    transition_probabilities,
)
