"""Command-line front end: ``gridohm <subcommand> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 capacity or convergence error.
"""
import argparse
import sys

from . import __version__, kernels, verify
from .errors import (
    CapacityError,
    ConvergenceError,
    CrossValidationError,
    EstimationError,
    GridohmError,
)
from .graph import TorusSpec, build_torus, read_edge_list, vertex_encode
from .hydro import DEFAULT_TARGET_ERROR, METHODS, hydro_integral
from .resistance import average_resistance
from .sweep import SweepTable, dumps_17g, ratio, rave_table, rmax_sweep, sweep_1d, sweep_2d, sweep_d
from .walk import WalkConfig, hitting_time_exact, hitting_time_mc, tau0

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
MAX_DENSE_VERTICES = 2000


class UsageError(GridohmError):
    pass


def int_list(text):
    """Parse ``3,4,5`` or ``3..8`` (inclusive) or a mix: ``3..5,8``."""
    out = []
    for part in text.replace(" ", ",").split(","):
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=kernels.default_threads(),
                        help="worker cap (default: $GRIDOHM_THREADS or 1); results do not depend on it")
    common.add_argument("--force", action="store_true", help="lift the capacity guardrails")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--M", type=int)
    source.add_argument("--d", type=int)
    source.add_argument("--edge-list", metavar="FILE")

    parser = argparse.ArgumentParser(prog="gridohm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gridohm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rave", parents=[common, source], help="average effective resistance")
    p.add_argument("--method", choices=("exact", "spectral"), default="exact")

    p = sub.add_parser("rmax", parents=[common], help="R_max(T_{M^d}) against 1/d")
    p.add_argument("--d-list", type=int_list, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--method", choices=("exact", "spectral"), default="spectral")

    p = sub.add_parser("hitting", parents=[common, source], help="hitting time H_{from,to}")
    p.add_argument("--from", dest="src", required=True, help="vertex index or comma-separated torus coordinates")
    p.add_argument("--to", dest="dst", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--mc", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=10_000)
    p.add_argument("--step-cap", type=int)

    sub.add_parser("tau0", parents=[common, source], help="average hitting time tau_0")

    p = sub.add_parser("hydro", parents=[common], help="lattice integral R_hydro(d)")
    p.add_argument("--d-list", type=int_list, default=int_list("3..12"))
    p.add_argument("--method", choices=METHODS + ("both",), default="laplace-1d")
    p.add_argument("--target-error", type=float, default=DEFAULT_TARGET_ERROR)

    p = sub.add_parser("sweep-1d", parents=[common], help="R_ave(T_M) against M/12")
    p.add_argument("--M-list", type=int_list, required=True)

    p = sub.add_parser("sweep-2d", parents=[common], help="R_ave(T_{M^2}) against log(M)/(2 pi)")
    p.add_argument("--M-list", type=int_list, required=True)

    p = sub.add_parser("sweep-d", parents=[common], help="R_ave(T_{M^d}) across dimensions")
    p.add_argument("--d-list", type=int_list, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--target-error", type=float, default=DEFAULT_TARGET_ERROR)

    p = sub.add_parser("verify", parents=[common], help="run identity suites, JSON report")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_graph(args, dense=True):
    """Return (graph, spec or None, description) for --M/--d or --edge-list."""
    if args.edge_list and (args.M is not None or args.d is not None):
        raise UsageError("give either --M/--d or --edge-list, not both")
    if args.edge_list:
        g = read_edge_list(args.edge_list)
        spec, label = None, args.edge_list
    elif args.M is not None and args.d is not None:
        spec = TorusSpec(args.M, args.d)
        label = f"T_{args.M}^{args.d}"
        g = None
    else:
        raise UsageError("need --M and --d, or --edge-list")
    n = spec.N if spec else g.num_vertices
    if dense and n > MAX_DENSE_VERTICES and not args.force:
        raise CapacityError(f"exact solves on {n} vertices exceed {MAX_DENSE_VERTICES}; pass --force")
    if g is None and dense:
        g = build_torus(spec)
    return g, spec, label


def _vertex(text, spec, g):
    if "," in text:
        if spec is None:
            raise UsageError("coordinates need a torus (--M/--d)")
        return vertex_encode([int(c) for c in text.split(",")], spec)
    v = int(text)
    g.check_vertex(v)
    return v


def cmd_rave(args):
    if args.method == "spectral":
        if args.edge_list:
            raise UsageError("--method spectral needs a torus (--M/--d), not an edge list")
        _, spec, label = _load_graph(args, dense=False)
        kw = {"max_terms": float("inf")} if args.force else {}
        return rave_table(None, label, "spectral", spec=spec, **kw)
    g, spec, label = _load_graph(args)
    return rave_table(g, label, "exact")


def cmd_rmax(args):
    if args.method == "exact":
        for d in args.d_list:
            if args.M**d > MAX_DENSE_VERTICES and not args.force:
                raise CapacityError(f"exact R_max on {args.M**d} vertices; pass --force")
    kw = {"max_vertices": float("inf")} if args.force else {}
    return rmax_sweep(args.d_list, args.M, method=args.method, threads=args.threads, **kw)


def cmd_hitting(args):
    g, spec, label = _load_graph(args)
    v, w = _vertex(args.src, spec, g), _vertex(args.dst, spec, g)
    cols = ["graph", "from", "to", "method", "computed", "standard_error", "replicates_used", "capped"]
    if args.mc:
        cfg = WalkConfig(master_seed=args.seed, replicates=args.replicates, step_cap=args.step_cap,
                         threads=args.threads)
        est = hitting_time_mc(g, v, w, cfg)
        table = SweepTable(cols, metadata=_meta(args, generator=kernels.PRNG, step_cap=cfg.cap_for(g)))
        table.add(graph=label, **{"from": v, "to": w}, method="mc", computed=est.mean,
                  standard_error=est.standard_error, replicates_used=est.replicates_used, capped=est.capped)
    else:
        table = SweepTable(cols, metadata=_meta(args))
        table.add(graph=label, **{"from": v, "to": w}, method="exact",
                  computed=float(hitting_time_exact(g, w)[v]))
    return table


def cmd_tau0(args):
    g, spec, label = _load_graph(args)
    table = SweepTable(["graph", "N", "degree", "computed", "reference", "ratio"],
                       metadata=_meta(args, reference="delta*N*R_ave (regular graphs only)"))
    val = tau0(g)
    delta = g.regular_degree()
    ref = delta * g.num_vertices * average_resistance(g) if delta is not None else None
    table.add(graph=label, N=g.num_vertices, degree=delta, computed=val, reference=ref, ratio=ratio(val, ref))
    return table


def cmd_hydro(args):
    methods = METHODS if args.method == "both" else (args.method,)
    table = SweepTable(["d", "method", "computed", "error_estimate", "nodes_used", "lower_1_over_4d",
                        "upper_4_over_d", "within_bounds"], metadata=_meta(args))
    for d in args.d_list:
        for m in methods:
            if m == "midpoint-dd" and d > 5:
                continue
            r = hydro_integral(d, m, args.target_error)
            table.add(d=d, method=m, computed=r.value, error_estimate=float(r.error_estimate),
                      nodes_used=r.nodes_used, lower_1_over_4d=1.0 / (4 * d), upper_4_over_d=4.0 / d,
                      within_bounds=bool(1.0 / (4 * d) <= r.value <= 4.0 / d))
    return table


def cmd_sweep_1d(args):
    return sweep_1d(args.M_list)


def cmd_sweep_2d(args):
    return sweep_2d(args.M_list, max_terms=float("inf") if args.force else None)


def cmd_sweep_d(args):
    return sweep_d(args.d_list, args.M, target_error=args.target_error,
                   max_terms=float("inf") if args.force else None)


def _meta(args, **extra):
    return {"command": args.command, "params": dict(vars(args)), "version": __version__,
            "backend": kernels.BACKEND, **extra}


COMMANDS = {
    "rave": cmd_rave,
    "rmax": cmd_rmax,
    "hitting": cmd_hitting,
    "tau0": cmd_tau0,
    "hydro": cmd_hydro,
    "sweep-1d": cmd_sweep_1d,
    "sweep-2d": cmd_sweep_2d,
    "sweep-d": cmd_sweep_d,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        if args.command == "verify":
            report = verify.run(args.suite, seed=args.seed, threads=args.threads)
            report["metadata"] = _meta(args)
            out.write(dumps_17g(report) + "\n")
            return EXIT_OK if report["passed"] else EXIT_VERIFY
        table = COMMANDS[args.command](args)
        table.metadata.setdefault("params", {}).update(
            {k: v for k, v in vars(args).items() if k not in table.metadata["params"]})
        out.write(table.render(args.format))
        return EXIT_OK
    except (CapacityError, ConvergenceError, EstimationError) as exc:
        print(f"gridohm: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except CrossValidationError as exc:
        print(f"gridohm: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (GridohmError, OSError, ValueError) as exc:
        print(f"gridohm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
