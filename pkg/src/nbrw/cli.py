"""Command-line front end.

Every run prints one machine-readable document (JSON by default, CSV for
the tabular commands) that echoes its full configuration and the library
version, so a report is reproducible from its own header. Exit codes:
0 success, 1 invariant violation found by `check`, 2 input error,
3 work budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import __version__
from .amenability import diagnose
from .budgets import resolve_budget
from .builtins import BUILTIN_NAMES, builtin_graph
from .cogrowth import cogrowth_series, functional_equation_check, sphere_counts
from .edge_space import analyze_structure, build_kernel, check_reversal_symmetry
from .errors import (
    BadParamsError,
    BudgetExceededError,
    NbrwError,
    NotRegularError,
)
from .multigraph import (
    Multigraph,
    ball,
    contains_cycle,
    is_bipartite,
    load_multigraph,
    small_cycle_radius,
)
from .walks import (
    monte_carlo_nbrw,
    nbrw_limit_profile,
    nbrw_nstep,
    nbrw_return_sequence,
    probe_dense_cycles,
    qe_operator_norm,
    spectral_radius_nbrw,
    spectral_radius_srw,
    srw_limit_profile,
    uniform_irreducibility_check,
)

CSV_COMMANDS = {"limits", "cogrowth", "simulate"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbrw",
        description="non-backtracking walk analysis on multigraphs")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "analyze": "degrees, bipartiteness, cycles, and edge-chain structure",
        "limits": "n-step trajectories against their stationary targets",
        "spectral": "growth-rate estimates and the kernel operator norm",
        "cogrowth": "path-counting series and the regular-graph identity",
        "simulate": "seeded Monte Carlo trajectories against exact values",
        "amenability": "combined isoperimetric and spectral diagnostic",
        "check": "exact invariant suite (nonzero exit on violation)",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", help="edge-list file, or - for stdin")
        p.add_argument("--builtin",
                       help="named graph, e.g. %s" % ", ".join(BUILTIN_NAMES[:3]))
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--exact", action="store_true",
                       help="rational arithmetic (refuses oversized runs)")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--from", dest="from_vertex", default=None)
        p.add_argument("--to", dest="to_vertex", default=None)
        p.add_argument("--budget", type=int, default=None,
                       help="work cap (default: NBRW_BUDGET env or 2e6)")
        if name == "limits":
            p.add_argument("--chain", choices=("nbrw", "srw"), default="nbrw")
        if name == "cogrowth":
            p.add_argument("--mode", choices=("ordinary", "weighted"),
                           default="ordinary")
            p.add_argument("--check-functional-equation", action="store_true")
        if name == "simulate":
            p.add_argument("--trials", type=int, default=None)
            p.add_argument("--seed", type=int, default=None)
        if name == "amenability":
            p.add_argument("--rmax", type=int, default=40)
            p.add_argument("--k", type=int, default=5)
    return parser


# --------------------------------------------------------------------------
# serialization

def _plain(obj):
    """Recursively convert results to JSON-ready values. Fractions become
    exact "p/q" strings regardless of mode so nothing quietly rounds."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=str)
        return [_plain(v) for v in items]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return str(obj)


def _number(v):
    """CSV cell: exact string for rationals, repr for floats."""
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


def _load_graph(args):
    if bool(args.graph) == bool(args.builtin):
        raise BadParamsError("give exactly one of --graph or --builtin")
    if args.builtin:
        return builtin_graph(args.builtin)
    if args.graph == "-":
        return load_multigraph(sys.stdin.read())
    try:
        with open(args.graph, "r", encoding="utf-8") as fh:
            return load_multigraph(fh.read())
    except OSError as exc:
        raise BadParamsError(f"cannot read {args.graph}: {exc}") from None


def _config_echo(args, nmax: int) -> dict:
    cfg = {
        "graph": args.builtin and f"builtin:{args.builtin}"
        or (args.graph == "-" and "stdin" or f"file:{args.graph}"),
        "numeric_mode": "rational" if args.exact else "float",
        "format": args.format,
        "nmax": nmax,
        "from": args.from_vertex,
        "to": args.to_vertex,
        "budget": resolve_budget(args.budget),
    }
    for key in ("chain", "mode", "trials", "seed", "rmax", "k"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    if hasattr(args, "check_functional_equation"):
        cfg["check_functional_equation"] = args.check_functional_equation
    return cfg


# --------------------------------------------------------------------------
# commands

def _cmd_analyze(g, args, nmax):
    if not isinstance(g, Multigraph):
        sizes = [ball(g, g.root, r, max_vertices=resolve_budget(args.budget))
                 .graph.num_vertices for r in range(min(nmax, 8) + 1)]
        return {
            "source": {"name": g.name, "root": g.root,
                       "degree_bound": g.degree_bound},
            "dense_cycle_radius": probe_dense_cycles(g, budget=args.budget),
            "ball_sizes": sizes,
        }
    kernel = build_kernel(g)
    structure = analyze_structure(kernel)
    bip = is_bipartite(g)
    out = {
        "graph": {
            "vertices": g.num_vertices,
            "unoriented_edges": g.num_unoriented_edges,
            "oriented_edges": g.num_oriented_edges,
            "min_degree": g.min_degree(),
            "max_degree": max(g.degrees()),
            "regular_degree": g.regular_degree(),
            "is_cycle_graph": g.is_cycle_graph(),
        },
        "bipartite": {
            "bipartite": bip.bipartite,
            "coloring": bip.coloring,
            "odd_closed_walk": bip.odd_closed_walk,
        },
        "cycles": {
            "contains_cycle": contains_cycle(g),
            "small_cycle_radius": small_cycle_radius(g),
        },
        "edge_chain": {
            "irreducible": structure.irreducible,
            "num_components": len(structure.components),
            "essential_classes": structure.num_essential,
            "period": structure.period,
            "component_periods": list(structure.component_periods),
            "turnaround_bound": structure.turnaround_bound,
        },
    }
    if g.num_oriented_edges <= 120:
        rep = uniform_irreducibility_check(g)
        out["uniform_irreducibility"] = {
            "feasible": rep.feasible,
            "reason": rep.reason,
            "minimal_k": rep.minimal_k,
            "eps0_at_minimal_k": rep.eps0_at_minimal_k,
            "k_from_turnaround": rep.k_from_turnaround,
            "eps0_from_degrees": rep.eps0_from_degrees,
        }
    else:
        out["uniform_irreducibility"] = {
            "skipped": "graph too large for the exact constant scan"}
    return out


def _cmd_limits(g, args, nmax):
    targets = (args.to_vertex,) if args.to_vertex else None
    if args.chain == "srw":
        prof = srw_limit_profile(g, args.from_vertex, nmax, targets=targets,
                                 exact=args.exact)
    else:
        prof = nbrw_limit_profile(g, args.from_vertex, nmax, targets=targets,
                                  exact=args.exact, budget=args.budget)
    per_target = {}
    for y in prof.targets:
        entry = {
            "cesaro_final": prof.cesaro[y][-1],
            "cesaro_target": prof.cesaro_target[y] if prof.cesaro_target else None,
            "pointwise_target": prof.pointwise_target[y]
            if prof.pointwise_target else None,
            "residue_tails": {str(r): v
                              for r, v in sorted(prof.residue_tails[y].items())},
            "trajectory_tail": list(prof.trajectories[y][-4:]),
        }
        if prof.cesaro_target is not None:
            entry["cesaro_residual"] = abs(
                float(prof.cesaro[y][-1]) - float(prof.cesaro_target[y]))
        per_target[y] = entry
    return {
        "chain": prof.chain,
        "start": prof.start,
        "n_max": prof.n_max,
        "period": prof.period,
        "bipartite": prof.bipartite,
        "targets": per_target,
        "notes": list(prof.notes),
        "_csv": _limits_csv(prof),
    }


def _limits_csv(prof) -> list[str]:
    head = ["n"] + [f"q_to_{y}" for y in prof.targets]
    lines = [",".join(head)]
    for n in range(prof.n_max + 1):
        row = [str(n)] + [_number(prof.trajectories[y][n]) for y in prof.targets]
        lines.append(",".join(row))
    return lines


def _cmd_spectral(g, args, nmax):
    out = {}
    if isinstance(g, Multigraph):
        out["nbrw"] = spectral_radius_nbrw(g, exact=args.exact)
        out["srw"] = spectral_radius_srw(g)
        out["qe_operator_norm"] = qe_operator_norm(g)
        return out
    import warnings as _w
    with _w.catch_warnings(record=True) as caught:
        _w.simplefilter("always")
        out["nbrw"] = spectral_radius_nbrw(
            g, args.from_vertex, args.to_vertex, nmax,
            exact=args.exact, budget=args.budget)
    out["warnings"] = sorted({w.category.__name__ for w in caught})
    try:
        out["srw"] = spectral_radius_srw(
            g, args.from_vertex, min(nmax, 12), budget=args.budget)
    except BudgetExceededError as exc:
        out["srw"] = {"skipped": f"budget: {exc}"}
    return out


def _cmd_cogrowth(g, args, nmax):
    mode = "nbrw_weighted" if args.mode == "weighted" else "ordinary"
    series = cogrowth_series(g, args.from_vertex, args.to_vertex, nmax,
                             mode=mode, budget=args.budget)
    out = {
        "x": series.x,
        "y": series.y,
        "mode": series.mode,
        "n_max": series.n_max,
        "coefficients": list(series.coefficients),
        "path_counts": list(series.path_counts),
        "sphere_sizes": list(series.sphere_sizes),
    }
    csv = ["n,coefficient,path_count,sphere_size"]
    for n in range(nmax + 1):
        csv.append(",".join([str(n), _number(series.coefficients[n]),
                             str(series.path_counts[n]),
                             str(series.sphere_sizes[n])]))
    if args.check_functional_equation:
        rep = functional_equation_check(g, args.from_vertex, args.to_vertex,
                                        nmax, budget=args.budget)
        out["functional_equation"] = {
            "d": rep.d,
            "max_residual": rep.max_residual,
            "ok": bool(rep),
        }
        csv.append(f"# functional_equation_max_residual={rep.max_residual} "
                   f"d={rep.d}")
    out["_csv"] = csv
    return out


def _cmd_simulate(g, args, nmax):
    if not args.trials or args.trials <= 0:
        raise BadParamsError("simulate needs --trials > 0")
    if args.seed is None:
        raise BadParamsError("simulate needs an explicit --seed")
    emp = monte_carlo_nbrw(g, args.from_vertex, nmax,
                           trials=args.trials, seed=args.seed)
    exact = nbrw_nstep(g, args.from_vertex, nmax, exact=args.exact,
                       budget=args.budget)
    labels = sorted(set(emp.values) | set(exact.values))
    csv = ["vertex,empirical,exact"]
    for lab in labels:
        csv.append(",".join([lab, repr(float(emp[lab])), _number(exact[lab])]))
    return {
        "start": emp.start,
        "n": emp.n,
        "trials": args.trials,
        "seed": args.seed,
        "empirical": dict(sorted(emp.values.items())),
        "exact": dict(sorted(exact.values.items())),
        "tv_distance": emp.tv_distance(exact),
        "_csv": csv,
    }


def _cmd_amenability(g, args, nmax):
    if isinstance(g, Multigraph):
        raise BadParamsError(
            "diagnosis is for infinite sources; finite graphs have "
            "isoperimetric constant 0")
    import warnings as _w
    with _w.catch_warnings(record=True) as caught:
        _w.simplefilter("always")
        diag = diagnose(g, args.from_vertex, n_max=nmax, r_max=args.rmax,
                        k=args.k, budget=args.budget)
    iota = diag.iota_report
    return {
        "source": diag.source_name,
        "base": diag.base,
        "prerequisites": diag.prerequisites,
        "rho_estimate": diag.rho_estimate,
        "iota_report": None if iota is None else {
            "scope": iota.scope,
            "size_cap": iota.size_cap,
            "lower_bound_exact": iota.lower_bound_exact,
            "best_set": list(iota.best_set),
            "best_area": iota.best_area,
            "best_vol": iota.best_vol,
            "upper_bounds": [list(u) for u in iota.upper_bounds],
            "visited": iota.visited,
        },
        "folner": {
            "rows": [list(r) for r in diag.folner.rows],
            "truncated_at": diag.folner.truncated_at,
        },
        "evidence": diag.evidence,
        "verdict": diag.verdict,
        "warnings": sorted({w.category.__name__ for w in caught}),
        "notes": list(diag.notes),
    }


def _cmd_check(g, args, nmax):
    if not isinstance(g, Multigraph):
        raise BadParamsError("the invariant suite runs on finite graphs")
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": str(detail)})

    kernel = build_kernel(g)
    record("row_sums_one", kernel.matrix.is_row_stochastic(),
           "every row of the kernel sums to exactly 1")
    cols = kernel.matrix.column_sums()
    record("column_sums_one", all(c == 1 for c in cols),
           "counting measure is invariant: columns sum to exactly 1")
    rev = check_reversal_symmetry(kernel, min(nmax, 12))
    record("reversal_symmetry", rev.ok,
           f"q^(n)(e,f) = q^(n)(rev f, rev e) for n <= {rev.n_max}, "
           f"max violation {rev.max_violation}")
    depth = min(nmax, 12)
    agree = True
    for y in g.labels:
        series = cogrowth_series(g, args.from_vertex, y, depth,
                                 mode="nbrw_weighted", budget=args.budget)
        walk = nbrw_return_sequence(g, args.from_vertex, y, depth, exact=True)
        if list(series.coefficients) != walk:
            agree = False
            break
    record("weighted_series_equals_walk", agree,
           f"coefficientwise through n = {depth}, exact rationals")
    d = g.regular_degree()
    if d is not None and d >= 3:
        spheres = sphere_counts(g, args.from_vertex, depth, budget=args.budget)
        expected = [1] + [d * (d - 1) ** (n - 1) for n in range(1, depth + 1)]
        record("regular_sphere_sizes", spheres == expected,
               f"d (d-1)^(n-1) with d = {d}")
        rep = functional_equation_check(g, args.from_vertex, args.to_vertex,
                                        nmax, budget=args.budget)
        record("functional_equation", bool(rep),
               f"max residual {rep.max_residual} through n = {nmax}")
    if g.min_degree() >= 3:
        structure = analyze_structure(kernel)
        bip = bool(is_bipartite(g))
        record("period_two_iff_bipartite",
               (structure.period == 2) == bip,
               f"period {structure.period}, bipartite {bip}")
    return {"checks": checks, "all_ok": all(c["ok"] for c in checks)}


_DISPATCH = {
    "analyze": _cmd_analyze,
    "limits": _cmd_limits,
    "spectral": _cmd_spectral,
    "cogrowth": _cmd_cogrowth,
    "simulate": _cmd_simulate,
    "amenability": _cmd_amenability,
    "check": _cmd_check,
}

_DEFAULT_NMAX = {
    "analyze": 6, "limits": 200, "spectral": 200, "cogrowth": 20,
    "simulate": 5, "amenability": 200, "check": 10,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    nmax = args.nmax if args.nmax is not None else _DEFAULT_NMAX[args.command]
    if nmax < 0:
        print("error: --nmax must be >= 0", file=sys.stderr)
        return 2
    if args.format == "csv" and args.command not in CSV_COMMANDS:
        print(f"error: csv output is not defined for {args.command!r}; "
              "the tabular commands are " + ", ".join(sorted(CSV_COMMANDS)),
              file=sys.stderr)
        return 2
    try:
        g = _load_graph(args)
        result = _DISPATCH[args.command](g, args, nmax)
    except BudgetExceededError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except NbrwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_lines = result.pop("_csv", None)
    if args.format == "csv":
        header = [f"# command={args.command} version={__version__}",
                  f"# numeric_mode={'rational' if args.exact else 'float'}",
                  f"# graph={_config_echo(args, nmax)['graph']}"]
        text = "\n".join(header + csv_lines) + "\n"
    else:
        doc = {
            "command": args.command,
            "version": __version__,
            "config": _config_echo(args, nmax),
            "result": _plain(result),
        }
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "check" and not result["all_ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
