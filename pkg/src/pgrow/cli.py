"""Command line front end.

Every command is a pure function of its configuration and seed: re-running
writes byte-identical CSV and manifest files (no timestamps in payloads).
Options may come from a key=value config file (--config); explicit flags win
over the file, which wins over built-in defaults, and unknown keys are
errors. Human-readable vertex labels printed by ``simulate`` are one-based;
all machine-readable files use zero-based ids.

Exit codes: 0 success, 1 check failure or runtime error, 2 bad usage or
configuration, 3 warning thresholds exceeded (censoring, exclusions),
4 reconstruction budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis
from .autonomous import BudgetExhausted, diagnostics, run_algorithm
from .direct_sim import EdgeOpened, Paralyzed, TurnedGreen, simulate
from .fields import COLOUR_NAMES, EdgeWeights, Params, save_snapshot
from .fixtures import worked_example
from .graph import build_lattice, read_edge_list
from .invasion import critical_probability
from .sampling import replicate_rng, sample_colours, sample_weights
from .verify import run_full_verification

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_WARN = 3
EXIT_BUDGET = 4

_SUITES = ("invasion", "algorithm", "autonomy")


class ConfigError(Exception):
    pass


def _csv_ints(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}")


def _csv_floats(text: str) -> list:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a float list: {text!r}")


def _bool_from_text(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


# ---------------------------------------------------------------------------
# parser construction. Every option defaults to None so that the
# flag > config file > default precedence is decidable after parsing.

def _add_instance_options(sp) -> None:
    sp.add_argument("--lattice", choices=("square", "triangular", "hexagonal",
                                          "hypercubic", "path"),
                    help="lattice kind for the ball around the origin")
    sp.add_argument("--n", type=int, help="ball radius")
    sp.add_argument("--boundary", choices=("free", "periodic"))
    sp.add_argument("--dim", type=int, help="dimension for hypercubic")
    sp.add_argument("--graph", help="edge list file (u v [tau] per line), "
                                    "overrides --lattice")
    sp.add_argument("--pw", type=float, help="white density")
    sp.add_argument("--pr", type=float, help="red density")
    sp.add_argument("--distribution", choices=("uniform", "exponential"))


def _add_common(sp) -> None:
    sp.add_argument("--config", help="key=value file mirroring the flags")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, help="worker processes; results do "
                                             "not depend on this")
    sp.add_argument("--out", help="output directory")
    sp.add_argument("--no-figures", action="store_true", default=None,
                    help="skip figure rendering, keep the CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgrow",
        description="Growth with paralyzing obstacles: simulation, local "
                    "reconstruction, and Monte Carlo reports.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="run the direct dynamics once")
    _add_common(sp)
    _add_instance_options(sp)
    sp.add_argument("--example-1-2", action="store_true", default=None,
                    dest="example_1_2",
                    help="run the built-in five-vertex worked example")
    sp.add_argument("--rule", choices=("exposure", "contiguous"))
    sp.add_argument("--t-max", type=float, dest="t_max")

    sp = sub.add_parser("autonomous",
                        help="reconstruct the region around one vertex")
    _add_common(sp)
    _add_instance_options(sp)
    sp.add_argument("--vertex", type=int, help="target vertex, default origin")
    sp.add_argument("--budget", type=int, help="selection budget")

    sp = sub.add_parser("verify", help="cross-check the implementations "
                                       "against each other")
    _add_common(sp)
    sp.add_argument("--cases", type=int, help="random instances per suite")
    sp.add_argument("--trials", type=int,
                    help="resampled extensions per instance")
    sp.add_argument("--suites", help="comma list from: " + ",".join(_SUITES))
    sp.add_argument("--inject-fault", type=float, dest="inject_fault",
                    help="perturb one reconstructed time by this much "
                         "(negative control; nonzero must fail)")
    sp.add_argument("--snapshot", help="write the first failing instance here")

    sp = sub.add_parser("ponds", help="pond radii vs critical connectivity")
    _add_common(sp)
    sp.add_argument("--lattice", choices=("square", "triangular", "hexagonal"))
    sp.add_argument("--n", type=int, help="box radius for ponds")
    sp.add_argument("--samples", type=int, help="pond replicates")
    sp.add_argument("--conn-samples", type=int, dest="conn_samples")
    sp.add_argument("--grid", type=_csv_ints, help="radii to compare at")
    sp.add_argument("--margin", type=float,
                    help="censor ponds reaching past margin*n")
    sp.add_argument("--max-censored", type=float, dest="max_censored")
    sp.add_argument("--coupling-samples", type=int, dest="coupling_samples",
                    help="shared realizations for the stopped-region "
                         "coupling check (0 skips it)")
    sp.add_argument("--coupling-grid", type=_csv_floats, dest="coupling_grid")

    sp = sub.add_parser("tails", help="survival curves of cluster statistics")
    _add_common(sp)
    _add_instance_options(sp)
    sp.add_argument("--mode", choices=("green", "responsibility"))
    sp.add_argument("--statistic", choices=("steps", "size", "radius"))
    sp.add_argument("--samples", type=int)
    sp.add_argument("--grid", type=_csv_ints)
    sp.add_argument("--budget", type=int, help="reconstruction budget")
    sp.add_argument("--max-excluded", type=float, dest="max_excluded")

    sp = sub.add_parser("xi", help="mean white cluster size of the origin")
    _add_common(sp)
    sp.add_argument("--p", type=float, help="site density")
    sp.add_argument("--pr", type=float,
                    help="also evaluate the drift condition at this red "
                         "density")
    sp.add_argument("--lattice", choices=("square", "triangular", "hexagonal",
                                          "hypercubic"))
    sp.add_argument("--dim", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--r-max", type=int, dest="r_max")

    return parser


DEFAULTS = {
    "simulate": {"seed": 0, "jobs": 1, "lattice": "square", "n": 8,
                 "boundary": "free", "dim": 3, "pw": 0.0, "pr": 0.2,
                 "distribution": "uniform", "rule": "exposure",
                 "t_max": math.inf, "example_1_2": False,
                 "no_figures": False},
    "autonomous": {"seed": 0, "jobs": 1, "lattice": "square", "n": 16,
                   "boundary": "free", "dim": 3, "pw": 0.02, "pr": 0.3,
                   "distribution": "uniform", "budget": 10 ** 6,
                   "no_figures": False},
    "verify": {"seed": 0, "jobs": 1, "cases": 200, "trials": 5,
               "suites": ",".join(_SUITES), "inject_fault": 0.0,
               "no_figures": False},
    "ponds": {"seed": 0, "jobs": 1, "lattice": "square", "n": 64,
              "samples": 500, "conn_samples": 50000, "grid": [2, 4, 8, 16],
              "margin": 0.5, "max_censored": 0.9, "coupling_samples": 0,
              "coupling_grid": [0.5, 0.2, 0.1, 0.05, 0.02], "out": "out",
              "no_figures": False},
    "tails": {"seed": 0, "jobs": 1, "lattice": "square", "n": 40,
              "boundary": "free", "dim": 3, "pw": 0.0, "pr": 0.2,
              "distribution": "uniform", "mode": "green", "samples": 20000,
              "grid": list(range(1, 21)), "budget": 10 ** 6,
              "max_excluded": 0.01, "out": "out", "no_figures": False},
    "xi": {"seed": 0, "jobs": 1, "p": 0.01, "lattice": "square", "dim": 3,
           "samples": 200000, "r_max": 8, "out": "out", "no_figures": False},
}


def _apply_config(args, parser_actions, path) -> None:
    known = {}
    for action in parser_actions:
        if action.dest in ("help", "command"):
            continue
        known[action.dest] = action
    try:
        fh = open(path)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, "
                                  f"got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            dest = key.replace("-", "_")
            if dest not in known:
                raise ConfigError(f"{path}:{lineno}: unknown configuration "
                                  f"key {key!r}")
            if getattr(args, dest) is not None:
                continue        # explicit flag wins
            action = known[dest]
            if action.const is True:    # a store_true switch
                setattr(args, dest, _bool_from_text(value))
            elif action.type is not None:
                try:
                    setattr(args, dest, action.type(value))
                except (ValueError, argparse.ArgumentTypeError) as exc:
                    raise ConfigError(f"{path}:{lineno}: bad value for "
                                      f"{key!r}: {exc}")
            else:
                setattr(args, dest, value)


def _fill_defaults(args) -> None:
    for dest, value in DEFAULTS[args.command].items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)


def _ensure_out(args) -> str | None:
    if args.out is None:
        return None
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _make_graph(args):
    """(graph, fixed tau or None) from --graph or the lattice options."""
    if args.graph is not None:
        return read_edge_list(args.graph)
    d = args.dim if args.lattice == "hypercubic" else None
    return build_lattice(args.lattice, args.n, boundary=args.boundary, d=d), None


def _sample_fields(args, graph, tau_file, force_green=None):
    params = Params.from_wr(args.pw, args.pr)
    rng = replicate_rng(args.seed, 0)
    colours = sample_colours(rng, graph.n, params)
    if tau_file is not None:
        weights = EdgeWeights(np.asarray(tau_file, dtype=np.float64), "file")
    else:
        weights = sample_weights(rng, len(graph.edges), args.distribution)
    if force_green is not None:
        colours[force_green] = 1
    return params, colours, weights


# ---------------------------------------------------------------------------
# commands

def _trace_lines(trace) -> list:
    lines = []
    for ev in trace.events:
        if isinstance(ev, EdgeOpened):
            u, v = trace.graph.edges[ev.edge]
            lines.append(f"edge {u + 1}-{v + 1} opened at t={ev.time:g}")
        elif isinstance(ev, TurnedGreen):
            lines.append(f"vertex {ev.vertex + 1} turned green at t={ev.time:g}")
        elif isinstance(ev, Paralyzed):
            for v in sorted(ev.vertices):
                lines.append(f"vertex {v + 1} paralyzed at t={ev.time:g} "
                             f"by vertex {ev.responsible + 1}")
    return lines


def cmd_simulate(args) -> int:
    if args.example_1_2:
        graph, colours, weights = worked_example()
        params = None
    else:
        graph, tau_file = _make_graph(args)
        params, colours, weights = _sample_fields(args, graph, tau_file)
    trace = simulate(graph, colours, weights, args.rule, t_max=args.t_max)
    for line in _trace_lines(trace):
        print(line)
    out = _ensure_out(args)
    if out:
        trace.to_jsonl(os.path.join(out, "trace.jsonl"))
        save_snapshot(os.path.join(out, "instance.json"), graph, colours,
                      weights, params=params)
        analysis.write_manifest(
            os.path.join(out, "manifest.json"), "simulate",
            {"rule": str(args.rule), "seed": args.seed,
             "example_1_2": bool(args.example_1_2),
             "t_max": repr(args.t_max)},
            {"events": len(trace.events), "opened": len(trace.opened),
             "paralyzed": len(trace.paralysis_times)},
            ["trace.jsonl", "instance.json"])
    return EXIT_OK


def cmd_autonomous(args) -> int:
    graph, tau_file = _make_graph(args)
    params, colours, weights = _sample_fields(args, graph, tau_file)
    x = args.vertex if args.vertex is not None else (graph.origin or 0)
    try:
        result = run_algorithm(graph, colours, weights, x,
                               max_selections=args.budget)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}")
        return EXIT_FAIL
    rep = diagnostics(result)
    h = result.h_vertices
    print(f"vertex {x} ({COLOUR_NAMES[int(colours[x])]}): region has "
          f"{len(h)} vertices, {len(result.seen_white)} registered white, "
          f"{len(result.external_edges)} external edges")
    print(f"{len(result.selections)} selections, {len(rep.steps)} growth "
          f"steps, termination walk {rep.n_steps}, "
          f"mean alpha {rep.mean_alpha:+.4f}")
    if x in result.tr:
        print(f"t_r({x}) = {result.tr[x]:.12g}")
    out = _ensure_out(args)
    if out:
        region = result.restriction()
        doc = {"x": x,
               "h": region["h"],
               "seen_white": sorted(result.seen_white),
               "external_edges": [[e, owner]
                                  for e, owner in result.external_edges],
               "tg": {str(v): t for v, t in region["tg"].items()},
               "tr": {str(v): t for v, t in region["tr"].items()},
               "origin": {str(v): o for v, o in region["origin"].items()},
               "opened": {str(e): t for e, t in region["opened"].items()}}
        with open(os.path.join(out, "region.json"), "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        with open(os.path.join(out, "steps.jsonl"), "w") as fh:
            for k, (t1, eid, tag) in enumerate(result.selections):
                fh.write(json.dumps({"k": k, "t": t1, "edge": eid,
                                     "case": tag}, sort_keys=True))
                fh.write("\n")
        with open(os.path.join(out, "diagnostics.csv"), "w", newline="") as fh:
            fh.write("k,t,colour,cw,nu,eta,alpha\n")
            for s in rep.steps:
                fh.write(f"{s.index},{s.t!r},{s.colour},{s.cw_size},"
                         f"{s.nu},{s.eta},{s.alpha}\n")
        analysis.write_manifest(
            os.path.join(out, "manifest.json"), "autonomous",
            {"seed": args.seed, "pw": args.pw, "pr": args.pr, "vertex": x,
             "budget": args.budget},
            {"h_size": len(h), "seen_white": len(result.seen_white),
             "external_edges": len(result.external_edges),
             "selections": len(result.selections),
             "termination_walk": rep.n_steps,
             "mean_alpha": rep.mean_alpha},
            ["region.json", "steps.jsonl", "diagnostics.csv"])
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    unknown = [s for s in suites if s not in _SUITES]
    if unknown:
        print(f"unknown suites: {', '.join(unknown)}", file=sys.stderr)
        return EXIT_CONFIG
    report = run_full_verification(
        seed=args.seed, n_graphs=args.cases, trials=args.trials,
        suites=suites, inject_fault=args.inject_fault,
        snapshot_path=args.snapshot)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_ponds(args) -> int:
    cmp = analysis.compare_ponds(
        args.lattice, args.n, args.grid, args.samples, args.conn_samples,
        args.seed, margin=args.margin, jobs=args.jobs)
    for i, n in enumerate(cmp.n_grid):
        mark = "ok" if cmp.margins[i] >= 0 else "VIOLATED"
        print(f"n={n}: pond {cmp.pond.survival[i]:.4f} vs connectivity "
              f"{cmp.connectivity.survival[i]:.4f} ({mark})")
    print(f"censored: {cmp.censored_radius} radius, {cmp.censored_outlet} "
          f"outlet of {cmp.pond.n} ({cmp.censored_rate:.1%}); containment "
          f"{cmp.containment_checked - cmp.containment_failures}"
          f"/{cmp.containment_checked}; log-log slopes "
          f"{cmp.slope_pond:.3f}/{cmp.slope_conn:.3f}")

    coupling = None
    if args.coupling_samples:
        coupling = analysis.coupled_region_check(
            args.lattice, args.n, args.coupling_grid, args.coupling_samples,
            args.seed, jobs=args.jobs)
        print(f"coupling: {coupling.nesting_violations} nesting violations, "
              f"union agreement {coupling.agreement_holds}"
              f"/{coupling.condition_met}")

    out = _ensure_out(args)
    files = []
    if out:
        analysis.write_series_csv(os.path.join(out, "ponds.csv"),
                                  [("pond", cmp.pond),
                                   ("connectivity", cmp.connectivity)])
        files.append("ponds.csv")
        if coupling is not None:
            radii = args.grid
            series = [("pond", analysis.survival_table(
                coupling.pond_radii, radii, strict=True))]
            for stats in coupling.levels:
                series.append((f"coupled[{stats.p_r:g}]",
                               analysis.survival_table(stats.radii, radii)))
            analysis.write_series_csv(os.path.join(out, "coupling.csv"),
                                      series)
            files.append("coupling.csv")
        if not args.no_figures:
            from . import report
            report.pond_figure(cmp, os.path.join(out, "ponds.png"))
            files.append("ponds.png")
            if coupling is not None:
                report.coupling_figure(coupling, args.grid,
                                       os.path.join(out, "coupling.png"))
                files.append("coupling.png")
        results = {
            "p_c": cmp.p_c,
            "margins": cmp.margins,
            "inequality_ok": cmp.inequality_ok,
            "censored_radius": cmp.censored_radius,
            "censored_outlet": cmp.censored_outlet,
            "censored_rate": cmp.censored_rate,
            "containment_checked": cmp.containment_checked,
            "containment_failures": cmp.containment_failures,
            "slope_pond": cmp.slope_pond,
            "slope_conn": cmp.slope_conn,
            "slope_ratio": cmp.slope_ratio,
        }
        if coupling is not None:
            results["coupling"] = {
                "nesting_violations": coupling.nesting_violations,
                "tree_basin_mismatches": coupling.tree_basin_mismatches,
                "condition_met": coupling.condition_met,
                "agreement_holds": coupling.agreement_holds,
                "equality_without_condition":
                    coupling.equality_without_condition,
            }
        analysis.write_manifest(
            os.path.join(out, "manifest.json"), "ponds",
            {"lattice": args.lattice, "n": args.n, "samples": args.samples,
             "conn_samples": args.conn_samples, "grid": args.grid,
             "margin": args.margin, "seed": args.seed,
             "coupling_samples": args.coupling_samples,
             "coupling_grid": args.coupling_grid},
            results, files)

    if cmp.containment_failures:
        print("containment check failed", file=sys.stderr)
        return EXIT_FAIL
    if coupling is not None and (coupling.nesting_violations
                                 or not coupling.agreement_ok
                                 or coupling.tree_basin_mismatches):
        print("coupling check failed", file=sys.stderr)
        return EXIT_FAIL
    if not cmp.inequality_ok:
        print("pond tail fell below the connectivity reference",
              file=sys.stderr)
        return EXIT_FAIL
    if cmp.censored_rate > args.max_censored:
        print(f"censored rate {cmp.censored_rate:.1%} exceeds "
              f"{args.max_censored:.1%}", file=sys.stderr)
        return EXIT_WARN
    return EXIT_OK


def cmd_tails(args) -> int:
    graph, tau_file = _make_graph(args)
    if tau_file is not None:
        print("fixed weights are not meaningful for replicated tails",
              file=sys.stderr)
        return EXIT_CONFIG
    params = Params.from_wr(args.pw, args.pr)
    grid = args.grid
    if args.mode == "green":
        statistic = args.statistic or ("steps" if args.pw == 0.0 else "size")
        est = analysis.tail_of_green_cluster(
            graph, params, grid, args.samples, args.seed,
            statistic=statistic, distribution=args.distribution,
            step_budget=args.budget, jobs=args.jobs)
    else:
        statistic = args.statistic or "radius"
        est = analysis.tail_of_responsibility(
            graph, params, grid, args.samples, args.seed,
            statistic=statistic, distribution=args.distribution,
            jobs=args.jobs)
    excluded = sum(est.excluded.values())
    results: dict = {"statistic": est.meta["statistic"],
                     "excluded": est.excluded, "kept": est.n}

    geometric = None
    if args.mode == "green" and est.meta["statistic"] == "green-cluster-steps":
        geometric = analysis.geometric_check(args.pr, grid, est.survival,
                                             est.n)
        results["geometric_max_abs_z"] = geometric.max_abs_z
        print(f"geometric reference (1-{args.pr:g})^n: max |z| = "
              f"{geometric.max_abs_z:.2f} over {len(grid)} points")
    fit = None
    try:
        fit = analysis.fit_exponential(grid, est.survival, est.n)
        results["fit"] = {"slope": fit.slope, "ci": [fit.ci_low, fit.ci_high],
                          "points": fit.n_points}
        print(f"log-survival slope {fit.slope:.4f} "
              f"[{fit.ci_low:.4f}, {fit.ci_high:.4f}]")
    except ValueError:
        print("not enough surviving points for a rate fit")
    print(f"kept {est.n}/{args.samples} replicates "
          f"(excluded: {est.excluded})")

    out = _ensure_out(args)
    if out:
        analysis.write_survival_csv(os.path.join(out, "tails.csv"), est)
        files = ["tails.csv"]
        if not args.no_figures:
            from . import report
            reference = None
            if geometric is not None:
                q = 1.0 - args.pr
                reference = (f"(1-p_r)^n", lambda r: q ** r)
            report.survival_figure(est, os.path.join(out, "tails.png"),
                                   reference=reference, fit=fit,
                                   title=est.meta["statistic"])
            files.append("tails.png")
        analysis.write_manifest(
            os.path.join(out, "manifest.json"), "tails",
            {"mode": args.mode, "statistic": est.meta["statistic"],
             "lattice": args.lattice, "n": args.n, "pw": args.pw,
             "pr": args.pr, "samples": args.samples, "seed": args.seed,
             "grid": grid, "distribution": args.distribution},
            results, files)

    if args.samples and excluded / args.samples > args.max_excluded:
        print(f"excluded rate {excluded / args.samples:.2%} exceeds "
              f"{args.max_excluded:.2%}", file=sys.stderr)
        return EXIT_WARN
    return EXIT_OK


def cmd_xi(args) -> int:
    est = analysis.estimate_xi(args.p, args.samples, args.seed,
                               kind=args.lattice, r_max=args.r_max)
    rc = EXIT_OK
    half = analysis.Z975 * est.se
    print(f"xi({args.p:g}) = {est.xi_hat:.6g} +- {half:.2g} (95%), "
          f"N={est.n}, occupied {est.occupied}, truncated {est.truncated}")
    results = {"xi": est.xi_hat, "se": est.se,
               "ci": [est.xi_hat - half, est.xi_hat + half],
               "occupied": est.occupied, "truncated": est.truncated}
    if args.pr is not None:
        ball = build_lattice(args.lattice, 2,
                             d=args.dim if args.lattice == "hypercubic" else None)
        cond = analysis.check_condition(Params.from_wr(args.p, args.pr),
                                        ball, est)
        results["condition"] = {"degree": cond.degree_max, "lhs": cond.lhs,
                                "p_r": cond.p_r, "margin": cond.margin,
                                "holds": cond.holds}
        verdict = "holds" if cond.holds else "FAILS"
        print(f"drift condition ({cond.degree_max - 1})*xi < p_r {verdict}: "
              f"{cond.lhs:.6g} vs {cond.p_r:g}")
        if not cond.holds:
            rc = EXIT_WARN
    out = _ensure_out(args)
    if out:
        analysis.write_xi_csv(os.path.join(out, "xi.csv"), est)
        files = ["xi.csv"]
        if not args.no_figures:
            from . import report
            reference = analysis.exact_xi_patch(args.p, args.lattice, 1) \
                if args.lattice != "hypercubic" else None
            report.xi_figure(est, reference, os.path.join(out, "xi.png"))
            files.append("xi.png")
        analysis.write_manifest(
            os.path.join(out, "manifest.json"), "xi",
            {"p": args.p, "lattice": args.lattice, "samples": args.samples,
             "r_max": args.r_max, "seed": args.seed},
            results, files)
    return rc


_COMMANDS = {
    "simulate": cmd_simulate,
    "autonomous": cmd_autonomous,
    "verify": cmd_verify,
    "ponds": cmd_ponds,
    "tails": cmd_tails,
    "xi": cmd_xi,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub_actions = None
    for action in parser._subparsers._group_actions:
        sub_actions = action.choices[args.command]._actions
    try:
        if args.config is not None:
            _apply_config(args, sub_actions, args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _fill_defaults(args)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
