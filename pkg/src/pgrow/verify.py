"""Cross-checks between the simulator, the invasion picture, and the
local reconstruction.

Three properties are machine-checked here, on randomly generated instances:

- with no white vertices, the paralysis time of a green vertex x equals both
  the largest weight of its stopped invasion and the bottleneck (min over
  paths, max over edges) weight to the red set, and its co-paralyzed cluster
  equals the invasion prefix strictly before the maximal edge;
- the local reconstruction around x reproduces the direct simulation's green
  times, paralysis times, blame assignments, and edge openings on H;
- the reconstruction is autonomous: resampling every colour outside H and
  every weight off E(H) and the edges leaving H changes nothing, bit for
  bit, in the simulated restriction to H.

``inject_fault`` perturbs the reconstruction's output before comparison and
must make the harness fail; it exists so a green verification run can be
trusted to actually compare things.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .autonomous import (check_external_weights, check_result_invariants,
                         compare_restrictions, restriction_of_trace,
                         run_algorithm)
from .direct_sim import co_paralyzed, min_max_path_bound, simulate
from .fields import Colour, EdgeWeights, Params, save_snapshot
from .graph import random_connected_graph
from .invasion import stopped_invasion
from .sampling import as_rng, sample_colours, sample_weights

ALGORITHM_TOL = 1e-9   # reconstruction reassociates one addition per banked edge


@dataclass
class VerificationReport:
    checks_run: int = 0
    failures: list = field(default_factory=list)   # (suite, index, problems)
    snapshot_path: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"checks run: {self.checks_run}",
                 f"failures:   {len(self.failures)}"]
        for suite, idx, problems in self.failures[:5]:
            lines.append(f"  [{suite} #{idx}] {problems[0]}")
        if self.snapshot_path:
            lines.append(f"first failing instance saved to {self.snapshot_path}")
        return "\n".join(lines)


def invasion_equivalence(graph, colours, weights, x: int) -> list:
    """Stopped invasion vs simulation at p_w = 0; exact equality expected."""
    colours = np.asarray(colours, dtype=np.int8)
    problems = []
    reds = [v for v in range(graph.n) if colours[v] == int(Colour.RED)]
    trace = simulate(graph, colours, weights)
    inv = stopped_invasion(graph, weights, reds, x)

    t_sim = trace.paralysis_times.get(x)
    if t_sim != inv.tau_max:
        problems.append(f"t_r({x}): simulated {t_sim!r} vs invasion {inv.tau_max!r}")

    bottleneck = min_max_path_bound(graph, weights, x, reds)
    if bottleneck != inv.tau_max:
        problems.append(f"bottleneck {bottleneck!r} vs invasion {inv.tau_max!r}")

    tau = weights.tau if isinstance(weights, EdgeWeights) else weights

    cluster_sim = co_paralyzed(trace, x)
    if cluster_sim != inv.green_cluster_vertices:
        problems.append(
            f"green cluster mismatch: simulated {sorted(cluster_sim or ())} "
            f"vs invasion {sorted(inv.green_cluster_vertices)}")

    low = [e for e in inv.external_edges if tau[e] < inv.tau_max]
    if low:
        problems.append(f"external edges below the maximal weight: {low}")

    late = {v: trace.paralysis_times.get(v) for v in inv.far_vertices}
    bad = {v: t for v, t in late.items() if t is None or t >= inv.tau_max}
    if bad:
        problems.append(f"far vertices not dead before t*: {bad}")
    return problems


def _fault_restriction(restriction: dict, fault: float) -> dict:
    if fault == 0.0:
        return restriction
    out = {k: dict(v) if isinstance(v, dict) else list(v)
           for k, v in restriction.items()}
    for key in ("tr", "tg", "opened"):
        if out[key]:
            k0 = sorted(out[key])[0]
            out[key][k0] += fault
            return out
    return out


def algorithm_equivalence(graph, colours, weights, x: int,
                          fault: float = 0.0) -> list:
    """Reconstruction vs direct simulation, restricted to H."""
    result = run_algorithm(graph, colours, weights, x)
    check_result_invariants(result)
    check_external_weights(result, weights)
    trace = simulate(graph, colours, weights)
    mine = _fault_restriction(result.restriction(), fault)
    ref = restriction_of_trace(trace, result.h_vertices,
                               [e for e in result.h_edges])
    return compare_restrictions(mine, ref, tol=ALGORITHM_TOL)


def autonomy_extensions(graph, colours, weights, x: int, trials: int,
                        rng, fault: float = 0.0) -> list:
    """Resample the world outside H; the H restriction must not move."""
    rng = as_rng(rng)
    result = run_algorithm(graph, colours, weights, x)
    check_result_invariants(result)
    check_external_weights(result, weights)

    h = result.h_vertices
    h_edges = set(result.h_edges)
    # Weights that stay frozen: inside H, plus edges leaving H through a
    # vertex that was ever green (their weights exceed the owner's death and
    # must keep doing so; everything else is up for grabs).
    frozen_edges = set(h_edges)
    for e, owner in result.external_edges:
        if result.colours[owner] != int(Colour.RED):
            frozen_edges.add(e)
    outside_vertices = [v for v in range(graph.n) if v not in h]
    loose_edges = [e for e in range(len(graph.edges)) if e not in frozen_edges]

    baseline_trace = simulate(graph, colours, weights)
    baseline = restriction_of_trace(baseline_trace, h, h_edges)
    problems = compare_restrictions(
        _fault_restriction(result.restriction(), fault), baseline,
        tol=ALGORITHM_TOL)
    if problems:
        return [f"baseline: {p}" for p in problems]

    tau0 = weights.tau
    for trial in range(trials):
        colours2 = np.asarray(colours, dtype=np.int8).copy()
        if outside_vertices:
            colours2[outside_vertices] = rng.integers(
                0, 3, size=len(outside_vertices)).astype(np.int8)
        tau2 = tau0.copy()
        if loose_edges:
            tau2[loose_edges] = rng.random(len(loose_edges))
        trace2 = simulate(graph, colours2, tau2)
        restricted = restriction_of_trace(trace2, h, h_edges)
        diff = compare_restrictions(baseline, restricted, tol=0.0)
        if diff:
            return [f"trial {trial}: {p}" for p in diff]
    return []


def _colour_instance(rng, graph, p_w: float, p_r: float,
                     force_green_x: bool) -> np.ndarray:
    colours = sample_colours(rng, graph.n, Params.from_wr(p_w, p_r))
    if force_green_x:
        colours[0] = int(Colour.GREEN)
    if not np.any(colours == int(Colour.RED)):
        colours[graph.n - 1] = int(Colour.RED)  # keep a paralyzing contact reachable
    return colours


def run_full_verification(seed=0, n_graphs: int = 50, trials: int = 5,
                          suites=("invasion", "algorithm", "autonomy"),
                          inject_fault: float = 0.0,
                          snapshot_path=None) -> VerificationReport:
    rng = as_rng(seed)
    report = VerificationReport()
    x = 0

    for i in range(n_graphs):
        graph = random_connected_graph(rng)
        m = len(graph.edges)
        for suite in suites:
            if suite == "invasion":
                colours = _colour_instance(rng, graph, 0.0, 0.3, True)
                weights = sample_weights(rng, m)
                problems = invasion_equivalence(graph, colours, weights, x)
            elif suite == "algorithm":
                p_w = float(rng.uniform(0.0, 0.3))
                colours = _colour_instance(rng, graph, p_w, 0.3, False)
                weights = sample_weights(rng, m)
                problems = algorithm_equivalence(graph, colours, weights, x,
                                                 fault=inject_fault)
            elif suite == "autonomy":
                p_w = float(rng.uniform(0.0, 0.3))
                colours = _colour_instance(rng, graph, p_w, 0.3, False)
                weights = sample_weights(rng, m)
                problems = autonomy_extensions(graph, colours, weights, x,
                                               trials, rng, fault=inject_fault)
            else:
                raise ValueError(f"unknown suite {suite!r}")
            report.checks_run += 1
            if problems:
                report.failures.append((suite, i, problems))
                if snapshot_path and report.snapshot_path is None:
                    save_snapshot(snapshot_path, graph, colours, weights,
                                  extra={"x": x, "suite": suite,
                                         "problems": problems})
                    report.snapshot_path = str(snapshot_path)
    return report
