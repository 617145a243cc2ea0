"""Invasion couplings of the growth process at p_w = 0.

With no white vertices every green vertex is live from time zero and edges
open in a first-passage fashion, so the green cluster of a vertex x can be
read off a deterministic invasion of the weight field: repeatedly take the
frontier edge with the smallest (tau, edge id) and stop on the first red
vertex invaded. With t* the largest invaded weight, x is paralyzed exactly
at t* and its co-paralyzed cluster is the set of vertices invaded strictly
before the maximal edge.

The same machinery defines ponds: invade from the origin (ignoring colours)
until the box boundary is reached; the outlet is the largest accepted weight
and the pond is what was invaded strictly before it. "Basin" mode lets
cycle-closing edges compete in the heap (the pond proper); "tree" mode only
accepts vertex-adding edges. The vertex-adding subsequence of a basin run
equals the tree run, which is what couples ponds to stopped invasions at
positive p_r through one shared uniform per vertex.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .direct_sim import _as_tau

# Critical bond densities of the planar lattices handled here.
BOND_PC = {
    "square": 0.5,
    "triangular": 2.0 * math.sin(math.pi / 18.0),
    "hexagonal": 1.0 - 2.0 * math.sin(math.pi / 18.0),
}


def critical_probability(kind: str) -> float:
    try:
        return BOND_PC[kind]
    except KeyError:
        raise ValueError(f"no critical density on record for {kind!r}") from None


@dataclass(frozen=True)
class Addition:
    edge: int
    tau: float
    vertex: int | None      # None when the edge closed a cycle (basin mode)


@dataclass
class InvasionRun:
    root: int
    additions: list
    invaded: set
    terminal_red: int | None = None
    hit_shell: bool = False
    exhausted: bool = False

    def vertex_additions(self) -> list:
        return [a for a in self.additions if a.vertex is not None]


def invade(graph, tau, root: int, mode: str = "tree", red=None,
           stop_shell: int | None = None, max_steps: int | None = None) -> InvasionRun:
    """Greedy invasion from ``root`` by smallest (tau, edge id).

    Stops after adding a vertex of ``red`` (a set), or a vertex at origin
    distance ``stop_shell``, or after ``max_steps`` additions, whichever
    comes first; ``exhausted`` is set when the frontier empties instead.
    """
    if mode not in ("tree", "basin"):
        raise ValueError(f"unknown mode {mode!r}")
    tau = _as_tau(graph, tau)
    red = set() if red is None else set(red)
    if root in red:
        raise ValueError("root is itself red")
    dist = graph.distance_from_origin if stop_shell is not None else None
    if stop_shell is not None and dist is None:
        raise ValueError("shell stopping needs origin distances")

    run = InvasionRun(root, [], {root})
    invaded = run.invaded
    accepted = set()
    heap: list = []

    def enroll(v: int) -> None:
        for w, e in graph.adjacency[v]:
            if e not in accepted:
                heapq.heappush(heap, (tau[e], e))

    enroll(root)
    if stop_shell is not None and dist[root] >= stop_shell:
        run.hit_shell = True
        return run

    while heap:
        t, e = heapq.heappop(heap)
        if e in accepted:
            continue
        u, v = graph.edges[e]
        new = v if u in invaded else u if v in invaded else None
        if new in invaded:
            new = None          # both ends already inside: a cycle edge
        if new is None and mode == "tree":
            accepted.add(e)     # tree mode discards cycle edges silently
            continue
        accepted.add(e)
        run.additions.append(Addition(e, float(t), new))
        if new is None:
            continue
        invaded.add(new)
        enroll(new)
        if new in red:
            run.terminal_red = new
            return run
        if stop_shell is not None and dist[new] >= stop_shell:
            run.hit_shell = True
            return run
        if max_steps is not None and len(run.additions) >= max_steps:
            return run
    run.exhausted = True
    return run


def _argmax_addition(additions) -> int:
    return max(range(len(additions)),
               key=lambda i: (additions[i].tau, additions[i].edge))


@dataclass
class StoppedInvasionResult:
    root: int
    steps: list                  # vertex additions, the last one red
    terminal_red: int
    tau_max: float
    max_edge: int
    max_index: int               # 0-based position of the maximal step
    green_cluster_vertices: set  # invaded strictly before the maximal step
    far_vertices: set            # invaded at or after it, red excluded
    internal_edges: list
    external_edges: list         # edges out of the green cluster (max edge included)


def stopped_invasion(graph, tau, red, root: int) -> StoppedInvasionResult:
    """Invade from a green ``root`` until the first red vertex; summarize."""
    run = invade(graph, tau, root, mode="tree", red=red)
    if run.terminal_red is None:
        raise ValueError("no red vertex reachable from the root")
    steps = run.additions
    j = _argmax_addition(steps)
    cluster = {root} | {s.vertex for s in steps[:j]}
    far = {s.vertex for s in steps[j:]} - {run.terminal_red}
    external = sorted(
        e for e, (a, b) in enumerate(graph.edges)
        if (a in cluster) != (b in cluster))
    return StoppedInvasionResult(
        root=root, steps=steps, terminal_red=run.terminal_red,
        tau_max=steps[j].tau, max_edge=steps[j].edge, max_index=j,
        green_cluster_vertices=cluster, far_vertices=far,
        internal_edges=[s.edge for s in steps],
        external_edges=external)


@dataclass
class PondResult:
    n: int
    margin: float
    outlet_edge: int
    outlet_tau: float
    outlet_index: int
    radius: int                   # largest origin distance invaded before the outlet
    region_vertices: set
    region_edges: list
    tree_outlet_edge: int
    tree_outlet_tau: float
    tree_radius: int
    tree_region_vertices: set
    censored_radius: bool
    censored_outlet: bool

    @property
    def censored(self) -> bool:
        return self.censored_radius or self.censored_outlet


def pond(graph, tau, margin: float = 0.5, p_c: float | None = None) -> PondResult:
    """Invade from the origin to the box boundary and carve out the pond."""
    if graph.lattice is None or graph.origin is None:
        raise ValueError("ponds are defined on lattice balls")
    n = graph.lattice["n"]
    if p_c is None:
        p_c = critical_probability(graph.lattice["kind"])
    run = invade(graph, tau, graph.origin, mode="basin", stop_shell=n)
    if not run.hit_shell:
        raise ValueError("invasion exhausted the box without reaching the shell")
    adds = run.additions
    dist = graph.distance_from_origin

    j = _argmax_addition(adds)
    region = {graph.origin} | {a.vertex for a in adds[:j] if a.vertex is not None}
    radius = max(int(dist[v]) for v in region)

    tree_adds = [a for a in adds if a.vertex is not None]
    jt = _argmax_addition(tree_adds)
    tree_region = {graph.origin} | {a.vertex for a in tree_adds[:jt]}
    tree_radius = max(int(dist[v]) for v in tree_region)

    return PondResult(
        n=n, margin=margin,
        outlet_edge=adds[j].edge, outlet_tau=adds[j].tau, outlet_index=j,
        radius=radius, region_vertices=region,
        region_edges=[a.edge for a in adds[:j]],
        tree_outlet_edge=tree_adds[jt].edge, tree_outlet_tau=tree_adds[jt].tau,
        tree_radius=tree_radius, tree_region_vertices=tree_region,
        censored_radius=radius > margin * n,
        censored_outlet=adds[j].tau <= p_c)


def open_cluster(graph, tau, p: float, v0: int) -> set:
    """Component of ``v0`` over edges with weight strictly below ``p``."""
    tau = _as_tau(graph, tau)
    comp = {v0}
    queue = deque([v0])
    while queue:
        u = queue.popleft()
        for w, e in graph.adjacency[u]:
            if tau[e] < p and w not in comp:
                comp.add(w)
                queue.append(w)
    return comp


@dataclass
class CoupledRegion:
    p_r: float
    o_red: bool
    found_red: bool
    stop_index: int | None        # 0-based index of the stopping addition
    region: frozenset
    radius: int | None


def coupled_stopped_region(run: InvasionRun, rho: np.ndarray, p_r: float,
                           graph) -> CoupledRegion:
    """Stopped-invasion region at level p_r read off one shared tree run.

    A vertex is red at level p_r exactly when its coupling uniform is below
    p_r, so the stopping step is the first added vertex with rho < p_r and
    the region is the prefix strictly before the maximal weight up to it.
    Regions are nested across p_r by construction.
    """
    if rho[run.root] < p_r:
        return CoupledRegion(p_r, True, False, None, frozenset(), None)
    adds = run.vertex_additions()
    stop = None
    for i, a in enumerate(adds):
        if rho[a.vertex] < p_r:
            stop = i
            break
    if stop is None:
        return CoupledRegion(p_r, False, False, None, frozenset(), None)
    j = _argmax_addition(adds[:stop + 1])
    region = frozenset({run.root} | {a.vertex for a in adds[:j]})
    dist = graph.distance_from_origin
    radius = max(int(dist[v]) for v in region)
    return CoupledRegion(p_r, False, True, stop, region, radius)
