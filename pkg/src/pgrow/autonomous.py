"""Local reconstruction of the process around one vertex.

Instead of simulating the whole graph, the algorithm grows a finite region H
around a target vertex x and reconstructs every green time, paralysis time,
and edge opening inside H exactly. It maintains a set of pending edges with
tentative opening times t1 and repeatedly selects the (t1, edge id)-minimal
one:

- selecting an edge into a fresh green vertex opens it and glues the vertex
  on (green vertices are live from time 0, so their edges enter with t1=tau);
- selecting an edge into a fresh white vertex registers the whole white
  cluster and its boundary (boundary greens become live singleton trees,
  boundary reds become paralyzed singletons); the edge stays pending and is
  reconsidered, typically turning that white vertex green on reselection;
- selecting an edge into a fresh red, or into anything already paralyzed,
  paralyzes the whole touching tree;
- selecting an edge between two live trees merges them.

Pending times follow the exposure bookkeeping: an edge enrolled by a vertex
that came alive at time t gets t1 = t + tau, except that an edge whose far
endpoint z is paralyzed but not red already banked exposure t_r(z) - t_g(z)
while z was alive, so it enters with t1 = t + tau - (t_r(z) - t_g(z)).

When a tree T dies by touching a red or paralyzed vertex through an edge
selected at time t_e, members do not all stop at t_e: a member z is only
reached by the paralyzing contact once every tree edge between z and the
contact vertex has opened, so t_r(z) = max(t_e, largest opening time on the
tree path from z to the contact). On a single-edge tree this reduces to t_e.

The run ends when no live trees remain; H is then every vertex the run ever
touched. Everything outside H, colours and weights alike, is irrelevant to
what happened inside H, except the weights of edges leaving H, which are all
at least their owner's paralysis time (they may open later, outward, without
consequence for H). ``verify_autonomous`` checks exactly that by resampling.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

from .direct_sim import is_admissible, _as_tau
from .fields import Colour
from .graph import white_cluster

FRESH, ACTIVE, PARA, SEEN = 0, 1, 2, 3
_STATUS_NAMES = {FRESH: "fresh", ACTIVE: "active", PARA: "paralyzed", SEEN: "seen"}


class BudgetExhausted(RuntimeError):
    def __init__(self, selections: int):
        super().__init__(f"selection budget exhausted after {selections} selections")
        self.selections = selections


@dataclass
class AutonomousResult:
    graph: object
    x: int
    colours: np.ndarray
    status: np.ndarray
    tg: dict                 # vertex -> time it came alive
    tr: dict                 # vertex -> paralysis time
    origin_of: dict          # vertex -> red vertex its paralysis traces to
    t_edge: dict             # edge id -> reconstructed opening time
    components: list         # paralyzed components, in death order
    component_of: dict
    selections: list         # (t1, edge id, case tag) in selection order
    step_log: list           # raw per-step diagnostics records
    initial_active: int
    nu1: int

    @property
    def h_vertices(self) -> set:
        return {v for v in range(self.graph.n) if self.status[v] != FRESH}

    @property
    def seen_white(self) -> set:
        return {v for v in range(self.graph.n) if self.status[v] == SEEN}

    @property
    def h_edges(self) -> list:
        h = self.h_vertices
        return [e for e, (u, v) in enumerate(self.graph.edges)
                if u in h and v in h]

    @property
    def external_edges(self) -> list:
        """Edges with exactly one endpoint in H, keyed by that owner."""
        h = self.h_vertices
        out = []
        for e, (u, v) in enumerate(self.graph.edges):
            if (u in h) != (v in h):
                out.append((e, u if u in h else v))
        return out

    def restriction(self) -> dict:
        """The reconstructed H data in a directly comparable form.

        Red vertices carry tr = 0 internally (their edges never accrue), but
        they are obstacles, not casualties, so they are not reported as
        paralyzed here.
        """
        red = int(Colour.RED)
        return {
            "h": sorted(self.h_vertices),
            "tg": {v: self.tg[v] for v in sorted(self.tg)},
            "tr": {v: self.tr[v] for v in sorted(self.tr)
                   if self.colours[v] != red},
            "origin": {v: self.origin_of[v] for v in sorted(self.origin_of)
                       if self.colours[v] != red},
            "opened": {e: self.t_edge[e] for e in sorted(self.t_edge)},
        }


def run_algorithm(graph, colours, weights, x: int,
                  max_selections: int | None = None) -> AutonomousResult:
    colours = np.asarray(colours, dtype=np.int8)
    if not is_admissible(graph, colours):
        raise ValueError("inadmissible initial configuration")
    if not 0 <= x < graph.n:
        raise ValueError(f"vertex {x} out of range")
    tau = _as_tau(graph, weights)
    adjacency = graph.adjacency

    n = graph.n
    status = np.full(n, FRESH, dtype=np.int8)
    tg_arr = np.full(n, math.nan)
    tr_arr = np.full(n, math.nan)
    origin_arr = np.full(n, -1, dtype=np.int64)

    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree_vertices: dict = {}
    tree_edges: dict = {}
    pending: dict = {}
    t_edge: dict = {}
    components: list = []
    component_of: dict = {}
    selections: list = []
    step_log: list = []

    state = {"registered": 0, "actives": 0}

    def joint_opening(t_live: float, z: int, tau_e: float) -> float:
        """Opening time of an edge driven by a vertex alive from ``t_live``
        whose far endpoint z already lived [tg(z), tr(z)): the exposure is
        the measure of the union of the two live intervals."""
        bank = tr_arr[z] - tg_arr[z]
        return max(min(t_live, tg_arr[z]), t_live - bank) + tau_e

    def activate_green(v: int, t: float) -> None:
        if status[v] == FRESH:
            state["registered"] += 1
        status[v] = ACTIVE
        tg_arr[v] = t
        parent[v] = v
        tree_vertices[v] = {v}
        tree_edges[v] = []
        state["actives"] += 1
        for z, e in adjacency[v]:
            if e in t_edge:
                continue
            zs = status[z]
            # Seen-white activations happen at t > 0 and never meet fresh
            # neighbours: the registration step already swept the boundary.
            assert t == 0.0 or zs != FRESH
            if e in pending:
                # both endpoints live; the earlier life finishes first
                pending[e] = min(pending[e], t + tau[e])
            elif zs == PARA and colours[z] != int(Colour.RED):
                pending[e] = joint_opening(t, z, tau[e])
            else:
                pending[e] = t + tau[e]

    def para_singleton(v: int) -> None:
        if status[v] == FRESH:
            state["registered"] += 1
        status[v] = PARA
        tr_arr[v] = 0.0
        origin_arr[v] = v
        component_of[v] = len(components)
        components.append({"vertices": {v}, "edges": [], "origin": v,
                           "contact": v, "entered_at": 0.0, "via": None})

    def register_white_cluster(y: int) -> int:
        cluster, boundary = white_cluster(graph, colours, y)
        for v in sorted(cluster):
            status[v] = SEEN
            state["registered"] += 1
        for z in sorted(boundary):
            if status[z] != FRESH:
                continue
            if colours[z] == int(Colour.GREEN):
                activate_green(z, 0.0)
            else:
                para_singleton(z)
        return len(cluster)

    def union_trees(a: int, b: int, eid: int, t1: float) -> None:
        ra, rb = find(a), find(b)
        assert ra != rb
        if len(tree_vertices[ra]) < len(tree_vertices[rb]):
            ra, rb = rb, ra
        parent[rb] = ra
        tree_vertices[ra] |= tree_vertices.pop(rb)
        tree_edges[ra].extend(tree_edges.pop(rb))
        tree_edges[ra].append((eid, t1))
        state["actives"] -= 1

    def paralyze_tree(root: int, t_e: float, origin_vertex: int,
                      via_edge, contact: int) -> None:
        verts = tree_vertices.pop(root)
        edges = tree_edges.pop(root)
        state["actives"] -= 1
        tadj = defaultdict(list)
        for eid, t_open in edges:
            a, b = graph.edges[eid]
            tadj[a].append((b, t_open))
            tadj[b].append((a, t_open))
        # A member dies once every edge on some open path to the contact
        # has opened: bottleneck shortest path (cycle edges may beat the
        # spanning path).
        death = {contact: t_e}
        heap = [(t_e, contact)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > death[u]:
                continue
            for w, t_open in tadj[u]:
                nd = max(d, t_open)
                if nd < death.get(w, math.inf):
                    death[w] = nd
                    heapq.heappush(heap, (nd, w))
        assert set(death) == verts
        idx = len(components)
        for v in verts:
            status[v] = PARA
            tr_arr[v] = death[v]
            origin_arr[v] = origin_vertex
            component_of[v] = idx
        components.append({"vertices": verts, "edges": edges,
                           "origin": origin_vertex, "contact": contact,
                           "entered_at": t_e, "via": via_edge})
        # Edges touching the dead tree stay pending only when the far
        # endpoint is still live, re-priced now that the dead side's full
        # life is known; the rest stopped accruing for good or re-enter
        # later by the banking rule.
        for eid in list(pending):
            a, b = graph.edges[eid]
            if a in verts or b in verts:
                other = b if a in verts else a
                if status[other] != ACTIVE:
                    del pending[eid]
                else:
                    dead = a if a in verts else b
                    pending[eid] = joint_opening(tg_arr[other], dead, tau[eid])

    cx = colours[x]
    if cx == int(Colour.GREEN):
        activate_green(x, 0.0)
    elif cx == int(Colour.RED):
        para_singleton(x)
    else:
        register_white_cluster(x)
    initial_active = state["actives"]
    nu1 = state["registered"]

    n_selected = 0
    while state["actives"] > 0:
        if not pending:
            raise ValueError("live growth with no paralyzing contact reachable")
        eid, t1 = min(pending.items(), key=lambda kv: (kv[1], kv[0]))
        n_selected += 1
        if max_selections is not None and n_selected > max_selections:
            raise BudgetExhausted(n_selected)

        u, v = graph.edges[eid]
        su, sv = status[u], status[v]
        if su == ACTIVE and sv == ACTIVE:
            del pending[eid]
            t_edge[eid] = t1
            if find(u) == find(v):
                # a cycle edge among live tree mates really opens; it can
                # only shorten paralysis paths, never merge or kill
                tree_edges[find(u)].append((eid, t1))
                selections.append((t1, eid, "cycle"))
            else:
                union_trees(u, v, eid, t1)
                selections.append((t1, eid, "merge"))
            continue

        act = u if su == ACTIVE else v
        assert status[act] == ACTIVE, "pending edge with no live endpoint"
        y = v if act == u else u
        sy = status[y]

        if sy == FRESH:
            cy = int(colours[y])
            step_log.append({"nu": state["registered"],
                             "actives": state["actives"],
                             "colour": cy, "cw": 0, "t": float(t1)})
            if cy == int(Colour.RED):
                del pending[eid]
                t_edge[eid] = t1
                para_singleton(y)
                paralyze_tree(find(act), t1, y, eid, act)
                selections.append((t1, eid, "fresh-red"))
            elif cy == int(Colour.GREEN):
                del pending[eid]
                t_edge[eid] = t1
                activate_green(y, 0.0)
                union_trees(act, y, eid, t1)
                selections.append((t1, eid, "fresh-green"))
            else:
                step_log[-1]["cw"] = register_white_cluster(y)
                selections.append((t1, eid, "fresh-white"))
        elif sy == PARA:
            del pending[eid]
            t_edge[eid] = t1
            paralyze_tree(find(act), t1, int(origin_arr[y]), eid, act)
            selections.append((t1, eid, "contact"))
        else:  # SEEN white comes alive and glues on
            del pending[eid]
            t_edge[eid] = t1
            activate_green(y, t1)
            union_trees(act, y, eid, t1)
            selections.append((t1, eid, "seen-green"))

    tg = {v: float(tg_arr[v]) for v in range(n) if not math.isnan(tg_arr[v])}
    tr = {v: float(tr_arr[v]) for v in range(n) if not math.isnan(tr_arr[v])}
    origin_of = {v: int(origin_arr[v]) for v in range(n) if origin_arr[v] >= 0}
    return AutonomousResult(graph, x, colours.copy(), status, tg, tr,
                            origin_of, t_edge, components, component_of,
                            selections, step_log, initial_active, nu1)


def green_cluster_of(result: AutonomousResult, v: int) -> set:
    """Vertices paralyzed together with ``v``: its component members whose
    tree path to ``v`` opened strictly before v's death. Empty if v never
    came alive; the final tree set never occurs (runs end with no live trees).
    """
    if v not in result.tg or v not in result.tr:
        return set()
    comp = result.components[result.component_of[v]]
    cut = result.tr[v]
    adj = defaultdict(list)
    for eid, t in comp["edges"]:
        a, b = result.graph.edges[eid]
        adj[a].append((b, t))
        adj[b].append((a, t))
    out = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w, t in adj[u]:
            if t < cut and w not in out:
                out.add(w)
                queue.append(w)
    return out


def check_result_invariants(result: AutonomousResult) -> bool:
    """Structural properties every finished reconstruction must satisfy."""
    graph, colours = result.graph, result.colours
    status = result.status

    assert not np.any(status == ACTIVE), "live tree survived termination"

    for v in range(graph.n):
        if status[v] == SEEN:
            for w, _ in graph.adjacency[v]:
                assert status[w] != FRESH, \
                    f"registered white {v} borders unexplored vertex {w}"

    for e, owner in result.external_edges:
        if colours[owner] == int(Colour.RED):
            continue
        assert status[owner] == PARA, f"external edge {e} owned by a non-dead vertex"

    for v, t in result.tr.items():
        if colours[v] == int(Colour.RED):
            assert t == 0.0 and result.origin_of[v] == v
        else:
            assert v in result.tg and result.tg[v] <= t
            assert colours[result.origin_of[v]] == int(Colour.RED)
    return True


def check_external_weights(result: AutonomousResult, weights) -> bool:
    """Every edge leaving H owned by a non-red vertex has weight at least the
    owner's paralysis time; outward openings happen after the owner is gone."""
    tau = _as_tau(result.graph, weights)
    for e, owner in result.external_edges:
        if result.colours[owner] == int(Colour.RED):
            continue
        assert tau[e] >= result.tr[owner] - 1e-12, \
            f"external edge {e}: tau {tau[e]} below owner death {result.tr[owner]}"
    return True


@dataclass
class StepRecord:
    index: int
    t: float
    colour: int
    cw_size: int
    nu: int
    eta: int
    alpha: int


@dataclass
class DiagnosticsReport:
    steps: list
    initial_active: int
    nu1: int
    n_steps: int            # walk length, virtually extended past termination
    virtual_steps: int
    h_size: int
    eta_total: int
    degree_bound: int

    @property
    def mean_alpha(self) -> float:
        return (sum(s.alpha for s in self.steps) / len(self.steps)
                if self.steps else 0.0)


def diagnostics(result: AutonomousResult) -> DiagnosticsReport:
    """Per-step growth/death accounting of a finished run.

    Step k is delimited by the k-th selection that lands on a fresh vertex.
    nu_k counts registered vertices when the step starts, eta_k the
    registrations the step causes, alpha_k the net change in the number of
    live trees. The walk initial_active + sum(alpha) is driven to zero; when
    the last step kills several trees at once the deficit is spread over
    virtual alpha=-1, eta=0 steps so the zero-hitting time N is well defined.
    """
    D = result.graph.degree_max
    raw = result.step_log
    final_nu = len(result.h_vertices)
    steps = []
    for k, rec in enumerate(raw):
        nu_next = raw[k + 1]["nu"] if k + 1 < len(raw) else final_nu
        act_next = raw[k + 1]["actives"] if k + 1 < len(raw) else 0
        eta = nu_next - rec["nu"]
        alpha = act_next - rec["actives"]
        steps.append(StepRecord(k + 1, rec["t"], rec["colour"], rec["cw"],
                                rec["nu"], eta, alpha))
        cw = rec["cw"]
        white = rec["colour"] == int(Colour.WHITE)
        red = rec["colour"] == int(Colour.RED)
        assert eta <= D * cw + (0 if white else 1), f"step {k+1}: eta {eta} too big"
        assert alpha <= (D - 1) * cw - (1 if red else 0), \
            f"step {k+1}: alpha {alpha} too big"

    walk = result.initial_active
    n_steps = 0
    virtual = 0
    for s in steps:
        nxt = walk + s.alpha
        if nxt <= 0:
            if nxt == 0:
                n_steps += 1
            else:
                # step killed several trees: spread it over walk unit deaths
                n_steps += walk
                virtual = walk - 1
            walk = 0
            break
        walk = nxt
        n_steps += 1
    else:
        # remaining deaths happened on non-fresh selections after the last
        # recorded step (or there were no steps at all); extend virtually
        n_steps += walk
        virtual += walk
        walk = 0

    eta_total = sum(s.eta for s in steps)
    report = DiagnosticsReport(steps, result.initial_active, result.nu1,
                               n_steps, virtual, final_nu, eta_total, D)
    assert report.h_size == report.nu1 + eta_total, "registration ledger broken"
    return report


def condition_margin(degree: int, xi_value: float, p_r: float) -> float:
    """Positive when the sparse-white drift condition (D-1) xi < p_r holds."""
    return p_r - (degree - 1) * xi_value


def restriction_of_trace(trace, h_vertices, h_edge_ids) -> dict:
    """The H-visible part of a direct simulation, same shape as
    AutonomousResult.restriction() for comparisons."""
    h = set(h_vertices)
    he = set(h_edge_ids)
    opened = {e: t for t, e in trace.opened if e in he}
    return {
        "h": sorted(h),
        "tg": {v: trace.green_times[v] for v in sorted(h)
               if v in trace.green_times},
        "tr": {v: trace.paralysis_times[v] for v in sorted(h)
               if v in trace.paralysis_times},
        "origin": {v: trace.responsible_for[v] for v in sorted(h)
                   if v in trace.responsible_for},
        "opened": {e: opened[e] for e in sorted(opened)},
    }


def compare_restrictions(a: dict, b: dict, tol: float = 0.0) -> list:
    """Differences between two H restrictions; empty when they agree.

    ``tol`` bounds time differences; key sets must match exactly.
    """
    problems = []
    if a["h"] != b["h"]:
        problems.append(f"h sets differ: {a['h']} vs {b['h']}")
        return problems
    for key in ("tg", "tr", "opened"):
        da, db = a[key], b[key]
        if set(da) != set(db):
            problems.append(f"{key} keys differ: {sorted(da)} vs {sorted(db)}")
            continue
        for k in da:
            if abs(da[k] - db[k]) > tol:
                problems.append(f"{key}[{k}]: {da[k]!r} vs {db[k]!r}")
    if a["origin"] != b["origin"]:
        problems.append(f"origins differ: {a['origin']} vs {b['origin']}")
    return problems
