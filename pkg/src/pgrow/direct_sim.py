"""Event-driven simulation of the growth process with paralyzing obstacles.

Vertices are white, red, or green. A closed edge with at least one live green
endpoint opens when its accumulated green exposure reaches the edge weight
tau (rate-one openings under the standard coupling). An opened edge turns a
white endpoint green; if the opening connects live green vertices to a red
vertex through open edges, that whole green component is paralyzed on the
spot and stops driving openings forever. Red vertices never change and green
vertices never revert.

Two opening rules are implemented:

- "exposure": the exposure of an edge is the Lebesgue measure of times at
  which at least one endpoint is green and not paralyzed. Exposure banks
  across interruptions, so an edge abandoned by a paralyzed endpoint resumes
  accrual if the other endpoint comes alive later.
- "contiguous": an edge opens at the first t such that one of its endpoints
  was green and unparalyzed throughout [t - tau, t); interrupted exposure is
  lost.

All ties are broken by edge id, so runs are reproducible bit for bit. The
scheduling uses exact float equality between the pushed candidate time and
its recomputation at pop; both sides evaluate the same expression on the
same operands, which makes the staleness check deterministic.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .fields import Colour, EdgeWeights


class Rule(str, Enum):
    EXPOSURE = "exposure"
    CONTIGUOUS = "contiguous"


@dataclass(frozen=True)
class EdgeOpened:
    time: float
    edge: int


@dataclass(frozen=True)
class TurnedGreen:
    time: float
    vertex: int


@dataclass(frozen=True)
class Paralyzed:
    time: float
    vertices: frozenset
    responsible: int
    edge: int


@dataclass
class Trace:
    """Full record of one run: event list plus per-vertex summary maps."""

    graph: object
    rule: Rule
    colours: np.ndarray          # initial colours
    events: list = field(default_factory=list)
    opened: list = field(default_factory=list)        # (time, edge id) in order
    green_times: dict = field(default_factory=dict)   # vertex -> time it became green
    paralysis_times: dict = field(default_factory=dict)
    responsible_for: dict = field(default_factory=dict)

    @property
    def open_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.graph.edges), dtype=bool)
        for _, e in self.opened:
            mask[e] = True
        return mask

    @property
    def final_colours(self) -> np.ndarray:
        out = np.asarray(self.colours, dtype=np.int8).copy()
        for v in self.green_times:
            out[v] = int(Colour.GREEN)
        return out

    def to_jsonl(self, path) -> None:
        with open(path, "w") as fh:
            for ev in self.events:
                fh.write(json.dumps(event_to_dict(ev), sort_keys=True))
                fh.write("\n")


def event_to_dict(ev) -> dict:
    if isinstance(ev, EdgeOpened):
        return {"type": "open", "t": ev.time, "edge": ev.edge}
    if isinstance(ev, TurnedGreen):
        return {"type": "green", "t": ev.time, "vertex": ev.vertex}
    if isinstance(ev, Paralyzed):
        return {"type": "paralyzed", "t": ev.time, "edge": ev.edge,
                "responsible": ev.responsible,
                "vertices": sorted(ev.vertices)}
    raise TypeError(f"unknown event {ev!r}")


def read_trace_jsonl(path) -> list:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def is_admissible(graph, colours) -> bool:
    """Whether ``colours`` is a valid initial configuration for ``graph``."""
    colours = np.asarray(colours)
    if colours.shape != (graph.n,):
        return False
    return bool(np.all((colours >= 0) & (colours <= 2)))


def _as_tau(graph, weights) -> np.ndarray:
    tau = weights.tau if isinstance(weights, EdgeWeights) else np.asarray(weights, dtype=np.float64)
    if tau.shape != (len(graph.edges),):
        raise ValueError("weight count does not match edge count")
    return tau


def simulate(graph, colours, weights, rule=Rule.EXPOSURE,
             t_max: float = math.inf) -> Trace:
    rule = Rule(rule)
    colours = np.asarray(colours, dtype=np.int8)
    if not is_admissible(graph, colours):
        raise ValueError("inadmissible initial configuration")
    tau = _as_tau(graph, weights)
    n, m = graph.n, len(graph.edges)
    adjacency = graph.adjacency

    green = colours == int(Colour.GREEN)
    green_time = np.where(green, 0.0, math.nan)
    para = np.full(n, math.nan)
    resp = np.full(n, -1, dtype=np.int64)
    open_ = np.zeros(m, dtype=bool)

    trace = Trace(graph, rule, colours.copy())
    events, opened = trace.events, trace.opened

    def alive(v: int) -> bool:
        return bool(green[v]) and math.isnan(para[v])

    def open_component(v0: int) -> set:
        comp = {v0}
        queue = deque([v0])
        while queue:
            u = queue.popleft()
            for w, e in adjacency[u]:
                if open_[e] and w not in comp:
                    comp.add(w)
                    queue.append(w)
        return comp

    heap: list = []

    if rule is Rule.EXPOSURE:
        exposure = np.zeros(m)
        since = np.full(m, math.nan)
        for e, (u, v) in enumerate(graph.edges):
            if alive(u) or alive(v):
                since[e] = 0.0
                heapq.heappush(heap, (since[e] + (tau[e] - exposure[e]), e))
    else:
        for v in range(n):
            if alive(v):
                for _, e in adjacency[v]:
                    heapq.heappush(heap, (green_time[v] + tau[e], e, v))

    def open_edge(e: int, t: float) -> None:
        open_[e] = True
        u, v = graph.edges[e]
        events.append(EdgeOpened(t, e))
        opened.append((t, e))

        newly_green = []
        for w in (u, v):
            if colours[w] == int(Colour.WHITE) and not green[w]:
                green[w] = True
                green_time[w] = t
                events.append(TurnedGreen(t, w))
                newly_green.append(w)

        comp = open_component(u)
        reds = sorted(z for z in comp if colours[z] == int(Colour.RED))
        newly_para = []
        if reds:
            newly_para = sorted(z for z in comp
                                if green[z] and math.isnan(para[z]))
            for z in newly_para:
                para[z] = t
                resp[z] = reds[0]
            events.append(Paralyzed(t, frozenset(newly_para), reds[0], e))

        if rule is Rule.EXPOSURE:
            since[e] = math.nan
            for w in newly_green:
                for z, e2 in adjacency[w]:
                    if not open_[e2] and math.isnan(since[e2]):
                        since[e2] = t
                        heapq.heappush(
                            heap, (since[e2] + (tau[e2] - exposure[e2]), e2))
            for z in newly_para:
                for z2, e2 in adjacency[z]:
                    if open_[e2] or math.isnan(since[e2]):
                        continue
                    a, b = graph.edges[e2]
                    if not (alive(a) or alive(b)):
                        exposure[e2] += t - since[e2]
                        since[e2] = math.nan
        else:
            for w in newly_green:
                for z, e2 in adjacency[w]:
                    if not open_[e2]:
                        heapq.heappush(heap, (t + tau[e2], e2, w))

    if rule is Rule.EXPOSURE:
        while heap:
            t, e = heapq.heappop(heap)
            if t > t_max:
                break
            if open_[e] or math.isnan(since[e]):
                continue
            if since[e] + (tau[e] - exposure[e]) != t:
                continue  # superseded by banking; a fresh entry exists
            open_edge(e, t)
    else:
        while heap:
            t, e, v = heapq.heappop(heap)
            if t > t_max:
                break
            if open_[e]:
                continue
            if para[v] < t:  # endpoint died inside the window
                continue
            open_edge(e, t)

    for v in range(n):
        if green[v]:
            trace.green_times[v] = float(green_time[v])
        if not math.isnan(para[v]):
            trace.paralysis_times[v] = float(para[v])
            trace.responsible_for[v] = int(resp[v])
    return trace


def paralysis_time(trace: Trace, v: int):
    """When ``v`` was paralyzed, or None if it never was."""
    return trace.paralysis_times.get(v)


def responsibility_set(trace: Trace, w: int) -> set:
    """Vertices paralyzed with red vertex ``w`` named as responsible.

    Includes vertices that started white and turned green before dying.
    """
    return {v for v, r in trace.responsible_for.items() if r == w}


def green_cluster(trace: Trace, v: int) -> set:
    """Green vertices open-connected to ``v`` in the final configuration."""
    final = trace.final_colours
    if final[v] != int(Colour.GREEN):
        return set()
    open_ = trace.open_mask
    comp = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w, e in trace.graph.adjacency[u]:
            if open_[e] and w not in comp and final[w] == int(Colour.GREEN):
                comp.add(w)
                queue.append(w)
    return comp


def co_paralyzed(trace: Trace, v: int):
    """The vertex set of the paralysis event that took ``v``, or None."""
    for ev in trace.events:
        if isinstance(ev, Paralyzed) and v in ev.vertices:
            return set(ev.vertices)
    return None


def min_max_path_bound(graph, tau, source: int, targets) -> float:
    """Smallest over paths from ``source`` to ``targets`` of the largest
    edge weight on the path (the bottleneck value). inf when unreachable."""
    tau = _as_tau(graph, tau)
    targets = set(targets)
    if source in targets:
        return 0.0
    best = np.full(graph.n, math.inf)
    best[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > best[u]:
            continue
        if u in targets:
            return d
        for v, e in graph.adjacency[u]:
            nd = max(d, tau[e])
            if nd < best[v]:
                best[v] = nd
                heapq.heappush(heap, (nd, v))
    return math.inf


def check_unique_red_origins(trace: Trace) -> bool:
    """Every open component holds at most one red vertex, every paralyzed
    component exactly one, and all members name it. Raises on violation."""
    open_ = trace.open_mask
    graph = trace.graph
    seen = set()
    for v0 in range(graph.n):
        if v0 in seen:
            continue
        comp = {v0}
        queue = deque([v0])
        while queue:
            u = queue.popleft()
            for w, e in graph.adjacency[u]:
                if open_[e] and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        reds = [z for z in comp if trace.colours[z] == int(Colour.RED)]
        if len(reds) > 1:
            raise AssertionError(f"component {sorted(comp)} holds reds {reds}")
        paralyzed = [z for z in comp if z in trace.paralysis_times]
        if paralyzed:
            if len(reds) != 1:
                raise AssertionError(
                    f"paralyzed component {sorted(comp)} holds {len(reds)} reds")
            bad = [z for z in paralyzed if trace.responsible_for[z] != reds[0]]
            if bad:
                raise AssertionError(f"vertices {bad} blame the wrong red")
    return True


def check_trace_invariants(trace: Trace) -> bool:
    """Structural sanity of a finished run; raises AssertionError on failure."""
    graph = trace.graph
    colours = trace.colours
    open_ = trace.open_mask

    times = [t for t, _ in trace.opened]
    assert times == sorted(times), "opening times decreased"
    eids = [e for _, e in trace.opened]
    assert len(eids) == len(set(eids)), "edge opened twice"

    first_open = {}
    for t, e in trace.opened:
        for w in graph.edges[e]:
            first_open.setdefault(w, t)

    for v in range(graph.n):
        if colours[v] == int(Colour.WHITE):
            if v in trace.green_times:
                assert trace.green_times[v] == first_open[v], \
                    f"vertex {v} turned green at the wrong time"
            else:
                incident_open = [e for _, e in graph.adjacency[v] if open_[e]]
                assert not incident_open, f"white vertex {v} has open edges"
        elif colours[v] == int(Colour.GREEN):
            assert trace.green_times[v] == 0.0
        else:
            assert v not in trace.green_times
            assert v not in trace.paralysis_times

    for v, t in trace.paralysis_times.items():
        assert v in trace.green_times and trace.green_times[v] <= t

    check_unique_red_origins(trace)
    return True
