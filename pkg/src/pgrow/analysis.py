"""Monte Carlo estimators over seeded replicates, and their delimited output.

Every replicate i draws its randomness from replicate_rng(seed, i), so the
estimates are a pure function of (seed, replicate count) no matter how the
work is chunked across processes; --jobs changes wall time, not numbers.

Survival tables are the common currency: rows of (n, survival, se, N)
written as CSV. Rates are fit by weighted least squares on log survival with
delta-method weights, floored so that survival values of one keep a finite
variance.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .autonomous import BudgetExhausted, green_cluster_of, run_algorithm
from .direct_sim import responsibility_set, simulate
from .fields import Colour, Params
from .graph import build_lattice, graph_distance, radius_of, shell
from .invasion import (_argmax_addition, coupled_stopped_region,
                       critical_probability, invade, open_cluster, pond)
from .sampling import (open_uniform, replicate_rng, sample_instance,
                       sample_weights)

Z975 = 1.959963984540054


def config_digest(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# replicate scheduling

def _chunks(n: int, pieces: int):
    if pieces <= 1 or n <= 1:
        return [list(range(n))]
    size = max(1, -(-n // pieces))
    return [list(range(a, min(a + size, n))) for a in range(0, n, size)]


def map_replicates(worker, n_replicates: int, seed: int, jobs: int, *args):
    """worker(seed, indices, *args) -> list of per-index values, in order."""
    if jobs <= 1:
        return worker(seed, list(range(n_replicates)), *args)
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [ex.submit(worker, seed, chunk, *args)
                   for chunk in _chunks(n_replicates, jobs * 4)]
        for fut in futures:
            out.extend(fut.result())
    return out


# ---------------------------------------------------------------------------
# survival tables

@dataclass
class TailEstimate:
    radii: list
    counts: list
    n: int
    survival: list
    se: list
    strict: bool                  # True: P(value > n); False: P(value >= n)
    excluded: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def rows(self):
        for i, r in enumerate(self.radii):
            yield r, self.survival[i], self.se[i], self.n


def survival_table(values, radii, *, strict: bool = False,
                   excluded: dict | None = None, meta: dict | None = None) -> TailEstimate:
    """Tail frequencies of ``values``; None entries never count."""
    kept = [v for v in values if v is not None]
    n = len(kept)
    counts = []
    for r in radii:
        if strict:
            counts.append(sum(1 for v in kept if v > r))
        else:
            counts.append(sum(1 for v in kept if v >= r))
    survival = [c / n if n else math.nan for c in counts]
    se = [math.sqrt(p * (1.0 - p) / n) if n else math.nan for p in survival]
    return TailEstimate(list(radii), counts, n, survival, se, strict,
                        excluded or {}, meta or {})


@dataclass
class RateFit:
    slope: float
    intercept: float
    se_slope: float
    ci_low: float
    ci_high: float
    n_points: int


def fit_exponential(radii, survival, n_replicates: int) -> RateFit:
    """Weighted least squares on log survival; drops zero rows, needs >= 4."""
    pts = [(float(r), p) for r, p in zip(radii, survival) if p > 0.0]
    if len(pts) < 4:
        raise ValueError("need at least 4 positive survival points")
    x = np.array([r for r, _ in pts])
    y = np.log(np.array([p for _, p in pts]))
    N = n_replicates
    var = np.array([max(1.0 - p, 1.0 / N) / (N * p) for _, p in pts])
    w = 1.0 / var
    xbar = float(np.sum(w * x) / np.sum(w))
    ybar = float(np.sum(w * y) / np.sum(w))
    sxx = float(np.sum(w * (x - xbar) ** 2))
    slope = float(np.sum(w * (x - xbar) * (y - ybar)) / sxx)
    intercept = ybar - slope * xbar
    se = math.sqrt(1.0 / sxx)
    return RateFit(slope, intercept, se, slope - Z975 * se, slope + Z975 * se,
                   len(pts))


def _loglog_slope(radii, survival) -> float:
    pts = [(math.log(r), math.log(p))
           for r, p in zip(radii, survival) if r > 0 and p > 0.0]
    if len(pts) < 2:
        return math.nan
    x = np.array([a for a, _ in pts])
    y = np.array([b for _, b in pts])
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))


@dataclass
class GeometricCheck:
    p_r: float
    z_scores: list
    max_abs_z: float


def geometric_check(p_r: float, radii, survival, n_replicates: int) -> GeometricCheck:
    """z-scores of the estimates against the law (1-p_r)^n, with the
    binomial standard error evaluated under that law."""
    zs = []
    for r, p in zip(radii, survival):
        ref = (1.0 - p_r) ** r
        se = math.sqrt(ref * (1.0 - ref) / n_replicates)
        if se == 0.0:
            zs.append(0.0 if p == ref else math.inf)
        else:
            zs.append((p - ref) / se)
    finite = [abs(z) for z in zs if math.isfinite(z)]
    return GeometricCheck(p_r, zs, max(finite) if finite else math.inf)


# ---------------------------------------------------------------------------
# green cluster tails

def _stopped_tail_worker(seed, indices, graph, p_r, distribution):
    out = []       # (steps, size, radius) or None when the run leaves the box
    origin = graph.origin
    dist = graph.distance_from_origin
    n_box = graph.lattice["n"] if graph.lattice else None
    params = Params.from_wr(0.0, p_r)
    for i in indices:
        rng = replicate_rng(seed, i)
        colours, weights = sample_instance(rng, graph, params, distribution,
                                           force_green_origin=True)
        red = {int(v) for v in np.flatnonzero(colours == int(Colour.RED))}
        run = invade(graph, weights, origin, mode="tree", red=red,
                     stop_shell=n_box)
        if run.terminal_red is None:
            out.append(None)
            continue
        adds = run.additions
        j = _argmax_addition(adds)
        cluster = {origin} | {a.vertex for a in adds[:j]}
        out.append((len(adds), len(cluster),
                    max(int(dist[v]) for v in cluster)))
    return out


def _algorithm_tail_worker(seed, indices, graph, params, distribution, budget):
    out = []                  # (size, radius) or "budget" or "boundary"
    x = graph.origin
    lattice = graph.lattice or {}
    edge = set(shell(graph, lattice["n"])) if lattice.get("boundary") == "free" \
        else set()
    for i in indices:
        rng = replicate_rng(seed, i)
        colours, weights = sample_instance(rng, graph, params, distribution,
                                           force_green_origin=True)
        try:
            result = run_algorithm(graph, colours, weights, x,
                                   max_selections=budget)
        except BudgetExhausted:
            out.append("budget")
            continue
        cluster = green_cluster_of(result, x)
        if not edge.isdisjoint(cluster):
            out.append("boundary")
            continue
        out.append((len(cluster), radius_of(graph, cluster, x)))
    return out


def tail_of_green_cluster(graph, params: Params, radii, replicates: int,
                          seed: int, statistic: str = "size",
                          distribution="uniform", step_budget: int = 10 ** 6,
                          jobs: int = 1) -> TailEstimate:
    """Tail of the final green cluster of a conditioned-green origin.

    At p_w = 0 the cluster is read off a stopped invasion, and ``statistic``
    may also be "steps" (number of invaded vertices including the terminal
    red one, whose survival P(steps > n) is exactly geometric with parameter
    p_r); runs that leave the box before meeting a red vertex are excluded
    and counted. At p_w > 0 the cluster comes from the local reconstruction;
    budget exhaustion and clusters touching a free boundary are excluded and
    counted.
    """
    if statistic not in ("steps", "size", "radius"):
        raise ValueError(f"unknown statistic {statistic!r}")
    meta = {"kind": (graph.lattice or {}).get("kind", "custom"),
            "p_w": params.p_w, "p_r": params.p_r, "seed": seed,
            "distribution": str(distribution), "replicates": replicates,
            "statistic": "green-cluster-" + statistic}
    if params.p_w == 0.0:
        rows = map_replicates(_stopped_tail_worker, replicates, seed, jobs,
                              graph, params.p_r, distribution)
        idx = {"steps": 0, "size": 1, "radius": 2}[statistic]
        values = [r[idx] if r is not None else None for r in rows]
        excluded = {"exit": sum(1 for r in rows if r is None)}
    else:
        if statistic == "steps":
            raise ValueError("step counts are an invasion statistic; "
                             "they need p_w = 0")
        rows = map_replicates(_algorithm_tail_worker, replicates, seed, jobs,
                              graph, params, distribution, step_budget)
        idx = {"size": 0, "radius": 1}[statistic]
        values = [r[idx] if isinstance(r, tuple) else None for r in rows]
        excluded = {"budget": rows.count("budget"),
                    "boundary": rows.count("boundary")}
    return survival_table(values, radii, strict=statistic == "steps",
                          excluded=excluded, meta=meta)


# ---------------------------------------------------------------------------
# responsibility tails

def _responsibility_worker(seed, indices, graph, params, distribution):
    out = []       # (size, radius) or "no_red" or "boundary"
    dist_o = graph.distance_from_origin
    lattice = graph.lattice or {}
    # truncation is only a concern where the ball actually ends
    box_n = lattice.get("n") if lattice.get("boundary") != "periodic" else None
    for i in indices:
        rng = replicate_rng(seed, i)
        colours, weights = sample_instance(rng, graph, params, distribution)
        reds = [v for v in range(graph.n) if colours[v] == int(Colour.RED)]
        if not reds:
            out.append("no_red")
            continue
        w = min(reds, key=lambda v: (int(dist_o[v]), v))
        trace = simulate(graph, colours, weights)
        blamed = responsibility_set(trace, w)
        if box_n is not None and any(int(dist_o[v]) == box_n for v in blamed):
            out.append("boundary")
            continue
        if not blamed:
            out.append((0, -1))
            continue
        dist_w = graph_distance(graph, w)
        out.append((len(blamed), max(int(dist_w[v]) for v in blamed)))
    return out


def tail_of_responsibility(graph, params: Params, radii, replicates: int,
                           seed: int, statistic: str = "radius",
                           distribution="uniform", jobs: int = 1) -> TailEstimate:
    """Tail of the set a red vertex gets blamed for, by size or by radius.

    The probed vertex w is the initially red vertex nearest the origin
    (ties to the smallest id), and the radius is measured from w, which on
    a non-transitive graph is not interchangeable with the origin. Empty
    blamed sets count as size 0. Replicates whose blamed set touches the box
    shell are excluded and counted, as are replicates with no red vertex.
    """
    if statistic not in ("size", "radius"):
        raise ValueError(f"unknown statistic {statistic!r}")
    rows = map_replicates(_responsibility_worker, replicates, seed, jobs,
                          graph, params, distribution)
    idx = {"size": 0, "radius": 1}[statistic]
    values = [r[idx] if isinstance(r, tuple) else None for r in rows]
    excluded = {"no_red": rows.count("no_red"),
                "boundary": rows.count("boundary")}
    meta = {"kind": (graph.lattice or {}).get("kind", "custom"),
            "p_w": params.p_w, "p_r": params.p_r, "seed": seed,
            "replicates": replicates,
            "statistic": "responsibility-" + statistic}
    return survival_table(values, radii, excluded=excluded, meta=meta)


# ---------------------------------------------------------------------------
# mean white cluster size

@dataclass
class XiEstimate:
    p_w: float
    n: int
    xi_hat: float
    se: float
    occupied: int
    truncated: int
    r_max: int
    kind: str


def estimate_xi(p_w: float, replicates: int, seed: int, kind: str = "square",
                r_max: int = 8) -> XiEstimate:
    """Mean white-cluster size of the origin under iid site whiteness.

    Unoccupied origins count as size 0, which is the convention under which
    the mean enters the well-definedness condition (D-1) * xi < p_r. One
    uniform stream (substream 0) decides the origin's occupancy per
    replicate; occupied replicates get their own generator (substream 1,
    replicate index) and reveal further sites lazily during the BFS, in
    adjacency order, so the estimate is chunking-independent by construction.
    Clusters touching the radius-r_max shell are truncation-counted.
    """
    graph = build_lattice(kind, r_max)
    origin = graph.origin
    edge_shell = set(shell(graph, r_max))
    u0 = open_uniform(replicate_rng(seed, 0, stream=0), replicates)

    total = 0.0
    total_sq = 0.0
    occupied = 0
    truncated = 0
    for i in range(replicates):
        if u0[i] >= p_w:
            continue
        occupied += 1
        rng = replicate_rng(seed, i, stream=1)
        occ = {origin: True}
        cluster = {origin}
        queue = deque([origin])
        touched_shell = origin in edge_shell
        while queue:
            u = queue.popleft()
            for w, _ in graph.adjacency[u]:
                if w not in occ:
                    occ[w] = bool(open_uniform(rng, 1)[0] < p_w)
                if occ[w] and w not in cluster:
                    cluster.add(w)
                    queue.append(w)
                    if w in edge_shell:
                        touched_shell = True
        size = len(cluster)
        if touched_shell:
            truncated += 1
        total += size
        total_sq += size * size

    n = replicates
    xi_hat = total / n
    var = (total_sq - n * xi_hat * xi_hat) / (n - 1)
    return XiEstimate(p_w, n, xi_hat, math.sqrt(max(var, 0.0) / n),
                      occupied, truncated, r_max, kind)


def exact_xi_patch(p_w: float, kind: str = "square", r_max: int = 1) -> float:
    """Mean origin cluster size restricted to the radius-r_max ball, by full
    enumeration of site states. Exponential in the ball size; keep it tiny."""
    graph = build_lattice(kind, r_max)
    origin = graph.origin
    n = graph.n
    if n > 20:
        raise ValueError("enumeration patch too large")
    total = 0.0
    for mask in range(1 << n):
        if not (mask >> origin) & 1:
            continue
        k = bin(mask).count("1")
        weight = p_w ** k * (1.0 - p_w) ** (n - k)
        cluster = {origin}
        queue = deque([origin])
        while queue:
            u = queue.popleft()
            for w, _ in graph.adjacency[u]:
                if (mask >> w) & 1 and w not in cluster:
                    cluster.add(w)
                    queue.append(w)
        total += weight * len(cluster)
    return total


@dataclass
class ConditionCheck:
    degree_max: int
    xi_hat: float
    xi_se: float
    p_r: float
    lhs: float
    margin: float
    holds: bool


def check_condition(params: Params, graph, xi: XiEstimate) -> ConditionCheck:
    """Advisory well-definedness condition (D - 1) * xi(p_w) < p_r."""
    d = graph.degree_max
    lhs = (d - 1) * xi.xi_hat
    return ConditionCheck(d, xi.xi_hat, xi.se, params.p_r, lhs,
                          params.p_r - lhs, lhs < params.p_r)


# ---------------------------------------------------------------------------
# critical connectivity

def _connectivity_worker(seed, indices, graph, p, stream):
    out = []
    origin = graph.origin
    dist = graph.distance_from_origin
    for i in indices:
        rng = replicate_rng(seed, i, stream=stream)
        weights = sample_weights(rng, len(graph.edges))
        open_mask = weights.tau < p
        best = 0
        comp = {origin}
        queue = deque([origin])
        while queue:
            u = queue.popleft()
            for w, e in graph.adjacency[u]:
                if open_mask[e] and w not in comp:
                    comp.add(w)
                    queue.append(w)
                    d = int(dist[w])
                    if d > best:
                        best = d
        out.append(best)
    return out


def critical_connectivity(kind: str, n_max: int, radii, replicates: int,
                          seed: int, p: float | None = None,
                          jobs: int = 1, stream: int | None = None) -> TailEstimate:
    """P(the origin reaches distance n through edges with weight < p); the
    default p is the lattice's critical density. The event up to distance n
    only involves the ball of radius n, so one field on B(n_max) serves every
    n <= n_max at once, and the estimates nest exactly per replicate."""
    if p is None:
        p = critical_probability(kind)
    graph = build_lattice(kind, n_max)
    values = map_replicates(_connectivity_worker, replicates, seed, jobs,
                            graph, p, stream)
    meta = {"kind": kind, "p": p, "seed": seed, "replicates": replicates,
            "statistic": "critical-connectivity"}
    return survival_table(values, radii, meta=meta)


# ---------------------------------------------------------------------------
# pond radii against critical connectivity

@dataclass
class PondComparison:
    kind: str
    n_box: int
    conn_box: int
    margin: float
    p_c: float
    seed: int
    n_grid: list
    pond: TailEstimate
    connectivity: TailEstimate
    censored_radius: int
    censored_outlet: int
    censored_any: int
    containment_checked: int
    containment_failures: int
    margins: list
    slope_pond: float
    slope_conn: float

    @property
    def inequality_ok(self) -> bool:
        return all(m >= 0.0 for m in self.margins)

    @property
    def censored_rate(self) -> float:
        n = self.pond.n
        return self.censored_any / n if n else math.nan

    @property
    def slope_ratio(self) -> float:
        if not self.slope_conn:
            return math.nan
        return self.slope_pond / self.slope_conn


def _pond_radius_worker(seed, indices, graph, margin, p_c, stream):
    out = []
    n_box = graph.lattice["n"]
    origin = graph.origin
    for i in indices:
        rng = replicate_rng(seed, i, stream=stream)
        weights = sample_weights(rng, len(graph.edges))
        res = pond(graph, weights, margin=margin, p_c=p_c)
        contained = None
        if not res.censored_outlet:
            contained = open_cluster(graph, weights, p_c, origin) \
                <= res.region_vertices
        # an outlet at or below the critical density cannot be final: the
        # true pond extends past everything invaded, so its radius is at
        # least the box radius for tail purposes
        radius = n_box if res.censored_outlet else res.radius
        out.append((radius, bool(res.censored_radius),
                    bool(res.censored_outlet), contained))
    return out


def compare_ponds(kind: str, n_box: int, n_grid, pond_samples: int,
                  conn_samples: int, seed: int, margin: float = 0.5,
                  conn_box: int | None = None, jobs: int = 1) -> PondComparison:
    """Pond radius tail against critical one-arm connectivity.

    Checks P(pond radius > n) >= P(O reaches distance n at the critical
    density) - 3 combined standard errors on every grid point, verifies the
    per-realization containment of the critically-open cluster of the origin
    in the pond whenever the outlet exceeds the critical density, and reports
    the informational log-log slopes of the two curves.
    """
    grid = sorted(int(n) for n in n_grid)
    if conn_box is None:
        conn_box = max(grid)
    if max(grid) > margin * n_box:
        raise ValueError("grid exceeds the uncensored radius range")
    p_c = critical_probability(kind)
    graph = build_lattice(kind, n_box)
    rows = map_replicates(_pond_radius_worker, pond_samples, seed, jobs,
                          graph, margin, p_c, 0)
    radii = [r for r, _, _, _ in rows]
    pond_tail = survival_table(
        radii, grid, strict=True,
        meta={"kind": kind, "n_box": n_box, "margin": margin, "seed": seed,
              "replicates": pond_samples, "statistic": "pond-radius"})
    conn_tail = critical_connectivity(kind, conn_box, grid, conn_samples,
                                      seed, p=p_c, jobs=jobs, stream=1)
    margins = []
    for i in range(len(grid)):
        combined = math.hypot(pond_tail.se[i], conn_tail.se[i])
        margins.append(pond_tail.survival[i]
                       - (conn_tail.survival[i] - 3.0 * combined))
    checked = [c for _, _, _, c in rows if c is not None]
    return PondComparison(
        kind=kind, n_box=n_box, conn_box=conn_box, margin=margin, p_c=p_c,
        seed=seed, n_grid=grid, pond=pond_tail, connectivity=conn_tail,
        censored_radius=sum(1 for _, c, _, _ in rows if c),
        censored_outlet=sum(1 for _, _, c, _ in rows if c),
        censored_any=sum(1 for _, cr, co, _ in rows if cr or co),
        containment_checked=len(checked),
        containment_failures=sum(1 for c in checked if not c),
        margins=margins,
        slope_pond=_loglog_slope(grid, pond_tail.survival),
        slope_conn=_loglog_slope(grid, conn_tail.survival))


# ---------------------------------------------------------------------------
# coupled stopped regions against the pond

@dataclass
class CouplingLevelStats:
    p_r: float
    o_red: int = 0
    no_red: int = 0
    radii: list = field(default_factory=list)   # None when undefined


@dataclass
class CouplingComparison:
    kind: str
    n_box: int
    replicates: int
    seed: int
    p_r_grid: list
    pond_radii: list = field(default_factory=list)
    outlet_taus: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    nesting_violations: int = 0
    tree_basin_mismatches: int = 0
    condition_met: int = 0
    agreement_holds: int = 0
    equality_without_condition: int = 0
    basin_union_gaps: int = 0

    @property
    def all_nested(self) -> bool:
        return self.nesting_violations == 0

    @property
    def agreement_ok(self) -> bool:
        return self.agreement_holds == self.condition_met


def _coupling_worker(seed, indices, graph, grid, p_c):
    out = []
    n_box = graph.lattice["n"]
    origin = graph.origin
    for i in indices:
        rng = replicate_rng(seed, i)
        rho = open_uniform(rng, graph.n)
        weights = sample_weights(rng, len(graph.edges))
        tree_run = invade(graph, weights, origin, mode="tree",
                          stop_shell=n_box)
        pond_res = pond(graph, weights, p_c=p_c)

        tree_adds = tree_run.vertex_additions()
        jt = _argmax_addition(tree_adds)
        tree_region = {origin} | {a.vertex for a in tree_adds[:jt]}
        tree_matches = (pond_res.tree_outlet_edge == tree_adds[jt].edge
                        and pond_res.tree_region_vertices == tree_region)

        levels = [coupled_stopped_region(tree_run, rho, p_r, graph)
                  for p_r in grid]
        nested = True
        regions = [lv.region for lv in levels if lv.found_red]
        for big, small in zip(regions, regions[1:]):
            # grid is descending in p_r: regions grow as p_r falls
            if not big <= small:
                nested = False
        lo = levels[-1]
        condition = bool(lo.found_red and lo.stop_index >= jt)
        union = frozenset().union(*(lv.region for lv in levels))
        out.append({
            "pond_radius": pond_res.radius,
            "outlet_tau": pond_res.outlet_tau,
            "tree_matches": tree_matches,
            "nested": nested,
            "condition": condition,
            "equal": union == frozenset(tree_region),
            "basin_gap": not union >= pond_res.region_vertices,
            "levels": [(lv.p_r, lv.o_red, lv.found_red, lv.radius)
                       for lv in levels],
        })
    return out


def coupled_region_check(kind: str, n_box: int, p_r_grid, replicates: int,
                         seed: int, jobs: int = 1) -> CouplingComparison:
    """Stopped invasions at several obstacle densities, coupled through one
    uniform per vertex, against the pond of the same weight field.

    The grid is processed in descending order; regions must then be nested.
    Whenever the lowest density stops at or after the tree outlet, the union
    of the coupled regions must equal the tree pond region exactly. The
    basin pond region can exceed that union when a cycle edge carries the
    overall maximum; such realizations are counted, not failed.
    """
    grid = sorted(set(float(p) for p in p_r_grid), reverse=True)
    graph = build_lattice(kind, n_box)
    p_c = critical_probability(kind)
    rows = map_replicates(_coupling_worker, replicates, seed, jobs,
                          graph, grid, p_c)

    out = CouplingComparison(kind, n_box, replicates, seed, grid)
    out.levels = [CouplingLevelStats(p) for p in grid]
    for row in rows:
        out.pond_radii.append(row["pond_radius"])
        out.outlet_taus.append(row["outlet_tau"])
        if not row["tree_matches"]:
            out.tree_basin_mismatches += 1
        if not row["nested"]:
            out.nesting_violations += 1
        if row["condition"]:
            out.condition_met += 1
            if row["equal"]:
                out.agreement_holds += 1
        elif row["equal"]:
            out.equality_without_condition += 1
        if row["condition"] and row["basin_gap"]:
            out.basin_union_gaps += 1
        for stats, (p_r, o_red, found, radius) in zip(out.levels,
                                                      row["levels"]):
            if o_red:
                stats.o_red += 1
                stats.radii.append(None)
            elif not found:
                stats.no_red += 1
                stats.radii.append(None)
            else:
                stats.radii.append(radius)
    return out


# ---------------------------------------------------------------------------
# delimited output

def write_survival_csv(path, estimate: TailEstimate) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "survival", "se", "N"])
        for r, p, se, n in estimate.rows():
            writer.writerow([r, "%.17g" % p, "%.17g" % se, n])


def write_series_csv(path, named_estimates) -> None:
    """Several survival tables in one file, tagged by a series column."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["series", "n", "survival", "se", "N"])
        for name, estimate in named_estimates:
            for r, p, se, n in estimate.rows():
                writer.writerow([name, r, "%.17g" % p, "%.17g" % se, n])


def write_xi_csv(path, est: XiEstimate) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p_w", "xi", "se", "N", "occupied", "truncated",
                         "r_max"])
        writer.writerow(["%.17g" % est.p_w, "%.17g" % est.xi_hat,
                         "%.17g" % est.se, est.n, est.occupied,
                         est.truncated, est.r_max])


def write_manifest(path, command: str, parameters: dict, results: dict,
                   files: list) -> None:
    doc = {"command": command, "parameters": parameters, "results": results,
           "files": sorted(files)}
    doc["digest"] = config_digest(doc)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
