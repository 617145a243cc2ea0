"""Finite graphs the process runs on.

Vertices and edges carry stable integer ids. For lattice balls the ids are
assigned in breadth-first pop order from the origin, and edge ids follow
(lower endpoint id, fixed neighbour-offset order); every build of the same
ball therefore numbers everything identically, which keeps seeded runs and
snapshots reproducible across machines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .fields import Colour

# Neighbour offsets, in the order edges are enumerated.
_OFFSETS = {
    "square": ((1, 0), (-1, 0), (0, 1), (0, -1)),
    "triangular": ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)),
}


def _hypercubic_offsets(d: int):
    out = []
    for axis in range(d):
        for sign in (1, -1):
            off = [0] * d
            off[axis] = sign
            out.append(tuple(off))
    return tuple(out)


def _hex_neighbours(coord):
    # Brick-wall embedding of the honeycomb lattice: every site has two
    # horizontal neighbours and one vertical one, up on even parity sites.
    x, y = coord
    vert = (x, y + 1) if (x + y) % 2 == 0 else (x, y - 1)
    return ((x + 1, y), (x - 1, y), vert)


@dataclass
class Graph:
    n: int
    edges: list
    origin: int | None = None
    coords: list | None = None
    lattice: dict | None = None
    adjacency: list = field(init=False, repr=False)
    distance_from_origin: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        seen = set()
        adjacency = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid}: endpoint out of range")
            if u == v:
                raise ValueError(f"edge {eid}: self-loop at {u}")
            if u > v:
                raise ValueError(f"edge {eid}: endpoints must satisfy u < v")
            if (u, v) in seen:
                raise ValueError(f"edge {eid}: duplicate of ({u}, {v})")
            seen.add((u, v))
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        self.adjacency = adjacency
        if self.origin is not None and self.distance_from_origin is None:
            self.distance_from_origin = graph_distance(self, self.origin)

    @classmethod
    def from_edges(cls, n: int, edges, origin: int | None = None) -> "Graph":
        return cls(n, [(int(u), int(v)) for u, v in edges], origin=origin)

    @property
    def degree_max(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_id(self, u: int, v: int) -> int:
        for w, eid in self.adjacency[u]:
            if w == v:
                return eid
        raise KeyError(f"no edge ({u}, {v})")

    def to_dict(self) -> dict:
        doc = {"n": self.n, "edges": [[u, v] for u, v in self.edges]}
        if self.origin is not None:
            doc["origin"] = self.origin
        if self.coords is not None:
            doc["coords"] = [list(c) for c in self.coords]
        if self.lattice is not None:
            doc["lattice"] = self.lattice
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Graph":
        g = cls(doc["n"], [tuple(e) for e in doc["edges"]],
                origin=doc.get("origin"))
        if "coords" in doc:
            g.coords = [tuple(c) for c in doc["coords"]]
        if "lattice" in doc:
            g.lattice = doc["lattice"]
        return g


def build_lattice(kind: str, n: int, boundary: str = "free",
                  d: int | None = None) -> Graph:
    """Ball of radius ``n`` around the origin of a standard lattice.

    Kinds: "square", "triangular", "hexagonal" (brick-wall), "hypercubic"
    (needs ``d``), and "path" (the half-line 0..n with the origin at the end).
    ``boundary="periodic"`` wraps square/triangular/hypercubic on a torus of
    odd side 2n+1; the hexagonal brick wall and the half-line do not admit a
    consistent odd wrap and are rejected.
    """
    if n < 1:
        raise ValueError("radius must be at least 1")
    if boundary not in ("free", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")

    if kind == "path":
        if boundary == "periodic":
            raise ValueError("the half-line has no periodic variant")
        g = Graph(n + 1, [(i, i + 1) for i in range(n)], origin=0)
        g.coords = [(i,) for i in range(n + 1)]
        g.lattice = {"kind": kind, "n": n, "boundary": boundary}
        return g

    if kind == "hypercubic":
        if d is None or d < 1:
            raise ValueError("hypercubic lattice needs a dimension d >= 1")
        offsets = _hypercubic_offsets(d)
        origin_coord = (0,) * d
        neighbours = lambda c: tuple(tuple(a + b for a, b in zip(c, off))
                                     for off in offsets)
    elif kind in _OFFSETS:
        offsets = _OFFSETS[kind]
        origin_coord = (0, 0)
        neighbours = lambda c: tuple((c[0] + off[0], c[1] + off[1])
                                     for off in offsets)
    elif kind == "hexagonal":
        if boundary == "periodic":
            raise ValueError("hexagonal brick wall has no odd-side wrap")
        origin_coord = (0, 0)
        neighbours = _hex_neighbours
    else:
        raise ValueError(f"unknown lattice kind {kind!r}")

    if boundary == "periodic":
        L = 2 * n + 1
        wrap = lambda c: tuple(x % L for x in c)
    else:
        wrap = lambda c: c

    # Vertex ids in BFS pop order from the origin.
    ids = {origin_coord: 0}
    coords = [origin_coord]
    dist = [0]
    queue = deque([origin_coord])
    while queue:
        c = queue.popleft()
        dc = dist[ids[c]]
        if boundary == "free" and dc == n:
            continue
        for nb in neighbours(c):
            nb = wrap(nb)
            if nb not in ids:
                ids[nb] = len(coords)
                coords.append(nb)
                dist.append(dc + 1)
                queue.append(nb)

    edges = []
    for u in range(len(coords)):
        for nb in neighbours(coords[u]):
            nb = wrap(nb)
            v = ids.get(nb)
            if v is not None and u < v:
                edges.append((u, v))

    g = Graph(len(coords), edges, origin=0)
    g.coords = coords
    g.distance_from_origin = np.asarray(dist, dtype=np.int64)
    g.lattice = {"kind": kind, "n": n, "boundary": boundary}
    if kind == "hypercubic":
        g.lattice["d"] = d
    return g


def read_edge_list(path):
    """Parse a whitespace-separated edge list file.

    Lines are ``u v`` or ``u v tau``; ``#`` starts a comment. Vertex ids must
    be nonnegative; the vertex count is one past the largest id and the origin
    is vertex 0. Returns (graph, tau array or None).
    """
    edges = []
    taus = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"line {lineno}: expected 'u v' or 'u v tau'")
            u, v = int(parts[0]), int(parts[1])
            if u == v or u < 0 or v < 0:
                raise ValueError(f"line {lineno}: bad edge ({u}, {v})")
            if u > v:
                u, v = v, u
            edges.append((u, v))
            taus.append(float(parts[2]) if len(parts) == 3 else None)
    if not edges:
        raise ValueError("empty edge list")
    n = max(max(e) for e in edges) + 1
    have_tau = [t is not None for t in taus]
    if any(have_tau) and not all(have_tau):
        raise ValueError("either all edges carry a weight or none do")
    order = sorted(range(len(edges)), key=lambda i: edges[i])
    edges = [edges[i] for i in order]
    g = Graph(n, edges, origin=0)
    if all(have_tau):
        return g, np.asarray([taus[i] for i in order], dtype=np.float64)
    return g, None


def random_connected_graph(rng, n: int | None = None, n_min: int = 5,
                           n_max: int = 30) -> Graph:
    """Uniform-attachment tree plus a few random chords; always connected."""
    if n is None:
        n = int(rng.integers(n_min, n_max + 1))
    if n < 2:
        raise ValueError("need at least two vertices")
    present = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        present.add((u, v))
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        if u > v:
            u, v = v, u
        present.add((u, v))
    return Graph(n, sorted(present), origin=0)


def graph_distance(graph: Graph, source: int) -> np.ndarray:
    """BFS distances from ``source``; -1 marks unreachable vertices."""
    dist = np.full(graph.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v, _ in graph.adjacency[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


def is_connected(graph: Graph) -> bool:
    return graph.n == 0 or bool(np.all(graph_distance(graph, 0) >= 0))


def white_cluster(graph: Graph, colours: np.ndarray, v: int):
    """White component of ``v`` plus its non-white vertex boundary."""
    if colours[v] != Colour.WHITE:
        raise ValueError(f"vertex {v} is not white")
    cluster = {v}
    boundary = set()
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w, _ in graph.adjacency[u]:
            if w in cluster or w in boundary:
                continue
            if colours[w] == Colour.WHITE:
                cluster.add(w)
                queue.append(w)
            else:
                boundary.add(w)
    return cluster, boundary


def radius_of(graph: Graph, vertices, centre: int) -> int:
    """Largest BFS distance from ``centre`` over ``vertices`` (0 if empty)."""
    if not vertices:
        return 0
    dist = (graph.distance_from_origin
            if centre == graph.origin and graph.distance_from_origin is not None
            else graph_distance(graph, centre))
    r = 0
    for v in vertices:
        if dist[v] < 0:
            raise ValueError(f"vertex {v} unreachable from {centre}")
        r = max(r, int(dist[v]))
    return r


def shell(graph: Graph, r: int) -> list:
    """Vertices at distance exactly ``r`` from the origin."""
    if graph.distance_from_origin is None:
        raise ValueError("graph has no origin distances")
    return [v for v in range(graph.n) if graph.distance_from_origin[v] == r]
