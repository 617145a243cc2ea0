"""Vertex colours, model parameters, edge weights, and snapshot files.

A configuration of the growth process lives on a fixed graph and consists of
a colour per vertex (white / red / green) and a weight ``tau`` per edge. Both
are stored as plain numpy arrays indexed by vertex id and edge id. Snapshots
serialize a full problem instance (graph, colours, weights) to JSON with
weights written as decimal strings at 17 significant digits, so a reloaded
instance replays bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any

import numpy as np

SNAPSHOT_VERSION = 1


class Colour(IntEnum):
    WHITE = 0
    RED = 1
    GREEN = 2


COLOUR_NAMES = {Colour.WHITE: "white", Colour.RED: "red", Colour.GREEN: "green"}


@dataclass(frozen=True)
class Params:
    """Colour probabilities (p_w, p_r, p_g); must sum to one."""

    p_w: float
    p_r: float
    p_g: float

    def __post_init__(self):
        for name in ("p_w", "p_r", "p_g"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        s = self.p_w + self.p_r + self.p_g
        if abs(s - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {s!r}, expected 1")

    @classmethod
    def from_wr(cls, p_w: float, p_r: float) -> "Params":
        return cls(p_w, p_r, 1.0 - p_w - p_r)

    def thresholds(self) -> tuple[float, float]:
        # u < p_w -> white, u < p_w + p_r -> red, else green
        return self.p_w, self.p_w + self.p_r


def colours_from_uniform(u: np.ndarray, params: Params) -> np.ndarray:
    """Map iid uniforms to colours through the threshold coupling.

    The same uniform field evaluated at a larger p_r turns green vertices red
    but never the reverse, which is what the coupled invasion comparisons rely
    on. Exact at p_w = 0: no uniform is ever below the white threshold.
    """
    a, b = params.thresholds()
    out = np.full(u.shape, int(Colour.GREEN), dtype=np.int8)
    out[u < b] = int(Colour.RED)
    out[u < a] = int(Colour.WHITE)
    return out


@dataclass
class EdgeWeights:
    """Per-edge opening thresholds; ``distribution`` is a provenance tag."""

    tau: np.ndarray
    distribution: str = "uniform"

    def __post_init__(self):
        self.tau = np.asarray(self.tau, dtype=np.float64)
        if self.tau.ndim != 1:
            raise ValueError("tau must be one-dimensional")
        if np.any(~np.isfinite(self.tau)) or np.any(self.tau < 0):
            raise ValueError("tau entries must be finite and nonnegative")

    def __len__(self) -> int:
        return len(self.tau)


def _fmt(x: float) -> str:
    # 17 significant digits round-trip any IEEE double exactly.
    return "%.17g" % float(x)


@dataclass
class Snapshot:
    graph: Any
    colours: np.ndarray
    weights: EdgeWeights
    params: Params | None = None
    extra: dict = field(default_factory=dict)


def save_snapshot(path, graph, colours, weights: EdgeWeights,
                  params: Params | None = None, extra: dict | None = None) -> None:
    doc = {
        "version": SNAPSHOT_VERSION,
        "graph": graph.to_dict(),
        "colours": [int(c) for c in np.asarray(colours)],
        "tau": [_fmt(t) for t in weights.tau],
        "distribution": weights.distribution,
    }
    if params is not None:
        doc["params"] = {"p_w": _fmt(params.p_w), "p_r": _fmt(params.p_r),
                         "p_g": _fmt(params.p_g)}
    if extra:
        doc["extra"] = extra
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_snapshot(path) -> Snapshot:
    from .graph import Graph  # deferred: graph depends on Colour

    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {doc.get('version')!r}")
    graph = Graph.from_dict(doc["graph"])
    colours = np.asarray(doc["colours"], dtype=np.int8)
    if len(colours) != graph.n:
        raise ValueError("colour count does not match vertex count")
    tau = np.asarray([float(s) for s in doc["tau"]], dtype=np.float64)
    if len(tau) != len(graph.edges):
        raise ValueError("weight count does not match edge count")
    weights = EdgeWeights(tau, doc.get("distribution", "uniform"))
    params = None
    if "params" in doc:
        p = doc["params"]
        params = Params(float(p["p_w"]), float(p["p_r"]), float(p["p_g"]))
    return Snapshot(graph, colours, weights, params, doc.get("extra", {}))
