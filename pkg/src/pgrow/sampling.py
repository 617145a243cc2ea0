"""Seeded sampling of colour and weight fields.

Every replicate gets its own generator derived from (seed, replicate index)
through a SeedSequence spawn key, so results never depend on how replicates
are batched across processes. All weight distributions are produced as a
quantile transform of one uniform field: the uniform ranks, and therefore the
entire invasion and opening order, are identical across distribution choices
at a fixed seed.
"""

from __future__ import annotations

import numpy as np

from .fields import Colour, EdgeWeights, Params, colours_from_uniform

# Distribution tag -> quantile transform applied to open-interval uniforms.
_TRANSFORMS = {
    "uniform": lambda u: u,
    "exponential": lambda u: -np.log1p(-u),
}


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def replicate_rng(seed: int, index: int, stream: int | None = None) -> np.random.Generator:
    """Generator for one replicate; ``stream`` separates substreams."""
    key = (index,) if stream is None else (stream, index)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def open_uniform(rng: np.random.Generator, size) -> np.ndarray:
    # Uniform on the open interval: integers 1 .. 2**53-1 over 2**53. Keeps
    # log1p finite and makes threshold comparisons unambiguous at 0 and 1.
    return rng.integers(1, 1 << 53, size=size).astype(np.float64) / float(1 << 53)


def sample_colours(rng, n: int, params: Params) -> np.ndarray:
    return colours_from_uniform(open_uniform(as_rng(rng), n), params)


def sample_coupling(rng, n: int) -> np.ndarray:
    """Uniform field driving the colour coupling across parameter values."""
    return open_uniform(as_rng(rng), n)


def sample_weights(rng, m: int, distribution="uniform") -> EdgeWeights:
    """Edge weights via the quantile coupling.

    ``distribution`` is a tag from {"uniform", "exponential"} or a callable
    quantile transform acting elementwise on uniforms in (0, 1); it must be
    nondecreasing for the rank-invariance guarantee to mean anything.
    """
    u = open_uniform(as_rng(rng), m)
    if callable(distribution):
        tau = np.asarray(distribution(u), dtype=np.float64)
        if tau.shape != u.shape:
            raise ValueError("quantile transform changed the shape")
        return EdgeWeights(tau, "custom")
    try:
        transform = _TRANSFORMS[distribution]
    except KeyError:
        raise ValueError(f"unknown distribution {distribution!r}") from None
    return EdgeWeights(transform(u), distribution)


def sample_instance(rng, graph, params: Params, distribution="uniform",
                    force_green_origin: bool = False):
    """Colours and weights for one replicate on ``graph``.

    Colours are drawn first, then weights, so the two fields stay aligned
    with replays that only consume one of them in this order. With
    ``force_green_origin`` the origin colour is overwritten with green after
    sampling; for product measures that equals conditioning on a green origin.
    """
    rng = as_rng(rng)
    colours = sample_colours(rng, graph.n, params)
    weights = sample_weights(rng, len(graph.edges), distribution)
    if force_green_origin:
        if graph.origin is None:
            raise ValueError("graph has no origin to condition on")
        colours[graph.origin] = int(Colour.GREEN)
    return colours, weights
