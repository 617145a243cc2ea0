import math

import numpy as np
import pytest

from pgrow.fields import Colour, Params
from pgrow.graph import Graph, build_lattice
from pgrow.sampling import (as_rng, open_uniform, replicate_rng,
                            sample_colours, sample_instance, sample_weights)


def test_open_uniform_stays_in_the_open_interval():
    u = open_uniform(as_rng(0), 100000)
    assert u.dtype == np.float64
    assert np.all(u > 0.0) and np.all(u < 1.0)
    # log1p must stay finite for the exponential transform
    assert np.all(np.isfinite(np.log1p(-u)))


def test_replicate_rng_is_deterministic_and_decorrelated():
    a = replicate_rng(5, 3).integers(0, 1 << 30, 10)
    b = replicate_rng(5, 3).integers(0, 1 << 30, 10)
    assert np.array_equal(a, b)
    c = replicate_rng(5, 4).integers(0, 1 << 30, 10)
    assert not np.array_equal(a, c)
    d = replicate_rng(5, 3, stream=0).integers(0, 1 << 30, 10)
    e = replicate_rng(5, 3, stream=1).integers(0, 1 << 30, 10)
    assert not np.array_equal(a, d)
    assert not np.array_equal(d, e)


def test_colour_marginals():
    params = Params.from_wr(0.2, 0.3)
    n = 60000
    colours = sample_colours(as_rng(7), n, params)
    for colour, p in ((Colour.WHITE, 0.2), (Colour.RED, 0.3), (Colour.GREEN, 0.5)):
        freq = np.mean(colours == int(colour))
        se = math.sqrt(p * (1 - p) / n)
        assert abs(freq - p) < 4 * se


def test_quantile_coupling_shares_ranks():
    uni = sample_weights(as_rng(11), 500, "uniform")
    exp = sample_weights(as_rng(11), 500, "exponential")
    cube = sample_weights(as_rng(11), 500, lambda u: u ** 3)
    assert np.array_equal(np.argsort(uni.tau), np.argsort(exp.tau))
    assert np.array_equal(np.argsort(uni.tau), np.argsort(cube.tau))
    # the transforms really are quantile maps of the same uniforms
    assert np.array_equal(exp.tau, -np.log1p(-uni.tau))
    assert np.array_equal(cube.tau, uni.tau ** 3)
    assert exp.distribution == "exponential"
    assert cube.distribution == "custom"


def test_sample_weights_validation():
    with pytest.raises(ValueError):
        sample_weights(as_rng(0), 10, "cauchy")
    with pytest.raises(ValueError):
        sample_weights(as_rng(0), 10, lambda u: u[:5])


def test_sample_instance_draws_colours_then_weights():
    graph = build_lattice("square", 2)
    params = Params.from_wr(0.1, 0.3)
    colours, weights = sample_instance(as_rng(42), graph, params)
    rng = as_rng(42)
    colours2 = sample_colours(rng, graph.n, params)
    weights2 = sample_weights(rng, len(graph.edges))
    assert np.array_equal(colours, colours2)
    assert np.array_equal(weights.tau, weights2.tau)


def test_force_green_origin():
    graph = build_lattice("square", 2)
    all_red = Params.from_wr(0.0, 1.0)
    colours, _ = sample_instance(as_rng(1), graph, all_red,
                                 force_green_origin=True)
    assert colours[graph.origin] == int(Colour.GREEN)
    assert np.all(colours[1:] == int(Colour.RED))
    with pytest.raises(ValueError):
        sample_instance(as_rng(1), Graph(2, [(0, 1)]), all_red,
                        force_green_origin=True)
