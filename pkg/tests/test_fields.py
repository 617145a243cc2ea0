import numpy as np
import pytest

from pgrow.fields import (Colour, COLOUR_NAMES, EdgeWeights, Params,
                          colours_from_uniform, load_snapshot, save_snapshot)
from pgrow.graph import build_lattice


def test_colour_values_are_stable():
    assert int(Colour.WHITE) == 0
    assert int(Colour.RED) == 1
    assert int(Colour.GREEN) == 2
    # IntEnum: plain ints index the name table
    assert COLOUR_NAMES[Colour(1)] == "red"


def test_params_validation():
    p = Params.from_wr(0.1, 0.3)
    assert p.p_g == pytest.approx(0.6)
    with pytest.raises(ValueError):
        Params(0.5, 0.6, 0.2)
    with pytest.raises(ValueError):
        Params(-0.1, 0.5, 0.6)
    with pytest.raises(ValueError):
        Params.from_wr(0.7, 0.5)   # p_g would be negative


def test_threshold_coupling_orientation():
    params = Params.from_wr(0.1, 0.2)
    assert params.thresholds() == (0.1, pytest.approx(0.3))
    u = np.array([0.05, 0.15, 0.9])
    out = colours_from_uniform(u, params)
    assert out.tolist() == [int(Colour.WHITE), int(Colour.RED), int(Colour.GREEN)]


def test_coupling_is_monotone_in_p_r():
    rng = np.random.default_rng(3)
    u = rng.random(5000)
    lo = colours_from_uniform(u, Params.from_wr(0.1, 0.2))
    hi = colours_from_uniform(u, Params.from_wr(0.1, 0.4))
    changed = lo != hi
    # raising p_r only turns green vertices red
    assert np.all(lo[changed] == int(Colour.GREEN))
    assert np.all(hi[changed] == int(Colour.RED))
    assert np.array_equal(lo[~changed], hi[~changed])


def test_no_white_at_p_w_zero():
    u = np.random.default_rng(0).random(2000)
    out = colours_from_uniform(u, Params.from_wr(0.0, 0.3))
    assert not np.any(out == int(Colour.WHITE))


def test_edge_weights_validation():
    w = EdgeWeights(np.array([0.0, 1.5]))
    assert len(w) == 2
    assert w.distribution == "uniform"
    with pytest.raises(ValueError):
        EdgeWeights(np.array([-0.1, 0.5]))
    with pytest.raises(ValueError):
        EdgeWeights(np.array([np.nan, 0.5]))
    with pytest.raises(ValueError):
        EdgeWeights(np.array([[0.1], [0.5]]))


def test_snapshot_round_trip(tmp_path):
    graph = build_lattice("square", 1)
    colours = np.array([2, 1, 0, 2, 2], dtype=np.int8)
    # awkward doubles must survive the decimal round trip bit for bit
    tau = np.array([1.0 / 3.0, 0.1 + 0.2, 7e-17, 2.5])
    weights = EdgeWeights(tau, "custom")
    params = Params.from_wr(0.02, 0.3)
    path = tmp_path / "inst.json"
    save_snapshot(path, graph, colours, weights, params=params,
                  extra={"note": "round trip"})
    snap = load_snapshot(path)
    assert snap.graph.n == graph.n
    assert snap.graph.edges == graph.edges
    assert snap.graph.origin == graph.origin
    assert snap.graph.coords == graph.coords
    assert snap.graph.lattice == graph.lattice
    assert np.array_equal(snap.colours, colours)
    assert np.array_equal(snap.weights.tau, tau)
    assert snap.weights.distribution == "custom"
    assert snap.params == params
    assert snap.extra == {"note": "round trip"}


def test_snapshot_rejects_bad_documents(tmp_path):
    graph = build_lattice("path", 2)
    colours = np.array([2, 2, 1], dtype=np.int8)
    weights = EdgeWeights(np.array([0.5, 0.25]))
    path = tmp_path / "inst.json"
    save_snapshot(path, graph, colours, weights)

    import json
    doc = json.loads(path.read_text())
    doc["version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        load_snapshot(path)

    doc["version"] = 1
    doc["colours"] = [2, 2]
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        load_snapshot(path)
