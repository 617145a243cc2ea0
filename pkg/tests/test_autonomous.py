import math

import numpy as np
import pytest

from pgrow.autonomous import (BudgetExhausted, check_external_weights,
                              check_result_invariants, compare_restrictions,
                              condition_margin, diagnostics, green_cluster_of,
                              restriction_of_trace, run_algorithm)
from pgrow.direct_sim import co_paralyzed, simulate
from pgrow.fields import Colour
from pgrow.fixtures import worked_example
from pgrow.graph import Graph


# Hand-run of the five-vertex example from x = 1. Selecting edge 1 at
# t1 = 3 registers the white cluster {2} and wakes vertex 3, whose edge 3
# then dies into the red end at 2. Reselecting edge 1 turns 2 green at 3;
# edge 2 re-enters with the banked credit (min(3,0) vs 3-2, plus tau 4
# gives 5) and the contact at 5 kills vertices 1 and 2 together. Edge 0
# stays pending forever and becomes the external edge of H.

def test_worked_example_reconstruction():
    graph, colours, weights = worked_example()
    result = run_algorithm(graph, colours, weights, 1)
    assert check_result_invariants(result)
    assert check_external_weights(result, weights)

    assert [(t, e, tag) for t, e, tag in result.selections] == [
        (3.0, 1, "fresh-white"),
        (2.0, 3, "fresh-red"),
        (3.0, 1, "seen-green"),
        (5.0, 2, "contact"),
    ]
    r = result.restriction()
    assert r["h"] == [1, 2, 3, 4]
    assert r["tg"] == {1: 0.0, 2: 3.0, 3: 0.0}
    assert r["tr"] == {1: 5.0, 2: 5.0, 3: 2.0}
    assert r["origin"] == {1: 4, 2: 4, 3: 4}
    assert r["opened"] == {1: 3.0, 2: 5.0, 3: 2.0}
    assert result.h_edges == [1, 2, 3]
    assert result.external_edges == [(0, 1)]
    # the red obstacle keeps its internal zero death but is not a casualty
    assert result.tr[4] == 0.0 and result.origin_of[4] == 4
    assert 4 not in r["tr"] and 4 not in r["origin"]


def test_reconstruction_is_stable_across_targets():
    graph, colours, weights = worked_example()
    base = run_algorithm(graph, colours, weights, 1).restriction()
    # 2 dies in the same event as 1, so its region is the same four vertices
    assert compare_restrictions(
        run_algorithm(graph, colours, weights, 2).restriction(), base) == []
    # 3 is dead before anything else happens: its region is just {3, red}
    sub = run_algorithm(graph, colours, weights, 3).restriction()
    assert sub["h"] == [3, 4]
    assert sub["tg"] == {3: base["tg"][3]}
    assert sub["tr"] == {3: base["tr"][3]}
    assert sub["origin"] == {3: base["origin"][3]}


def test_reconstruction_from_a_red_target_is_a_singleton():
    graph, colours, weights = worked_example()
    result = run_algorithm(graph, colours, weights, 4)
    assert result.selections == []
    assert sorted(result.h_vertices) == [4]
    assert result.restriction()["tr"] == {}
    rep = diagnostics(result)
    assert rep.steps == [] and rep.n_steps == 0
    assert rep.h_size == rep.nu1 == 1


def test_reconstruction_matches_direct_simulation_on_h():
    graph, colours, weights = worked_example()
    result = run_algorithm(graph, colours, weights, 1)
    trace = simulate(graph, colours, weights)
    ref = restriction_of_trace(trace, result.h_vertices, result.h_edges)
    assert compare_restrictions(result.restriction(), ref, tol=1e-9) == []


def test_compare_restrictions_tolerances():
    graph, colours, weights = worked_example()
    r = run_algorithm(graph, colours, weights, 1).restriction()
    nudged = {k: dict(v) if isinstance(v, dict) else list(v) for k, v in r.items()}
    nudged["opened"][1] += 5e-10
    assert compare_restrictions(nudged, r, tol=1e-9) == []
    nudged["opened"][1] = r["opened"][1] + 2e-9
    assert compare_restrictions(nudged, r, tol=1e-9) != []
    other = dict(r)
    other["h"] = [0, 1]
    assert compare_restrictions(other, r) == [
        f"h sets differ: {other['h']} vs {r['h']}"]


# A six-vertex instance whose reconstruction must record a cycle edge:
# vertices 0..3 green, 4 white, 5 red; edge 2 = (0, 4) closes a cycle
# inside the live tree at 0.628... and must appear among the openings
# (dropping it once corrupted bottleneck death times through the cycle).
CYCLE_EDGES = [(0, 1), (0, 2), (0, 4), (0, 5), (1, 3), (2, 5), (3, 4)]
CYCLE_COLOURS = [2, 2, 2, 2, 0, 1]
CYCLE_TAU = [0.59555377647489804, 0.73267905763033581, 0.62824205808731959,
             0.74281895120051245, 0.29419627631755907, 0.37112697553450313,
             0.26533977488737592]


def cycle_instance():
    graph = Graph(6, CYCLE_EDGES, origin=0)
    return graph, np.array(CYCLE_COLOURS, dtype=np.int8), np.array(CYCLE_TAU)


def test_cycle_edge_is_opened_and_recorded():
    graph, colours, tau = cycle_instance()
    result = run_algorithm(graph, colours, tau, 0)
    assert check_result_invariants(result)
    assert [(e, tag) for _, e, tag in result.selections] == [
        (0, "fresh-green"), (4, "fresh-green"), (6, "fresh-white"),
        (6, "seen-green"), (2, "cycle"), (1, "fresh-green"), (5, "fresh-red")]
    r = result.restriction()
    assert r["opened"][2] == CYCLE_TAU[2]
    assert r["tg"][4] == CYCLE_TAU[6]
    kill = CYCLE_TAU[1]           # edge (0,2) carries the last opening
    assert r["tr"] == {0: kill, 1: kill, 2: CYCLE_TAU[5], 3: kill, 4: kill}
    assert r["origin"] == {v: 5 for v in range(5)}

    trace = simulate(graph, colours, tau)
    ref = restriction_of_trace(trace, result.h_vertices, result.h_edges)
    assert compare_restrictions(r, ref, tol=1e-9) == []


def test_green_cluster_of_respects_strict_openings():
    graph, colours, tau = cycle_instance()
    result = run_algorithm(graph, colours, tau, 0)
    # edge (0,2) opens exactly at the death time, so 2 is not co-paralyzed
    assert green_cluster_of(result, 0) == {0, 1, 3, 4}
    assert green_cluster_of(result, 0) == co_paralyzed(simulate(graph, colours, tau), 0)
    assert green_cluster_of(result, 5) == set()

    g2, c2, w2 = worked_example()
    res2 = run_algorithm(g2, c2, w2, 1)
    assert green_cluster_of(res2, 1) == {1, 2}
    assert green_cluster_of(res2, 3) == {3}


def test_budget_exhaustion():
    graph = Graph(4, [(0, 1), (1, 2), (2, 3)], origin=0)
    colours = np.array([2, 2, 2, 1], dtype=np.int8)
    tau = np.array([0.5, 0.9, 0.3])
    with pytest.raises(BudgetExhausted) as err:
        run_algorithm(graph, colours, tau, 0, max_selections=1)
    assert err.value.selections == 2
    # enough budget: terminates and agrees with the unbounded run
    full = run_algorithm(graph, colours, tau, 0, max_selections=10)
    assert full.restriction() == run_algorithm(graph, colours, tau, 0).restriction()


def test_growth_without_reachable_red_is_rejected():
    graph = Graph(2, [(0, 1)], origin=0)
    colours = np.array([2, 2], dtype=np.int8)
    with pytest.raises(ValueError):
        run_algorithm(graph, colours, np.array([0.7]), 0)


def test_input_validation():
    graph, colours, weights = worked_example()
    with pytest.raises(ValueError):
        run_algorithm(graph, colours, weights, 9)
    with pytest.raises(ValueError):
        run_algorithm(graph, np.array([5, 0, 0, 0, 0]), weights, 0)


def test_external_weight_checker_catches_early_edges():
    graph, colours, weights = worked_example()
    result = run_algorithm(graph, colours, weights, 1)
    bad = weights.tau.copy()
    bad[0] = 4.0        # below tr(1) = 5
    with pytest.raises(AssertionError):
        check_external_weights(result, bad)


def test_diagnostics_on_the_worked_example():
    graph, colours, weights = worked_example()
    rep = diagnostics(run_algorithm(graph, colours, weights, 1))
    assert rep.degree_bound == 2
    assert rep.nu1 == 1 and rep.initial_active == 1
    assert [(s.colour, s.cw_size, s.eta, s.alpha) for s in rep.steps] == [
        (int(Colour.WHITE), 1, 2, 1), (int(Colour.RED), 0, 1, -2)]
    assert rep.n_steps == 2 and rep.virtual_steps == 0
    assert rep.h_size == 4 and rep.eta_total == 3
    assert rep.mean_alpha == -0.5

    rep2 = diagnostics(run_algorithm(graph, colours, weights, 2))
    assert rep2.nu1 == 3 and rep2.initial_active == 2
    assert [(s.eta, s.alpha) for s in rep2.steps] == [(1, -2)]
    assert rep2.n_steps == 1


def test_diagnostics_virtual_steps():
    # x's white cluster borders a green and a red, so every selection is
    # non-fresh: the tree count walk is extended virtually to reach zero
    graph = Graph(3, [(0, 1), (0, 2)], origin=0)
    colours = np.array([0, 2, 1], dtype=np.int8)
    tau = np.array([0.5, 0.3])
    result = run_algorithm(graph, colours, tau, 0)
    assert [tag for _, _, tag in result.selections] == ["seen-green", "contact"]
    assert result.restriction()["tr"] == {0: 0.8, 1: 0.8}
    trace = simulate(graph, colours, tau)
    assert trace.paralysis_times == {0: 0.8, 1: 0.8}

    rep = diagnostics(result)
    assert rep.steps == []
    assert rep.initial_active == 1
    assert rep.n_steps == 1 and rep.virtual_steps == 1
    assert rep.h_size == rep.nu1 == 3


def test_condition_margin_sign():
    assert condition_margin(4, 0.02, 0.3) == pytest.approx(0.3 - 3 * 0.02)
    assert condition_margin(4, 0.2, 0.3) < 0


def test_reconstruction_is_deterministic():
    graph, colours, tau = cycle_instance()
    a = run_algorithm(graph, colours, tau, 0)
    b = run_algorithm(graph, colours, tau, 0)
    assert a.restriction() == b.restriction()
    assert a.selections == b.selections
