import pytest
from hypothesis import given
from hypothesis import strategies as st

from djm.enums import AlgorithmId, UpdateClass
from djm.graph import Batch, Coloring, EdgeUpdate, Graph
from djm.instances import gen_rmat_dynamic
from djm.oracle import validate
from djm.schemas import DynGreedyConfig, RmatParams
from djm.solvers import (
    DynGreedySolver,
    DynKecSolver,
    dyng_attempt_color,
    dynkec_on_increase,
)
from djm.solvers.dynamic import sample_colors
from djm.utils import make_rng
from tests import colors_of, replay
from tests.strategies import instance_streams


def feed(solver, *updates):
    """Runs one batch of `(u, v, delta)` updates."""
    solver.process_batch(Batch(tuple(EdgeUpdate(u, v, d) for u, v, d in updates)))


def test_sample_colors():
    rng = make_rng(3)
    assert sample_colors(3, 5, rng) == [1, 2, 3]
    picks = sample_colors(8, 3, rng)
    assert len(set(picks)) == 3
    assert all(1 <= col <= 8 for col in picks)
    assert picks == sorted(picks)


def test_dyn_greedy_insertions_use_free_colors():
    solver = DynGreedySolver(Graph(4), 2)
    feed(solver, (0, 1, 3), (1, 2, 5), (2, 3, 3))
    assert colors_of(solver) == {(0, 1): 1, (1, 2): 2, (2, 3): 1}


def test_dyn_greedy_swap_needs_strict_gain():
    solver = DynGreedySolver(Graph(4), 1)
    feed(solver, (0, 1, 3), (2, 3, 3))
    feed(solver, (1, 2, 6))
    assert colors_of(solver) == {(0, 1): 1, (2, 3): 1}
    feed(solver, (1, 2, 1))
    assert colors_of(solver) == {(1, 2): 1}
    assert solver.coloring.weight == 7
    assert solver.max_depth_reached == 1


def test_dyn_greedy_recolors_displaced_edges():
    # (1, 2) displaces (0, 1), which then takes the color still free at 1.
    g = Graph.from_edges(4, [(0, 1, 3), (2, 3, 4)])
    c = Coloring(g, 2)
    c.assign((0, 1), 1)
    c.assign((2, 3), 2)
    solver = DynGreedySolver(g, 2, coloring=c)
    feed(solver, (1, 2, 5))
    assert colors_of(solver) == {(0, 1): 2, (1, 2): 1, (2, 3): 2}
    assert solver.max_depth_reached == 1


def test_dyn_greedy_fill_hole_on_deletion():
    solver = DynGreedySolver(Graph(4), 1)
    feed(solver, (1, 2, 5))
    feed(solver, (0, 1, 3), (2, 3, 3))
    assert colors_of(solver) == {(1, 2): 1}
    feed(solver, (1, 2, -5))
    assert colors_of(solver) == {(0, 1): 1, (2, 3): 1}


def test_dyn_greedy_decrease_swaps_out():
    solver = DynGreedySolver(Graph(4), 1)
    feed(solver, (1, 2, 7))
    feed(solver, (0, 1, 3), (2, 3, 3))
    feed(solver, (1, 2, -3))
    assert colors_of(solver) == {(0, 1): 1, (2, 3): 1}
    assert solver.coloring.weight == 6


def test_dyn_greedy_decrease_keeps_heavier_edge():
    solver = DynGreedySolver(Graph(4), 1)
    feed(solver, (1, 2, 9))
    feed(solver, (0, 1, 3), (2, 3, 3))
    feed(solver, (1, 2, -2))
    assert colors_of(solver) == {(1, 2): 1}


def test_dyn_greedy_ids():
    assert DynGreedySolver(Graph(1), 1).algo is AlgorithmId.DYN_GREEDY
    randomized = DynGreedyConfig(beta=1, deterministic=False)
    assert DynGreedySolver(Graph(1), 1, randomized).algo is AlgorithmId.DYN_GREEDY_R


def test_dyn_greedy_beta(star):
    solver = DynGreedySolver(star, 2)
    assert solver.beta == 4
    solver = DynGreedySolver(star, 2, DynGreedyConfig(beta=3, deterministic=False))
    assert solver.beta == 3


def test_dyng_attempt_color_trace(path_graph):
    c = Coloring(path_graph, 1)
    c.assign((0, 1), 1)
    c.assign((2, 3), 1)
    path_graph.set_weight((1, 2), 7)
    trace = []
    dyng_attempt_color(path_graph, c, (1, 2), 2, 1, make_rng(1), trace)
    assert trace == [2, 1, 1]
    assert dict(c.colored_edges()) == {(1, 2): 1}


@given(instance_streams(max_nodes=7, max_batches=5), st.integers(1, 3), st.integers(0, 2))
def test_dyn_greedy_touched_bound(stream, k, alpha):
    solver = DynGreedySolver(Graph(stream.n), k, DynGreedyConfig(alpha=alpha))
    bound = 2 ** (alpha + 2) - 1
    for batch in stream.replay():
        solver.start_batch()
        for up in batch:
            solver.coloring.reset_touched()
            applied = solver.update(up)
            if applied.kind.is_increase:
                assert len(solver.coloring.touched) <= bound
        solver.end_batch(batch)
        assert validate(solver.graph, solver.coloring)
    assert solver.max_depth_reached <= alpha


@given(instance_streams(max_nodes=7, max_batches=5), st.integers(1, 3))
def test_dyn_greedy_deterministic_leaves_rng_alone(stream, k):
    solver = replay(stream, DynGreedySolver(Graph(stream.n), k))
    assert solver.rng.random() == make_rng(solver.config.seed).random()


@given(instance_streams(max_nodes=7, max_batches=5), st.integers(1, 3))
def test_dyn_greedy_randomized_is_seeded(stream, k):
    config = DynGreedyConfig(beta=1, deterministic=False, seed=11)
    first = replay(stream, DynGreedySolver(Graph(stream.n), k, config))
    second = replay(stream, DynGreedySolver(Graph(stream.n), k, config))
    assert colors_of(first) == colors_of(second)


def test_dyn_kec_evicts_lighter_edge():
    solver = DynKecSolver(Graph(3), 1)
    feed(solver, (0, 1, 1))
    feed(solver, (0, 2, 5))
    assert colors_of(solver) == {(0, 2): 1}


def test_dyn_kec_keeps_equal_weight():
    solver = DynKecSolver(Graph(3), 1)
    feed(solver, (0, 1, 5))
    feed(solver, (0, 2, 5))
    assert colors_of(solver) == {(0, 1): 1}


def test_dyn_kec_reoffers_capacity_on_decrease():
    solver = DynKecSolver(Graph(4), 1)
    feed(solver, (0, 1, 3))
    feed(solver, (1, 2, 5))
    feed(solver, (2, 3, 3))
    assert colors_of(solver) == {(1, 2): 1}
    feed(solver, (1, 2, -4))
    assert colors_of(solver) == {(0, 1): 1, (2, 3): 1}


def test_dyn_kec_ignores_uncolored_decrease():
    solver = DynKecSolver(Graph(3), 1)
    feed(solver, (0, 1, 5), (0, 2, 3))
    before = colors_of(solver)
    feed(solver, (0, 2, -1))
    assert colors_of(solver) == before


def test_dynkec_restores_evicted_on_failure():
    # Both ends are saturated; after evicting their lightest edges the fans around
    # 0 and 1 still end at saturated nodes, so the evicted edges get their colors back.
    g = Graph.from_edges(
        8,
        [(0, 1, 10), (0, 2, 5), (2, 3, 1), (1, 4, 5), (4, 5, 1), (0, 6, 1), (1, 7, 1)],
    )
    c = Coloring(g, 2)
    for e, col in [
        ((0, 2), 2),
        ((2, 3), 1),
        ((1, 4), 1),
        ((4, 5), 2),
        ((0, 6), 1),
        ((1, 7), 2),
    ]:
        c.assign(e, col)
    before = dict(c.colored_edges())
    dynkec_on_increase(g, c, (0, 1))
    assert dict(c.colored_edges()) == before
    assert validate(g, c)


@given(instance_streams(max_nodes=7, max_batches=5), st.integers(1, 3))
def test_dyn_kec_proper(stream, k):
    replay(stream, DynKecSolver(Graph(stream.n), k))


@pytest.mark.parametrize("kind", list(UpdateClass))
def test_update_class_direction(kind):
    assert kind.is_increase != kind.is_decrease


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_dyn_kec_work_per_update_is_bounded_by_n(k):
    stream = gen_rmat_dynamic(RmatParams(log_nodes=6, density=4, update_batches=20, seed=k))
    n = stream.n
    solver = DynKecSolver(Graph(n), k)
    for batch in stream.replay():
        solver.start_batch()
        for up in batch:
            solver.coloring.reset_touched()
            solver.update(up)
            touched = solver.coloring.touched
            # Two kEC calls per update, each a fan rotation plus one alternating path.
            assert len(touched) <= 4 * n + 1
            assert len({x for e in touched for x in e}) <= n
        solver.end_batch(batch)
        assert validate(solver.graph, solver.coloring)
