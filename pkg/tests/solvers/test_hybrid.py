import pytest
from hypothesis import given
from hypothesis import strategies as st

from djm.enums import AlgorithmId, SolveMode
from djm.graph import Graph
from djm.instances import InstanceStream
from djm.schemas import DynGreedyConfig
from djm.solvers import (
    DynGreedySolver,
    DynKecSolver,
    HybridSolver,
    KecSolver,
    choose_mode,
    dominance_violations,
    kec,
    make_solver,
)
from tests import colors_of, replay, solver_for
from tests.strategies import instance_streams


@pytest.mark.parametrize(
    "prev, n, mode",
    [
        (None, 10, SolveMode.STATIC),
        (0, 10, SolveMode.DYNAMIC),
        (9, 10, SolveMode.DYNAMIC),
        (10, 10, SolveMode.STATIC),
        (25, 10, SolveMode.STATIC),
    ],
)
def test_choose_mode(prev, n, mode):
    assert choose_mode(prev, n) is mode


@pytest.mark.parametrize("algo", ["hybrid-kec", "hybrid-greedy-r"])
def test_hybrid_modes(small_stream, algo):
    solver = replay(small_stream, solver_for(algo, small_stream, 2))
    assert isinstance(solver, HybridSolver)
    assert solver.modes == [SolveMode.STATIC, SolveMode.STATIC, SolveMode.DYNAMIC]
    assert solver.prev_batch_size == 3


@pytest.mark.parametrize("algo", ["hybrid-kec", "hybrid-greedy-r"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_hybrid_static_batches_match_kec(small_stream, algo, k):
    solver = solver_for(algo, small_stream, k)
    batches = small_stream.replay()
    for _ in range(2):
        solver.process_batch(next(batches))
        assert colors_of(solver) == dict(kec(solver.graph, k).colored_edges())


def _twin(algo: AlgorithmId, graph: Graph, k: int, coloring, seed: int):
    if algo is AlgorithmId.HYBRID_KEC:
        return DynKecSolver(graph, k, coloring=coloring)
    config = DynGreedyConfig(beta=1, deterministic=False, seed=seed)
    return DynGreedySolver(graph, k, config, coloring=coloring)


@given(
    instance_streams(min_nodes=8, max_nodes=8, max_batch=5),
    st.integers(min_value=1, max_value=3),
    st.sampled_from([AlgorithmId.HYBRID_KEC, AlgorithmId.HYBRID_GREEDY_R]),
)
def test_hybrid_dynamic_batches_match_dynamic_solver(stream, k, algo):
    # Batches stay below n = 8 updates, so everything after the first one
    # runs in dynamic mode.
    solver = make_solver(algo, Graph(stream.n), k, seed=4)
    batches = list(stream.replay())

    static = KecSolver(Graph(stream.n), k)
    static.process_batch(batches[0])
    twin = _twin(algo, static.graph, k, static.coloring, seed=4)

    solver.process_batch(batches[0])
    assert colors_of(solver) == colors_of(static)
    for batch in batches[1:]:
        solver.process_batch(batch)
        twin.process_batch(batch)
        assert solver.mode is SolveMode.DYNAMIC
        assert colors_of(solver) == colors_of(twin)


@given(
    instance_streams(min_nodes=8, max_nodes=8, max_batch=5),
    st.integers(min_value=1, max_value=3),
)
def test_hybrid_postprocess_after_dynamic_batches(stream, k):
    solver = make_solver("hybrid-kec", Graph(stream.n), k, postprocess=True)
    for batch in stream.replay():
        solver.process_batch(batch)
        if solver.mode is SolveMode.DYNAMIC:
            assert dominance_violations(solver.graph, solver.coloring) == []


def test_hybrid_postprocess_static(small_stream):
    dynamic = DynKecSolver(Graph(small_stream.n), 2)
    solver = HybridSolver(
        AlgorithmId.HYBRID_KEC, dynamic, postprocess=True, postprocess_static=True
    )
    for batch in small_stream.replay():
        solver.process_batch(batch)
        assert dominance_violations(solver.graph, solver.coloring) == []


def test_hybrid_shares_coloring_with_dynamic_side():
    dynamic = DynKecSolver(Graph(4), 1)
    solver = HybridSolver(AlgorithmId.HYBRID_KEC, dynamic, prev_batch_size=1)
    assert solver.coloring is dynamic.coloring
    assert solver.mode is SolveMode.DYNAMIC


def test_hybrid_mode_lags_batch_sizes():
    stream = InstanceStream(
        n=4,
        batches=[
            [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5), (2, 3, 6)],
            [(0, 1, 9)],
            [(0, 2, 7), (0, 3, 8), (1, 2, 9), (1, 3, 10), (2, 3, 11)],
            [(0, 1, 1)],
        ],
    )
    solver = replay(stream, solver_for("hybrid-kec", stream, 2))
    assert solver.modes == [
        SolveMode.STATIC,
        SolveMode.STATIC,
        SolveMode.DYNAMIC,
        SolveMode.STATIC,
    ]
