"""Algorithm presets and suffix composition (`-p` post-processing, `-f` filter)."""

import re

from djm.enums import AlgorithmId
from djm.exceptions import DjmValueError
from djm.graph import Graph
from djm.schemas import (
    DEFAULT_ALPHA,
    DEFAULT_SEED,
    DEFAULT_THETA,
    DynGreedyConfig,
    FilterConfig,
)
from djm.solvers.base import Solver
from djm.solvers.batch import BatchGreedySolver, BatchNodeCenteredSolver
from djm.solvers.dynamic import DynGreedySolver, DynKecSolver
from djm.solvers.enhancers import Batch2ApxSolver, FilteredSolver, PostProcessedSolver
from djm.solvers.hybrid import HybridSolver
from djm.solvers.static import GreedySolver, KecSolver, NodeCenteredSolver

_SUFFIX_RE = re.compile(r"^-?(?P<flags>p?f?)$")


def parse_algorithm(label: str) -> tuple[AlgorithmId, bool, bool]:
    """Splits a label such as `dyn-greedy-rpf` or `kec-p` into (id, postprocess, filter)."""
    label = label.strip().lower()
    for algo in sorted(AlgorithmId, key=lambda a: len(a.value), reverse=True):
        if label == algo.value:
            return algo, False, False
        if label.startswith(algo.value):
            match = _SUFFIX_RE.match(label[len(algo.value) :])
            if match and match["flags"]:
                return algo, "p" in match["flags"], "f" in match["flags"]
    raise DjmValueError(f'Unknown algorithm "{label}".')


def _dyn_greedy(graph: Graph, k: int, randomized: bool, alpha: int, seed: int):
    config = (
        DynGreedyConfig(alpha=alpha, beta=1, deterministic=False, seed=seed)
        if randomized
        else DynGreedyConfig(alpha=alpha, seed=seed)
    )
    return DynGreedySolver(graph, k, config)


def make_solver(
    algo: AlgorithmId | str,
    graph: Graph,
    k: int,
    *,
    postprocess: bool = False,
    filter_config: FilterConfig | None = None,
    seed: int = DEFAULT_SEED,
    alpha: int = DEFAULT_ALPHA,
    theta: float = DEFAULT_THETA,
) -> Solver:
    """Builds the solver preset for `algo` over `graph`, wrapped as the flags ask."""
    algo = AlgorithmId(algo)

    if algo in (AlgorithmId.HYBRID_GREEDY_R, AlgorithmId.HYBRID_KEC):
        dynamic = (
            _dyn_greedy(graph, k, True, alpha, seed)
            if algo is AlgorithmId.HYBRID_GREEDY_R
            else DynKecSolver(graph, k)
        )
        if filter_config is not None:
            dynamic = FilteredSolver(dynamic, filter_config)
        return HybridSolver(algo, dynamic, postprocess=postprocess)

    match algo:
        case AlgorithmId.GREEDY | AlgorithmId.GREEDY_L:
            solver = GreedySolver(graph, k, local_swaps=algo is AlgorithmId.GREEDY_L)
        case AlgorithmId.NODE_CENTERED:
            solver = NodeCenteredSolver(graph, k, theta=theta)
        case AlgorithmId.KEC:
            solver = KecSolver(graph, k)
        case AlgorithmId.DYN_GREEDY | AlgorithmId.DYN_GREEDY_R:
            solver = _dyn_greedy(graph, k, algo.randomized, alpha, seed)
        case AlgorithmId.DYN_KEC:
            solver = DynKecSolver(graph, k)
        case AlgorithmId.BATCH_GREEDY | AlgorithmId.BATCH_GREEDY_L:
            solver = BatchGreedySolver(
                graph, k, local_swaps=algo is AlgorithmId.BATCH_GREEDY_L
            )
        case AlgorithmId.BATCH_NC:
            solver = BatchNodeCenteredSolver(graph, k, theta=theta)
        case AlgorithmId.BATCH_2APX:
            solver = Batch2ApxSolver(graph, k)

    if filter_config is not None:
        solver = FilteredSolver(solver, filter_config)
    if postprocess:
        solver = PostProcessedSolver(solver)
    return solver
