"""Solvers for k disjoint matchings under edge-weight updates."""

from djm.solvers.base import Solver, SolverWrapper
from djm.solvers.batch import (
    AffectedSet,
    BatchGreedySolver,
    BatchNodeCenteredSolver,
    batch_greedy,
    batch_node_centered,
    collect_affected,
)
from djm.solvers.dynamic import (
    DynGreedySolver,
    DynKecSolver,
    dyng_attempt_color,
    dyng_decrease_weight,
    dynkec_on_decrease,
    dynkec_on_increase,
)
from djm.solvers.enhancers import (
    Batch2ApxSolver,
    FilteredSolver,
    PostProcessedSolver,
    ViolationQueue,
    batch_2apx,
    dominance_violations,
    filter_decision,
    post_process,
)
from djm.solvers.hybrid import HybridSolver, choose_mode
from djm.solvers.registry import make_solver, parse_algorithm
from djm.solvers.static import (
    KecSolver,
    GreedySolver,
    NodeCenteredSolver,
    greedy_it,
    k_color_edge,
    kec,
    node_centered,
)
