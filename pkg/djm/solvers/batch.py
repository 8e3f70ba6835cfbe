"""Batch-dynamic solvers: re-solve only the neighborhood of the updated edges."""

from dataclasses import dataclass, field

from djm.enums import AlgorithmId
from djm.graph import AppliedUpdate, Batch, Coloring, EdgeKey, EdgeUpdate, Graph
from djm.logs import log
from djm.schemas import DEFAULT_THETA, NodeCenteredConfig
from djm.solvers.base import Solver
from djm.solvers.static import greedy_rounds, node_centered_pass


@dataclass(frozen=True)
class AffectedSet:
    """Edges updated or adjacent to an updated (or deleted) edge, and the updated nodes."""

    edges: frozenset[EdgeKey] = field(default_factory=frozenset)
    nodes: frozenset[int] = field(default_factory=frozenset)


def collect_affected(g: Graph, batch: Batch) -> AffectedSet:
    edges: set[EdgeKey] = set()
    nodes: set[int] = set()
    for key in batch.touched:
        if g.has_edge(key):
            edges.add(key)
        for x in key:
            nodes.add(x)
            edges.update(g.incident(x))
    return AffectedSet(frozenset(edges), frozenset(nodes))


def batch_greedy(g: Graph, c: Coloring, batch: Batch, local_swaps: bool = False) -> None:
    affected = collect_affected(g, batch)
    for e in affected.edges:
        if c.is_colored(e):
            c.unassign(e)
    greedy_rounds(g, c, affected.edges, local_swaps, within=affected.edges)


def batch_node_centered(
    g: Graph, c: Coloring, batch: Batch, theta: float = DEFAULT_THETA
) -> None:
    theta = NodeCenteredConfig(theta=theta).theta
    affected = collect_affected(g, batch)
    for v in affected.nodes:
        for e in g.incident(v):
            if c.is_colored(e):
                c.unassign(e)
    node_centered_pass(g, c, affected.nodes, theta, g.max_weight)


class BatchSolver(Solver):
    """Collects the updates of a batch and repairs the coloring once at the end."""

    def __init__(self, graph: Graph, k: int, **kwargs):
        super().__init__(graph, k, **kwargs)
        self.pending: list[AppliedUpdate] = []

    def start_batch(self) -> None:
        self.pending = []

    def on_update(self, applied: AppliedUpdate) -> None:
        self.pending.append(applied)

    def forwarded(self) -> Batch:
        """The updates that reached this solver (a filter may have dropped some)."""
        return Batch(
            tuple(
                EdgeUpdate(a.key[0], a.key[1], a.w_new - a.w_old) for a in self.pending
            )
        )


class BatchGreedySolver(BatchSolver):
    def __init__(self, graph: Graph, k: int, local_swaps: bool = False, **kwargs):
        super().__init__(graph, k, **kwargs)
        self.local_swaps = local_swaps
        self.algo = (
            AlgorithmId.BATCH_GREEDY_L if local_swaps else AlgorithmId.BATCH_GREEDY
        )

    def end_batch(self, batch: Batch) -> None:
        forwarded = self.forwarded()
        batch_greedy(self.graph, self.coloring, forwarded, self.local_swaps)
        log.debug("%s re-solved around %d updates", self.algo, len(forwarded))


class BatchNodeCenteredSolver(BatchSolver):
    algo = AlgorithmId.BATCH_NC

    def __init__(self, graph: Graph, k: int, theta: float = DEFAULT_THETA, **kwargs):
        super().__init__(graph, k, **kwargs)
        self.theta = NodeCenteredConfig(theta=theta).theta

    def end_batch(self, batch: Batch) -> None:
        batch_node_centered(self.graph, self.coloring, self.forwarded(), self.theta)
