"""Generic solver protocol.

The driver hands every update of a batch to `Solver.update()` one at a time;
dynamic solvers repair the coloring inline, batch and static solvers collect
the updates and act in `end_batch()`.
"""

from abc import ABC, abstractmethod

from djm.enums import AlgorithmId
from djm.graph import (
    AppliedUpdate,
    Batch,
    Coloring,
    EdgeUpdate,
    Graph,
    apply_update,
)


class Solver(ABC):
    algo: AlgorithmId

    def __init__(self, graph: Graph, k: int, coloring: Coloring | None = None):
        """
        Solver owning a (graph, coloring) pair.

        Args:
            graph: The demand graph; the solver is its only writer.
            k: Number of matchings.
            coloring: An existing coloring of `graph` to maintain (a fresh one otherwise).
        """
        self.graph = graph
        self.coloring = Coloring(graph, k) if coloring is None else coloring

    def __repr__(self):
        return f"{type(self).__name__}(k={self.k}, graph={self.graph!r})"

    @property
    def k(self) -> int:
        return self.coloring.k

    def start_batch(self) -> None:
        pass

    def update(self, up: EdgeUpdate) -> AppliedUpdate:
        """Applies one update to the graph and notifies the solver."""
        applied = apply_update(self.graph, self.coloring, up)
        self.on_update(applied)
        return applied

    @abstractmethod
    def on_update(self, applied: AppliedUpdate) -> None:  # pragma: no cover
        pass

    def end_batch(self, batch: Batch) -> None:
        pass

    def process_batch(self, batch: Batch) -> None:
        self.start_batch()
        for up in batch:
            self.update(up)
        self.end_batch(batch)


class SolverWrapper(Solver):
    """A solver that decorates another one and shares its graph and coloring."""

    def __init__(self, inner: Solver):
        self.inner = inner

    def __repr__(self):
        return f"{type(self).__name__}({self.inner!r})"

    @property
    def algo(self) -> AlgorithmId:
        return self.inner.algo

    @property
    def graph(self) -> Graph:
        return self.inner.graph

    @property
    def coloring(self) -> Coloring:
        return self.inner.coloring

    def start_batch(self) -> None:
        self.inner.start_batch()

    def on_update(self, applied: AppliedUpdate) -> None:
        self.inner.on_update(applied)

    def end_batch(self, batch: Batch) -> None:
        self.inner.end_batch(batch)
