"""Hybrid solvers: per batch, either run a dynamic solver inline or rebuild with kEC."""

from djm.enums import AlgorithmId, SolveMode
from djm.graph import AppliedUpdate, Batch
from djm.logs import log
from djm.solvers.base import Solver
from djm.solvers.enhancers import post_process, uncolored_edges
from djm.solvers.static import kec_fill


def choose_mode(prev_batch_size: int | None, n: int) -> SolveMode:
    """Dynamic iff the previous batch was smaller than the node count."""
    if prev_batch_size is None:
        return SolveMode.STATIC
    return SolveMode.DYNAMIC if prev_batch_size < n else SolveMode.STATIC


class HybridSolver(Solver):
    """Switches between `dynamic` (sharing this solver's coloring) and a kEC rebuild.

    The mode of a batch is fixed before its first update, from the size of the
    previous batch; the first batch is always rebuilt.
    """

    def __init__(
        self,
        algo: AlgorithmId,
        dynamic: Solver,
        postprocess: bool = False,
        postprocess_static: bool = False,
        prev_batch_size: int | None = None,
    ):
        super().__init__(dynamic.graph, dynamic.k, coloring=dynamic.coloring)
        self.algo = algo
        self.dynamic = dynamic
        self.postprocess = postprocess
        self.postprocess_static = postprocess_static
        self.prev_batch_size = prev_batch_size
        self.mode = choose_mode(prev_batch_size, self.graph.n)
        self.modes: list[SolveMode] = []

    def start_batch(self) -> None:
        self.mode = choose_mode(self.prev_batch_size, self.graph.n)
        self.modes.append(self.mode)
        if self.mode is SolveMode.DYNAMIC:
            self.dynamic.start_batch()

    def on_update(self, applied: AppliedUpdate) -> None:
        if self.mode is SolveMode.DYNAMIC:
            self.dynamic.on_update(applied)

    def end_batch(self, batch: Batch) -> None:
        if self.mode is SolveMode.DYNAMIC:
            self.dynamic.end_batch(batch)
        else:
            self.coloring.clear()
            kec_fill(self.graph, self.coloring)
        if self.postprocess and (
            self.mode is SolveMode.DYNAMIC or self.postprocess_static
        ):
            post_process(self.graph, self.coloring, uncolored_edges(self.graph, self.coloring))
        log.debug("%s: batch of %d solved in %s mode", self.algo, batch.size, self.mode)
        self.prev_batch_size = batch.size
