"""Update filter, post-processing towards the 1/2-approximation invariant, and batch-2apx.

The invariant: for every uncolored edge e and every color col, the edges next to e
holding col weigh at least w(e). Any coloring satisfying it is within a factor 1/2
of the optimum.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from djm.enums import AlgorithmId, FilterDecision
from djm.exceptions import InvariantError
from djm.graph import (
    AppliedUpdate,
    Batch,
    Coloring,
    EdgeKey,
    Graph,
    colored_neighborhood_weight,
    common_free_color,
)
from djm.logs import log
from djm.primitives import swap_in
from djm.schemas import FilterConfig
from djm.solvers.base import Solver, SolverWrapper
from djm.solvers.batch import BatchSolver

# --- filter ---


def filter_decision(t: float, w_old: int, w_new: int) -> FilterDecision:
    """Drops weight changes whose ratio stays within `[1/t, t]`; never insertions or deletions."""
    if w_old == 0 or w_new == 0:
        return FilterDecision.KEEP
    ratio = Fraction(t)
    if w_old <= ratio * w_new and w_new <= ratio * w_old:
        return FilterDecision.DROP
    return FilterDecision.KEEP


class FilteredSolver(SolverWrapper):
    """Applies every update to the graph but forwards only significant ones."""

    def __init__(self, inner: Solver, config: FilterConfig):
        super().__init__(inner)
        self.config = config
        self.dropped = 0

    def on_update(self, applied: AppliedUpdate) -> None:
        decision = filter_decision(self.config.t, applied.w_old, applied.w_new)
        if decision is FilterDecision.DROP:
            self.dropped += 1
            return
        self.inner.on_update(applied)


# --- post-processing ---


class ViolationQueue:
    """Max-weight queue of edges; each edge enters at most once per queue."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self._heap: list[tuple[int, EdgeKey]] = []
        self._seen: set[EdgeKey] = set()
        self.enqueued = 0

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def push(self, e: EdgeKey) -> bool:
        if e in self._seen:
            return False
        self._seen.add(e)
        self.enqueued += 1
        heapq.heappush(self._heap, (-self.graph.weight(e), e))
        return True

    def pop(self) -> EdgeKey:
        return heapq.heappop(self._heap)[1]


def violating_color(g: Graph, c: Coloring, e: EdgeKey) -> int | None:
    """First color whose neighborhood around uncolored `e` is lighter than `e`."""
    w = g.weight(e)
    for col in c.colors:
        if colored_neighborhood_weight(g, c, e, col) < w:
            return col
    return None


def dominance_violations(g: Graph, c: Coloring) -> list[tuple[EdgeKey, int]]:
    """All (uncolored edge, color) pairs breaking the invariant."""
    violations = []
    for e, w in g.weighted_edges():
        if c.is_colored(e):
            continue
        for col in c.colors:
            if colored_neighborhood_weight(g, c, e, col) < w:
                violations.append((e, col))
    return violations


@dataclass
class PostProcessStats:
    passes: int = 0
    swaps: int = 0
    colored: int = 0
    max_enqueued: int = 0


def _run_queue(
    g: Graph, c: Coloring, seeds: Iterable[EdgeKey], stats: PostProcessStats
) -> list[EdgeKey]:
    """One queue pass; returns the edges displaced by swaps."""
    queue = ViolationQueue(g)
    for e in seeds:
        queue.push(e)
    displaced = []
    while queue:
        e = queue.pop()
        if not g.has_edge(e) or c.is_colored(e):
            continue
        col = common_free_color(g, c, e)
        if col is not None:
            c.assign(e, col)
            stats.colored += 1
            continue
        col = violating_color(g, c, e)
        if col is None:
            continue
        result = swap_in(g, c, e, col)
        if not result:
            raise InvariantError(f"Swap-in of {e} with color {col} did not fire.")
        stats.swaps += 1
        for f in result.uncolored:
            queue.push(f)
        displaced.extend(result.uncolored)
    stats.max_enqueued = max(stats.max_enqueued, queue.enqueued)
    return displaced


def post_process(g: Graph, c: Coloring, seeds: Iterable[EdgeKey]) -> PostProcessStats:
    """Restores the invariant around `seeds` (all uncolored edges for a global fix).

    A swap frees its color at the far ends of the displaced edges, so edges there
    that were already dequeued are checked again in a further pass.
    """
    stats = PostProcessStats()
    pending = list(seeds)
    while pending:
        stats.passes += 1
        displaced = _run_queue(g, c, pending, stats)
        recheck: set[EdgeKey] = set()
        for f in displaced:
            for x in f:
                recheck.update(g.incident(x))
        pending = sorted(
            e
            for e in recheck
            if not c.is_colored(e) and violating_color(g, c, e) is not None
        )
    log.debug(
        "Post-processing: %d passes, %d swaps, %d free colorings",
        stats.passes,
        stats.swaps,
        stats.colored,
    )
    return stats


def uncolored_edges(g: Graph, c: Coloring) -> list[EdgeKey]:
    return [e for e in g.edges() if not c.is_colored(e)]


class PostProcessedSolver(SolverWrapper):
    """Runs a global post-processing pass after every batch of the wrapped solver."""

    def end_batch(self, batch: Batch) -> None:
        self.inner.end_batch(batch)
        post_process(self.graph, self.coloring, uncolored_edges(self.graph, self.coloring))


# --- batch-2apx ---


def collect_seeds(
    g: Graph, c: Coloring, applied: Iterable[AppliedUpdate]
) -> list[EdgeKey]:
    """Edges that may break the invariant after a batch of updates."""
    seeds: set[EdgeKey] = set()
    for a in applied:
        if g.has_edge(a.key) and not c.is_colored(a.key):
            seeds.add(a.key)
        if a.was_colored and a.kind.is_decrease:
            for x in a.key:
                seeds.update(f for f in g.incident(x) if not c.is_colored(f))
    return sorted(seeds)


def batch_2apx(g: Graph, c: Coloring, applied: Iterable[AppliedUpdate]) -> PostProcessStats:
    return post_process(g, c, collect_seeds(g, c, applied))


class Batch2ApxSolver(BatchSolver):
    algo = AlgorithmId.BATCH_2APX

    def end_batch(self, batch: Batch) -> None:
        batch_2apx(self.graph, self.coloring, self.pending)
