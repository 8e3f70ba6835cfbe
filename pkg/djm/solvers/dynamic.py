"""Per-update solvers: dynamic greedy (depth-limited swap-ins) and dynamic kEC."""

import numpy as np

from djm.enums import AlgorithmId, UpdateClass
from djm.graph import (
    AppliedUpdate,
    Coloring,
    EdgeKey,
    Graph,
    colored_neighborhood_weight,
    common_free_color,
)
from djm.logs import log
from djm.primitives import best_pair, sample_incident, swap_in, swap_out_sampled
from djm.schemas import DynGreedyConfig
from djm.solvers.base import Solver
from djm.solvers.static import by_weight, k_color_edge
from djm.utils import make_rng


def sample_colors(k: int, beta: int, rng: np.random.Generator) -> list[int]:
    """`beta` distinct colors out of `1..k`, or all of them if `beta >= k`."""
    if beta >= k:
        return list(range(1, k + 1))
    return sorted((rng.choice(k, size=beta, replace=False) + 1).tolist())


def dyng_attempt_color(
    g: Graph,
    c: Coloring,
    e: EdgeKey,
    depth: int,
    beta: int,
    rng: np.random.Generator,
    trace: list[int] | None = None,
) -> None:
    """Colors `e` with a free color, or swaps it in against its lightest color class.

    Edges displaced by the swap are retried with `depth - 1` while `depth > 0`.
    `trace` collects the depth of every attempt for instrumentation.
    """
    if trace is not None:
        trace.append(depth)
    col = common_free_color(g, c, e)
    if col is not None:
        c.assign(e, col)
        return

    candidates = sample_colors(c.k, beta, rng)
    col = min(candidates, key=lambda x: (colored_neighborhood_weight(g, c, e, x), x))
    result = swap_in(g, c, e, col)
    if result and depth > 0:
        for f in result.uncolored:
            if not c.is_colored(f):
                dyng_attempt_color(g, c, f, depth - 1, beta, rng, trace)


def dyng_decrease_weight(
    g: Graph, c: Coloring, e: EdgeKey, beta: int, rng: np.random.Generator
) -> None:
    """Swaps a lighter colored edge out for heavier uncolored neighbors, then retries it."""
    if swap_out_sampled(g, c, e, beta, rng):
        dyng_attempt_color(g, c, e, 0, beta, rng)


def dyng_fill_hole(
    g: Graph, c: Coloring, e: EdgeKey, col: int, beta: int, rng: np.random.Generator
) -> None:
    """Reuses the color freed by deleting `e` for up to two uncolored neighbors."""
    u, v = e
    _, pair = best_pair(
        g,
        c,
        u,
        v,
        col,
        sample_incident(g, u, None, beta, rng),
        sample_incident(g, v, None, beta, rng),
    )
    for f in pair:
        c.assign(f, col)


class DynGreedySolver(Solver):
    """Dynamic greedy with recursion depth `alpha` and sample size `beta`."""

    def __init__(
        self,
        graph: Graph,
        k: int,
        config: DynGreedyConfig | None = None,
        **kwargs,
    ):
        super().__init__(graph, k, **kwargs)
        self.config = config or DynGreedyConfig()
        self.rng = make_rng(self.config.seed)
        self.algo = (
            AlgorithmId.DYN_GREEDY
            if self.config.deterministic
            else AlgorithmId.DYN_GREEDY_R
        )
        self.max_depth_reached = 0

    @property
    def beta(self) -> int:
        return self.config.effective_beta(self.k, self.graph.max_degree)

    def on_update(self, applied: AppliedUpdate) -> None:
        g, c, key = self.graph, self.coloring, applied.key
        if applied.kind is UpdateClass.DELETION:
            if applied.was_colored:
                dyng_fill_hole(g, c, key, applied.color_before, self.beta, self.rng)
        elif applied.kind.is_increase:
            if not c.is_colored(key):
                trace = []
                dyng_attempt_color(
                    g, c, key, self.config.alpha, self.beta, self.rng, trace
                )
                reached = self.config.alpha - min(trace)
                self.max_depth_reached = max(self.max_depth_reached, reached)
        elif applied.kind.is_decrease and applied.was_colored:
            dyng_decrease_weight(g, c, key, self.beta, self.rng)


def _lightest_holder(g: Graph, c: Coloring, x: int) -> EdgeKey | None:
    """The lightest colored edge at `x` if every color is used there."""
    if c.has_free_color(x):
        return None
    return min(c.occupancy(x).values(), key=lambda f: (g.weight(f), f))


def dynkec_on_increase(g: Graph, c: Coloring, e: EdgeKey) -> None:
    """Colors `e`, first evicting the lightest edge at saturated endpoints if worth it."""
    evict = [f for x in e if (f := _lightest_holder(g, c, x)) is not None]
    if not evict:
        k_color_edge(g, c, e)
        return
    if sum(g.weight(f) for f in evict) >= g.weight(e):
        return

    saved = [(f, c.unassign(f)) for f in evict]
    if not k_color_edge(g, c, e):
        for f, col in saved:
            c.assign(f, col)
        return
    for f, _ in saved:
        col = common_free_color(g, c, f)
        if col is not None:
            c.assign(f, col)


def dynkec_on_decrease(g: Graph, c: Coloring, e: EdgeKey) -> None:
    """Offers the freed capacity at both ends of `e` to their heaviest uncolored edges."""
    candidates = set()
    for x in e:
        uncolored = [f for f in g.incident(x) if f != e and not c.is_colored(f)]
        if uncolored:
            candidates.add(by_weight(g, uncolored)[0])
    for f in by_weight(g, candidates):
        if not c.is_colored(f):
            dynkec_on_increase(g, c, f)


class DynKecSolver(Solver):
    algo = AlgorithmId.DYN_KEC

    def on_update(self, applied: AppliedUpdate) -> None:
        g, c, key = self.graph, self.coloring, applied.key
        if applied.kind.is_increase:
            if not c.is_colored(key):
                dynkec_on_increase(g, c, key)
        elif applied.kind.is_decrease and applied.was_colored:
            dynkec_on_decrease(g, c, key)
        else:
            log.debug("dyn-kec ignores %s of uncolored %s", applied.kind, key)
