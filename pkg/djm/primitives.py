"""Local exchange moves shared by the greedy-family solvers and the post-processor."""

from dataclasses import dataclass
from typing import Collection, Iterable

import numpy as np

from djm.exceptions import ContractViolationError
from djm.graph import Coloring, EdgeKey, Graph

_TOP = 2


@dataclass(frozen=True, slots=True)
class SwapResult:
    """Outcome of an exchange; truthy iff the coloring changed."""

    changed: bool
    colored: tuple[EdgeKey, ...] = ()
    uncolored: tuple[EdgeKey, ...] = ()

    def __bool__(self) -> bool:
        return self.changed


NO_CHANGE = SwapResult(False)


def swap_in(g: Graph, c: Coloring, e: EdgeKey, col: int) -> SwapResult:
    """Colors `e` with `col` if it outweighs the edges holding `col` next to it.

    The displaced edges (at most one per endpoint) are returned as `uncolored`.
    """
    if not g.has_edge(e):
        raise ContractViolationError(f"Cannot swap in absent edge {e}.")
    if c.is_colored(e):
        raise ContractViolationError(f"Cannot swap in colored edge {e}.")

    displaced = [h for x in e if (h := c.holder(x, col)) is not None]
    if g.weight(e) <= sum(g.weight(h) for h in displaced):
        return NO_CHANGE
    for h in displaced:
        c.unassign(h)
    c.assign(e, col)
    return SwapResult(True, colored=(e,), uncolored=tuple(displaced))


def _side_candidates(
    g: Graph,
    c: Coloring,
    at: int,
    other: int,
    col: int,
    pool: Iterable[EdgeKey],
    within: Collection[EdgeKey] | None,
) -> list[EdgeKey]:
    """Heaviest uncolored edges `{at, x}` (x != other) that could take `col` at x."""
    candidates = []
    for f in pool:
        x = f[1] if f[0] == at else f[0]
        if x == other or c.is_colored(f) or not c.is_free(x, col):
            continue
        if within is not None and f not in within:
            continue
        candidates.append(f)
    candidates.sort(key=lambda f: (-g.weight(f), f))
    return candidates[:_TOP]


def best_pair(
    g: Graph,
    c: Coloring,
    u: int,
    v: int,
    col: int,
    u_pool: Iterable[EdgeKey],
    v_pool: Iterable[EdgeKey],
    within: Collection[EdgeKey] | None = None,
) -> tuple[int, tuple[EdgeKey, ...]]:
    """Best set of at most two non-adjacent uncolored edges, one at `u` and one at `v`,
    that can all take `col` once the slot between `u` and `v` is vacated.

    Returns `(total weight, edges)`; ties go to the lexicographically smaller key set.
    """
    u_side = _side_candidates(g, c, u, v, col, u_pool, within)
    v_side = _side_candidates(g, c, v, u, col, v_pool, within)

    options: list[tuple[EdgeKey, ...]] = [(f,) for f in u_side + v_side]
    for f in u_side:
        far_f = f[1] if f[0] == u else f[0]
        for h in v_side:
            far_h = h[1] if h[0] == v else h[0]
            if far_f != far_h:
                options.append(tuple(sorted((f, h))))
    if not options:
        return 0, ()
    best = min(options, key=lambda opt: (-sum(g.weight(f) for f in opt), opt))
    return sum(g.weight(f) for f in best), best


def _exchange_out(
    g: Graph,
    c: Coloring,
    e: EdgeKey,
    u_pool: Iterable[EdgeKey],
    v_pool: Iterable[EdgeKey],
    within: Collection[EdgeKey] | None,
) -> SwapResult:
    col = c.color_of(e)
    if col is None:
        raise ContractViolationError(f"Cannot swap out uncolored edge {e}.")
    u, v = e
    total, pair = best_pair(g, c, u, v, col, u_pool, v_pool, within)
    if total <= g.weight(e):
        return NO_CHANGE
    c.unassign(e)
    for f in pair:
        c.assign(f, col)
    return SwapResult(True, colored=pair, uncolored=(e,))


def swap_out(
    g: Graph, c: Coloring, e: EdgeKey, within: Collection[EdgeKey] | None = None
) -> SwapResult:
    """Replaces colored `e` by up to two uncolored neighbors of larger total weight.

    `within` restricts the replacement candidates to a set of edges.
    """
    u, v = e
    return _exchange_out(g, c, e, g.incident(u), g.incident(v), within)


def sample_incident(
    g: Graph, v: int, exclude: EdgeKey | None, beta: int, rng: np.random.Generator
) -> list[EdgeKey]:
    """Up to `beta` incident edges of `v`, drawn without replacement.

    Takes all of them (and leaves `rng` untouched) when there are at most `beta`.
    """
    pool = [f for f in g.incident(v) if f != exclude]
    if len(pool) <= beta:
        return pool
    picks = rng.choice(len(pool), size=beta, replace=False)
    return [pool[i] for i in sorted(picks.tolist())]


def swap_out_sampled(
    g: Graph, c: Coloring, e: EdgeKey, beta: int, rng: np.random.Generator
) -> SwapResult:
    """`swap_out` over `beta` sampled incident edges per endpoint of `e`."""
    if not c.is_colored(e):
        raise ContractViolationError(f"Cannot swap out uncolored edge {e}.")
    u, v = e
    return _exchange_out(
        g,
        c,
        e,
        sample_incident(g, u, e, beta, rng),
        sample_incident(g, v, e, beta, rng),
        None,
    )
