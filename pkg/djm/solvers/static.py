"""From-scratch solvers: iterated greedy, node-centered, and kEC (Misra-Gries style)."""

from typing import Collection, Iterable

from djm.enums import AlgorithmId
from djm.exceptions import ContractViolationError, InvariantError
from djm.graph import (
    AppliedUpdate,
    Batch,
    Coloring,
    EdgeKey,
    Graph,
    common_free_color,
    edge_key,
)
from djm.logs import log
from djm.primitives import swap_out
from djm.schemas import DEFAULT_THETA, NodeCenteredConfig
from djm.solvers.base import Solver


def by_weight(g: Graph, edges: Iterable[EdgeKey]) -> list[EdgeKey]:
    """Sorts edges by non-increasing weight, ties by key."""
    return sorted(edges, key=lambda e: (-g.weight(e), e))


# --- greedy ---


def greedy_rounds(
    g: Graph,
    c: Coloring,
    edges: Iterable[EdgeKey],
    local_swaps: bool,
    within: Collection[EdgeKey] | None = None,
) -> None:
    """Runs one greedy round per color over `edges` (optionally with local swaps).

    Local swaps visit the edges colored in the same round, including the ones a
    swap brings in, until a full pass changes nothing; `within` limits the
    replacement candidates.
    """
    order = by_weight(g, edges)
    for col in c.colors:
        fresh = []
        for e in order:
            u, v = e
            if not c.is_colored(e) and c.is_free(u, col) and c.is_free(v, col):
                c.assign(e, col)
                fresh.append(e)
        if local_swaps:
            swap_round(g, c, col, fresh, within)


def swap_round(
    g: Graph,
    c: Coloring,
    col: int,
    seeds: Iterable[EdgeKey],
    within: Collection[EdgeKey] | None = None,
) -> None:
    # Every swap strictly increases w(C), so this terminates.
    members = dict.fromkeys(seeds)
    changed = True
    while changed:
        changed = False
        for e in list(members):
            if c.color_of(e) != col:
                continue
            result = swap_out(g, c, e, within)
            if result:
                members.update(dict.fromkeys(result.colored))
                changed = True


def greedy_it(g: Graph, k: int, local_swaps: bool = False) -> Coloring:
    c = Coloring(g, k)
    greedy_rounds(g, c, list(g.edges()), local_swaps)
    return c


# --- node-centered ---


def node_rating(g: Graph, v: int, k: int) -> int:
    """Sum of the `min(k, deg(v))` heaviest incident weights."""
    weights = sorted((g.weight(e) for e in g.incident(v)), reverse=True)
    return sum(weights[:k])


def node_centered_pass(
    g: Graph, c: Coloring, nodes: Iterable[int], theta: float, max_weight: int
) -> None:
    """Colors around `nodes` by rating, deferring edges lighter than `theta * max_weight`."""
    threshold = theta * max_weight
    ratings = {v: node_rating(g, v, c.k) for v in nodes}
    deferred: dict[EdgeKey, None] = {}

    for v in sorted(ratings, key=lambda v: (-ratings[v], v)):
        for e in by_weight(g, g.incident(v)):
            if not c.has_free_color(v):
                break
            if c.is_colored(e):
                continue
            if g.weight(e) < threshold:
                deferred[e] = None
                continue
            col = common_free_color(g, c, e)
            if col is not None:
                c.assign(e, col)

    for e in by_weight(g, deferred):
        if c.is_colored(e):
            continue
        col = common_free_color(g, c, e)
        if col is not None:
            c.assign(e, col)


def node_centered(g: Graph, k: int, theta: float = DEFAULT_THETA) -> Coloring:
    theta = NodeCenteredConfig(theta=theta).theta
    c = Coloring(g, k)
    node_centered_pass(g, c, range(g.n), theta, g.max_weight)
    return c


# --- kEC ---


def _other(e: EdgeKey, x: int) -> int:
    return e[1] if e[0] == x else e[0]


def build_fan(g: Graph, c: Coloring, u: int, v: int) -> list[int]:
    """Maximal fan around `u` starting at `v`, extended greedily in adjacency order."""
    fan = [v]
    members = {v}
    extended = True
    while extended:
        extended = False
        last = fan[-1]
        for x in g.neighbors(u):
            if x in members:
                continue
            col = c.color_of(edge_key(u, x))
            if col is not None and c.is_free(last, col):
                fan.append(x)
                members.add(x)
                extended = True
                break
    return fan


def alternating_path(g: Graph, c: Coloring, u: int, d: int, cc: int) -> list[EdgeKey]:
    """Maximal path from `u` whose colors alternate d, cc, d, ... (`cc` free at `u`)."""
    path = []
    node, col = u, d
    while (h := c.holder(node, col)) is not None:
        path.append(h)
        if len(path) > g.m:
            raise InvariantError(f"Alternating {d}/{cc} path from {u} does not end.")
        node = _other(h, node)
        col = cc if col == d else d
    return path


def invert_path(c: Coloring, path: list[EdgeKey], d: int, cc: int) -> None:
    colors = [c.unassign(h) for h in path]
    for h, col in zip(path, colors):
        c.assign(h, cc if col == d else d)


def _is_fan_prefix(c: Coloring, u: int, fan: list[int], x: int) -> bool:
    for i in range(1, x + 1):
        col = c.color_of(edge_key(u, fan[i]))
        if col is None or not c.is_free(fan[i - 1], col):
            return False
    return True


def rotate_fan(c: Coloring, u: int, fan: list[int], x: int, d: int) -> None:
    """Shifts colors down the fan prefix `fan[0..x]` and gives `{u, fan[x]}` color `d`."""
    spokes = [edge_key(u, f) for f in fan[: x + 1]]
    shifted = [c.unassign(h) for h in spokes[1:]]
    for h, col in zip(spokes, shifted):
        c.assign(h, col)
    c.assign(spokes[x], d)


def _fan_color(g: Graph, c: Coloring, u: int, v: int) -> bool:
    fan = build_fan(g, c, u, v)
    free_u = c.free_colors(u)
    free_last = c.free_colors(fan[-1])
    if not free_u or not free_last:
        return False
    cc, d = free_u[0], free_last[0]

    if c.is_free(u, d):
        rotate_fan(c, u, fan, len(fan) - 1, d)
        return True

    invert_path(c, alternating_path(g, c, u, d, cc), d, cc)
    if not c.is_free(u, d):
        raise InvariantError(f"Color {d} is still used at {u} after path inversion.")
    for x in range(len(fan)):
        if c.is_free(fan[x], d) and _is_fan_prefix(c, u, fan, x):
            rotate_fan(c, u, fan, x, d)
            return True
    raise InvariantError(f"No rotatable fan prefix around {u} for color {d}.")


def k_color_edge(g: Graph, c: Coloring, e: EdgeKey) -> bool:
    """Tries to color `e` without uncoloring anything; a failed attempt changes nothing."""
    if c.is_colored(e):
        raise ContractViolationError(f"Edge {e} is already colored.")
    u, v = e
    if not (c.has_free_color(u) and c.has_free_color(v)):
        return False
    col = common_free_color(g, c, e)
    if col is not None:
        c.assign(e, col)
        return True
    return _fan_color(g, c, u, v) or _fan_color(g, c, v, u)


def kec_fill(g: Graph, c: Coloring) -> None:
    for e in by_weight(g, g.edges()):
        if not c.is_colored(e):
            k_color_edge(g, c, e)


def kec(g: Graph, k: int) -> Coloring:
    c = Coloring(g, k)
    kec_fill(g, c)
    return c


# --- per-batch rebuilds ---


class StaticSolver(Solver):
    """Ignores single updates and recomputes the coloring from scratch per batch."""

    def on_update(self, applied: AppliedUpdate) -> None:
        pass

    def end_batch(self, batch: Batch) -> None:
        self.coloring.clear()
        self.rebuild()
        log.debug(
            "%s rebuilt %d matchings: %d edges, weight %d",
            self.algo,
            self.k,
            len(self.coloring),
            self.coloring.weight,
        )

    def rebuild(self) -> None:  # pragma: no cover
        raise NotImplementedError


class GreedySolver(StaticSolver):
    def __init__(self, graph: Graph, k: int, local_swaps: bool = False, **kwargs):
        super().__init__(graph, k, **kwargs)
        self.local_swaps = local_swaps
        self.algo = AlgorithmId.GREEDY_L if local_swaps else AlgorithmId.GREEDY

    def rebuild(self) -> None:
        greedy_rounds(self.graph, self.coloring, list(self.graph.edges()), self.local_swaps)


class NodeCenteredSolver(StaticSolver):
    algo = AlgorithmId.NODE_CENTERED

    def __init__(self, graph: Graph, k: int, theta: float = DEFAULT_THETA, **kwargs):
        super().__init__(graph, k, **kwargs)
        self.theta = NodeCenteredConfig(theta=theta).theta

    def rebuild(self) -> None:
        g = self.graph
        node_centered_pass(g, self.coloring, range(g.n), self.theta, g.max_weight)


class KecSolver(StaticSolver):
    algo = AlgorithmId.KEC

    def rebuild(self) -> None:
        kec_fill(self.graph, self.coloring)
