"""Dynamic demand graph, partial k-coloring, and the bookkeeping shared by all solvers.

Edges are addressed by their normalized node pair `(min(u, v), max(u, v))`; that key
stays stable for the lifetime of a run even when the edge is deleted and re-inserted.
An edge is present iff its weight is at least 1. Colors are the integers `1..k`;
`None` stands for "uncolored".
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from djm.enums import UpdateClass
from djm.exceptions import (
    ContractViolationError,
    DjmValueError,
    NodeRangeError,
    SelfLoopError,
    UpdateRangeError,
)

EdgeKey = tuple[int, int]


def edge_key(u: int, v: int) -> EdgeKey:
    """Normalizes an unordered node pair."""
    if u == v:
        raise SelfLoopError(f"Self-loops are not allowed (node {u}).")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, slots=True)
class EdgeUpdate:
    """A signed weight change on one edge."""

    u: int
    v: int
    delta: int

    def __post_init__(self):
        if self.u == self.v:
            raise SelfLoopError(f"Self-loops are not allowed (node {self.u}).")
        if self.delta == 0:
            raise DjmValueError(f"Update of {self.key} has a zero delta.")

    @property
    def key(self) -> EdgeKey:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass(frozen=True)
class Batch:
    """A coalesced batch: at most one update per edge, in first-occurrence order."""

    updates: tuple[EdgeUpdate, ...] = ()

    def __iter__(self) -> Iterator[EdgeUpdate]:
        return iter(self.updates)

    def __len__(self) -> int:
        return len(self.updates)

    @property
    def size(self) -> int:
        return len(self.updates)

    @property
    def touched(self) -> frozenset[EdgeKey]:
        return frozenset(up.key for up in self.updates)


def coalesce_batch(raw: Iterable[EdgeUpdate]) -> Batch:
    """Sums the deltas of same-edge updates and drops zero-sum results."""
    sums: dict[EdgeKey, int] = {}
    for update in raw:
        sums[update.key] = sums.get(update.key, 0) + update.delta
    return Batch(
        tuple(EdgeUpdate(u, v, delta) for (u, v), delta in sums.items() if delta != 0)
    )


def classify(w_old: int, w_new: int) -> UpdateClass:
    if w_old == 0:
        return UpdateClass.INSERTION
    if w_new == 0:
        return UpdateClass.DELETION
    return UpdateClass.CHANGE_UP if w_new > w_old else UpdateClass.CHANGE_DOWN


@dataclass(frozen=True, slots=True)
class AppliedUpdate:
    """An update after it reached the graph, as seen by the solvers."""

    key: EdgeKey
    w_old: int
    w_new: int
    kind: UpdateClass
    color_before: int | None

    @property
    def was_colored(self) -> bool:
        return self.color_before is not None


class Graph:
    """Undirected weighted graph over nodes `0..n-1` with lazily maintained Δ and W."""

    def __init__(self, n: int):
        if n < 0:
            raise DjmValueError(f"Node count must be non-negative, got {n}.")
        self.n = n
        self._adj: list[dict[int, int]] = [{} for _ in range(n)]
        self._weights: dict[EdgeKey, int] = {}
        self._max_degree = 0
        self._max_degree_stale = False
        self._max_weight = 0
        self._max_weight_stale = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "Graph":
        """Builds a graph from `(u, v, weight)` triples (zero weights are skipped)."""
        graph = cls(n)
        for u, v, weight in edges:
            graph.check_node(u)
            graph.check_node(v)
            graph.set_weight(edge_key(u, v), weight)
        return graph

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise NodeRangeError(f"Node {v} is outside [0, {self.n}).")

    @property
    def m(self) -> int:
        return len(self._weights)

    @property
    def max_degree(self) -> int:
        if self._max_degree_stale:
            self._max_degree = max((len(nbrs) for nbrs in self._adj), default=0)
            self._max_degree_stale = False
        return self._max_degree

    @property
    def max_weight(self) -> int:
        if self._max_weight_stale:
            self._max_weight = max(self._weights.values(), default=0)
            self._max_weight_stale = False
        return self._max_weight

    def weight(self, key: EdgeKey) -> int:
        return self._weights.get(key, 0)

    def has_edge(self, key: EdgeKey) -> bool:
        return key in self._weights

    def edges(self) -> Iterator[EdgeKey]:
        return iter(self._weights)

    def weighted_edges(self) -> Iterator[tuple[EdgeKey, int]]:
        return iter(self._weights.items())

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> Iterator[int]:
        """Neighbors of `v` in storage (insertion) order."""
        return iter(self._adj[v])

    def incident(self, v: int) -> list[EdgeKey]:
        """Keys of the present edges at `v`, in storage order."""
        return [(v, x) if v < x else (x, v) for x in self._adj[v]]

    def set_weight(self, key: EdgeKey, weight: int) -> int:
        """Sets the absolute weight of an edge and returns the previous weight."""
        if weight < 0:
            raise UpdateRangeError(f"Weight of {key} would become {weight} < 0.")
        u, v = key
        old = self._weights.get(key, 0)
        if weight == old:
            return old

        if weight == 0:
            del self._weights[key]
            del self._adj[u][v]
            del self._adj[v][u]
            if not self._max_degree_stale and self._max_degree in (
                len(self._adj[u]) + 1,
                len(self._adj[v]) + 1,
            ):
                self._max_degree_stale = True
            if not self._max_weight_stale and old == self._max_weight:
                self._max_weight_stale = True
            return old

        self._weights[key] = weight
        self._adj[u][v] = weight
        self._adj[v][u] = weight
        if old == 0 and not self._max_degree_stale:
            self._max_degree = max(
                self._max_degree, len(self._adj[u]), len(self._adj[v])
            )
        if not self._max_weight_stale:
            if weight > self._max_weight:
                self._max_weight = weight
            elif old == self._max_weight and weight < old:
                self._max_weight_stale = True
        return old


@dataclass(frozen=True)
class ColoringSnapshot:
    """Immutable copy of a color map taken at a batch boundary."""

    colors: Mapping[EdgeKey, int]

    def color_of(self, key: EdgeKey) -> int | None:
        return self.colors.get(key)


class Coloring:
    """Partial k-edge-coloring of a `Graph`; color class `i` is the i-th matching.

    Besides the color map, it keeps, per vertex, which incident edge holds each color,
    the total weight of colored edges, and the set of edges whose color changed since
    the last `reset_touched()`.
    """

    def __init__(self, graph: Graph, k: int):
        if k < 1:
            raise DjmValueError(f"Number of matchings must be at least 1, got {k}.")
        self.graph = graph
        self.k = k
        self._color: dict[EdgeKey, int] = {}
        self._holders: list[dict[int, EdgeKey]] = [{} for _ in range(graph.n)]
        self._weight = 0
        self.touched: set[EdgeKey] = set()

    def __repr__(self):
        return f"Coloring(k={self.k}, colored={len(self._color)}, weight={self._weight})"

    def __len__(self) -> int:
        return len(self._color)

    @property
    def colors(self) -> range:
        return range(1, self.k + 1)

    @property
    def weight(self) -> int:
        return self._weight

    def color_of(self, key: EdgeKey) -> int | None:
        return self._color.get(key)

    def is_colored(self, key: EdgeKey) -> bool:
        return key in self._color

    def colored_edges(self) -> Iterator[tuple[EdgeKey, int]]:
        return iter(self._color.items())

    def holder(self, v: int, col: int) -> EdgeKey | None:
        """The edge at `v` holding `col`, if any."""
        return self._holders[v].get(col)

    def occupancy(self, v: int) -> Mapping[int, EdgeKey]:
        return MappingProxyType(self._holders[v])

    def is_free(self, v: int, col: int) -> bool:
        return col not in self._holders[v]

    def free_colors(self, v: int) -> list[int]:
        held = self._holders[v]
        return [col for col in self.colors if col not in held]

    def has_free_color(self, v: int) -> bool:
        return len(self._holders[v]) < self.k

    def assign(self, key: EdgeKey, col: int) -> None:
        if not self.graph.has_edge(key):
            raise ContractViolationError(f"Cannot color absent edge {key}.")
        if key in self._color:
            raise ContractViolationError(
                f"Edge {key} already has color {self._color[key]}."
            )
        if not 1 <= col <= self.k:
            raise ContractViolationError(f"Color {col} is outside 1..{self.k}.")
        u, v = key
        if col in self._holders[u] or col in self._holders[v]:
            raise ContractViolationError(f"Color {col} is not free at both ends of {key}.")
        self._color[key] = col
        self._holders[u][col] = key
        self._holders[v][col] = key
        self._weight += self.graph.weight(key)
        self.touched.add(key)

    def unassign(self, key: EdgeKey) -> int:
        """Uncolors an edge and returns the color it held."""
        col = self._color.pop(key, None)
        if col is None:
            raise ContractViolationError(f"Edge {key} is not colored.")
        u, v = key
        del self._holders[u][col]
        del self._holders[v][col]
        self._weight -= self.graph.weight(key)
        self.touched.add(key)
        return col

    def clear(self) -> None:
        """Uncolors every edge (kept identity, so solvers sharing it stay in sync)."""
        self.touched.update(self._color)
        self._color = {}
        self._holders = [{} for _ in range(self.graph.n)]
        self._weight = 0

    def reset_touched(self) -> None:
        self.touched = set()

    def snapshot(self) -> ColoringSnapshot:
        return ColoringSnapshot(MappingProxyType(dict(self._color)))

    def reweigh(self, key: EdgeKey, w_old: int, w_new: int) -> None:
        """Keeps the cached weight current when a colored edge changes weight."""
        if key in self._color:
            self._weight += w_new - w_old


def apply_update(g: Graph, c: Coloring, up: EdgeUpdate) -> AppliedUpdate:
    """Applies one update to the graph, uncoloring the edge if it is deleted."""
    u, v = up.u, up.v
    g.check_node(u)
    g.check_node(v)
    key = up.key
    w_old = g.weight(key)
    w_new = w_old + up.delta
    if w_new < 0:
        raise UpdateRangeError(
            f"Update {up.delta:+d} on {key} would drive weight {w_old} below zero."
        )

    color_before = c.color_of(key)
    if color_before is not None:
        if w_new == 0:
            c.unassign(key)
        else:
            c.reweigh(key, w_old, w_new)
    g.set_weight(key, w_new)
    return AppliedUpdate(key, w_old, w_new, classify(w_old, w_new), color_before)


def colored_neighborhood_weight(g: Graph, c: Coloring, e: EdgeKey, col: int) -> int:
    """Weight of the edges adjacent to `e` that hold `col` (at most one per endpoint)."""
    total = 0
    for x in e:
        holder = c.holder(x, col)
        if holder is not None and holder != e:
            total += g.weight(holder)
    return total


def free_colors_at(g: Graph, c: Coloring, v: int) -> set[int]:
    g.check_node(v)
    return set(c.free_colors(v))


def common_free_color(g: Graph, c: Coloring, e: EdgeKey) -> int | None:
    """Lowest color free at both endpoints of `e`, or `None`."""
    u, v = e
    held_u, held_v = c.occupancy(u), c.occupancy(v)
    for col in c.colors:
        if col not in held_u and col not in held_v:
            return col
    return None
