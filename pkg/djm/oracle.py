"""Ground truth: exact solver for tiny graphs, coloring validation, recourse."""

from dataclasses import dataclass, field

from djm.enums import RecourseScope
from djm.exceptions import OracleLimitError
from djm.graph import Coloring, ColoringSnapshot, EdgeKey, Graph
from djm.schemas import DEFAULT_ORACLE_MAX_EDGES

__all__ = [
    "ColoringSnapshot",
    "ValidationReport",
    "brute_force_opt",
    "recourse",
    "validate",
]


def brute_force_opt(
    g: Graph, k: int, max_edges: int = DEFAULT_ORACLE_MAX_EDGES
) -> tuple[int, dict[EdgeKey, int]]:
    """Maximum weight of a proper partial k-coloring, with a witness color map.

    Branch and bound over the edges in non-increasing weight order; a new color
    index is only opened after all lower ones are in use.
    """
    if g.m > max_edges:
        raise OracleLimitError(
            f"Exact solver is limited to {max_edges} edges (graph has {g.m})."
        )
    edges = sorted(g.weighted_edges(), key=lambda item: (-item[1], item[0]))
    suffix = [0] * (len(edges) + 1)
    for i in range(len(edges) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + edges[i][1]

    used: list[set[int]] = [set() for _ in range(g.n)]
    assignment: dict[EdgeKey, int] = {}
    best_weight = 0
    best: dict[EdgeKey, int] = {}

    def search(i: int, weight: int, opened: int) -> None:
        nonlocal best_weight, best
        if weight > best_weight:
            best_weight, best = weight, dict(assignment)
        if i == len(edges) or weight + suffix[i] <= best_weight:
            return
        (u, v), w = edges[i]
        for col in range(1, min(opened + 1, k) + 1):
            if col in used[u] or col in used[v]:
                continue
            used[u].add(col)
            used[v].add(col)
            assignment[(u, v)] = col
            search(i + 1, weight + w, max(opened, col))
            del assignment[(u, v)]
            used[u].discard(col)
            used[v].discard(col)
        search(i + 1, weight, opened)

    search(0, 0, 0)
    return best_weight, best


@dataclass
class ValidationReport:
    """Consistency problems found in a (graph, coloring) pair; empty means valid."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> str | None:
        return self.violations[0] if self.violations else None

    def __bool__(self) -> bool:
        return self.ok


def _validate_graph(g: Graph, report: ValidationReport) -> None:
    degrees = [0] * g.n
    max_weight = 0
    for (u, v), w in g.weighted_edges():
        if u >= v:
            report.violations.append(f"Edge key ({u}, {v}) is not normalized.")
        if w < 1:
            report.violations.append(f"Edge ({u}, {v}) is stored with weight {w}.")
        degrees[u] += 1
        degrees[v] += 1
        max_weight = max(max_weight, w)

    for x in range(g.n):
        for y in g.neighbors(x):
            key = (x, y) if x < y else (y, x)
            if not g.has_edge(key):
                report.violations.append(f"Node {x} lists absent neighbor {y}.")
            elif x not in set(g.neighbors(y)):
                report.violations.append(f"Adjacency of {x} and {y} is not symmetric.")
        if g.degree(x) != degrees[x]:
            report.violations.append(
                f"Node {x} has degree {g.degree(x)}, recount gives {degrees[x]}."
            )

    if g.max_degree != max(degrees, default=0):
        report.violations.append(
            f"Cached max degree {g.max_degree} != recount {max(degrees, default=0)}."
        )
    if g.max_weight != max_weight:
        report.violations.append(
            f"Cached max weight {g.max_weight} != recount {max_weight}."
        )


def validate(g: Graph, c: Coloring) -> ValidationReport:
    """Checks properness, that only present edges are colored, and every cache."""
    report = ValidationReport()
    _validate_graph(g, report)

    seen: dict[tuple[int, int], EdgeKey] = {}
    weight = 0
    for e, col in c.colored_edges():
        if not g.has_edge(e):
            report.violations.append(f"Absent edge {e} has color {col}.")
            continue
        if not 1 <= col <= c.k:
            report.violations.append(f"Edge {e} has color {col} outside 1..{c.k}.")
        weight += g.weight(e)
        for x in e:
            other = seen.get((x, col))
            if other is not None:
                report.violations.append(
                    f"Vertex {x} has two edges with color {col}: {other} and {e}."
                )
            seen[(x, col)] = e
            if c.holder(x, col) != e:
                report.violations.append(
                    f"Occupancy of vertex {x}, color {col} does not point at {e}."
                )

    for x in range(g.n):
        for col, holder in c.occupancy(x).items():
            if c.color_of(holder) != col:
                report.violations.append(
                    f"Occupancy of vertex {x}, color {col} points at {holder}, "
                    f"which has color {c.color_of(holder)}."
                )

    if weight != c.weight:
        report.violations.append(f"Cached weight {c.weight} != recount {weight}.")
    return report


def recourse(
    before: ColoringSnapshot,
    after: Coloring | ColoringSnapshot,
    scope: RecourseScope = RecourseScope.ALL,
    touched: frozenset[EdgeKey] | set[EdgeKey] | None = None,
) -> int:
    """Number of edges whose color differs (uncolored counts as a color).

    With `scope=TOUCHED`, only the edges in `touched` (the batch's edges) count.
    """
    after_colors = after.colors if isinstance(after, ColoringSnapshot) else None
    if after_colors is None:
        after_colors = dict(after.colored_edges())

    if scope is RecourseScope.TOUCHED:
        keys = touched or frozenset()
    else:
        keys = set(before.colors) | set(after_colors)
    return sum(1 for e in keys if before.colors.get(e) != after_colors.get(e))
