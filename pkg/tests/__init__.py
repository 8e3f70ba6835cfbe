"""Common helpers for replaying instances through solvers."""

from djm.graph import Graph
from djm.instances.format import InstanceStream, Row
from djm.oracle import validate
from djm.solvers import Solver, make_solver


def single_batch(n: int, rows: list[Row], name: str = "single") -> InstanceStream:
    """An instance inserting `rows` in one batch."""
    return InstanceStream(n=n, batches=[list(rows)], name=name)


def solver_for(algo: str, stream: InstanceStream, k: int, **kwargs) -> Solver:
    """A fresh solver over an empty graph sized for `stream`."""
    return make_solver(algo, Graph(stream.n), k, **kwargs)


def replay(stream: InstanceStream, solver: Solver, check: bool = True) -> Solver:
    """Feeds every batch of `stream` to `solver`, validating after each one."""
    for index, batch in enumerate(stream.replay()):
        solver.process_batch(batch)
        if check:
            report = validate(solver.graph, solver.coloring)
            assert report.ok, f"batch {index}: {report.first_violation}"
    return solver


def colors_of(solver: Solver) -> dict:
    return dict(solver.coloring.colored_edges())
