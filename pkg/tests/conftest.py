"""Test configuration for DJM."""

from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, settings

from djm.graph import Graph
from djm.instances.format import InstanceStream, write_instance

settings.register_profile(
    "djm", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("djm")


@pytest.fixture
def path_graph():
    """Path 0-1-2-3 whose middle edge is the heaviest."""
    return Graph.from_edges(4, [(0, 1, 3), (1, 2, 5), (2, 3, 3)])


@pytest.fixture
def triangle():
    """Triangle with weights 4, 5, 6."""
    return Graph.from_edges(3, [(0, 1, 4), (1, 2, 5), (0, 2, 6)])


@pytest.fixture
def star():
    """Star centered at 0 with leaves 1..4 of weights 1..4."""
    return Graph.from_edges(5, [(0, leaf, leaf) for leaf in range(1, 5)])


@pytest.fixture
def small_stream():
    """Five nodes: an insertion batch, a mixed batch, and a deletion batch."""
    return InstanceStream(
        n=5,
        batches=[
            [(0, 1, 10), (1, 2, 7), (2, 3, 9), (3, 4, 2), (0, 4, 5)],
            [(1, 2, 20), (0, 1, 3), (1, 3, 4)],
            [(2, 3, 0), (0, 4, 0), (0, 2, 8)],
        ],
        name="small",
    )


@pytest.fixture
def instance_file(tmp_path, small_stream) -> Path:
    path = tmp_path / "small.djm"
    write_instance(small_stream, path)
    return path


@pytest.fixture
def runner():
    return CliRunner()
