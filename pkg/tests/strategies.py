"""Hypothesis strategies for small weighted graphs and update streams."""

from hypothesis import strategies as st

from djm.instances.format import InstanceStream


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


@st.composite
def weighted_graphs(draw, max_nodes: int = 7, max_edges: int = 12, max_weight: int = 20):
    """`(n, [(u, v, w), ...])` with distinct edges and positive weights."""
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    pairs = _pairs(n)
    chosen = draw(
        st.lists(
            st.sampled_from(pairs), unique=True, max_size=min(max_edges, len(pairs))
        )
    )
    weights = draw(
        st.lists(
            st.integers(min_value=1, max_value=max_weight),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return n, [(u, v, w) for (u, v), w in zip(chosen, weights)]


@st.composite
def instance_streams(
    draw,
    min_nodes: int = 2,
    max_nodes: int = 8,
    max_batches: int = 6,
    max_batch: int = 8,
    max_weight: int = 20,
):
    """Random instances; rows hold absolute weights, 0 deletes."""
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    pairs = _pairs(n)
    row = st.tuples(
        st.sampled_from(pairs), st.integers(min_value=0, max_value=max_weight)
    ).map(lambda item: (item[0][0], item[0][1], item[1]))
    batches = draw(
        st.lists(st.lists(row, max_size=max_batch), min_size=1, max_size=max_batches)
    )
    return InstanceStream(n=n, batches=batches, name="generated")
