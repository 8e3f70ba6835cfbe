import pytest
from pydantic import ValidationError

from djm.enums import RmatModel
from djm.instances import gen_rmat_dynamic
from djm.instances.rmat import rmat_edges
from djm.schemas import RmatParams
from djm.utils import make_rng


@pytest.fixture
def params():
    return RmatParams(log_nodes=5, density=2, update_batches=4, fraction=0.25, seed=7)


def test_rmat_edges(params):
    edges = rmat_edges(params, make_rng(params.seed))
    assert len(edges) == 64
    assert edges == sorted(set(edges))
    assert all(0 <= u < v < 32 for u, v in edges)


def test_rmat_edges_capped_at_complete_graph():
    params = RmatParams(log_nodes=2, density=8, model=RmatModel.ER)
    assert len(rmat_edges(params, make_rng(1))) == 6


def test_gen_rmat_dynamic(params):
    stream = gen_rmat_dynamic(params)
    assert stream.n == 32
    assert stream.name == "rmat-b-5-s7"
    assert len(stream.batches) == 5
    assert len(stream.batches[0]) == 64
    assert all(len(rows) == 16 for rows in stream.batches[1:])
    assert all(1 <= w <= params.max_weight for _, _, w in stream.batches[0])
    for rows in stream.batches[1:]:
        assert all(0 <= w <= params.max_weight for _, _, w in rows)
        assert len({(u, v) for u, v, _ in rows}) == len(rows)


def test_gen_rmat_dynamic_is_seeded(params):
    assert gen_rmat_dynamic(params).batches == gen_rmat_dynamic(params).batches
    other = params.model_copy(update={"seed": 8})
    assert gen_rmat_dynamic(other).batches != gen_rmat_dynamic(params).batches


def test_rmat_weight_cap():
    params = RmatParams(log_nodes=4, weight_scale=50, max_weight=10, update_batches=0)
    stream = gen_rmat_dynamic(params)
    assert all(1 <= w <= 10 for _, _, w in stream.batches[0])


def test_rmat_params_validation():
    with pytest.raises(ValidationError):
        RmatParams(log_nodes=0)
    with pytest.raises(ValidationError, match="must sum to 1"):
        RmatParams(log_nodes=3, initiator=(0.5, 0.5, 0.5, 0.5))
    params = RmatParams(log_nodes=3, initiator=(0.4, 0.2, 0.2, 0.2))
    assert params.quadrants == (0.4, 0.2, 0.2, 0.2)
    assert RmatParams(log_nodes=3, model=RmatModel.G).quadrants == RmatModel.G.initiator


@pytest.mark.slow
def test_rmat_deletion_rate():
    params = RmatParams(log_nodes=8, density=4, update_batches=100, del_prob=0.1, seed=5)
    stream = gen_rmat_dynamic(params)
    p = params.del_prob
    present = {(u, v) for u, v, _ in stream.batches[0]}
    chi2 = 0.0
    for rows in stream.batches[1:]:
        trials = sum((u, v) in present for u, v, _ in rows)
        deleted = sum(w == 0 for _, _, w in rows)
        expected = p * trials
        chi2 += (deleted - expected) ** 2 / (expected * (1 - p))
        for u, v, w in rows:
            if w == 0:
                present.discard((u, v))
            else:
                present.add((u, v))
    # 100 degrees of freedom: the 0.1% and 99.9% quantiles are about 61.9 and 149.4.
    assert 55 < chi2 < 150
