"""Dynamic RMAT instances: a static RMAT graph inserted at once, then random update batches."""

import numpy as np

from djm.graph import EdgeKey
from djm.instances.format import InstanceStream, Row
from djm.logs import log
from djm.schemas import RmatParams
from djm.utils import make_rng


def rmat_edges(params: RmatParams, rng: np.random.Generator) -> list[EdgeKey]:
    """Distinct undirected edges by recursive quadrant descent.

    Self-loops and duplicates are redrawn until `density * n` edges exist (capped at
    the complete graph).
    """
    n = params.n
    target = min(int(params.density * n), n * (n - 1) // 2)
    probs = np.asarray(params.quadrants, dtype=float)
    probs = probs / probs.sum()

    edges: dict[EdgeKey, None] = {}
    while len(edges) < target:
        need = target - len(edges)
        src = np.zeros(need, dtype=np.int64)
        dst = np.zeros(need, dtype=np.int64)
        for _ in range(params.log_nodes):
            quadrant = rng.choice(4, size=need, p=probs)
            src = (src << 1) | (quadrant >> 1)
            dst = (dst << 1) | (quadrant & 1)
        for u, v in zip(src.tolist(), dst.tolist()):
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key not in edges:
                edges[key] = None
                if len(edges) == target:
                    break
    return sorted(edges)


def rmat_weights(size: int, params: RmatParams, rng: np.random.Generator) -> np.ndarray:
    """Exponential weights, floored and shifted into `[1, max_weight]` by rejection."""
    weights = np.empty(0, dtype=np.int64)
    while weights.size < size:
        draws = np.floor(rng.exponential(params.weight_scale, size=size)).astype(np.int64) + 1
        weights = np.concatenate([weights, draws[draws <= params.max_weight]])
    return weights[:size]


def gen_rmat_dynamic(params: RmatParams) -> InstanceStream:
    rng = make_rng(params.seed)
    edges = rmat_edges(params, rng)
    weights = rmat_weights(len(edges), params, rng)
    m0 = len(edges)

    current = {e: int(w) for e, w in zip(edges, weights.tolist())}
    batches: list[list[Row]] = [[(u, v, current[(u, v)]) for u, v in edges]]

    count = int(params.fraction * m0)
    for _ in range(params.update_batches):
        slots = np.sort(rng.choice(m0, size=count, replace=False))
        delete = rng.random(count) < params.del_prob
        fresh = weights[rng.integers(0, m0, size=count)] if m0 else weights
        rows: list[Row] = []
        for slot, drop, w in zip(slots.tolist(), delete.tolist(), fresh.tolist()):
            u, v = edges[slot]
            if (u, v) in current and drop:
                rows.append((u, v, 0))
                del current[(u, v)]
            else:
                rows.append((u, v, int(w)))
                current[(u, v)] = int(w)
        batches.append(rows)

    log.info(
        "Generated RMAT-%s instance: n=%d, m0=%d, %d update batches of %d",
        params.model.value,
        params.n,
        m0,
        params.update_batches,
        count,
    )
    return InstanceStream(
        n=params.n,
        batches=batches,
        name=f"rmat-{params.model.value}-{params.log_nodes}-s{params.seed}",
    )
