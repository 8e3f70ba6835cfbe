"""Split instances: every batch becomes `y` sub-batches with edge weights capped at `z`.

An edge updated to weight `w > 0` in a batch is spread over `s = ceil(w / z)`
consecutive sub-batches picked uniformly at random: it is set to `z` at the
first, reduced to `r = w - (s - 1) * z` at the last, and zeroed right after.
Edges the batch does not update (and deletions) get no plan; an earlier zeroing
has already removed them. Each original update emits at most three rows.
"""

import math

from djm.exceptions import SplitEligibilityError
from djm.graph import EdgeKey, edge_key
from djm.instances.format import InstanceStream
from djm.logs import log
from djm.schemas import SplitParams
from djm.utils import make_rng


def check_eligible(stream: InstanceStream, params: SplitParams) -> None:
    for rows in stream.batches:
        for _, _, w in rows:
            if w > params.limit:
                raise SplitEligibilityError(weight=w, limit=params.limit)


def updated_weights(rows: list[tuple[int, int, int]]) -> dict[EdgeKey, int]:
    """Edges a batch sets to a positive weight; a repeated row overrides earlier ones."""
    weights: dict[EdgeKey, int] = {}
    for u, v, w in rows:
        weights[edge_key(u, v)] = w
    return {key: w for key, w in weights.items() if w > 0}


def split_instance(stream: InstanceStream, params: SplitParams) -> InstanceStream:
    check_eligible(stream, params)
    y, z = params.sub_batches, params.cap
    rng = make_rng(params.seed)

    # (batch, key) -> (start, s, w)
    plans: dict[tuple[int, EdgeKey], tuple[int, int, int]] = {}
    for i, rows in enumerate(stream.batches):
        weights = updated_weights(rows)
        for key in sorted(weights):
            w = weights[key]
            s = math.ceil(w / z)
            start = int(rng.integers(0, y - s + 1))
            plans[(i, key)] = (start, s, w)

    total = len(stream.batches) * y
    sub_batches: list[dict[EdgeKey, int]] = [{} for _ in range(total)]
    for (i, key), (start, s, w) in plans.items():
        first = i * y + start
        r = w - (s - 1) * z
        sub_batches[first][key] = z if s > 1 else r
        if s > 1 and r != z:
            sub_batches[first + s - 1][key] = r

        zero_at = first + s
        if zero_at >= total:
            continue
        follow = plans.get((i + 1, key))
        if start + s == y and follow is not None and follow[0] == 0:
            continue
        sub_batches[zero_at][key] = 0

    split = InstanceStream(
        n=stream.n,
        batches=[[(u, v, w) for (u, v), w in sorted(sub.items())] for sub in sub_batches],
        name=f"{stream.name}-split" if stream.name else None,
    )
    log.info(
        "Split %d batches into %d sub-batches (cap %d): %d -> %d update lines",
        len(stream.batches),
        total,
        z,
        sum(len(rows) for rows in stream.batches),
        sum(len(rows) for rows in split.batches),
    )
    return split
