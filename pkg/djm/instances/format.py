"""DJM instance files: a node count and batches of absolute edge weights.

    djm 1 <n>
    #batch
    <u> <v> <w>
    ...

Each update line gives the new absolute weight of `{u, v}` with `0 <= u < v < n`;
weight 0 deletes the edge. Replaying turns the lines into coalesced delta batches.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from djm.exceptions import InstanceParseError
from djm.graph import Batch, EdgeKey, EdgeUpdate, coalesce_batch
from djm.schemas import InstanceSummary

MAGIC = "djm"
VERSION = 1
BATCH_MARKER = "#batch"

Row = tuple[int, int, int]


@dataclass
class InstanceStream:
    """A replayable sequence of batches over `n` nodes (rows hold absolute weights)."""

    n: int
    batches: list[list[Row]] = field(default_factory=list)
    name: str | None = None

    def __len__(self) -> int:
        return len(self.batches)

    def replay(self) -> Iterator[Batch]:
        current: dict[EdgeKey, int] = {}
        for rows in self.batches:
            raw = []
            for u, v, w in rows:
                key = (u, v)
                old = current.get(key, 0)
                if w != old:
                    raw.append(EdgeUpdate(u, v, w - old))
                if w:
                    current[key] = w
                else:
                    current.pop(key, None)
            yield coalesce_batch(raw)

    def boundary_weights(self) -> Iterator[dict[EdgeKey, int]]:
        """Present edge weights after each batch."""
        current: dict[EdgeKey, int] = {}
        for rows in self.batches:
            for u, v, w in rows:
                if w:
                    current[(u, v)] = w
                else:
                    current.pop((u, v), None)
            yield dict(current)

    def summary(self) -> InstanceSummary:
        present: set[EdgeKey] = set()
        for rows in self.batches:
            for u, v, w in rows:
                if w:
                    present.add((u, v))
                else:
                    present.discard((u, v))
        return InstanceSummary(
            n=self.n,
            batches=len(self.batches),
            updates=sum(len(rows) for rows in self.batches),
            max_weight=max((w for rows in self.batches for _, _, w in rows), default=0),
            final_edges=len(present),
        )


def _int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(f'{what} "{token}" is not an integer.', line_no) from None


def loads(text: str, name: str | None = None) -> InstanceStream:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InstanceParseError("Empty instance file.", 1)

    header = lines[0].split()
    if len(header) != 3 or header[0] != MAGIC:
        raise InstanceParseError(f'Expected header "{MAGIC} {VERSION} <n>".', 1)
    if _int(header[1], "Version", 1) != VERSION:
        raise InstanceParseError(f"Unsupported format version {header[1]}.", 1)
    n = _int(header[2], "Node count", 1)
    if n < 0:
        raise InstanceParseError(f"Node count {n} is negative.", 1)

    stream = InstanceStream(n=n, name=name)
    for line_no, line in enumerate(lines[1:], start=2):
        if line == BATCH_MARKER:
            stream.batches.append([])
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise InstanceParseError(f'Unrecognized line "{line}".', line_no)
        if not stream.batches:
            raise InstanceParseError(
                f'Update before the first "{BATCH_MARKER}" line.', line_no
            )
        u, v, w = (_int(tok, "Field", line_no) for tok in tokens)
        if not 0 <= u < v < n:
            raise InstanceParseError(
                f"Endpoints must satisfy 0 <= u < v < {n}, got {u} {v}.", line_no
            )
        if w < 0:
            raise InstanceParseError(f"Weight {w} is negative.", line_no)
        stream.batches[-1].append((u, v, w))
    return stream


def dumps(stream: InstanceStream) -> str:
    out = [f"{MAGIC} {VERSION} {stream.n}"]
    for rows in stream.batches:
        out.append(BATCH_MARKER)
        out.extend(f"{u} {v} {w}" for u, v, w in rows)
    return "\n".join(out) + "\n"


def read_instance(path: Path | str) -> InstanceStream:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), name=path.stem)


def write_instance(stream: InstanceStream, path: Path | str) -> None:
    Path(path).write_text(dumps(stream), encoding="utf-8", newline="\n")
