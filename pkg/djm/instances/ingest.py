"""Traffic trace ingestion: rows of (time or sequence, src, dst[, size]) into DJM batches.

Every `group` distinct consecutive timestamps form one batch. The traffic of a pair
summed over the batch (both directions) becomes the new weight of its edge; pairs
that fall silent are deleted.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from djm.enums import TraceFormat
from djm.exceptions import DjmValueError, TraceParseError
from djm.graph import EdgeKey
from djm.instances.format import InstanceStream, Row
from djm.logs import log

_SEPARATORS = re.compile(r"[,\s]+")


@dataclass(frozen=True, slots=True)
class TraceRecord:
    stamp: str
    src: str
    dst: str
    size: int


def parse_trace_line(line: str, fmt: TraceFormat, line_no: int) -> TraceRecord | None:
    """Parses one row; blank lines and `#` comments give `None`."""
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    tokens = _SEPARATORS.split(line)
    if fmt is TraceFormat.SEQUENCE:
        if len(tokens) < 3:
            raise TraceParseError(
                "Expected at least 3 columns (seq, src, dst).", line_no
            )
        return TraceRecord(tokens[0], tokens[1], tokens[2], 1)

    if len(tokens) < 4:
        raise TraceParseError(
            "Expected at least 4 columns (time, src, dst, size).", line_no
        )
    try:
        size = int(tokens[3])
    except ValueError:
        raise TraceParseError(f'Size "{tokens[3]}" is not an integer.', line_no) from None
    if size < 0:
        raise TraceParseError(f"Size {size} is negative.", line_no)
    return TraceRecord(tokens[0], tokens[1], tokens[2], size)


def read_trace(lines: Iterable[str], fmt: TraceFormat) -> Iterator[TraceRecord]:
    for line_no, line in enumerate(lines, start=1):
        record = parse_trace_line(line, fmt, line_no)
        if record is not None:
            yield record


class _Grouper:
    """Accumulates per-pair volumes and emits absolute-weight batches."""

    def __init__(self):
        self.nodes: dict[str, int] = {}
        self.current: dict[EdgeKey, int] = {}
        self.volumes: dict[EdgeKey, int] = {}
        self.batches: list[list[Row]] = []
        self.self_traffic = 0

    def node(self, label: str) -> int:
        if label not in self.nodes:
            self.nodes[label] = len(self.nodes)
        return self.nodes[label]

    def add(self, record: TraceRecord) -> None:
        u, v = self.node(record.src), self.node(record.dst)
        if u == v:
            self.self_traffic += 1
            return
        key = (u, v) if u < v else (v, u)
        self.volumes[key] = self.volumes.get(key, 0) + record.size

    def flush(self) -> None:
        rows: list[Row] = [
            (u, v, w)
            for (u, v), w in self.volumes.items()
            if w != self.current.get((u, v), 0)
        ]
        rows.extend(
            (u, v, 0) for (u, v) in sorted(self.current) if (u, v) not in self.volumes
        )
        for u, v, w in rows:
            if w:
                self.current[(u, v)] = w
            else:
                self.current.pop((u, v), None)
        self.batches.append(rows)
        self.volumes = {}


def ingest_trace(
    lines: Iterable[str], group: int, fmt: TraceFormat, name: str | None = None
) -> InstanceStream:
    if group < 1:
        raise DjmValueError(f"Group size must be at least 1, got {group}.")
    grouper = _Grouper()
    distinct = 0
    last_stamp = None
    pending = False
    for record in read_trace(lines, fmt):
        if record.stamp != last_stamp:
            last_stamp = record.stamp
            distinct += 1
            if distinct > group:
                grouper.flush()
                distinct = 1
        grouper.add(record)
        pending = True
    if pending:
        grouper.flush()

    if grouper.self_traffic:
        log.debug("Dropped %d self-traffic rows", grouper.self_traffic)
    return InstanceStream(n=len(grouper.nodes), batches=grouper.batches, name=name)


def ingest_trace_file(path: Path | str, group: int, fmt: TraceFormat) -> InstanceStream:
    path = Path(path)
    with open(path, encoding="utf-8") as trace_fp:
        return ingest_trace(trace_fp, group, fmt, name=path.stem)
