import pytest

from djm.enums import TraceFormat
from djm.exceptions import DjmValueError, TraceParseError
from djm.instances import ingest_trace, ingest_trace_file
from djm.instances.ingest import parse_trace_line

TRACE = """# time src dst size
1 a b 10
1 b a 5
2 a c 3
3 a b 1
"""


def test_ingest_groups_timestamps():
    stream = ingest_trace(TRACE.splitlines(), 2, TraceFormat.TIMESTAMP, name="trace")
    assert stream.n == 3
    assert stream.name == "trace"
    assert stream.batches == [[(0, 1, 15), (0, 2, 3)], [(0, 1, 1), (0, 2, 0)]]


def test_ingest_one_timestamp_per_batch():
    stream = ingest_trace(TRACE.splitlines(), 1, TraceFormat.TIMESTAMP)
    assert stream.batches == [
        [(0, 1, 15)],
        [(0, 2, 3), (0, 1, 0)],
        [(0, 1, 1), (0, 2, 0)],
    ]


def test_ingest_sequence_rows_count_packets():
    lines = ["1,a,b", "1,b,a", "2,a,b", "3,c,a"]
    stream = ingest_trace(lines, 1, TraceFormat.SEQUENCE)
    assert stream.batches == [[(0, 1, 2)], [(0, 1, 1)], [(0, 2, 1), (0, 1, 0)]]


def test_ingest_skips_self_traffic():
    stream = ingest_trace(["1 a a 4", "1 a b 2"], 1, TraceFormat.TIMESTAMP)
    assert stream.batches == [[(0, 1, 2)]]


def test_ingest_unchanged_volume_emits_nothing():
    stream = ingest_trace(["1 a b 2", "2 b a 2"], 1, TraceFormat.TIMESTAMP)
    assert stream.batches == [[(0, 1, 2)], []]


def test_ingest_empty_trace():
    stream = ingest_trace(["# nothing"], 5, TraceFormat.TIMESTAMP)
    assert stream.n == 0
    assert stream.batches == []


def test_ingest_group_size():
    with pytest.raises(DjmValueError, match="at least 1"):
        ingest_trace([], 0, TraceFormat.TIMESTAMP)


@pytest.mark.parametrize(
    "line, fmt, message",
    [
        ("1 a b", TraceFormat.TIMESTAMP, "at least 4 columns"),
        ("1 a b big", TraceFormat.TIMESTAMP, "is not an integer"),
        ("1 a b -2", TraceFormat.TIMESTAMP, "is negative"),
        ("1 a", TraceFormat.SEQUENCE, "at least 3 columns"),
    ],
)
def test_parse_trace_line_errors(line, fmt, message):
    with pytest.raises(TraceParseError, match=message) as exc_info:
        parse_trace_line(line, fmt, 7)
    assert exc_info.value.line_no == 7


def test_parse_trace_line_extra_columns():
    record = parse_trace_line("0.5\tx\ty\t40\ttcp", TraceFormat.TIMESTAMP, 1)
    assert (record.stamp, record.src, record.dst, record.size) == ("0.5", "x", "y", 40)


def test_ingest_trace_file(tmp_path):
    path = tmp_path / "dc.txt"
    path.write_text(TRACE)
    stream = ingest_trace_file(path, 2, TraceFormat.TIMESTAMP)
    assert stream.name == "dc"
    assert len(stream.batches) == 2


def test_ingest_error_reports_file_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 a b 1\n\n2 a b\n")
    with pytest.raises(TraceParseError, match="line 3"):
        ingest_trace_file(path, 1, TraceFormat.TIMESTAMP)
