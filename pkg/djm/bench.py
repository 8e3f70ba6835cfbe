"""Experiment driver: replays an instance through a solver and records per-batch metrics."""

import csv
import statistics
import time
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Iterable, Sequence

from djm.enums import RecourseScope
from djm.exceptions import MetricsError, ValidationFailure
from djm.graph import Batch, Graph
from djm.instances.format import InstanceStream, read_instance
from djm.logs import log
from djm.oracle import recourse, validate
from djm.schemas import (
    AGGREGATE_HEADER,
    CSV_HEADER,
    AggregateRow,
    MetricsRecord,
    RunConfig,
)
from djm.solvers import Solver, make_solver
from djm.solvers.registry import parse_algorithm


def build_solver(graph: Graph, config: RunConfig, seed: int) -> Solver:
    return make_solver(
        config.algo,
        graph,
        config.k,
        postprocess=config.postprocess,
        filter_config=config.filter,
        seed=seed,
        alpha=config.alpha,
        theta=config.theta,
    )


def solve_batch(solver: Solver, batch: Batch) -> int:
    """Feeds one batch through `solver`; returns the elapsed nanoseconds."""
    start = time.perf_counter_ns()
    solver.process_batch(batch)
    return time.perf_counter_ns() - start


def check_batch(solver: Solver, context: str) -> None:
    report = validate(solver.graph, solver.coloring)
    if not report.ok:
        raise ValidationFailure(report, context)


def run_once(stream: InstanceStream, config: RunConfig, repeat: int) -> list[MetricsRecord]:
    """One replay of `stream`; recourse runs leave the time column empty."""
    seed = config.seed_for(repeat)
    solver = build_solver(Graph(stream.n), config, seed)

    records = []
    for index, batch in enumerate(stream.replay()):
        before = solver.coloring.snapshot() if config.measure_recourse else None
        solver.coloring.reset_touched()
        elapsed = solve_batch(solver, batch)

        coloring = solver.coloring
        if config.validate_batches:
            check_batch(solver, f"{config.label} on {config.instance}, batch {index}")

        rec_all = rec_touched = None
        if before is not None:
            rec_all = recourse(before, coloring, RecourseScope.ALL)
            rec_touched = recourse(before, coloring, RecourseScope.TOUCHED, batch.touched)
        records.append(
            MetricsRecord(
                instance=config.instance,
                algo=config.label,
                k=config.k,
                seed=seed,
                repeat=repeat,
                batch=index,
                b=batch.size,
                time_ns=None if config.measure_recourse else elapsed,
                weight=coloring.weight,
                recourse_all=rec_all,
                recourse_touched=rec_touched,
            )
        )
        log.debug(
            "%s batch %d: b=%d, %d ns, weight %d, %d edges touched",
            config.label,
            index,
            batch.size,
            elapsed,
            coloring.weight,
            len(coloring.touched),
        )
    return records


def _mean(values: Sequence[float | None]) -> float | None:
    present = [v for v in values if v is not None]
    return statistics.fmean(present) if present else None


def reduce_repeats(records: Iterable[MetricsRecord], randomized: bool) -> list[MetricsRecord]:
    """One row per (instance, algo, k, batch).

    Deterministic runs take the median time and the first repeat's values;
    randomized runs take arithmetic means over the repeats.
    """
    keyed = sorted(
        records, key=lambda r: (r.instance, r.algo, r.k, r.batch, r.repeat or 0)
    )
    reduced = []
    for (instance, algo, k, batch), group in groupby(
        keyed, key=lambda r: (r.instance, r.algo, r.k, r.batch)
    ):
        rows = list(group)
        first = rows[0]
        times = [r.time_ns for r in rows if r.time_ns is not None]
        if randomized:
            reduced.append(
                MetricsRecord(
                    instance=instance,
                    algo=algo,
                    k=k,
                    batch=batch,
                    b=first.b,
                    time_ns=_mean(times),
                    weight=statistics.fmean(r.weight for r in rows),
                    recourse_all=_mean([r.recourse_all for r in rows]),
                    recourse_touched=_mean([r.recourse_touched for r in rows]),
                )
            )
        else:
            reduced.append(
                first.model_copy(
                    update={
                        "repeat": None,
                        "time_ns": statistics.median(times) if times else None,
                    }
                )
            )
    return reduced


def run_experiment(
    config: RunConfig, stream: InstanceStream | None = None
) -> tuple[list[MetricsRecord], list[MetricsRecord]]:
    """Runs all repeats; returns (raw rows, reduced rows)."""
    if stream is None:
        stream = read_instance(config.input)
    raw = []
    for repeat in range(config.repeats):
        log.info(
            "Running %s (k=%d) on %s, repeat %d/%d",
            config.label,
            config.k,
            config.instance,
            repeat + 1,
            config.repeats,
        )
        raw.extend(run_once(stream, config, repeat))
    return raw, reduce_repeats(raw, config.algo.randomized)


def write_records(records: Iterable[MetricsRecord], path: Path | str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as csv_fp:
        writer = csv.DictWriter(csv_fp, fieldnames=CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record.to_row())


def read_records(path: Path | str) -> list[MetricsRecord]:
    with open(path, newline="", encoding="utf-8") as csv_fp:
        reader = csv.DictReader(csv_fp)
        missing = set(CSV_HEADER) - set(reader.fieldnames or ())
        if missing:
            raise MetricsError(
                f"{path} is missing columns: {', '.join(sorted(missing))}."
            )
        return [MetricsRecord.from_row(row) for row in reader]


@dataclass(frozen=True)
class InstanceMetrics:
    """Per-instance means: time per update, weight, and recourse per batch."""

    tau: float | None
    sigma: float
    omega: float | None


def _by_batch(records: Sequence[MetricsRecord], what: str) -> list[MetricsRecord]:
    batches = sorted(r.batch for r in records)
    if len(set(batches)) != len(batches):
        raise MetricsError(f"Duplicate batches among the {what} rows; reduce repeats first.")
    if batches != list(range(len(batches))):
        missing = sorted(set(range(batches[-1] + 1)) - set(batches))
        raise MetricsError(f"Missing batch {missing[0]} among the {what} rows.")
    return sorted(records, key=lambda r: r.batch)


def compute_per_instance(records: Sequence[MetricsRecord]) -> InstanceMetrics:
    """Reduces the rows of one (instance, algo, k); timed and recourse rows may mix."""
    if not records:
        raise MetricsError("No rows to aggregate.")
    timed = [r for r in records if r.time_ns is not None]
    with_recourse = [r for r in records if r.recourse_all is not None]
    weighted = _by_batch(timed or with_recourse or list(records), "weight")

    tau = None
    if timed:
        per_update = [r.time_ns / r.b for r in _by_batch(timed, "timed") if r.b > 0]
        tau = statistics.fmean(per_update) if per_update else None
    omega = None
    if with_recourse:
        omega = statistics.fmean(
            r.recourse_all for r in _by_batch(with_recourse, "recourse")
        )
    return InstanceMetrics(
        tau=tau, sigma=statistics.fmean(r.weight for r in weighted), omega=omega
    )


def _ratio(num: float | None, den: float | None, what: str, instance: str) -> float | None:
    if num is None or den is None:
        return None
    if den == 0 or num == 0:
        log.warning("Skipping %s of %s: zero value in the ratio", what, instance)
        return None
    return num / den


def aggregate_relative(
    records: Iterable[MetricsRecord], reference: str, dataset: str = ""
) -> list[AggregateRow]:
    """Geometric means over instances of speedup, relative weight and relative recourse."""
    parse_algorithm(reference)
    per_instance: dict[tuple[str, str, int], InstanceMetrics] = {}
    keyed = sorted(records, key=lambda r: (r.instance, r.algo, r.k))
    for key, group in groupby(keyed, key=lambda r: (r.instance, r.algo, r.k)):
        per_instance[key] = compute_per_instance(list(group))

    rows = []
    cells = sorted({(algo, k) for _, algo, k in per_instance})
    for algo, k in cells:
        speedups, weights, recourses = [], [], []
        instances = 0
        for (instance, a, kk), ours in per_instance.items():
            if a != algo or kk != k:
                continue
            ref = per_instance.get((instance, reference, k))
            if ref is None:
                log.warning("No %s rows for %s (k=%d); skipped", reference, instance, k)
                continue
            instances += 1
            for bucket, value in (
                (speedups, _ratio(ref.tau, ours.tau, "speedup", instance)),
                (weights, _ratio(ours.sigma, ref.sigma, "relative weight", instance)),
                (recourses, _ratio(ours.omega, ref.omega, "relative recourse", instance)),
            ):
                if value is not None:
                    bucket.append(value)
        if not instances:
            continue
        rows.append(
            AggregateRow(
                dataset=dataset,
                algo=algo,
                reference=reference,
                k=k,
                instances=instances,
                speedup=statistics.geometric_mean(speedups) if speedups else None,
                relative_weight=statistics.geometric_mean(weights) if weights else None,
                relative_recourse=(
                    statistics.geometric_mean(recourses) if recourses else None
                ),
            )
        )
    return rows


def write_aggregate(rows: Iterable[AggregateRow], path: Path | str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as csv_fp:
        writer = csv.DictWriter(csv_fp, fieldnames=AGGREGATE_HEADER, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_row())
