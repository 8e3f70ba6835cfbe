"""Benchmark and instance tools for dynamic k-disjoint matchings."""

import sys
from pathlib import Path

import click
import networkx as nx
import orjson
from pydantic import ValidationError

from djm import bench
from djm.enums import AlgorithmId, RmatModel, TraceFormat
from djm.exceptions import DjmValueError, InvariantError
from djm.graph import Graph
from djm.instances import (
    gen_rmat_dynamic,
    ingest_trace_file,
    read_instance,
    split_instance,
    write_instance,
)
from djm.logs import configure_logging, log
from djm.oracle import brute_force_opt
from djm.schemas import (
    DEFAULT_ALPHA,
    DEFAULT_DENSITY,
    DEFAULT_FILTER_T,
    DEFAULT_ORACLE_MAX_EDGES,
    DEFAULT_REPEATS,
    DEFAULT_SEED,
    DEFAULT_THETA,
    DEFAULT_UPDATE_BATCHES,
    DEFAULT_WEIGHT_SCALE,
    FilterConfig,
    RmatParams,
    RunConfig,
    SplitParams,
)
from djm.solvers import dominance_violations, parse_algorithm

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INVARIANT = 3

_existing_file = click.Path(exists=True, dir_okay=False, path_type=Path)
_out_file = click.Path(dir_okay=False, writable=True, path_type=Path)


class DjmGroup(click.Group):
    """Maps failures to exit codes: 1 usage, 2 bad data, 3 internal invariant."""

    def main(self, *args, standalone_mode: bool = True, **kwargs):
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as ex:
            ex.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as ex:
            ex.show()
            sys.exit(ex.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except (DjmValueError, ValidationError) as ex:
            click.echo(f"Error: {ex}", err=True)
            sys.exit(EXIT_DATA)
        except InvariantError as ex:
            log.exception("Internal consistency check failed")
            click.echo(f"Error: {ex}", err=True)
            sys.exit(EXIT_INVARIANT)
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=DjmGroup)
@click.option(
    "--log-level",
    envvar="DJM_LOG_LEVEL",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
)
@click.option("--log-config", envvar="DJM_LOG_CONFIG", type=_existing_file)
def cli(log_level: str, log_config: Path | None):
    """Dynamic k-disjoint matchings: solvers, instance tools and benchmarks."""
    configure_logging(log_config, log_level)


def _run_config(
    label: str,
    k: int,
    input_path: Path,
    instance: str | None,
    filter_t: float | None,
    postprocess: bool,
    **kwargs,
) -> RunConfig:
    algo, suffix_p, suffix_f = parse_algorithm(label)
    if suffix_f and filter_t is None:
        filter_t = DEFAULT_FILTER_T
    return RunConfig(
        input=input_path,
        instance=instance or input_path.stem,
        algo=algo,
        k=k,
        filter=None if filter_t is None else FilterConfig(t=filter_t),
        postprocess=postprocess or suffix_p,
        **kwargs,
    )


@cli.command("run")
@click.option("--algo", "label", required=True, help="Algorithm id, optionally with -p/-f.")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--input", "input_path", type=_existing_file, required=True)
@click.option("--out", "out_path", type=_out_file, required=True)
@click.option("--raw-out", "raw_path", type=_out_file, help="Also write unreduced rows.")
@click.option("--instance", help="Instance name in the CSV (defaults to the file stem).")
@click.option("--repeats", type=click.IntRange(min=1), default=DEFAULT_REPEATS, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--filter", "filter_t", type=float, help="Filter threshold t (>= 1).")
@click.option("--postprocess", is_flag=True)
@click.option("--measure-recourse", is_flag=True, help="Record recourse; no timings.")
@click.option("--validate/--no-validate", "validate_batches", default=True, show_default=True)
@click.option("--theta", type=float, default=DEFAULT_THETA, show_default=True)
@click.option("--alpha", type=int, default=DEFAULT_ALPHA, show_default=True)
def run(
    label: str,
    k: int,
    input_path: Path,
    out_path: Path,
    raw_path: Path | None,
    instance: str | None,
    repeats: int,
    seed: int,
    filter_t: float | None,
    postprocess: bool,
    measure_recourse: bool,
    validate_batches: bool,
    theta: float,
    alpha: int,
):
    """Replays an instance through one algorithm and writes per-batch metrics."""
    config = _run_config(
        label,
        k,
        input_path,
        instance,
        filter_t,
        postprocess,
        repeats=repeats,
        seed=seed,
        measure_recourse=measure_recourse,
        validate_batches=validate_batches,
        theta=theta,
        alpha=alpha,
    )
    raw, reduced = bench.run_experiment(config)
    bench.write_records(reduced, out_path)
    if raw_path is not None:
        bench.write_records(raw, raw_path)
    click.echo(f"Wrote {len(reduced)} rows for {config.label} (k={k}) to {out_path}.")


@cli.command("gen-rmat")
@click.option("--log-nodes", type=click.IntRange(1, 30), required=True)
@click.option(
    "--model",
    type=click.Choice([m.value for m in RmatModel], case_sensitive=False),
    default=RmatModel.B.value,
    show_default=True,
)
@click.option("--fraction", type=float, default=0.1, show_default=True)
@click.option("--del-prob", type=float, default=0.1, show_default=True)
@click.option(
    "--update-batches",
    type=click.IntRange(min=0),
    default=DEFAULT_UPDATE_BATCHES,
    show_default=True,
)
@click.option("--density", type=float, default=DEFAULT_DENSITY, show_default=True)
@click.option("--weight-scale", type=float, default=DEFAULT_WEIGHT_SCALE, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--out", "out_path", type=_out_file, required=True)
def gen_rmat(
    log_nodes: int,
    model: str,
    fraction: float,
    del_prob: float,
    update_batches: int,
    density: float,
    weight_scale: float,
    seed: int,
    out_path: Path,
):
    """Generates a dynamic RMAT instance."""
    params = RmatParams(
        log_nodes=log_nodes,
        model=RmatModel(model.lower()),
        fraction=fraction,
        del_prob=del_prob,
        update_batches=update_batches,
        density=density,
        weight_scale=weight_scale,
        seed=seed,
    )
    stream = gen_rmat_dynamic(params)
    write_instance(stream, out_path)
    _echo_summary(stream, out_path)


@cli.command("split")
@click.option("--sub-batches", type=int, required=True)
@click.option("--cap", type=int, required=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--in", "input_path", type=_existing_file, required=True)
@click.option("--out", "out_path", type=_out_file, required=True)
def split(sub_batches: int, cap: int, seed: int, input_path: Path, out_path: Path):
    """Spreads every batch over sub-batches with edge weights capped at CAP."""
    params = SplitParams(sub_batches=sub_batches, cap=cap, seed=seed)
    stream = split_instance(read_instance(input_path), params)
    write_instance(stream, out_path)
    _echo_summary(stream, out_path)


@cli.command("ingest")
@click.option("--group", type=int, required=True, help="Distinct timestamps per batch.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in TraceFormat], case_sensitive=False),
    required=True,
)
@click.option("--in", "input_path", type=_existing_file, required=True)
@click.option("--out", "out_path", type=_out_file, required=True)
def ingest(group: int, fmt: str, input_path: Path, out_path: Path):
    """Turns a traffic trace into a DJM instance."""
    stream = ingest_trace_file(input_path, group, TraceFormat(fmt.lower()))
    write_instance(stream, out_path)
    _echo_summary(stream, out_path)


@cli.command("aggregate")
@click.option("--reference", default=AlgorithmId.KEC.value, show_default=True)
@click.option("--in", "input_paths", type=_existing_file, multiple=True, required=True)
@click.option("--out", "out_path", type=_out_file, required=True)
@click.option("--dataset", default="", help="Label written to every aggregate row.")
def aggregate(reference: str, input_paths: tuple[Path, ...], out_path: Path, dataset: str):
    """Geometric means of speedup, weight and recourse relative to REFERENCE."""
    records = []
    for path in input_paths:
        records.extend(bench.read_records(path))
    rows = bench.aggregate_relative(records, reference, dataset=dataset)
    bench.write_aggregate(rows, out_path)
    click.echo(f"Wrote {len(rows)} aggregate rows to {out_path}.")


def _optimum(graph: Graph, k: int, max_edges: int) -> tuple[int | None, str | None]:
    if k == 1:
        nx_graph = nx.Graph()
        nx_graph.add_weighted_edges_from((u, v, w) for (u, v), w in graph.weighted_edges())
        matching = nx.max_weight_matching(nx_graph)
        return sum(graph.weight((min(e), max(e))) for e in matching), "networkx"
    if graph.m <= max_edges:
        return brute_force_opt(graph, k, max_edges)[0], "brute-force"
    log.warning(
        "Final graph has %d edges (> %d); skipping the exact optimum", graph.m, max_edges
    )
    return None, None


@cli.command("verify")
@click.option("--in", "input_path", type=_existing_file, required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--algo", "label", default=AlgorithmId.KEC.value, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option(
    "--oracle-max-edges",
    type=click.IntRange(min=0),
    default=DEFAULT_ORACLE_MAX_EDGES,
    show_default=True,
)
def verify(input_path: Path, k: int, label: str, seed: int, oracle_max_edges: int):
    """Replays an instance, validating every batch, and compares with the optimum."""
    stream = read_instance(input_path)
    config = _run_config(label, k, input_path, None, None, False, repeats=1, seed=seed)
    solver = bench.build_solver(Graph(stream.n), config, seed)
    for index, batch in enumerate(stream.replay()):
        bench.solve_batch(solver, batch)
        bench.check_batch(solver, f"{config.label}, batch {index}")

    graph, coloring = solver.graph, solver.coloring
    opt, source = _optimum(graph, k, oracle_max_edges)
    ratio = None
    if opt:
        ratio = coloring.weight / opt
    elif opt == 0:
        ratio = 1.0

    if opt is not None and coloring.weight > opt:
        raise InvariantError(f"Weight {coloring.weight} exceeds the optimum {opt}.")
    # Hybrids post-process their dynamic batches only.
    hybrid = config.algo in (AlgorithmId.HYBRID_GREEDY_R, AlgorithmId.HYBRID_KEC)
    guaranteed = (config.postprocess and not hybrid) or (
        config.algo is AlgorithmId.BATCH_2APX
    )
    if guaranteed:
        violations = dominance_violations(graph, coloring)
        if violations:
            (u, v), col = violations[0]
            raise InvariantError(
                f"Uncolored edge ({u}, {v}) outweighs its color-{col} neighborhood."
            )
        if opt is not None and 2 * coloring.weight < opt:
            raise InvariantError(
                f"Weight {coloring.weight} is below half the optimum {opt}."
            )

    report = {
        "instance": config.instance,
        "algo": config.label,
        "k": k,
        "batches": len(stream),
        "edges": graph.m,
        "weight": coloring.weight,
        "opt": opt,
        "opt_source": source,
        "ratio": ratio,
    }
    click.echo(orjson.dumps(report, option=orjson.OPT_INDENT_2).decode())


def _echo_summary(stream, out_path: Path) -> None:
    summary = stream.summary()
    click.echo(
        f"Wrote {out_path}: n={summary.n}, {summary.batches} batches, "
        f"{summary.updates} updates, max weight {summary.max_weight}, "
        f"{summary.final_edges} edges at the end."
    )


if __name__ == "__main__":
    cli()  # pragma: no cover
