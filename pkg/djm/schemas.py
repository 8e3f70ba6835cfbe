"""Configuration objects and metric records."""

import math
from pathlib import Path
from typing import Annotated, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from djm import enums

DEFAULT_THETA = 0.2
DEFAULT_REPEATS = 3
DEFAULT_FILTER_T = 2.0
DEFAULT_ALPHA = 1
DEFAULT_SEED = 1
DEFAULT_UPDATE_BATCHES = 30
DEFAULT_DENSITY = 8.0
MAX_RMAT_WEIGHT = 500_000
DEFAULT_WEIGHT_SCALE = 50_000
DEFAULT_ORACLE_MAX_EDGES = 20

CSV_HEADER = (
    "instance",
    "algo",
    "k",
    "seed",
    "repeat",
    "batch",
    "b",
    "time_ns",
    "weight",
    "recourse_all",
    "recourse_touched",
)
AGGREGATE_HEADER = (
    "dataset",
    "algo",
    "reference",
    "k",
    "instances",
    "speedup",
    "relative_weight",
    "relative_recourse",
)

# Fraction of a quantity in [0, 1].
Fraction = Annotated[float, Field(ge=0, le=1)]
# Ratio threshold of the update filter; t = 1 filters nothing.
FilterThreshold = Annotated[float, Field(ge=1)]
NonNegInt = Annotated[int, Field(ge=0)]
# Reduced rows hold means over repeats.
NonNegNumber = Annotated[int | float, Field(ge=0)]
PosInt = Annotated[int, Field(ge=1)]
InstanceName = Annotated[str, Field(min_length=1, max_length=255)]


class DynGreedyConfig(BaseModel):
    """Parameters of the dynamic greedy solver.

    With `deterministic` set, the sample size used at run time is `max(k, Δ)` and
    the solver never touches its random generator.
    """

    model_config = ConfigDict(frozen=True)

    alpha: NonNegInt = DEFAULT_ALPHA
    beta: PosInt = 1
    deterministic: bool = True
    seed: int = DEFAULT_SEED

    def effective_beta(self, k: int, max_degree: int) -> int:
        return max(k, max_degree) if self.deterministic else self.beta


class FilterConfig(BaseModel):
    """Threshold of the weight-change filter."""

    model_config = ConfigDict(frozen=True)

    t: FilterThreshold = DEFAULT_FILTER_T


class NodeCenteredConfig(BaseModel):
    """Deferral threshold of the node-centered solvers (a fraction of W)."""

    model_config = ConfigDict(frozen=True)

    theta: Fraction = DEFAULT_THETA


class SplitParams(BaseModel):
    """Split-instance parameters: `sub_batches` (y) per batch, weight `cap` (z)."""

    model_config = ConfigDict(frozen=True)

    sub_batches: PosInt
    cap: PosInt
    seed: int = DEFAULT_SEED

    @property
    def limit(self) -> int:
        return self.sub_batches * self.cap


class RmatParams(BaseModel):
    """Dynamic RMAT generator parameters."""

    model_config = ConfigDict(frozen=True)

    log_nodes: Annotated[int, Field(ge=1, le=30)]
    model: enums.RmatModel = enums.RmatModel.B
    initiator: Optional[tuple[Fraction, Fraction, Fraction, Fraction]] = None
    fraction: Annotated[float, Field(gt=0, le=1)] = 0.1
    del_prob: Fraction = 0.1
    update_batches: NonNegInt = DEFAULT_UPDATE_BATCHES
    density: Annotated[float, Field(gt=0)] = DEFAULT_DENSITY
    weight_scale: Annotated[float, Field(gt=0)] = DEFAULT_WEIGHT_SCALE
    max_weight: PosInt = MAX_RMAT_WEIGHT
    seed: int = DEFAULT_SEED

    @field_validator("initiator")
    @classmethod
    def check_initiator(cls, v):
        if v is not None and not math.isclose(sum(v), 1.0, abs_tol=1e-9):
            raise ValueError(
                f"Initiator probabilities must sum to 1, got {sum(v):.6f}."
            )
        return v

    @property
    def n(self) -> int:
        return 1 << self.log_nodes

    @property
    def quadrants(self) -> tuple[float, float, float, float]:
        return self.model.initiator if self.initiator is None else self.initiator


class RunConfig(BaseModel):
    """One `djm run` invocation: an instance, a solver preset and its repeats."""

    model_config = ConfigDict(frozen=True)

    input: Path
    instance: InstanceName
    algo: enums.AlgorithmId
    k: PosInt
    repeats: PosInt = DEFAULT_REPEATS
    seed: int = DEFAULT_SEED
    filter: Optional[FilterConfig] = None
    postprocess: bool = False
    measure_recourse: bool = False
    validate_batches: bool = True
    theta: Fraction = DEFAULT_THETA
    alpha: NonNegInt = DEFAULT_ALPHA

    @property
    def label(self) -> str:
        """Algorithm id with its suffix flags, as written to the CSV."""
        suffix = ("p" if self.postprocess else "") + ("f" if self.filter else "")
        if not suffix:
            return str(self.algo)
        if self.algo.randomized:
            return f"{self.algo}{suffix}"
        return f"{self.algo}-{suffix}"

    def seed_for(self, repeat: int) -> int:
        """Randomized presets get a distinct seed per repeat."""
        return self.seed + repeat if self.algo.randomized else self.seed


class MetricsRecord(BaseModel):
    """One batch of one run (or a reduced row over the repeats, `repeat=None`)."""

    model_config = ConfigDict(frozen=True)

    instance: InstanceName
    algo: str
    k: PosInt
    seed: Optional[int] = None
    repeat: Optional[NonNegInt] = None
    batch: NonNegInt
    b: NonNegInt
    time_ns: Optional[NonNegNumber] = None
    weight: NonNegNumber
    recourse_all: Optional[NonNegNumber] = None
    recourse_touched: Optional[NonNegNumber] = None

    def to_row(self) -> dict[str, str]:
        return {
            name: "" if getattr(self, name) is None else str(getattr(self, name))
            for name in CSV_HEADER
        }

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "MetricsRecord":
        return cls(**{name: (row[name] or None) for name in CSV_HEADER})


class AggregateRow(BaseModel):
    """Geometric means of per-instance ratios against a reference algorithm."""

    model_config = ConfigDict(frozen=True)

    dataset: str
    algo: str
    reference: str
    k: PosInt
    instances: NonNegInt
    speedup: Optional[Annotated[float, Field(gt=0)]] = None
    relative_weight: Optional[Annotated[float, Field(gt=0)]] = None
    relative_recourse: Optional[Annotated[float, Field(gt=0)]] = None

    def to_row(self) -> dict[str, str]:
        row = {}
        for name in AGGREGATE_HEADER:
            value = getattr(self, name)
            if value is None:
                row[name] = ""
            elif isinstance(value, float):
                row[name] = f"{value:.6f}"
            else:
                row[name] = str(value)
        return row


class InstanceSummary(BaseModel):
    """Shape of an instance stream, as reported by the CLI."""

    n: NonNegInt
    batches: NonNegInt
    updates: NonNegInt
    max_weight: NonNegInt
    final_edges: NonNegInt
