"""Enumerations shared between the solvers, instance tools and the CLI."""

from enum import Enum


class UpdateClass(str, Enum):
    """Kind of an applied edge update (derived from old and new weight)."""

    INSERTION = "insertion"
    DELETION = "deletion"
    CHANGE_UP = "change-up"
    CHANGE_DOWN = "change-down"

    @property
    def is_increase(self) -> bool:
        return self in (UpdateClass.INSERTION, UpdateClass.CHANGE_UP)

    @property
    def is_decrease(self) -> bool:
        return self in (UpdateClass.DELETION, UpdateClass.CHANGE_DOWN)


class AlgorithmId(str, Enum):
    """Algorithm identifiers accepted by `djm run`."""

    GREEDY = "greedy"
    GREEDY_L = "greedy-l"
    NODE_CENTERED = "nc"
    KEC = "kec"
    DYN_GREEDY = "dyn-greedy"
    DYN_GREEDY_R = "dyn-greedy-r"
    DYN_KEC = "dyn-kec"
    BATCH_GREEDY = "batch-greedy"
    BATCH_GREEDY_L = "batch-greedy-l"
    BATCH_NC = "batch-nc"
    BATCH_2APX = "batch-2apx"
    HYBRID_GREEDY_R = "hybrid-greedy-r"
    HYBRID_KEC = "hybrid-kec"

    def __str__(self):
        return self.value

    @property
    def randomized(self) -> bool:
        """Whether repeats of this algorithm use distinct seeds."""
        return self in (AlgorithmId.DYN_GREEDY_R, AlgorithmId.HYBRID_GREEDY_R)


class SolveMode(str, Enum):
    """Per-batch mode of a hybrid solver."""

    DYNAMIC = "dynamic"
    STATIC = "static"


class FilterDecision(str, Enum):
    """Whether an update is forwarded to the solver."""

    KEEP = "keep"
    DROP = "drop"


class RecourseScope(str, Enum):
    """Which edges a recourse count is taken over."""

    ALL = "all"
    TOUCHED = "touched"


class RmatModel(str, Enum):
    """RMAT initiator presets."""

    B = "b"
    G = "g"
    ER = "er"

    @property
    def initiator(self) -> tuple[float, float, float, float]:
        return _RMAT_INITIATORS[self]


_RMAT_INITIATORS = {
    RmatModel.B: (0.55, 0.15, 0.15, 0.15),
    RmatModel.G: (0.45, 0.15, 0.15, 0.25),
    RmatModel.ER: (0.25, 0.25, 0.25, 0.25),
}


class TraceFormat(str, Enum):
    """Row layout of a traffic trace.

    `ts` rows carry a timestamp and a packet size; `seq` rows carry a sequence
    number and count as one packet each.
    """

    TIMESTAMP = "ts"
    SEQUENCE = "seq"
