#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

from enum import Enum


DEFAULT_PRIMES = (2, 3, 101, 32003)
DEFAULT_SAMPLES_PER_PRIME = 200
DEFAULT_SEED = 0
DEFAULT_JOBS = 1

MAX_STRUCTURAL_N = 24
DEFAULT_RANK_CAP_N = 12
FACE_BUDGET = 2 ** 20
EDGE_BUDGET = 2 ** 26
CYCLE_CAP = 10 ** 5
DECOMPOSITION_CAP = 10 ** 5

DEGREE3_SCAN_CAP = 6
EDGE_PAIR_CAP = 3
SYMBOLIC_CAP = 64
SOURCE_CYCLE_CAP = 16
MATCHING_NODE_BUDGET = 200000
MIN_WITNESS_SAMPLES = 50

REPORT_SCHEMA_VERSION = 1
ENV_PREFIX = "SUPPORTVAR_"
VARIABLE_PREFIX = "x"


class EdgeKind(Enum):
    Differential = "d"
    Homotopy = "h"


class ContainmentKind(Enum):
    Source = "source"
    Sink = "sink"


class WitnessKind(Enum):
    IsolatedVertex = "IsolatedVertex"
    SourcesVsNeighbors = "SourcesVsNeighbors"
    SinksVsSources = "SinksVsSources"
    OddAlternatingWalk = "OddAlternatingWalk"
    Degree3Isolated = "Degree3Isolated"
    EdgePairFamily = "EdgePairFamily"
    EdgesVsTriangles = "EdgesVsTriangles"
    HighDegreeVertex = "HighDegreeVertex"
    OddComponent = "OddComponent"
    SinksVsImageRank = "SinksVsImageRank"
    SourceCycle = "SourceCycle"
    GenericComponentRank = "GenericComponentRank"


class WalkDirection(Enum):
    Sink = "sink"
    Source = "source"


class VerdictKind(Enum):
    Exact = "exact"
    Bounded = "bounded"
    SampledOnly = "sampled"


class OutputFormat(Enum):
    Json = "json"
    Dot = "dot"
    Text = "text"


class ExitCode(Enum):
    Success = 0
    VerificationFailure = 1
    BadInput = 2
    CapExceeded = 3


class ErrorCodes(Enum):
    DivisibleGenerators = "input:divisible-generators"
    EmptyInput = "input:empty"
    NotMinimal = "input:not-minimal"
    EmptyType = "input:empty-type"
    IndexOutOfRange = "input:index-out-of-range"
    DimensionMismatch = "input:dimension-mismatch"
    NotPrime = "input:not-prime"
    BadParameters = "input:bad-parameters"
    MalformedDocument = "input:malformed-document"
    FaceBudgetExceeded = "cap:face-budget"
    EdgeBudgetExceeded = "cap:edge-budget"
    MatrixTooLarge = "cap:matrix-too-large"
    CycleCapExceeded = "cap:cycle-cap"
    OverlappingCyclesUnsupported = "cap:overlapping-cycles"
    WrongCardinality = "verify:wrong-cardinality"
    SharedVertex = "verify:shared-vertex"
    MissingEdge = "verify:missing-edge"
    ForbiddenHomotopyIndex = "verify:forbidden-homotopy-index"
    UnverifiedMatching = "verify:unverified-matching"
    ThetaTouchedByMatching = "verify:theta-touched"
    UnsatisfiableOverField = "verify:unsatisfiable"
    NoHandConstruction = "verify:no-hand-construction"
    WitnessRejected = "verify:witness-rejected"


INPUT_ERRORS = (
    ErrorCodes.DivisibleGenerators,
    ErrorCodes.EmptyInput,
    ErrorCodes.NotMinimal,
    ErrorCodes.EmptyType,
    ErrorCodes.IndexOutOfRange,
    ErrorCodes.DimensionMismatch,
    ErrorCodes.NotPrime,
    ErrorCodes.BadParameters,
    ErrorCodes.MalformedDocument,
)
CAP_ERRORS = (
    ErrorCodes.FaceBudgetExceeded,
    ErrorCodes.EdgeBudgetExceeded,
    ErrorCodes.MatrixTooLarge,
    ErrorCodes.CycleCapExceeded,
    ErrorCodes.OverlappingCyclesUnsupported,
)


class FamilyKind(Enum):
    CycleEdgeIdeal = "cycle"
    DoubleBroom = "db"
    WhiskeredTriangle = "wt"
    DeltaN = "delta"
    TypeB = "type-b"
    CycleFiber = "cycle-fiber"


class GraphType(Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    A = "A"
    B = "B"
    C = "C"
