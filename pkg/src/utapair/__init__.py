"""Identification of two piecewise-linear additive value functions from
anonymized indifference queries.

Public surface: exact-rational model types, the query oracle protocol,
the two geometric probe patterns, the coefficient solvers, and the
end-to-end elicitation driver, plus scenario files and chart payloads.
"""
from .algebra import (
    DegenerateError,
    DegenerateGeometryError,
    NrCoefficients,
    PhiZeroError,
    SlopePairResult,
    SrCoefficients,
    nr_coefficients,
    solve_downward,
    solve_sr_nr,
    solve_two_sr,
    sr_coefficients,
)
from .elicitation import (
    ElicitationOutcome,
    ElicitationStats,
    NoValidReferencePairError,
    run,
)
from .model import (
    CriterionScale,
    Grid,
    GridMismatchError,
    OutOfScaleError,
    UtaModel,
    format_rational,
    models_equivalent,
    normalize_unit_slope,
    parse_rational,
    renormalize_01,
)
from .oracle import (
    AnswerPair,
    OracleFailure,
    Query,
    RecordingSource,
    ReplayMismatchError,
    ReplayTranscript,
    SimulatedPair,
    Transcript,
    TranscriptRecord,
    answer_indifference,
    simulated_answer,
)
from .patterns import (
    IterationBudgetExceeded,
    NrInfo,
    PlanePoint,
    SrInfo,
    neighboring_rectangles,
    single_rectangle,
)
from .plotdata import curve_payload, indifference_polyline, marginal_payload
from .scenario import RunReport, Scenario, execute, generate_scenario

__version__ = "0.1.0"

__all__ = [
    "AnswerPair",
    "CriterionScale",
    "DegenerateError",
    "DegenerateGeometryError",
    "ElicitationOutcome",
    "ElicitationStats",
    "Grid",
    "GridMismatchError",
    "IterationBudgetExceeded",
    "NoValidReferencePairError",
    "NrCoefficients",
    "NrInfo",
    "OracleFailure",
    "OutOfScaleError",
    "PhiZeroError",
    "PlanePoint",
    "Query",
    "RecordingSource",
    "ReplayMismatchError",
    "ReplayTranscript",
    "RunReport",
    "Scenario",
    "SimulatedPair",
    "SlopePairResult",
    "SrCoefficients",
    "SrInfo",
    "Transcript",
    "TranscriptRecord",
    "UtaModel",
    "answer_indifference",
    "curve_payload",
    "execute",
    "format_rational",
    "generate_scenario",
    "indifference_polyline",
    "marginal_payload",
    "models_equivalent",
    "neighboring_rectangles",
    "normalize_unit_slope",
    "nr_coefficients",
    "parse_rational",
    "renormalize_01",
    "run",
    "simulated_answer",
    "single_rectangle",
    "solve_downward",
    "solve_sr_nr",
    "solve_two_sr",
    "sr_coefficients",
    "__version__",
]
