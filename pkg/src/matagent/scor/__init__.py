"""Repeated-trial response-consistency metrics and benchmark protocol."""

from .benchmark import (
    Answerer,
    BenchQuery,
    QueryResult,
    ScorReport,
    load_queries,
    render_table,
    run_benchmark,
    score_trials,
)
from .extraction import ORDERING_LABELS, extract_numeric, extract_ordering, extract_value
from .metrics import (
    ClassificationReport,
    ConsistencyScore,
    DegenerateTruth,
    EmptyInput,
    TrialSet,
    classification_metrics,
    cop_of,
    mae,
    precision_of,
    r2,
    sample_std,
    scor_of,
)

__all__ = [
    "Answerer",
    "BenchQuery",
    "ClassificationReport",
    "ConsistencyScore",
    "DegenerateTruth",
    "EmptyInput",
    "ORDERING_LABELS",
    "QueryResult",
    "ScorReport",
    "TrialSet",
    "classification_metrics",
    "cop_of",
    "extract_numeric",
    "extract_ordering",
    "extract_value",
    "load_queries",
    "mae",
    "precision_of",
    "r2",
    "render_table",
    "run_benchmark",
    "sample_std",
    "score_trials",
    "scor_of",
]
