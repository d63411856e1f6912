"""Repeated-trial benchmark runner and report model.

Each query runs N independent trials against an answerer; extracted values
feed the consistency metrics, and the per-query mean of valid values is
compared against the expected value for the error aggregate.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from .extraction import extract_value
from .metrics import ConsistencyScore, TrialSet, scor_of

NUMERIC_PROPERTIES = (
    "bulk_modulus",
    "formation_energy",
    "band_gap",
    "total_magnetization",
    "custom",
)
CATEGORICAL_PROPERTIES = ("magnetic_ordering",)
PROPERTIES = NUMERIC_PROPERTIES + CATEGORICAL_PROPERTIES


@dataclass(frozen=True)
class BenchQuery:
    id: str
    prompt: str
    property: str
    expected_value: object
    unit: str | None = None
    n_trials: int = 5

    def __post_init__(self) -> None:
        if self.property not in PROPERTIES:
            raise ValueError(f"unknown property {self.property!r}")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        numeric = self.property in NUMERIC_PROPERTIES
        if numeric and not self.unit:
            raise ValueError(f"numeric query {self.id!r} needs a unit")
        if not numeric and self.unit not in (None, "none", ""):
            raise ValueError(f"categorical query {self.id!r} must not carry a unit")

    @property
    def is_numeric(self) -> bool:
        return self.property in NUMERIC_PROPERTIES


def load_queries(path: str | Path) -> list[BenchQuery]:
    """Read a JSON-lines query set."""
    queries = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        raw = json.loads(line)
        queries.append(
            BenchQuery(
                id=str(raw["id"]),
                prompt=raw["prompt"],
                property=raw["property"],
                expected_value=raw["expected_value"],
                unit=raw.get("unit"),
                n_trials=int(raw.get("n_trials", 5)),
            )
        )
    return queries


# An answerer produces one response text for (query, trial_index). Failures
# raise; the runner records them as invalid responses.
Answerer = Callable[[BenchQuery, int], str]


@dataclass(frozen=True)
class QueryResult:
    query_id: str
    score: ConsistencyScore
    n_valid: int
    n_trials: int
    mean_valid: Optional[float]
    abs_error: Optional[float]
    trials: TrialSet = field(compare=False)

    def as_dict(self) -> dict:
        return {
            "precision": self.score.precision,
            "cop": self.score.cop,
            "confidence": self.score.confidence,
            "scor": self.score.scor,
            "n_valid": self.n_valid,
            "n_trials": self.n_trials,
            "mean_valid": self.mean_valid,
            "abs_error": self.abs_error,
        }


@dataclass(frozen=True)
class ScorReport:
    per_query: dict[str, QueryResult]
    run_config: dict

    @property
    def aggregate(self) -> dict:
        results = list(self.per_query.values())
        if not results:
            return {
                "mean_precision": None,
                "mean_cop": None,
                "mean_confidence": None,
                "mean_scor": None,
                "mae": None,
            }

        def mean_of(values: list[float]) -> Optional[float]:
            return sum(values) / len(values) if values else None

        abs_errors = [r.abs_error for r in results if r.abs_error is not None]
        return {
            "mean_precision": mean_of([r.score.precision for r in results if r.score.precision is not None]),
            "mean_cop": mean_of([r.score.cop for r in results if r.score.cop is not None]),
            "mean_confidence": mean_of([r.score.confidence for r in results]),
            "mean_scor": mean_of([r.score.scor for r in results]),
            "mae": mean_of(abs_errors),
        }

    def as_dict(self) -> dict:
        return {
            "per_query": {qid: r.as_dict() for qid, r in sorted(self.per_query.items())},
            "aggregate": self.aggregate,
            "run_config": self.run_config,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


def score_trials(query: BenchQuery, responses: Sequence[Optional[str]]) -> QueryResult:
    """Extract and score one query's responses (None marks a failed trial)."""
    extracted = tuple(
        extract_value(text, query.property, query.unit) if text is not None else None
        for text in responses
    )
    trials = TrialSet(
        query_id=query.id,
        n_trials=query.n_trials,
        raw_responses=tuple(t if t is not None else "" for t in responses),
        extracted=extracted,
    )
    score = scor_of(trials)

    mean_valid: Optional[float] = None
    abs_error: Optional[float] = None
    if query.is_numeric:
        numeric = [float(v) for v in trials.valid_values]
        if numeric:
            mean_valid = sum(numeric) / len(numeric)
            abs_error = abs(mean_valid - float(query.expected_value))
    else:
        values = trials.valid_values
        if values:
            counts: dict[object, int] = {}
            for v in values:
                counts[v] = counts.get(v, 0) + 1
            modal = max(counts.items(), key=lambda kv: (kv[1], str(kv[0])))[0]
            abs_error = 0.0 if modal == query.expected_value else 1.0

    return QueryResult(
        query_id=query.id,
        score=score,
        n_valid=trials.n_valid,
        n_trials=query.n_trials,
        mean_valid=mean_valid,
        abs_error=abs_error,
        trials=trials,
    )


def run_benchmark(
    queries: Sequence[BenchQuery],
    answerer: Answerer,
    parallelism: int = 1,
    run_config: dict | None = None,
) -> ScorReport:
    """Run every query N times and aggregate by unweighted mean over queries.

    Trials for distinct queries may run concurrently up to ``parallelism``;
    a failing trial counts as an invalid response and never aborts the run.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")

    config = dict(run_config or {})
    config.setdefault("timestamp", time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
    config.setdefault("parallelism", parallelism)

    def run_query(query: BenchQuery) -> QueryResult:
        responses: list[Optional[str]] = []
        for trial in range(query.n_trials):
            try:
                responses.append(answerer(query, trial))
            except Exception:
                responses.append(None)
        return score_trials(query, responses)

    if parallelism == 1:
        results = [run_query(q) for q in queries]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(run_query, queries))

    return ScorReport(per_query={r.query_id: r for r in results}, run_config=config)


_TABLE_COLUMNS = ("Precision", "CoP", "Confidence", "SCoR", "MAE")


def render_table(report: ScorReport) -> str:
    """Plain-text metric table, one row per query plus the aggregate row."""

    def fmt(x: Optional[float]) -> str:
        return "-" if x is None else f"{x:.3f}"

    rows = []
    for qid, r in sorted(report.per_query.items()):
        rows.append((qid, fmt(r.score.precision), fmt(r.score.cop),
                     fmt(r.score.confidence), fmt(r.score.scor), fmt(r.abs_error)))
    agg = report.aggregate
    rows.append(("ALL", fmt(agg["mean_precision"]), fmt(agg["mean_cop"]),
                 fmt(agg["mean_confidence"]), fmt(agg["mean_scor"]), fmt(agg["mae"])))

    headers = ("query",) + _TABLE_COLUMNS
    widths = [max(len(h), *(len(row[k]) for row in rows)) for k, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[k]) for k, h in enumerate(headers)),
        "  ".join("-" * widths[k] for k in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[k]) for k, cell in enumerate(row)))
    return "\n".join(lines) + "\n"
