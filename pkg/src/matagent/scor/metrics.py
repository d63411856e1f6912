"""Self-consistency and accuracy metrics for repeated-trial evaluations.

A query is asked N times; the n responses that yield a usable value are the
"valid" ones. Precision is the standard error of the valid values, CoP maps
it into (0, 1], Confidence is the valid fraction, and their product scores
overall response self-consistency in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence


class EmptyInput(ValueError):
    pass


class DegenerateTruth(ValueError):
    pass


@dataclass(frozen=True)
class TrialSet:
    """Raw and extracted responses for one query over N trials."""

    query_id: str
    n_trials: int
    raw_responses: tuple[str, ...] = ()
    extracted: tuple[Optional[object], ...] = ()

    def __post_init__(self) -> None:
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.extracted and len(self.extracted) != self.n_trials:
            raise ValueError("extracted must have one slot per trial")

    @property
    def valid_values(self) -> list[object]:
        return [v for v in self.extracted if v is not None]

    @property
    def n_valid(self) -> int:
        return len(self.valid_values)


def sample_std(values: Sequence[float]) -> float:
    """Sample standard deviation (n-1 denominator); 0.0 for a single value."""
    n = len(values)
    if n == 0:
        raise EmptyInput("no values")
    if n == 1:
        return 0.0
    mean = math.fsum(values) / n
    return math.sqrt(math.fsum((x - mean) ** 2 for x in values) / (n - 1))


def precision_of(values: Sequence[float], n: int | None = None) -> float:
    """Standard error of the valid responses: sample std over sqrt(n)."""
    if n is None:
        n = len(values)
    if n != len(values):
        raise ValueError("n must equal len(values)")
    if n < 1:
        raise EmptyInput("precision is undefined for zero valid responses")
    return sample_std(values) / math.sqrt(n)


def cop_of(precision: float) -> float:
    """Map a precision (>= 0) into (0, 1]; exact consistency maps to 1."""
    if precision < 0:
        raise ValueError(f"precision must be >= 0, got {precision!r}")
    # exp underflows to 0.0 near precision 745; keep the codomain open at 0
    # by clamping to the smallest subnormal float.
    return max(math.exp(-precision), 5e-324)


@dataclass(frozen=True)
class ConsistencyScore:
    precision: Optional[float]
    cop: Optional[float]
    confidence: float
    scor: float


def scor_of(trials: TrialSet) -> ConsistencyScore:
    """Score one trial set: confidence times CoP, 0.0 when nothing was valid.

    Categorical values are scored on exact agreement: the spread term uses
    the fraction of values differing from the modal answer, so unanimous
    answers still score CoP 1.
    """
    values = trials.valid_values
    n = len(values)
    confidence = n / trials.n_trials
    if n == 0:
        return ConsistencyScore(precision=None, cop=None, confidence=confidence, scor=0.0)
    if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        precision = precision_of([float(v) for v in values], n)
    else:
        counts: dict[object, int] = {}
        for v in values:
            counts[v] = counts.get(v, 0) + 1
        disagreement = 1.0 - max(counts.values()) / n
        precision = disagreement / math.sqrt(n)
    cop = cop_of(precision)
    return ConsistencyScore(precision=precision, cop=cop, confidence=confidence, scor=cop * confidence)


def mae(pred: Sequence[float], truth: Sequence[float]) -> float:
    """Mean absolute error over aligned pairs."""
    if len(pred) != len(truth):
        raise ValueError("pred and truth must be the same length")
    if not pred:
        raise EmptyInput("mae needs at least one pair")
    return math.fsum(abs(p - t) for p, t in zip(pred, truth)) / len(pred)


@dataclass(frozen=True)
class ClassificationReport:
    accuracy: float
    f1_macro: float
    labels: tuple[str, ...]
    confusion: tuple[tuple[int, ...], ...] = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "f1_macro": self.f1_macro,
            "labels": list(self.labels),
            "confusion": [list(row) for row in self.confusion],
        }


def classification_metrics(
    pred: Sequence[str],
    truth: Sequence[str],
    canonical_labels: Sequence[str] = (),
) -> ClassificationReport:
    """Accuracy, macro F1, and a confusion matrix (rows = truth).

    The label order is the canonical set first, then any other observed
    labels sorted. Macro F1 averages only classes that occur in truth or
    pred.
    """
    if len(pred) != len(truth):
        raise ValueError("pred and truth must be the same length")
    if not pred:
        raise EmptyInput("classification_metrics needs at least one pair")

    observed = set(pred) | set(truth)
    labels = list(canonical_labels) + sorted(observed - set(canonical_labels))
    index = {lab: k for k, lab in enumerate(labels)}

    confusion = [[0] * len(labels) for _ in labels]
    for p, t in zip(pred, truth):
        confusion[index[t]][index[p]] += 1

    accuracy = sum(1 for p, t in zip(pred, truth) if p == t) / len(pred)

    f1s = []
    for lab in labels:
        if lab not in observed:
            continue
        k = index[lab]
        tp = confusion[k][k]
        fp = sum(confusion[r][k] for r in range(len(labels))) - tp
        fn = sum(confusion[k]) - tp
        denom = 2 * tp + fp + fn
        f1s.append(2 * tp / denom if denom else 0.0)
    f1_macro = sum(f1s) / len(f1s)

    return ClassificationReport(
        accuracy=accuracy,
        f1_macro=f1_macro,
        labels=tuple(labels),
        confusion=tuple(tuple(row) for row in confusion),
    )


def r2(pred: Sequence[float], truth: Sequence[float]) -> float:
    """Coefficient of determination about the truth mean."""
    if len(pred) != len(truth):
        raise ValueError("pred and truth must be the same length")
    if len(pred) < 2:
        raise EmptyInput("r2 needs at least two pairs")
    mean_t = math.fsum(truth) / len(truth)
    ss_tot = math.fsum((t - mean_t) ** 2 for t in truth)
    if ss_tot == 0.0:
        raise DegenerateTruth("truth values are all identical")
    ss_res = math.fsum((p - t) ** 2 for p, t in zip(pred, truth))
    return 1.0 - ss_res / ss_tot
