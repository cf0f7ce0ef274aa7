"""Accuracy and self-assessment analytics for formula-building experiments.

Each participant answers each question once per approach and reports two 1..5
ratings: confidence in the answer and how easy the question felt (5 means
trivially easy). Actual performance is folded to the same scale by F:

    not attempted -> 0, 0 errors -> 5, 1 -> 4, 2 -> 3, 3 -> 2, 4+ -> 1

The combined self-rating is the equal-weight mean of confidence and
difficulty, and the calibration ratio is combined / F: 1 is a perfect match,
5 means maximal overconfidence, and values below 1 (down to 1/5) mean the
participant undersold a good answer. The ratio is absent when F is 0, since
an unattempted question says nothing about calibration.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateXError,
    EmptyInputError,
    InsufficientPointsError,
    RangeError,
    UnknownQuestionError,
)

APPROACHES = ("traditional", "edm")

CONFIDENCE_WEIGHT = 0.5
DIFFICULTY_WEIGHT = 0.5

DEFAULT_BASE_ERROR_CEILING = 95.0


def f_score(error_count: int, attempted: bool) -> int:
    """Fold an error count onto the 0..5 self-rating scale."""
    if not attempted:
        return 0
    if error_count < 0:
        raise ValueError("error count cannot be negative")
    if error_count == 0:
        return 5
    if error_count == 1:
        return 4
    if error_count == 2:
        return 3
    if error_count == 3:
        return 2
    return 1


def _check_rating(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
        raise RangeError(f"{name} must be an integer from 1 to 5, got {value!r}")


def combined_overconfidence(confidence: int, difficulty: int) -> float:
    """Equal-weight blend of the two self-ratings."""
    _check_rating("confidence", confidence)
    _check_rating("difficulty", difficulty)
    return CONFIDENCE_WEIGHT * confidence + DIFFICULTY_WEIGHT * difficulty


def confidence_ratio(combined: float, f: int) -> Optional[float]:
    """combined / F, or None when F is 0 (question not attempted)."""
    if f == 0:
        return None
    return combined / f


@dataclass(frozen=True)
class ConfidenceRecord:
    participant_id: str
    question_id: str
    approach: str
    attempted: bool
    error_count: int
    confidence: int
    difficulty: int

    def __post_init__(self):
        if self.approach not in APPROACHES:
            raise ValueError(
                f"approach must be one of {APPROACHES}, got {self.approach!r}"
            )
        if self.error_count < 0:
            raise ValueError("error count cannot be negative")
        _check_rating("confidence", self.confidence)
        _check_rating("difficulty", self.difficulty)


@dataclass(frozen=True)
class QuestionOutcome:
    f_score: int
    combined_overconfidence: float
    confidence_ratio: Optional[float]


def question_outcome(record: ConfidenceRecord) -> QuestionOutcome:
    """Scores for one answered (or skipped) question."""
    f = f_score(record.error_count, record.attempted)
    combined = combined_overconfidence(record.confidence, record.difficulty)
    return QuestionOutcome(f, combined, confidence_ratio(combined, f))


@dataclass(frozen=True)
class QuestionSummary:
    approach: str
    question_id: str
    complexity: float
    attempted: int
    percentage_accuracy: Optional[float]
    mean_errors: Optional[float]
    mean_confidence_ratio: Optional[float]
    mean_difficulty: Optional[float]


@dataclass(frozen=True)
class ApproachSummary:
    approach: str
    participants: int
    percentage_models_with_errors: float
    percentage_accuracy: Optional[float]
    mean_errors_per_question: Optional[float]
    mean_confidence_ratio: Optional[float]


@dataclass(frozen=True)
class ExperimentSummary:
    questions: tuple[QuestionSummary, ...]
    approaches: tuple[ApproachSummary, ...]


def summarize_experiment(
    records: Sequence[ConfidenceRecord], complexities: Mapping[str, float]
) -> ExperimentSummary:
    """Aggregate records per (approach, question) and per approach.

    Accuracy counts an attempted answer as correct when its error count is
    zero. Models-with-errors counts participants who made at least one error
    on any attempted question. Both readings of "how often people got it
    wrong" are reported side by side. Output order is fixed (traditional
    before edm, question ids sorted), so equal inputs in any order summarize
    identically.
    """
    if not records:
        raise EmptyInputError("no records to summarize")
    for record in records:
        if record.question_id not in complexities:
            raise UnknownQuestionError(
                f"question {record.question_id!r} has no complexity entry"
            )

    present = [a for a in APPROACHES if any(r.approach == a for r in records)]
    questions = []
    approaches = []
    for approach in present:
        mine = [r for r in records if r.approach == approach]
        attempted = [r for r in mine if r.attempted]
        errors_by_participant: dict[str, int] = {}
        for r in mine:
            errors_by_participant.setdefault(r.participant_id, 0)
            if r.attempted:
                errors_by_participant[r.participant_id] += r.error_count
        participants = len(errors_by_participant)
        with_errors = sum(1 for total in errors_by_participant.values() if total)
        ratios = [
            outcome.confidence_ratio
            for outcome in map(question_outcome, attempted)
            if outcome.confidence_ratio is not None
        ]
        approaches.append(
            ApproachSummary(
                approach=approach,
                participants=participants,
                percentage_models_with_errors=100.0 * with_errors / participants,
                percentage_accuracy=_accuracy(attempted),
                mean_errors_per_question=_mean_errors(attempted),
                mean_confidence_ratio=statistics.fmean(ratios) if ratios else None,
            )
        )
        for question_id in sorted({r.question_id for r in mine}):
            answered = [r for r in attempted if r.question_id == question_id]
            ratios = [
                outcome.confidence_ratio
                for outcome in map(question_outcome, answered)
                if outcome.confidence_ratio is not None
            ]
            questions.append(
                QuestionSummary(
                    approach=approach,
                    question_id=question_id,
                    complexity=complexities[question_id],
                    attempted=len(answered),
                    percentage_accuracy=_accuracy(answered),
                    mean_errors=_mean_errors(answered),
                    mean_confidence_ratio=(
                        statistics.fmean(ratios) if ratios else None
                    ),
                    mean_difficulty=(
                        statistics.fmean(r.difficulty for r in answered)
                        if answered
                        else None
                    ),
                )
            )
    return ExperimentSummary(tuple(questions), tuple(approaches))


def _accuracy(attempted: Sequence[ConfidenceRecord]) -> Optional[float]:
    if not attempted:
        return None
    correct = sum(1 for r in attempted if r.error_count == 0)
    return 100.0 * correct / len(attempted)


def _mean_errors(attempted: Sequence[ConfidenceRecord]) -> Optional[float]:
    if not attempted:
        return None
    return sum(r.error_count for r in attempted) / len(attempted)


@dataclass(frozen=True)
class CurveFit:
    a: float
    b: float
    r_squared: float
    points_used: int
    points_dropped: int


def fit_accuracy_curve(points: Sequence[tuple[float, float]]) -> CurveFit:
    """Least-squares fit of accuracy = a * exp(b * complexity).

    The fit is linear in log space, so points with accuracy <= 0 cannot be
    used; they are dropped and counted. r_squared is the coefficient of
    determination of the log-space line.
    """
    usable = [(x, y) for x, y in points if y > 0]
    dropped = len(points) - len(usable)
    if len(usable) < 2:
        raise InsufficientPointsError(
            f"curve fit needs at least 2 usable points, got {len(usable)}"
        )
    xs = np.array([x for x, _ in usable], dtype=float)
    logy = np.log(np.array([y for _, y in usable], dtype=float))
    if np.all(xs == xs[0]):
        raise DegenerateXError("all points share one complexity value")
    x_mean = xs.mean()
    y_mean = logy.mean()
    slope = float(((xs - x_mean) * (logy - y_mean)).sum() / ((xs - x_mean) ** 2).sum())
    intercept = float(y_mean - slope * x_mean)
    residual = logy - (intercept + slope * xs)
    ss_res = float((residual ** 2).sum())
    ss_tot = float(((logy - y_mean) ** 2).sum())
    if ss_tot > 0:
        r_squared = 1.0 - ss_res / ss_tot
    else:
        r_squared = 1.0 if ss_res == 0 else 0.0
    return CurveFit(
        a=math.exp(intercept),
        b=slope,
        r_squared=r_squared,
        points_used=len(usable),
        points_dropped=dropped,
    )


def exceeds_base_error_ceiling(
    fit: CurveFit,
    min_complexity: float,
    ceiling: float = DEFAULT_BASE_ERROR_CEILING,
) -> bool:
    """True when the fitted curve, read at the easiest observed question,
    promises more accuracy than humans achieve on anything (default 95%).
    The fit itself is never altered; this only drives an annotation."""
    return fit.a * math.exp(fit.b * min_complexity) > ceiling
