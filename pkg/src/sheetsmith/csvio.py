"""Readers for the toolkit's CSV interchange files.

All files are comma-separated UTF-8 with a header row and '.' as the decimal
mark. Readers raise InputFileError with the offending line number for schema
and value problems, so the CLI can report them as file errors.
"""

from __future__ import annotations

import csv
from typing import Iterator

from .confidence import ConfidenceRecord
from .errors import InputFileError
from .synthesis import LabeledExample


def _rows(path: str) -> Iterator[list[str]]:
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        yield from csv.reader(handle)


def _float(path: str, line: int, column: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise InputFileError(
            f"{path} line {line}: {column} must be a number, got {text!r}"
        ) from None


def _int(path: str, line: int, column: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputFileError(
            f"{path} line {line}: {column} must be an integer, got {text!r}"
        ) from None


def read_examples_csv(path: str) -> list[LabeledExample]:
    """Attribute columns followed by a final 'label' column."""
    rows = _rows(path)
    header = next(rows, None)
    if not header or len(header) < 2 or header[-1] != "label":
        raise InputFileError(
            f"{path}: header must name at least one attribute column "
            "and end with 'label'"
        )
    attributes = header[:-1]
    examples = []
    for line, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputFileError(
                f"{path} line {line}: expected {len(header)} fields, got {len(row)}"
            )
        values = {
            name: _float(path, line, name, text)
            for name, text in zip(attributes, row)
        }
        examples.append(LabeledExample(values, row[-1]))
    return examples


_RESULT_COLUMNS = (
    "participant_id",
    "question_id",
    "approach",
    "attempted",
    "error_count",
    "confidence",
    "difficulty",
)


def read_results_csv(path: str) -> list[ConfidenceRecord]:
    """Per-question experiment records; attempted is 0 or 1."""
    rows = _rows(path)
    header = next(rows, None)
    if header != list(_RESULT_COLUMNS):
        raise InputFileError(
            f"{path}: header must be exactly {','.join(_RESULT_COLUMNS)}"
        )
    records = []
    for line, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != len(_RESULT_COLUMNS):
            raise InputFileError(
                f"{path} line {line}: expected {len(_RESULT_COLUMNS)} fields, "
                f"got {len(row)}"
            )
        participant, question, approach, attempted, errors, conf, diff = row
        if attempted not in ("0", "1"):
            raise InputFileError(
                f"{path} line {line}: attempted must be 0 or 1, got {attempted!r}"
            )
        try:
            # RangeError (rating off the 1..5 scale) is left alone here: it is
            # a domain finding, not a file-shape problem
            records.append(
                ConfidenceRecord(
                    participant_id=participant,
                    question_id=question,
                    approach=approach,
                    attempted=attempted == "1",
                    error_count=_int(path, line, "error_count", errors),
                    confidence=_int(path, line, "confidence", conf),
                    difficulty=_int(path, line, "difficulty", diff),
                )
            )
        except ValueError as exc:
            raise InputFileError(f"{path} line {line}: {exc}") from None
    return records


def read_complexities_csv(path: str) -> dict[str, float]:
    """question_id,complexity pairs."""
    rows = _rows(path)
    header = next(rows, None)
    if header != ["question_id", "complexity"]:
        raise InputFileError(f"{path}: header must be question_id,complexity")
    out: dict[str, float] = {}
    for line, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise InputFileError(f"{path} line {line}: expected 2 fields")
        if row[0] in out:
            raise InputFileError(f"{path} line {line}: duplicate question {row[0]!r}")
        out[row[0]] = _float(path, line, "complexity", row[1])
    return out


def read_points_csv(path: str) -> list[tuple[float, float]]:
    """complexity,accuracy_pct pairs for curve fitting."""
    rows = _rows(path)
    header = next(rows, None)
    if header != ["complexity", "accuracy_pct"]:
        raise InputFileError(f"{path}: header must be complexity,accuracy_pct")
    points = []
    for line, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise InputFileError(f"{path} line {line}: expected 2 fields")
        points.append(
            (
                _float(path, line, "complexity", row[0]),
                _float(path, line, "accuracy_pct", row[1]),
            )
        )
    return points


def read_formulas_csv(path: str) -> list[tuple[str, str]]:
    """source_id,formula rows for batch risk scanning."""
    rows = _rows(path)
    header = next(rows, None)
    if header != ["source_id", "formula"]:
        raise InputFileError(f"{path}: header must be source_id,formula")
    out = []
    for line, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise InputFileError(f"{path} line {line}: expected 2 fields")
        out.append((row[0], row[1]))
    return out
