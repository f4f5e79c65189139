"""Binary confusion-matrix counts and the classical performance indexes.

Counts are stored as floats so that analysis code can work with fractional
(continuous) matrices; matrices tallied from data are always integer valued.
Indexes that hit a 0/0 (precision with an empty predicted-positive column,
recall or false alarm with an empty class) evaluate to ``None`` rather than
raising or returning NaN, and ``None`` propagates explicitly through reports.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True)
class ConfusionMatrix:
    """The four outcome counts of a two-class prediction.

    ``tp``/``fn`` partition the positive class, ``fp``/``tn`` the negative
    class, so ``w1 = tp + fn`` and ``w2 = fp + tn`` are the class sizes.
    """

    tp: float
    fp: float
    tn: float
    fn: float

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "tn", "fn"):
            v = getattr(self, name)
            if not (v >= 0):  # also rejects NaN
                raise ValueError(f"{name} must be a nonnegative count, got {v!r}")
        if self.total <= 0:
            raise ValueError("confusion matrix must contain at least one sample")

    @property
    def total(self) -> float:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def w1(self) -> float:
        """Positive-class size."""
        return self.tp + self.fn

    @property
    def w2(self) -> float:
        """Negative-class size."""
        return self.fp + self.tn

    @property
    def is_integer_valued(self) -> bool:
        return all(float(v).is_integer() for v in (self.tp, self.fp, self.tn, self.fn))

    def as_cells(self) -> tuple[float, float, float, float]:
        return (self.tp, self.fp, self.tn, self.fn)


@dataclass(frozen=True)
class MetricsReport:
    """Accuracy/precision/recall/false-alarm/NI bundle for one model.

    Fields are ``None`` where the corresponding index is undefined.
    """

    accuracy: float
    precision: float | None
    recall: float | None
    false_alarm: float | None
    ni: float | None


def from_label_pairs(
    pairs: Sequence[tuple[object, object]] | Iterable[tuple[object, object]],
    positive_label: object,
) -> ConfusionMatrix:
    """Tally (target, predicted) label pairs into a confusion matrix.

    Labels form a two-symbol alphabet: ``positive_label`` plus at most one
    other symbol. Raises ``ValueError`` on empty input or on a third label.
    """
    tp = fp = tn = fn = 0
    negative_label: object | None = None
    n = 0
    for target, predicted in pairs:
        n += 1
        for label in (target, predicted):
            if label != positive_label:
                if negative_label is None:
                    negative_label = label
                elif label != negative_label:
                    raise ValueError(
                        f"label {label!r} outside the two-symbol alphabet "
                        f"{{{positive_label!r}, {negative_label!r}}}"
                    )
        t_pos = target == positive_label
        y_pos = predicted == positive_label
        if t_pos and y_pos:
            tp += 1
        elif t_pos:
            fn += 1
        elif y_pos:
            fp += 1
        else:
            tn += 1
    if n == 0:
        raise ValueError("no label pairs given")
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)


def read_label_pairs_csv(
    path: str | Path, positive_label: str, has_header: bool = True
) -> ConfusionMatrix:
    """Ingest a two-column ``target,predicted`` CSV file."""
    pairs: list[tuple[str, str]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if i == 0 and has_header:
                continue
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: row {i + 1} has fewer than two columns")
            pairs.append((row[0].strip(), row[1].strip()))
    return from_label_pairs(pairs, positive_label)


def read_confusion_json(path: str | Path) -> ConfusionMatrix:
    """Ingest a ``{"tp": ..., "fp": ..., "tn": ..., "fn": ...}`` JSON object."""
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: expected a JSON object with tp/fp/tn/fn")
    missing = {"tp", "fp", "tn", "fn"} - obj.keys()
    if missing:
        raise ValueError(f"{path}: missing keys {sorted(missing)}")
    return ConfusionMatrix(
        tp=float(obj["tp"]), fp=float(obj["fp"]), tn=float(obj["tn"]), fn=float(obj["fn"])
    )


def accuracy(cm: ConfusionMatrix) -> float:
    """(tp + tn) / total."""
    return (cm.tp + cm.tn) / cm.total


def precision(cm: ConfusionMatrix) -> float | None:
    """tp / (tp + fp); ``None`` when nothing was predicted positive."""
    denom = cm.tp + cm.fp
    if denom == 0:
        return None
    return cm.tp / denom


def recall(cm: ConfusionMatrix) -> float | None:
    """tp / (tp + fn); ``None`` when the positive class is empty."""
    if cm.w1 == 0:
        return None
    return cm.tp / cm.w1


def false_alarm(cm: ConfusionMatrix) -> float | None:
    """fp / (fp + tn); ``None`` when the negative class is empty."""
    if cm.w2 == 0:
        return None
    return cm.fp / cm.w2


def flip_predictions(cm: ConfusionMatrix) -> ConfusionMatrix:
    """The complement model: every predicted label inverted.

    Targets keep their meaning, so positives predicted negative become true
    positives of the flipped model: (tp, fp, tn, fn) -> (fn, tn, fp, tp).
    Flipping twice restores the input.
    """
    return ConfusionMatrix(tp=cm.fn, fp=cm.tn, tn=cm.fp, fn=cm.tp)
