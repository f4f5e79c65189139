"""Model evaluation with NI plus accuracy.

Selection scheme between two classifiers: the higher-NI model wins when its
accuracy is above 0.5; a high-NI model with accuracy below 0.5 is an
anti-predictor, so its complement (all predicted labels inverted) is
considered instead; on equal NI the higher accuracy wins. Ranking therefore
complement-normalizes every model with accuracy below 0.5 first and then
orders by (NI, accuracy) with a deterministic name tie-break (accuracy of
exactly 0.5 is left unnormalized). The verbatim pairwise rule, which can be
intransitive, is available via ``literal=True``.

NI is invariant under complementing (relabeling the output symbols), while
accuracy reflects to 1 - accuracy; precision and recall are recomputed from
the flipped counts and follow no such reflection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .closedform import ni_from_counts
from .confusion import (
    ConfusionMatrix,
    MetricsReport,
    accuracy,
    false_alarm,
    flip_predictions,
    precision,
    recall,
)
from .errors import DegenerateTargetError


@dataclass(frozen=True)
class ModelRecord:
    """A named model given by its confusion matrix. ``complemented`` marks
    records representing the inverted-prediction version of ``name``."""

    name: str
    cm: ConfusionMatrix
    complemented: bool = False

    @property
    def display_name(self) -> str:
        return f"-{self.name}" if self.complemented else self.name

    @property
    def report(self) -> MetricsReport:
        """Index bundle recomputed from the counts on every access."""
        return MetricsReport(
            accuracy=accuracy(self.cm),
            precision=precision(self.cm),
            recall=recall(self.cm),
            false_alarm=false_alarm(self.cm),
            ni=ni_from_counts(self.cm),
        )


@dataclass(frozen=True)
class Comparison:
    winner: ModelRecord
    loser: ModelRecord
    rule: str
    reason: str


@dataclass(frozen=True)
class Ranking:
    records: tuple[ModelRecord, ...]
    rationale: tuple[str, ...]
    notes: tuple[str, ...] = ()

    def ordering(self) -> str:
        return " > ".join(m.display_name for m in self.records)


def complement(m: ModelRecord) -> ModelRecord:
    """The model with every predicted label inverted; NI is unchanged,
    accuracy reflects to 1 - accuracy."""
    return ModelRecord(name=m.name, cm=flip_predictions(m.cm),
                       complemented=not m.complemented)


def _require_ni(m: ModelRecord) -> float:
    ni = ni_from_counts(m.cm)
    if ni is None:
        raise DegenerateTargetError(
            f"model {m.display_name!r} has a single-class target; NI undefined"
        )
    return ni


def _normalize(m: ModelRecord) -> ModelRecord:
    return complement(m) if accuracy(m.cm) < 0.5 else m


def _sort_key(m: ModelRecord):
    return (-_require_ni(m), -accuracy(m.cm), m.display_name)


def compare(m1: ModelRecord, m2: ModelRecord, literal: bool = False) -> Comparison:
    """Pick the better of two models; the result names the rule that fired.

    Default mode complement-normalizes models with accuracy below 0.5 before
    applying the NI/accuracy rules (so the anti-predictor clause is realized
    by ranking the complement). ``literal=True`` applies the verbatim
    pairwise clauses to the records as given.
    """
    ni1, ni2 = _require_ni(m1), _require_ni(m2)
    a1, a2 = accuracy(m1.cm), accuracy(m2.cm)
    if literal:
        if ni1 != ni2:
            hi, lo = (m1, m2) if ni1 > ni2 else (m2, m1)
            hi_acc = a1 if hi is m1 else a2
            if hi_acc >= 0.5:
                return Comparison(hi, lo, "higher-ni",
                                  f"{hi.display_name} has the higher NI and accuracy "
                                  f"{hi_acc:.4g} >= 0.5")
            return Comparison(lo, hi, "anti-predictor",
                              f"{hi.display_name} has the higher NI but accuracy "
                              f"{hi_acc:.4g} < 0.5, so {lo.display_name} is chosen")
        return _tie_break(m1, m2, a1, a2)
    n1, n2 = _normalize(m1), _normalize(m2)
    ni1, ni2 = _require_ni(n1), _require_ni(n2)
    a1, a2 = accuracy(n1.cm), accuracy(n2.cm)
    if ni1 != ni2:
        win, lose = (n1, n2) if ni1 > ni2 else (n2, n1)
        return Comparison(win, lose, "higher-ni",
                          f"{win.display_name} has the higher NI "
                          f"({max(ni1, ni2):.4f} > {min(ni1, ni2):.4f})")
    return _tie_break(n1, n2, a1, a2)


def _tie_break(m1: ModelRecord, m2: ModelRecord, a1: float, a2: float) -> Comparison:
    if a1 != a2:
        win, lose = (m1, m2) if a1 > a2 else (m2, m1)
        return Comparison(win, lose, "higher-accuracy",
                          f"equal NI; {win.display_name} has the higher accuracy "
                          f"({max(a1, a2):.4f} > {min(a1, a2):.4f})")
    win, lose = sorted((m1, m2), key=lambda m: m.display_name)
    return Comparison(win, lose, "name-order",
                      f"equal NI and accuracy; {win.display_name} precedes "
                      f"{lose.display_name} by name")


def rank(models: list[ModelRecord] | tuple[ModelRecord, ...],
         literal: bool = False) -> Ranking:
    """Total order over the models, best first, with a per-pair rationale.

    Default mode sorts normalized records by the (NI desc, accuracy desc,
    name asc) key, which reproduces the pairwise rules exactly and cannot
    cycle. Literal mode runs the verbatim pairwise rule round-robin; if the
    pairwise preferences are intransitive they are resolved by the same key
    and a note is attached.
    """
    if not models:
        raise ValueError("need at least one model to rank")
    for m in models:
        _require_ni(m)
    notes: list[str] = []
    if literal:
        wins = {m.display_name: 0 for m in models}
        for i, a in enumerate(models):
            for b in models[i + 1:]:
                wins[compare(a, b, literal=True).winner.display_name] += 1
        ordered = sorted(models, key=lambda m: (-wins[m.display_name], m.display_name))
        for a, b in zip(ordered, ordered[1:]):
            if compare(a, b, literal=True).winner is not a:
                notes.append(
                    "pairwise preferences are intransitive; order resolved by "
                    "round-robin wins and the (NI, accuracy, name) key"
                )
                break
    else:
        ordered = sorted((_normalize(m) for m in models), key=_sort_key)
    rationale = tuple(
        f"{a.display_name} > {b.display_name}: "
        f"{compare(a, b, literal=literal).reason}"
        for a, b in zip(ordered, ordered[1:])
    )
    return Ranking(tuple(ordered), rationale, tuple(notes))


# ---------------------------------------------------------------------------
# Tabular report.
# ---------------------------------------------------------------------------

_COLUMNS = ("model", "tp", "fp", "tn", "fn", "accuracy", "precision", "recall", "ni")

_COMPLEMENT_FOOTNOTE = (
    "models prefixed '-' are complements (all predicted labels inverted); "
    "their indexes are recomputed from the flipped counts"
)


def _fmt_count(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _fmt_index(v: float | None, decimals: int) -> str:
    return "undef" if v is None else f"{v:.{decimals}f}"


def _report_rows(models, decimals: int):
    for m in models:
        rep = m.report
        yield (
            m.display_name,
            _fmt_count(m.cm.tp),
            _fmt_count(m.cm.fp),
            _fmt_count(m.cm.tn),
            _fmt_count(m.cm.fn),
            _fmt_index(rep.accuracy, decimals),
            _fmt_index(rep.precision, decimals),
            _fmt_index(rep.recall, decimals),
            _fmt_index(rep.ni, decimals),
        )


def table_report(models, fmt: str = "text", decimals: int = 4) -> str:
    """Render the per-model index table (text, csv, or json)."""
    models = list(models)
    any_complemented = any(m.complemented for m in models)
    if fmt == "json":
        payload = []
        for m in models:
            rep = m.report
            payload.append({
                "model": m.display_name,
                "complemented": m.complemented,
                "tp": m.cm.tp, "fp": m.cm.fp, "tn": m.cm.tn, "fn": m.cm.fn,
                "accuracy": rep.accuracy,
                "precision": rep.precision,
                "recall": rep.recall,
                "ni": rep.ni,
            })
        return json.dumps(payload, indent=2, sort_keys=True)
    rows = [_COLUMNS, *(_report_rows(models, decimals))]
    if fmt == "csv":
        return "\n".join(",".join(row) for row in rows)
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    widths = [max(len(row[i]) for row in rows) for i in range(len(_COLUMNS))]
    lines = [
        "  ".join(cell.rjust(w) if i else cell.ljust(w)
                  for i, (cell, w) in enumerate(zip(row, widths)))
        for row in rows
    ]
    if any_complemented:
        lines.append(f"note: {_COMPLEMENT_FOOTNOTE}")
    return "\n".join(lines)
