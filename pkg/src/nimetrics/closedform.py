"""Closed-form normalized mutual information for binary confusion matrices.

A 2x2 matrix falls into exactly one of nine cases according to which cells
are zero. Cases 1-4 pin NI at a constant, cases 5-8 admit one-index closed
forms, and case 9 (all cells nonzero) has closed forms in (accuracy,
precision, recall), in (precision, recall), and in (false alarm, recall).
Every evaluator here is validated against ``ni_from_counts`` on the
reconstructed matrix; on any disagreement the direct computation wins.

All formulas share the guarded kernel ``xlog2`` with an exact branch for
x = 0, so cell counts of zero never produce NaN.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .confusion import ConfusionMatrix
from .errors import DegenerateTargetError, InfeasibleParameterError
from .info import clamp_unit

__all__ = [
    "NICase",
    "IndexPoint",
    "classify_case",
    "ni_from_counts",
    "ni_case5",
    "ni_case6",
    "ni_case7",
    "ni_case8",
    "ni_case9_apr",
    "accuracy_from_pr",
    "ni_from_pr",
    "precision_from_fr",
    "ni_from_fr",
    "case5_matrix",
    "case6_matrix",
    "case7_matrix",
    "case8_matrix",
    "pr_matrix",
    "fr_matrix",
    "apr_matrix",
    "xlog2",
    "binary_entropy",
]


class NICase(enum.IntEnum):
    """Zero-pattern taxonomy of a binary confusion matrix.

    Matching conditions, checked in the order 3, 4, 1, 2, 5, 6, 7, 8, 9
    (most specific first; the order resolves corner overlaps such as a
    single-cell matrix):

    ====== ===================== =========================
    case   condition             NI
    ====== ===================== =========================
    CASE_3 tp = 0 and tn = 0     1 (output determines target)
    CASE_4 fp = 0 and fn = 0     1 (perfect classifier)
    CASE_1 tp = 0 and fp = 0     0 (all predicted negative)
    CASE_2 tn = 0 and fn = 0     0 (all predicted positive)
    CASE_5 tp = 0                one-index form in A
    CASE_6 tn = 0                one-index forms in A, P, R
    CASE_7 fp = 0                one-index forms in A, R
    CASE_8 fn = 0                one-index forms in A, P
    CASE_9 no zero cell          forms in (A,P,R), (P,R), (F,R)
    ====== ===================== =========================

    The constants for cases 1-4 presuppose H(T) > 0; the case label itself
    is assigned regardless (a matrix with an empty class still has a
    zero pattern, but its NI is undefined).
    """

    CASE_1 = 1
    CASE_2 = 2
    CASE_3 = 3
    CASE_4 = 4
    CASE_5 = 5
    CASE_6 = 6
    CASE_7 = 7
    CASE_8 = 8
    CASE_9 = 9


@dataclass(frozen=True)
class IndexPoint:
    """A point in index space: any subset of the four classical indexes
    plus the class sizes they refer to."""

    w1: float
    w2: float
    a: float | None = None
    p: float | None = None
    r: float | None = None
    f: float | None = None

    def get(self, via: str) -> float:
        value = getattr(self, via.lower())
        if value is None:
            raise ValueError(f"index {via!r} not set on this point")
        return value


def xlog2(x: float) -> float:
    """x * log2(x) with the exact convention 0 * log2(0) = 0."""
    if x == 0.0:
        return 0.0
    return x * math.log2(x)


def binary_entropy(w1: float, w2: float) -> float:
    """Target entropy in bits for class sizes (w1, w2)."""
    s = w1 + w2
    if s <= 0:
        raise ValueError("class sizes must have a positive total")
    return (xlog2(s) - xlog2(w1) - xlog2(w2)) / s


def classify_case(cm: ConfusionMatrix) -> NICase:
    """Assign the unique matching case (see ``NICase`` for the order)."""
    tp, fp, tn, fn = cm.as_cells()
    if tp == 0 and tn == 0:
        return NICase.CASE_3
    if fp == 0 and fn == 0:
        return NICase.CASE_4
    if tp == 0 and fp == 0:
        return NICase.CASE_1
    if tn == 0 and fn == 0:
        return NICase.CASE_2
    if tp == 0:
        return NICase.CASE_5
    if tn == 0:
        return NICase.CASE_6
    if fp == 0:
        return NICase.CASE_7
    if fn == 0:
        return NICase.CASE_8
    return NICase.CASE_9


def _ni_cells(tp: float, fp: float, tn: float, fn: float) -> float | None:
    """NI from the four cells by direct expansion of the entropy definition.

    Uses exact summation so the value is independent of cell ordering;
    returns ``None`` when H(T) = 0.
    """
    s = tp + fp + tn + fn
    w1 = tp + fn
    w2 = fp + tn
    if w1 == 0 or w2 == 0:
        return None
    s_ht = math.fsum((xlog2(s), -xlog2(w1), -xlog2(w2)))
    cp = tp + fp
    cn = fn + tn
    s_hty = math.fsum(
        (
            xlog2(cp),
            -xlog2(tp),
            -xlog2(fp),
            xlog2(cn),
            -xlog2(fn),
            -xlog2(tn),
        )
    )
    return clamp_unit((s_ht - s_hty) / s_ht)


def ni_from_counts(cm: ConfusionMatrix) -> float | None:
    """NI evaluated directly from the four counts (the oracle all closed
    forms are checked against); ``None`` when the target is single-class."""
    return _ni_cells(*cm.as_cells())


# ---------------------------------------------------------------------------
# Reconstructions: the unique (up to scale) matrix behind each closed form.
# ---------------------------------------------------------------------------


def case5_matrix(a: float, w1: float, w2: float) -> ConfusionMatrix:
    """Case-5 matrix at accuracy ``a``: tp = 0, tn = a*(w1+w2)."""
    s = w1 + w2
    return ConfusionMatrix(tp=0.0, fp=w2 - a * s, tn=a * s, fn=w1)


def case6_matrix(r: float, w1: float, w2: float) -> ConfusionMatrix:
    """Case-6 matrix at recall ``r``: tn = 0, everything negative is a false
    positive."""
    return ConfusionMatrix(tp=r * w1, fp=w2, tn=0.0, fn=(1.0 - r) * w1)


def case7_matrix(r: float, w1: float, w2: float) -> ConfusionMatrix:
    """Case-7 matrix at recall ``r``: fp = 0, the negative class is fully
    correct."""
    return ConfusionMatrix(tp=r * w1, fp=0.0, tn=w2, fn=(1.0 - r) * w1)


def case8_matrix(p: float, w1: float, w2: float) -> ConfusionMatrix:
    """Case-8 matrix at precision ``p``: fn = 0, fp set by the precision."""
    fp = w1 * (1.0 - p) / p
    return ConfusionMatrix(tp=w1, fp=fp, tn=w2 - fp, fn=0.0)


def pr_matrix(p: float, r: float, w1: float, w2: float) -> ConfusionMatrix:
    """Matrix realizing (precision, recall) for the given class sizes."""
    tp = r * w1
    fp = tp * (1.0 - p) / p
    return ConfusionMatrix(tp=tp, fp=fp, tn=w2 - fp, fn=(1.0 - r) * w1)


def fr_matrix(f: float, r: float, w1: float, w2: float) -> ConfusionMatrix:
    """Matrix realizing (false alarm, recall) for the given class sizes."""
    return ConfusionMatrix(
        tp=r * w1, fp=f * w2, tn=(1.0 - f) * w2, fn=(1.0 - r) * w1
    )


def apr_matrix(a: float, p: float, r: float) -> ConfusionMatrix:
    """Matrix (normalized to total 1) realizing a consistent
    (accuracy, precision, recall) triple; the class balance is recovered by
    inverting the accuracy identity."""
    rho = _ratio_from_apr(a, p, r)
    w1 = rho / (1.0 + rho)
    return pr_matrix(p, r, w1, 1.0 - w1)


def _ratio_from_apr(a: float, p: float, r: float) -> float:
    """w1/w2 implied by an (accuracy, precision, recall) triple."""
    denom = r + a * p - 2.0 * p * r
    if denom <= 0.0:
        raise InfeasibleParameterError(
            f"(a={a}, p={p}, r={r}) is not realizable by any class balance"
        )
    return p * (1.0 - a) / denom


# ---------------------------------------------------------------------------
# Form evaluators. These evaluate the algebraic expressions verbatim and do
# not check that the index value is reachable; the public ni_case* wrappers
# validate reachability first. Junction/continuity checks deliberately use
# the raw forms.
# ---------------------------------------------------------------------------


def case5_form_a(a: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = s * xlog2(a) + (a + 1.0) * xlog2(s) - xlog2(w2) - xlog2(a * s + w1)
    return br / (s * ht)


def case6_form_a(a: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = s * xlog2(a) + (a + 1.0) * xlog2(s) - xlog2(w1) - xlog2(a * s + w2)
    return br / (s * ht)


def case6_form_p(p: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        (w2 / (1.0 - p)) * xlog2(p)
        + w2 * math.log2(1.0 - p)
        + xlog2(s)
        - xlog2(w1)
        - xlog2(w2)
    )
    return br / (s * ht)


def case6_form_r(r: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = w1 * xlog2(r) + xlog2(s) - (1.0 - r) * xlog2(w1) - xlog2(r * w1 + w2)
    return br / (s * ht)


def case7_form_a(a: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        s * xlog2(1.0 - a)
        + (2.0 - a) * xlog2(s)
        - xlog2(w1)
        - xlog2(w1 + 2.0 * w2 - a * s)
    )
    return br / (s * ht)


def case7_form_r(r: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = w1 * xlog2(1.0 - r) + xlog2(s) - r * xlog2(w1) - xlog2(s - r * w1)
    return br / (s * ht)


def case8_form_a(a: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        s * xlog2(1.0 - a)
        + (2.0 - a) * xlog2(s)
        - xlog2(w2)
        - xlog2(w2 + 2.0 * w1 - a * s)
    )
    return br / (s * ht)


def case8_form_p(p: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        (w1 / p) * xlog2(1.0 - p)
        + w1 * math.log2(p)
        + xlog2(s)
        - xlog2(w1)
        - xlog2(w2)
    )
    return br / (s * ht)


_CASE_FORMS = {
    (NICase.CASE_5, "a"): case5_form_a,
    (NICase.CASE_6, "a"): case6_form_a,
    (NICase.CASE_6, "p"): case6_form_p,
    (NICase.CASE_6, "r"): case6_form_r,
    (NICase.CASE_7, "a"): case7_form_a,
    (NICase.CASE_7, "r"): case7_form_r,
    (NICase.CASE_8, "a"): case8_form_a,
    (NICase.CASE_8, "p"): case8_form_p,
}


def _check_sizes(w1: float, w2: float) -> None:
    if not (w1 > 0 and w2 > 0):
        raise DegenerateTargetError(
            f"both class sizes must be positive, got w1={w1}, w2={w2}"
        )


def _check_open(name: str, value: float, lo: float, hi: float) -> None:
    if not (lo < value < hi):
        raise InfeasibleParameterError(
            f"{name}={value} outside the reachable range ({lo}, {hi})"
        )


def ni_case5(a: float, w1: float, w2: float) -> float:
    """Case-5 NI from accuracy. Reachable accuracies are 0 < a < w2/(w1+w2)
    (the correct cells are all true negatives, so a*(w1+w2) < w2)."""
    _check_sizes(w1, w2)
    _check_open("a", a, 0.0, w2 / (w1 + w2))
    return clamp_unit(case5_form_a(a, w1, w2))


def ni_case6(point: IndexPoint, via: str = "r") -> float:
    """Case-6 NI from one of accuracy, precision, or recall.

    Reachable ranges: r in (0, 1); a in (0, w1/(w1+w2)) since
    a*(w1+w2) = r*w1; p in (0, w1/(w1+w2)) since p = r*w1/(r*w1+w2).
    """
    return _ni_case_common(NICase.CASE_6, point, via)


def ni_case7(point: IndexPoint, via: str = "r") -> float:
    """Case-7 NI from accuracy or recall.

    Reachable ranges: r in (0, 1); a in (w2/(w1+w2), 1) since
    a*(w1+w2) = r*w1 + w2.
    """
    return _ni_case_common(NICase.CASE_7, point, via)


def ni_case8(point: IndexPoint, via: str = "p") -> float:
    """Case-8 NI from accuracy or precision.

    Reachable ranges: p in (w1/(w1+w2), 1) since fp = w1*(1-p)/p <= w2;
    a in (w1/(w1+w2), 1) since a*(w1+w2) = 2*w1 + w2 - w1/p.
    """
    return _ni_case_common(NICase.CASE_8, point, via)


_REACHABLE = {
    (NICase.CASE_5, "a"): lambda w1, w2, s: (0.0, w2 / s),
    (NICase.CASE_6, "a"): lambda w1, w2, s: (0.0, w1 / s),
    (NICase.CASE_6, "p"): lambda w1, w2, s: (0.0, w1 / s),
    (NICase.CASE_6, "r"): lambda w1, w2, s: (0.0, 1.0),
    (NICase.CASE_7, "a"): lambda w1, w2, s: (w2 / s, 1.0),
    (NICase.CASE_7, "r"): lambda w1, w2, s: (0.0, 1.0),
    (NICase.CASE_8, "a"): lambda w1, w2, s: (w1 / s, 1.0),
    (NICase.CASE_8, "p"): lambda w1, w2, s: (w1 / s, 1.0),
}


def _ni_case_common(case: NICase, point: IndexPoint, via: str) -> float:
    via = via.lower()
    form = _CASE_FORMS.get((case, via))
    if form is None:
        valid = sorted(v for c, v in _CASE_FORMS if c == case)
        raise ValueError(f"case {case.value} has no {via!r} form (use one of {valid})")
    w1, w2 = point.w1, point.w2
    _check_sizes(w1, w2)
    value = point.get(via)
    lo, hi = _REACHABLE[(case, via)](w1, w2, w1 + w2)
    _check_open(via, value, lo, hi)
    return clamp_unit(form(value, w1, w2))


def ni_case9_apr(a: float, p: float, r: float) -> float:
    """Case-9 NI from an (accuracy, precision, recall) triple.

    The class balance enters only through H(T) and is recovered from the
    accuracy identity, so the triple alone determines NI. Raises
    ``InfeasibleParameterError`` for triples no confusion matrix realizes.
    """
    for name, v in (("a", a), ("p", p), ("r", r)):
        _check_open(name, v, 0.0, 1.0)
    d = p + r - 2.0 * p * r
    if d <= 0.0:
        raise InfeasibleParameterError(
            "p + r - 2*p*r vanishes only for a perfect or fully inverted "
            "classifier; not a case-9 matrix"
        )
    rho = _ratio_from_apr(a, p, r)
    w1 = rho / (1.0 + rho)
    ht = binary_entropy(w1, 1.0 - w1)
    arg_tn = a * p + a * r - p * r - a * p * r
    arg_w1 = a * p + r - 2.0 * p * r
    arg_cn = a * r + p - 2.0 * p * r
    if arg_tn < 0.0 or arg_w1 <= 0.0 or arg_cn <= 0.0:
        raise InfeasibleParameterError(
            f"(a={a}, p={p}, r={r}) is inconsistent: no confusion matrix "
            "realizes this triple"
        )
    br = (
        p * (1.0 - a) * xlog2(1.0 - r)
        + r * (1.0 - a) * xlog2(1.0 - p)
        - p * r * xlog2(1.0 - a)
        + xlog2(arg_tn)
        - xlog2(arg_w1)
        - xlog2(arg_cn)
    )
    return clamp_unit((math.log2(d) + br / d) / ht)


def accuracy_from_pr(p: float, r: float, w1: float, w2: float) -> float:
    """Accuracy implied by (precision, recall) at the given class sizes:
    a = (2*p*r*w1 + p*w2 - r*w1) / (p*(w1 + w2))."""
    _check_sizes(w1, w2)
    if p == 0.0:
        raise ValueError("accuracy is not determined when precision is zero")
    if not (0.0 < p <= 1.0 and 0.0 <= r <= 1.0):
        raise InfeasibleParameterError(f"(p={p}, r={r}) outside the unit square")
    return (2.0 * p * r * w1 + p * w2 - r * w1) / (p * (w1 + w2))


def precision_from_fr(f: float, r: float, w1: float, w2: float) -> float:
    """Precision implied by (false alarm, recall): p = r*w1 / (r*w1 + f*w2)."""
    _check_sizes(w1, w2)
    denom = r * w1 + f * w2
    if denom == 0.0:
        raise ValueError("precision undefined when nothing is predicted positive")
    return r * w1 / denom


def pr_feasible(p: float, r: float, w1: float, w2: float, tol: float = 1e-12) -> bool:
    """Whether (precision, recall) lies in the closed feasible region for the
    given class sizes: the implied false positives r*w1*(1-p)/p must fit in
    w2, i.e. r*w1*(1-p) <= p*w2. The p = 0 edge pinches to the single
    attainable point (0, 0)."""
    if not (0.0 <= p <= 1.0 and 0.0 <= r <= 1.0):
        return False
    return r * w1 * (1.0 - p) <= p * w2 * (1.0 + tol) + tol


def ni_from_pr(p: float, r: float, w1: float, w2: float) -> float:
    """Case-9 NI as a function of (precision, recall) at fixed class sizes."""
    _check_sizes(w1, w2)
    if not (0.0 < p <= 1.0 and 0.0 <= r <= 1.0):
        raise InfeasibleParameterError(f"(p={p}, r={r}) outside the unit square")
    if not pr_feasible(p, r, w1, w2):
        raise InfeasibleParameterError(
            f"(p={p}, r={r}) infeasible for class sizes ({w1}, {w2}): "
            "implied false positives exceed the negative class"
        )
    return clamp_unit(_eq_pr(p, r, w1, w2))


def _eq_pr(p: float, r: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        w1 * xlog2(p)
        + p * w1 * xlog2(1.0 - r)
        + r * w1 * xlog2(1.0 - p)
        - p * r * xlog2(w1)
        - p * xlog2(w2)
        + xlog2(p * r * w1 + p * w2 - r * w1)
        - xlog2(p * w1 + p * w2 - r * w1)
    )
    return (math.log2(s) + br / (p * s)) / ht


def ni_from_fr(f: float, r: float, w1: float, w2: float) -> float:
    """NI as a function of (false alarm, recall); defined on the whole unit
    square. f = r is the independence line (NI = 0) and the map is invariant
    under the prediction flip (f, r) -> (1-f, 1-r)."""
    _check_sizes(w1, w2)
    for name, v in (("f", f), ("r", r)):
        if not (0.0 <= v <= 1.0):
            raise InfeasibleParameterError(f"{name}={v} outside [0, 1]")
    return clamp_unit(_eq_fr(f, r, w1, w2))


def _eq_fr(f: float, r: float, w1: float, w2: float) -> float:
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    br = (
        w1 * xlog2(r)
        + w1 * xlog2(1.0 - r)
        + w2 * xlog2(f)
        + w2 * xlog2(1.0 - f)
        - xlog2(r * w1 + f * w2)
        - xlog2(w1 * (1.0 - r) + w2 * (1.0 - f))
    )
    return (math.log2(s) + br / s) / ht


def ni_closed(cm: ConfusionMatrix) -> float | None:
    """NI via the case taxonomy: classify, then evaluate the case's closed
    form from the index values of ``cm``. ``None`` when H(T) = 0.

    Dispatch uses the accuracy form for case 5, the recall form for cases 6
    and 7, the precision form for case 8, and the (a, p, r) form for case 9,
    so all four formula families are exercised by the exhaustive
    closed-vs-direct comparison.
    """
    tp, fp, tn, fn = cm.as_cells()
    w1, w2 = cm.w1, cm.w2
    if w1 == 0 or w2 == 0:
        return None
    case = classify_case(cm)
    if case in (NICase.CASE_1, NICase.CASE_2):
        return 0.0
    if case in (NICase.CASE_3, NICase.CASE_4):
        return 1.0
    s = cm.total
    if case == NICase.CASE_5:
        return clamp_unit(case5_form_a((tp + tn) / s, w1, w2))
    if case == NICase.CASE_6:
        return clamp_unit(case6_form_r(tp / w1, w1, w2))
    if case == NICase.CASE_7:
        return clamp_unit(case7_form_r(tp / w1, w1, w2))
    if case == NICase.CASE_8:
        return clamp_unit(case8_form_p(tp / (tp + fp), w1, w2))
    a = (tp + tn) / s
    p = tp / (tp + fp)
    r = tp / w1
    d = p + r - 2.0 * p * r
    ht = binary_entropy(w1, w2)
    br = (
        p * (1.0 - a) * xlog2(1.0 - r)
        + r * (1.0 - a) * xlog2(1.0 - p)
        - p * r * xlog2(1.0 - a)
        + xlog2(a * p + a * r - p * r - a * p * r)
        - xlog2(a * p + r - 2.0 * p * r)
        - xlog2(a * r + p - 2.0 * p * r)
    )
    return clamp_unit((math.log2(d) + br / d) / ht)
