"""Empirical entropy, conditional entropy, and normalized mutual information
for K-class count matrices.

All entropies are plug-in frequency estimates in bits (log base 2) with the
0 * log2(0) = 0 convention applied by an explicit branch. Sums are exact
(``math.fsum``), so results do not depend on accumulation order and the
degenerate identities (NI exactly 0 for an uninformative output, exactly 1
for a target-determining one) hold bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Overshoot beyond [0, 1] tolerated (and clamped) as float rounding.
ROUNDING_TOL = 1e-12


@dataclass(frozen=True)
class CountMatrix:
    """K x K nonnegative counts; entry (i, j) holds the number of samples
    with target class i and predicted class j. Row sums are the class sizes."""

    counts: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.counts, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"counts must be a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("need at least two classes")
        if np.isnan(arr).any() or (arr < 0).any():
            raise ValueError("counts must be nonnegative")
        if arr.sum() <= 0:
            raise ValueError("count matrix must contain at least one sample")
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def k(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    @property
    def class_sizes(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @classmethod
    def from_confusion(cls, cm) -> "CountMatrix":
        """Binary special case: rows (positive, negative) x columns
        (predicted positive, predicted negative)."""
        return cls(np.array([[cm.tp, cm.fn], [cm.fp, cm.tn]], dtype=float))


def empirical_entropy(class_sizes) -> float:
    """Entropy in bits of the class-frequency distribution w_i / w."""
    sizes = [float(v) for v in np.ravel(class_sizes)]
    if any(v < 0 or math.isnan(v) for v in sizes):
        raise ValueError("class sizes must be nonnegative")
    w = math.fsum(sizes)
    if w <= 0:
        raise ValueError("all class sizes are zero")
    return -math.fsum(
        (v / w) * math.log2(v / w) for v in sizes if v > 0
    )


def binary_target_entropy(w1: float, w2: float) -> float:
    """Target entropy of a two-class problem with class sizes (w1, w2)."""
    return empirical_entropy((w1, w2))


def conditional_entropy(m: CountMatrix) -> float:
    """H(T|Y): mean target entropy within each predicted-class column.

    Accumulated in row-major cell order; empty predicted columns contribute
    nothing.
    """
    counts = m.counts
    w = m.total
    col_sums = counts.sum(axis=0)
    terms = []
    for i in range(m.k):
        for j in range(m.k):
            a = counts[i, j]
            if a > 0:
                terms.append((a / w) * math.log2(a / col_sums[j]))
    return -math.fsum(terms)


def normalized_mutual_information(m: CountMatrix) -> float | None:
    """(H(T) - H(T|Y)) / H(T); ``None`` when the target is single-class
    (H(T) = 0, the ratio is 0/0)."""
    ht = empirical_entropy(m.class_sizes)
    if ht == 0.0:
        return None
    ni = (ht - conditional_entropy(m)) / ht
    return clamp_unit(ni)


def clamp_unit(x: float, tol: float = ROUNDING_TOL) -> float:
    """Clamp x into [0, 1] when it overshoots by at most ``tol``."""
    if 0.0 <= x <= 1.0:
        return x
    if -tol < x < 0.0:
        return 0.0
    if 1.0 < x < 1.0 + tol:
        return 1.0
    return x
