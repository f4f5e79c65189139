"""Relation-map data behind the NI/index charts: boundary curves with their
special points, the precision-recall feasible region, NI surfaces over
(precision, recall) and (false alarm, recall), and exhaustive integer
enumeration used as the envelope oracle.

Conventions. Class sizes are ordered w1 >= w2 for the projection maps (pass
``swap=True`` to canonicalize explicitly; it is never done silently).
Curves are sampled with real-valued counts ("continuous" view); the
envelope and feasibility oracles enumerate integer matrices.

Envelope geometry. At fixed class sizes and a fixed index value, the set of
matrices is a segment in the space of conditional distributions, along
which mutual information is convex; NI is therefore maximized at one of the
two segment endpoints, where some cell hits zero. The upper envelope of the
(index, NI) cloud is thus always a pair of one-zero-cell case curves:

* accuracy map: left endpoint case 5 (a <= w2/s) or 7, right endpoint
  case 6 (a <= w1/s) or 8. For w1 = w2 these pairs coincide (case 5 == 6
  and 7 == 8 pointwise), so the chart's case-5/8 upper pair is exact; for
  w1 > w2 the case-5/8 curves leave the boundary and the case-6/7 pair is
  the true bound (see ``acc_upper_bound``). The case-5 curve is only
  reachable for a in (0, w2/s], not up to 0.5.
* recall map: case 6 (r <= 0.5) / case 7 (r >= 0.5) for any sizes.
* precision map: case 6 (p <= w1/s) / case 8 (p >= w1/s) for any sizes.

The lower bound of every map is NI = 0 (attained or approached by
target-independent outputs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .closedform import (
    NICase,
    binary_entropy,
    case5_form_a,
    case6_form_a,
    case6_form_p,
    case6_form_r,
    case7_form_a,
    case7_form_r,
    case8_form_a,
    case8_form_p,
    pr_feasible,
)
from .errors import InvariantViolationError
from .info import clamp_unit

MAP_NAMES = ("acc", "pre", "rec")

#: Tolerance for the integer-enumeration envelope and region assertions.
ENVELOPE_TOL = 1e-9


@dataclass(frozen=True)
class SpecialPoint:
    """A named anchor point of a relation map.

    ``feasible`` is False when the coordinates are a formal curve junction
    outside the reachable index range (the accuracy-map beta point for
    w1 != w2); only feasible points are guaranteed to lie in [0, 1]^2.
    """

    name: str
    x: float
    y: float
    feasible: bool = True


@dataclass(frozen=True)
class CurveSamples:
    """Samples of one boundary curve on its reachable domain.

    ``annotated_domain`` is the domain the chart annotation claims; it can be wider
    than the reachable one (accuracy map with w1 > w2), in which case the
    samples cover ``domain`` and the discrepancy is noted.
    """

    name: str
    x: np.ndarray
    y: np.ndarray
    domain: tuple[float, float]
    annotated_domain: tuple[float, float]
    case: NICase | None = None
    note: str = ""


@dataclass(frozen=True)
class SurfaceGrid:
    """NI sampled on an index-pair grid; NaN where undefined or infeasible,
    with ``defined`` marking the valid cells explicitly."""

    x_name: str
    y_name: str
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    defined: np.ndarray
    w1: float
    w2: float
    mode: str


@dataclass(frozen=True)
class EnvelopeScatter:
    """Exhaustive (index, NI) cloud for fixed integer class sizes, with the
    per-point upper envelope bound."""

    metric: str
    w1: int
    w2: int
    x: np.ndarray
    ni: np.ndarray
    upper: np.ndarray

    @property
    def n_points(self) -> int:
        return int(self.x.size)


def _canon_map(name: str) -> str:
    key = name.lower()
    if key not in MAP_NAMES:
        raise ValueError(f"unknown map {name!r}; expected one of {MAP_NAMES}")
    return key


def _ordered_sizes(w1: float, w2: float, swap: bool = False) -> tuple[float, float]:
    if w2 <= 0 or w1 <= 0:
        raise ValueError("class sizes must be positive")
    if w1 < w2:
        if not swap:
            raise ValueError(
                f"map annotations assume w1 >= w2 (got {w1} < {w2}); "
                "pass swap=True / --swap-classes to canonicalize"
            )
        w1, w2 = w2, w1
    return w1, w2


def beta_a_ordinate(w1: float, w2: float) -> float:
    """Ordinate of the accuracy-map beta junction at a = 0.5, from its
    closed expression (equals the case-5 and case-8 accuracy forms there).

    Only a feasible chart point for w1 = w2, where it equals 0; for
    w1 > w2 the value is a formal extrapolation and goes negative.
    """
    s = w1 + w2
    ht = binary_entropy(w1, w2)
    u = 1.5 * w1 + 0.5 * w2
    return (
        -0.5 + 1.5 * math.log2(s) - (w2 / s) * math.log2(w2) - (u / s) * math.log2(u)
    ) / ht


def beta_r_ordinate(w1: float, w2: float) -> float:
    """Ordinate of the recall-map beta junction at r = 0.5 (the case-6 and
    case-7 recall forms agree there for any class sizes)."""
    return case6_form_r(0.5, w1, w2)


def special_points(map_name: str, w1: float, w2: float, swap: bool = False) -> list[SpecialPoint]:
    """The annotated anchor points of one projection map."""
    map_name = _canon_map(map_name)
    w1, w2 = _ordered_sizes(w1, w2, swap)
    s = w1 + w2
    if map_name == "acc":
        beta = beta_a_ordinate(w1, w2)
        return [
            SpecialPoint("alpha_A", 0.0, 1.0),
            SpecialPoint("beta_A", 0.5, clamp_unit(beta) if w1 == w2 else beta,
                         feasible=w1 == w2),
            SpecialPoint("gamma_A", 1.0, 1.0),
            SpecialPoint("eta_A", w2 / s, 0.0),
            SpecialPoint("lambda_A", w1 / s, 0.0),
        ]
    if map_name == "pre":
        return [
            SpecialPoint("alpha_P", 0.0, 1.0),
            SpecialPoint("beta_P", w1 / s, 0.0),
            SpecialPoint("gamma_P", 1.0, 1.0),
        ]
    return [
        SpecialPoint("alpha_R", 0.0, 1.0),
        SpecialPoint("beta_R", 0.5, clamp_unit(beta_r_ordinate(w1, w2))),
        SpecialPoint("gamma_R", 1.0, 1.0),
    ]


def _sample(form, lo: float, hi: float, n: int, open_lo: bool, open_hi: bool,
            w1: float, w2: float) -> tuple[np.ndarray, np.ndarray]:
    grid = np.linspace(lo, hi, n + int(open_lo) + int(open_hi))
    if open_lo:
        grid = grid[1:]
    if open_hi:
        grid = grid[:-1]
    y = np.array([clamp_unit(form(float(x), w1, w2)) for x in grid])
    return grid, y


def boundary_curves(
    map_name: str, w1: float, w2: float, n_samples: int = 201, swap: bool = False
) -> list[CurveSamples]:
    """Sample the boundary curves of one projection map on their reachable
    domains (see the module docstring for the accuracy-map caveat)."""
    map_name = _canon_map(map_name)
    w1, w2 = _ordered_sizes(w1, w2, swap)
    if n_samples < 2:
        raise ValueError("need at least 2 samples per curve")
    s = w1 + w2
    n = n_samples
    curves: list[CurveSamples] = []
    if map_name == "acc":
        note = "" if w1 == w2 else (
            "reachable domain narrower than the annotated (0, 0.5]; "
            "curve leaves the upper envelope for w1 > w2"
        )
        x, y = _sample(case5_form_a, 0.0, w2 / s, n, True, False, w1, w2)
        curves.append(CurveSamples("Gamma_alphaA_betaA", x, y, (0.0, w2 / s),
                                   (0.0, 0.5), NICase.CASE_5, note))
        x, y = _sample(case8_form_a, w1 / s, 1.0, n, False, True, w1, w2)
        curves.append(CurveSamples("Gamma_gammaA_betaA", x, y, (w1 / s, 1.0),
                                   (0.5, 1.0), NICase.CASE_8,
                                   note and note.replace("(0, 0.5]", "[0.5, 1)")))
        x, y = _sample(case6_form_a, 0.0, w2 / s, n, True, False, w1, w2)
        curves.append(CurveSamples("Gamma_alphaA_etaA", x, y, (0.0, w2 / s),
                                   (0.0, w2 / s), NICase.CASE_6,
                                   "upper-envelope segment; reaches a < w1/s"))
        x, y = _sample(case7_form_a, w1 / s, 1.0, n, False, True, w1, w2)
        curves.append(CurveSamples("Gamma_gammaA_lambdaA", x, y, (w1 / s, 1.0),
                                   (w1 / s, 1.0), NICase.CASE_7,
                                   "upper-envelope segment; reaches a > w2/s"))
    elif map_name == "rec":
        x, y = _sample(case6_form_r, 0.0, 0.5, n, True, False, w1, w2)
        curves.append(CurveSamples("Gamma_alphaR_betaR", x, y, (0.0, 0.5),
                                   (0.0, 0.5), NICase.CASE_6))
        x, y = _sample(case7_form_r, 0.5, 1.0, n, False, True, w1, w2)
        curves.append(CurveSamples("Gamma_gammaR_betaR", x, y, (0.5, 1.0),
                                   (0.5, 1.0), NICase.CASE_7))
    else:
        x, y = _sample(case6_form_p, 0.0, w1 / s, n, True, False, w1, w2)
        curves.append(CurveSamples("Gamma_alphaP_betaP", x, y, (0.0, w1 / s),
                                   (0.0, w1 / s), NICase.CASE_6))
        x, y = _sample(case8_form_p, w1 / s, 1.0, n, False, True, w1, w2)
        curves.append(CurveSamples("Gamma_gammaP_betaP", x, y, (w1 / s, 1.0),
                                   (w1 / s, 1.0), NICase.CASE_8))
    return curves


# ---------------------------------------------------------------------------
# Upper envelope bounds (continuous, per index value).
# ---------------------------------------------------------------------------


def acc_upper_bound(a: float, w1: float, w2: float) -> float:
    """Largest NI attainable at accuracy ``a``: the larger endpoint of the
    fixed-accuracy matrix family."""
    s = w1 + w2
    left = case5_form_a(a, w1, w2) if a * s <= w2 else case7_form_a(a, w1, w2)
    right = case6_form_a(a, w1, w2) if a * s <= w1 else case8_form_a(a, w1, w2)
    return clamp_unit(max(left, right))


def rec_upper_bound(r: float, w1: float, w2: float) -> float:
    """Largest NI attainable at recall ``r``."""
    return clamp_unit(max(case6_form_r(r, w1, w2), case7_form_r(r, w1, w2)))


def pre_upper_bound(p: float, w1: float, w2: float) -> float:
    """Largest NI attainable at precision ``p``."""
    s = w1 + w2
    if p * s <= w1:
        return clamp_unit(case6_form_p(p, w1, w2)) if p < 1.0 else 1.0
    return clamp_unit(case8_form_p(p, w1, w2))


_UPPER_BOUNDS = {"acc": acc_upper_bound, "rec": rec_upper_bound, "pre": pre_upper_bound}


# ---------------------------------------------------------------------------
# Integer enumeration oracles.
# ---------------------------------------------------------------------------


def enumerate_confusions(w1: int, w2: int):
    """All integer matrices with the given class sizes, as flat float arrays
    (tp, fp, tn, fn) of length (w1+1)*(w2+1)."""
    if w1 < 1 or w2 < 1 or w1 != int(w1) or w2 != int(w2):
        raise ValueError("class sizes must be positive integers")
    tp, fp = np.meshgrid(np.arange(w1 + 1), np.arange(w2 + 1), indexing="ij")
    tp = tp.ravel().astype(np.float64)
    fp = fp.ravel().astype(np.float64)
    return tp, fp, w2 - fp, w1 - tp


def envelope_scatter(
    metric: str,
    w1: int,
    w2: int,
    cap: int = 200,
    check: bool = True,
    tol: float = ENVELOPE_TOL,
) -> EnvelopeScatter:
    """Exhaustive (index, NI) point cloud for fixed class sizes, with the
    continuous upper-envelope bound attached per point.

    With ``check=True`` raises ``InvariantViolationError`` if any point
    exceeds its bound by more than ``tol`` or falls below -tol.
    """
    metric = _canon_map(metric)
    if w1 + w2 > cap:
        raise ValueError(f"w1 + w2 = {w1 + w2} exceeds the enumeration cap {cap}")
    tp, fp, tn, fn = enumerate_confusions(w1, w2)
    ni, _ = _kernels.ni_direct(tp, fp, tn, fn)
    if metric == "acc":
        x = (tp + tn) / (w1 + w2)
    elif metric == "rec":
        x = tp / w1
    else:
        keep = tp + fp > 0
        tp, fp, tn, fn, ni = tp[keep], fp[keep], tn[keep], fn[keep], ni[keep]
        x = tp / (tp + fp)
    bound_fn = _UPPER_BOUNDS[metric]
    upper = np.array([bound_fn(float(v), float(w1), float(w2)) for v in x])
    scatter = EnvelopeScatter(metric, int(w1), int(w2), x, ni, upper)
    if check:
        excess = float(np.max(ni - upper))
        low = float(np.min(ni))
        if excess > tol or low < -tol:
            raise InvariantViolationError(
                f"envelope violated on {metric} map (w1={w1}, w2={w2}): "
                f"max excess {excess:.3e}, min NI {low:.3e}"
            )
    return scatter


def check_envelopes(sum_cap: int = 60, tol: float = ENVELOPE_TOL) -> dict:
    """Run the envelope oracle over every (w1 >= w2 >= 1, w1 + w2 <= sum_cap)
    pair via the kernel sweep; raises on violation, returns the summary."""
    n_points, v_acc, v_rec, v_pre, min_ni = _kernels.envelope_sweep(sum_cap)
    summary = {
        "n_points": n_points,
        "max_violation_acc": v_acc,
        "max_violation_rec": v_rec,
        "max_violation_pre": v_pre,
        "min_ni": min_ni,
    }
    if max(v_acc, v_rec, v_pre) > tol or min_ni < -tol:
        raise InvariantViolationError(f"envelope bounds violated: {summary}")
    return summary


def junction_gaps(w1: float, w2: float) -> dict[str, float]:
    """Absolute gaps between the two curve forms meeting at each beta point
    (evaluated as algebraic forms; the accuracy junction sits at the
    infeasible a = 0.5 when w1 > w2 but the identity still holds)."""
    return {
        "acc": abs(case5_form_a(0.5, w1, w2) - case8_form_a(0.5, w1, w2)),
        "rec": abs(case6_form_r(0.5, w1, w2) - case7_form_r(0.5, w1, w2)),
        "pre": abs(case6_form_p(w1 / (w1 + w2), w1, w2)
                   - case8_form_p(w1 / (w1 + w2), w1, w2)),
    }


# ---------------------------------------------------------------------------
# Precision-recall feasible region.
# ---------------------------------------------------------------------------


def pr_region_contains(p: float, r: float, w1: float, w2: float) -> bool:
    """Continuous feasibility of a (precision, recall) pair: the implied
    false-positive count r*w1*(1-p)/p must fit in the negative class."""
    return pr_feasible(p, r, w1, w2)


def pr_region_mask(p, r, w1: float, w2: float) -> np.ndarray:
    """Strict elementwise region membership on a broadcast (p, r) grid.

    Written with the same float expression as the surface evaluator so the
    actual-mode surface mask and this oracle agree cell for cell.
    """
    p = np.asarray(p, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    tn_scaled = p * r * w1 + p * w2 - r * w1  # p * implied true negatives
    return (p > 0) & (tn_scaled >= 0.0)


def feasible_region_pr(
    w1: float, w2: float, n_samples: int = 201, swap: bool = False
) -> tuple[SpecialPoint, list[CurveSamples]]:
    """Boundary data of the (precision, recall) feasible region.

    Emits the apex point (w1/s, 1) and two curves: the real-count
    feasibility limit r = p*w2/((1-p)*w1) (false positives = w2) and the
    r = p/((1-p)*w1) locus, which is exactly the false-positives = 1 curve
    and bounds the integer-attainable band from below for p < 1.
    """
    w1, w2 = _ordered_sizes(w1, w2, swap)
    s = w1 + w2
    apex = SpecialPoint("alpha_AP", w1 / s, 1.0)

    def r_fp_w2(p: float, w1: float, w2: float) -> float:
        return p * w2 / ((1.0 - p) * w1)

    def r_fp_1(p: float, w1: float, w2: float) -> float:
        return p / ((1.0 - p) * w1)

    x1, y1 = _sample(r_fp_w2, 0.0, w1 / s, n_samples, False, False, w1, w2)
    x2, y2 = _sample(r_fp_1, 0.0, w1 / (w1 + 1.0), n_samples, False, False, w1, w2)
    curves = [
        CurveSamples("Gamma_alphaRP1", x1, np.clip(y1, 0.0, 1.0), (0.0, w1 / s),
                     (0.0, w1 / s), None,
                     "false positives = w2: upper boundary of attainable (p, r)"),
        CurveSamples("Gamma_alphaRP2", x2, np.clip(y2, 0.0, 1.0),
                     (0.0, w1 / (w1 + 1.0)), (0.0, w1 / (w1 + 1.0)), None,
                     "false positives = 1: lower edge of the integer-attainable "
                     "band for p < 1"),
    ]
    return apex, curves


def pr_integer_points(w1: int, w2: int) -> tuple[np.ndarray, np.ndarray]:
    """(precision, recall) pairs attainable by integer matrices at the given
    class sizes (points with an empty predicted-positive column excluded)."""
    tp, fp, tn, fn = enumerate_confusions(w1, w2)
    keep = tp + fp > 0
    tp, fp = tp[keep], fp[keep]
    return tp / (tp + fp), tp / w1


def check_pr_region(sum_cap: int = 100, tol: float = ENVELOPE_TOL) -> dict:
    """Verify for all (w1 >= w2 >= 1, w1 + w2 <= sum_cap) that the integer
    (p, r) points fall inside the continuous region (below the
    false-positives = w2 curve) and, for p < 1, on or above the
    false-positives = 1 curve. Raises on violation."""
    n_points = 0
    worst_above = -math.inf
    worst_below = -math.inf
    for w1 in range(1, sum_cap):
        for w2 in range(1, min(w1, sum_cap - w1) + 1):
            p, r = pr_integer_points(w1, w2)
            n_points += p.size
            # above the region: r*w1*(1-p) - p*w2 > 0
            worst_above = max(worst_above, float(np.max(r * w1 * (1.0 - p) - p * w2)))
            interior = p < 1.0
            if interior.any():
                # below the fp=1 locus: p - r*w1*(1-p) > 0
                worst_below = max(
                    worst_below,
                    float(np.max((p - r * w1 * (1.0 - p))[interior])),
                )
    summary = {
        "n_points": n_points,
        "max_outside_region": worst_above,
        "max_below_fp1_locus": worst_below,
    }
    if worst_above > tol or worst_below > tol:
        raise InvariantViolationError(f"feasible-region bounds violated: {summary}")
    return summary


# ---------------------------------------------------------------------------
# Surfaces.
# ---------------------------------------------------------------------------


def surface_pr(
    w1: float, w2: float, nx: int = 201, ny: int = 201, mode: str = "actual"
) -> SurfaceGrid:
    """NI over the (precision, recall) grid. ``ideal`` keeps every cell where
    the closed form is defined; ``actual`` additionally blanks cells outside
    the feasible region."""
    if mode not in ("ideal", "actual"):
        raise ValueError(f"mode must be 'ideal' or 'actual', got {mode!r}")
    if nx < 2 or ny < 2:
        raise ValueError("grid must be at least 2x2")
    if w1 <= 0 or w2 <= 0:
        raise ValueError("class sizes must be positive")
    p = np.linspace(0.0, 1.0, nx)
    r = np.linspace(0.0, 1.0, ny)
    ni, defined = _kernels.eq_pr_grid(p[:, None], r[None, :], float(w1), float(w2))
    if mode == "actual":
        defined = defined & pr_region_mask(p[:, None], r[None, :], float(w1), float(w2))
        ni = np.where(defined, ni, np.nan)
    return SurfaceGrid("precision", "recall", p, r, ni, defined, w1, w2, mode)


def surface_fr(w1: float, w2: float, nx: int = 201, ny: int = 201) -> SurfaceGrid:
    """NI over the (false alarm, recall) grid; defined everywhere."""
    if nx < 2 or ny < 2:
        raise ValueError("grid must be at least 2x2")
    if w1 <= 0 or w2 <= 0:
        raise ValueError("class sizes must be positive")
    f = np.linspace(0.0, 1.0, nx)
    r = np.linspace(0.0, 1.0, ny)
    ni = _kernels.eq_fr_grid(f[:, None], r[None, :], float(w1), float(w2))
    defined = np.ones(ni.shape, dtype=bool)
    return SurfaceGrid("false_alarm", "recall", f, r, ni, defined, w1, w2, "full")
