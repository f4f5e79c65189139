"""Pure-numpy implementations of the hot kernels.

Array counterparts of the scalar routines in ``closedform``: direct NI from
the four cells, the nine-case closed-form dispatch, the exhaustive
closed-vs-direct sweep, and the envelope-bound sweep. The numba backend
mirrors these signatures; either one can be forced via NIMETRICS_BACKEND.
"""

from __future__ import annotations

import numpy as np

ROUNDING_TOL = 1e-12


def xlog2(x: np.ndarray) -> np.ndarray:
    """Elementwise x * log2(x) with 0 * log2(0) = 0."""
    x = np.asarray(x, dtype=np.float64)
    logs = np.zeros_like(x)
    np.log2(x, out=logs, where=x > 0)
    return x * logs


def _clamp_unit(ni: np.ndarray) -> np.ndarray:
    ni = np.where((ni > -ROUNDING_TOL) & (ni < 0.0), 0.0, ni)
    ni = np.where((ni > 1.0) & (ni < 1.0 + ROUNDING_TOL), 1.0, ni)
    return ni


def _as_cells(tp, fp, tn, fn):
    return np.broadcast_arrays(
        *(np.asarray(v, dtype=np.float64) for v in (tp, fp, tn, fn))
    )


def ni_direct(tp, fp, tn, fn):
    """Direct NI for arrays of cell counts.

    Returns ``(ni, defined)``; ni is NaN where the target is single-class.
    """
    tp, fp, tn, fn = _as_cells(tp, fp, tn, fn)
    w1 = tp + fn
    w2 = fp + tn
    defined = (w1 > 0) & (w2 > 0)
    s = w1 + w2
    s_ht = xlog2(s) - xlog2(w1) - xlog2(w2)
    s_hty = xlog2(tp + fp) - xlog2(tp) - xlog2(fp) + xlog2(fn + tn) - xlog2(fn) - xlog2(tn)
    ni = np.full(s.shape, np.nan)
    np.divide(s_ht - s_hty, s_ht, out=ni, where=defined)
    return _clamp_unit(ni), defined


def classify(tp, fp, tn, fn) -> np.ndarray:
    """Vectorized case ids (1..9), priority order 3, 4, 1, 2, 5, 6, 7, 8."""
    tp, fp, tn, fn = _as_cells(tp, fp, tn, fn)
    z_tp, z_fp, z_tn, z_fn = tp == 0, fp == 0, tn == 0, fn == 0
    return np.select(
        [z_tp & z_tn, z_fp & z_fn, z_tp & z_fp, z_tn & z_fn, z_tp, z_tn, z_fp, z_fn],
        [3, 4, 1, 2, 5, 6, 7, 8],
        default=9,
    ).astype(np.uint8)


def _entropy(w1, w2, s):
    return (xlog2(s) - xlog2(w1) - xlog2(w2)) / s


def _log2_pos(x):
    out = np.zeros_like(x)
    np.log2(x, out=out, where=x > 0)
    return out


def _case5_a(a, w1, w2, s, ht):
    br = s * xlog2(a) + (a + 1.0) * xlog2(s) - xlog2(w2) - xlog2(a * s + w1)
    return br / (s * ht)


def _case6_r(r, w1, w2, s, ht):
    br = w1 * xlog2(r) + xlog2(s) - (1.0 - r) * xlog2(w1) - xlog2(r * w1 + w2)
    return br / (s * ht)


def _case7_r(r, w1, w2, s, ht):
    br = w1 * xlog2(1.0 - r) + xlog2(s) - r * xlog2(w1) - xlog2(s - r * w1)
    return br / (s * ht)


def _case8_p(p, w1, w2, s, ht):
    br = (w1 / p) * xlog2(1.0 - p) + w1 * _log2_pos(p) + xlog2(s) - xlog2(w1) - xlog2(w2)
    return br / (s * ht)


def _case9_apr(a, p, r, ht):
    d = p + r - 2.0 * p * r
    br = (
        p * (1.0 - a) * xlog2(1.0 - r)
        + r * (1.0 - a) * xlog2(1.0 - p)
        - p * r * xlog2(1.0 - a)
        + xlog2(a * p + a * r - p * r - a * p * r)
        - xlog2(a * p + r - 2.0 * p * r)
        - xlog2(a * r + p - 2.0 * p * r)
    )
    return (_log2_pos(d) + br / d) / ht


def ni_closed(tp, fp, tn, fn):
    """Closed-form NI via case dispatch, for arrays of cell counts.

    Returns ``(ni, defined, case)``. Dispatch forms: case 5 by accuracy,
    cases 6 and 7 by recall, case 8 by precision, case 9 by (a, p, r).
    """
    tp, fp, tn, fn = _as_cells(tp, fp, tn, fn)
    case = classify(tp, fp, tn, fn)
    w1 = tp + fn
    w2 = fp + tn
    defined = (w1 > 0) & (w2 > 0)
    s = w1 + w2
    ni = np.full(s.shape, np.nan)
    ni[defined & ((case == 1) | (case == 2))] = 0.0
    ni[defined & ((case == 3) | (case == 4))] = 1.0

    def fill(mask, values_fn):
        m = mask & defined
        if m.any():
            ni[m] = values_fn(m)

    fill(case == 5, lambda m: _case5_a(
        (tp[m] + tn[m]) / s[m], w1[m], w2[m], s[m], _entropy(w1[m], w2[m], s[m])))
    fill(case == 6, lambda m: _case6_r(
        tp[m] / w1[m], w1[m], w2[m], s[m], _entropy(w1[m], w2[m], s[m])))
    fill(case == 7, lambda m: _case7_r(
        tp[m] / w1[m], w1[m], w2[m], s[m], _entropy(w1[m], w2[m], s[m])))
    fill(case == 8, lambda m: _case8_p(
        tp[m] / (tp[m] + fp[m]), w1[m], w2[m], s[m], _entropy(w1[m], w2[m], s[m])))
    fill(case == 9, lambda m: _case9_apr(
        (tp[m] + tn[m]) / s[m], tp[m] / (tp[m] + fp[m]), tp[m] / w1[m],
        _entropy(w1[m], w2[m], s[m])))
    return _clamp_unit(ni), defined, case


def _fn_triangle(m: int):
    """All (tn, fn) pairs with tn + fn <= m, flat int64 arrays."""
    counts = m + 1 - np.arange(m + 1)
    tn = np.repeat(np.arange(m + 1), counts)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    fn = np.arange(counts.sum()) - np.repeat(starts, counts)
    return tn, fn


def sweep_compare(cap: int):
    """Compare closed-form vs direct NI over every integer matrix with
    total <= cap.

    Returns ``(n_matrices, n_defined, max_abs_diff, worst_cells)`` where
    ``worst_cells`` is the (tp, fp, tn, fn) tuple of the largest difference.
    """
    triangles = [_fn_triangle(m) for m in range(cap + 1)]
    n = 0
    n_defined = 0
    max_diff = 0.0
    worst = (0, 0, 0, 0)
    for tp in range(cap + 1):
        for fp in range(cap + 1 - tp):
            tn, fn = triangles[cap - tp - fp]
            if tp == 0 and fp == 0:  # drop the all-zero matrix
                tn, fn = tn[1:], fn[1:]
            tp_a = np.full(tn.shape, float(tp))
            fp_a = np.full(tn.shape, float(fp))
            nid, defined = ni_direct(tp_a, fp_a, tn, fn)
            nic, _, _ = ni_closed(tp_a, fp_a, tn, fn)
            n += tn.size
            n_defined += int(defined.sum())
            if defined.any():
                diff = np.abs(nid - nic)
                diff[~defined] = 0.0
                i = int(np.argmax(diff))
                if diff[i] > max_diff:
                    max_diff = float(diff[i])
                    worst = (tp, fp, int(tn[i]), int(fn[i]))
    return n, n_defined, max_diff, worst


def _pre_bound_cells(tp, fp, w1: float, w2: float):
    """Endpoint matrix of the fixed-precision family through each point.

    Along c = tp + fp with tp/c fixed, NI is convex and vanishes as c -> 0,
    so the family maximum sits at the largest feasible c.
    """
    cp = tp + fp
    p = np.divide(tp, cp, out=np.zeros_like(tp), where=cp > 0)
    with np.errstate(divide="ignore"):
        c_hi = np.where(p > 0, w1 / np.where(p > 0, p, 1.0), np.inf)
        c_lo = np.where(p < 1, w2 / np.where(p < 1, 1.0 - p, 1.0), np.inf)
    c_max = np.minimum(c_hi, c_lo)
    tp_e = p * c_max
    fp_e = (1.0 - p) * c_max
    return tp_e, fp_e, w2 - fp_e, w1 - tp_e


def envelope_sweep(sum_cap: int):
    """Check the relation-map envelope bounds for every class-size pair with
    w1 >= w2 >= 1 and w1 + w2 <= sum_cap, over all integer matrices.

    For each matrix the NI must not exceed the maximum NI of the boundary
    matrices of its one-parameter family (fixed class sizes plus fixed
    accuracy / recall / precision respectively). Returns
    ``(n_points, max_violation_acc, max_violation_rec, max_violation_pre,
    min_ni)``.
    """
    n_points = 0
    v_acc = v_rec = v_pre = -np.inf
    min_ni = np.inf
    for w1 in range(1, sum_cap):
        for w2 in range(1, min(w1, sum_cap - w1) + 1):
            tp, fp = np.meshgrid(np.arange(w1 + 1), np.arange(w2 + 1), indexing="ij")
            tp = tp.ravel().astype(np.float64)
            fp = fp.ravel().astype(np.float64)
            tn = w2 - fp
            fn = w1 - tp
            ni, _ = ni_direct(tp, fp, tn, fn)
            n_points += tp.size
            min_ni = min(min_ni, float(ni.min()))

            # accuracy map: endpoints of the fixed-(tp + tn) family
            a_cells = tp + tn
            tp_lo = np.maximum(0.0, a_cells - w2)
            tp_hi = np.minimum(float(w1), a_cells)
            ni_lo, _ = ni_direct(tp_lo, w2 - (a_cells - tp_lo), a_cells - tp_lo, w1 - tp_lo)
            ni_hi, _ = ni_direct(tp_hi, w2 - (a_cells - tp_hi), a_cells - tp_hi, w1 - tp_hi)
            v_acc = max(v_acc, float(np.max(ni - np.maximum(ni_lo, ni_hi))))

            # recall map: endpoints fp = 0 and fp = w2 of the fixed-tp family
            ni_fp0, _ = ni_direct(tp, 0.0, float(w2), fn)
            ni_fpw, _ = ni_direct(tp, float(w2), 0.0, fn)
            v_rec = max(v_rec, float(np.max(ni - np.maximum(ni_fp0, ni_fpw))))

            # precision map: endpoint at the largest predicted-positive count
            has_p = tp + fp > 0
            ni_pe, _ = ni_direct(*_pre_bound_cells(tp, fp, float(w1), float(w2)))
            v_pre = max(v_pre, float(np.max((ni - ni_pe)[has_p])))
    return n_points, v_acc, v_rec, v_pre, min_ni


def eq_pr_grid(p, r, w1: float, w2: float):
    """NI of the (precision, recall) closed form on a broadcast grid.

    Returns ``(ni, defined)``; cells where the expression is undefined
    (p = 0 or a negative log argument, i.e. infeasible counts) are NaN.
    """
    p, r = np.broadcast_arrays(
        np.asarray(p, dtype=np.float64), np.asarray(r, dtype=np.float64)
    )
    s = w1 + w2
    ht = (xlog2(np.float64(s)) - xlog2(np.float64(w1)) - xlog2(np.float64(w2))) / s
    arg_tn = p * r * w1 + p * w2 - r * w1
    arg_cn = p * w1 + p * w2 - r * w1
    defined = (p > 0) & (arg_tn >= 0) & (arg_cn >= 0)
    ps = np.where(defined, p, 1.0)
    br = (
        w1 * xlog2(ps)
        + ps * w1 * xlog2(1.0 - r)
        + r * w1 * xlog2(1.0 - ps)
        - ps * r * xlog2(np.float64(w1))
        - ps * xlog2(np.float64(w2))
        + xlog2(np.where(defined, arg_tn, 0.0))
        - xlog2(np.where(defined, arg_cn, 0.0))
    )
    ni = np.full(p.shape, np.nan)
    np.divide(br, ps * s, out=ni, where=defined)
    ni = np.where(defined, (np.log2(s) + ni) / ht, np.nan)
    return _clamp_unit(ni), defined


def eq_fr_grid(f, r, w1: float, w2: float):
    """NI of the (false alarm, recall) closed form on a broadcast grid;
    defined on the whole unit square."""
    f, r = np.broadcast_arrays(
        np.asarray(f, dtype=np.float64), np.asarray(r, dtype=np.float64)
    )
    s = w1 + w2
    ht = (xlog2(np.float64(s)) - xlog2(np.float64(w1)) - xlog2(np.float64(w2))) / s
    br = (
        w1 * xlog2(r)
        + w1 * xlog2(1.0 - r)
        + w2 * xlog2(f)
        + w2 * xlog2(1.0 - f)
        - xlog2(r * w1 + f * w2)
        - xlog2(w1 * (1.0 - r) + w2 * (1.0 - f))
    )
    return _clamp_unit((np.log2(s) + br / s) / ht)
