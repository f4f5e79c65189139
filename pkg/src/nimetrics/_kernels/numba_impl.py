"""Numba-jitted implementations of the hot kernels.

Same public surface as ``numpy_impl`` (ni_direct, ni_closed, classify,
sweep_compare, envelope_sweep); scalar inner loops compiled with ``@njit``.
The grid evaluators eq_pr_grid / eq_fr_grid are shared with the numpy
backend since they are not hot.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .numpy_impl import eq_fr_grid, eq_pr_grid  # noqa: F401  (re-exported)

ROUNDING_TOL = 1e-12


@njit(cache=True)
def _xlog2(x: float) -> float:
    if x > 0.0:
        return x * np.log2(x)
    return 0.0


@njit(cache=True)
def _clamp(ni: float) -> float:
    if -ROUNDING_TOL < ni < 0.0:
        return 0.0
    if 1.0 < ni < 1.0 + ROUNDING_TOL:
        return 1.0
    return ni


@njit(cache=True)
def _ni_direct_cells(tp: float, fp: float, tn: float, fn: float):
    w1 = tp + fn
    w2 = fp + tn
    if w1 <= 0.0 or w2 <= 0.0:
        return np.nan, False
    s = w1 + w2
    s_ht = _xlog2(s) - _xlog2(w1) - _xlog2(w2)
    s_hty = (
        _xlog2(tp + fp) - _xlog2(tp) - _xlog2(fp)
        + _xlog2(fn + tn) - _xlog2(fn) - _xlog2(tn)
    )
    return _clamp((s_ht - s_hty) / s_ht), True


@njit(cache=True)
def _classify_cells(tp: float, fp: float, tn: float, fn: float) -> int:
    if tp == 0.0 and tn == 0.0:
        return 3
    if fp == 0.0 and fn == 0.0:
        return 4
    if tp == 0.0 and fp == 0.0:
        return 1
    if tn == 0.0 and fn == 0.0:
        return 2
    if tp == 0.0:
        return 5
    if tn == 0.0:
        return 6
    if fp == 0.0:
        return 7
    if fn == 0.0:
        return 8
    return 9


@njit(cache=True)
def _ni_closed_cells(tp: float, fp: float, tn: float, fn: float):
    w1 = tp + fn
    w2 = fp + tn
    case = _classify_cells(tp, fp, tn, fn)
    if w1 <= 0.0 or w2 <= 0.0:
        return np.nan, False, case
    s = w1 + w2
    if case == 1 or case == 2:
        return 0.0, True, case
    if case == 3 or case == 4:
        return 1.0, True, case
    ht = (_xlog2(s) - _xlog2(w1) - _xlog2(w2)) / s
    if case == 5:
        a = (tp + tn) / s
        br = s * _xlog2(a) + (a + 1.0) * _xlog2(s) - _xlog2(w2) - _xlog2(a * s + w1)
        return _clamp(br / (s * ht)), True, case
    if case == 6:
        r = tp / w1
        br = w1 * _xlog2(r) + _xlog2(s) - (1.0 - r) * _xlog2(w1) - _xlog2(r * w1 + w2)
        return _clamp(br / (s * ht)), True, case
    if case == 7:
        r = tp / w1
        br = w1 * _xlog2(1.0 - r) + _xlog2(s) - r * _xlog2(w1) - _xlog2(s - r * w1)
        return _clamp(br / (s * ht)), True, case
    if case == 8:
        p = tp / (tp + fp)
        br = (
            (w1 / p) * _xlog2(1.0 - p) + w1 * np.log2(p)
            + _xlog2(s) - _xlog2(w1) - _xlog2(w2)
        )
        return _clamp(br / (s * ht)), True, case
    a = (tp + tn) / s
    p = tp / (tp + fp)
    r = tp / w1
    d = p + r - 2.0 * p * r
    br = (
        p * (1.0 - a) * _xlog2(1.0 - r)
        + r * (1.0 - a) * _xlog2(1.0 - p)
        - p * r * _xlog2(1.0 - a)
        + _xlog2(a * p + a * r - p * r - a * p * r)
        - _xlog2(a * p + r - 2.0 * p * r)
        - _xlog2(a * r + p - 2.0 * p * r)
    )
    return _clamp((np.log2(d) + br / d) / ht), True, case


@njit(cache=True)
def _ni_direct_arr(tp, fp, tn, fn):
    n = tp.size
    ni = np.empty(n, np.float64)
    defined = np.empty(n, np.bool_)
    for i in range(n):
        ni[i], defined[i] = _ni_direct_cells(tp[i], fp[i], tn[i], fn[i])
    return ni, defined


@njit(cache=True)
def _ni_closed_arr(tp, fp, tn, fn):
    n = tp.size
    ni = np.empty(n, np.float64)
    defined = np.empty(n, np.bool_)
    case = np.empty(n, np.uint8)
    for i in range(n):
        v, d, c = _ni_closed_cells(tp[i], fp[i], tn[i], fn[i])
        ni[i] = v
        defined[i] = d
        case[i] = c
    return ni, defined, case


@njit(cache=True)
def _classify_arr(tp, fp, tn, fn):
    n = tp.size
    case = np.empty(n, np.uint8)
    for i in range(n):
        case[i] = _classify_cells(tp[i], fp[i], tn[i], fn[i])
    return case


def _flat_cells(tp, fp, tn, fn):
    arrs = np.broadcast_arrays(
        *(np.asarray(v, dtype=np.float64) for v in (tp, fp, tn, fn))
    )
    shape = arrs[0].shape
    return [np.ascontiguousarray(a).ravel() for a in arrs], shape


def ni_direct(tp, fp, tn, fn):
    (tp, fp, tn, fn), shape = _flat_cells(tp, fp, tn, fn)
    ni, defined = _ni_direct_arr(tp, fp, tn, fn)
    return ni.reshape(shape), defined.reshape(shape)


def ni_closed(tp, fp, tn, fn):
    (tp, fp, tn, fn), shape = _flat_cells(tp, fp, tn, fn)
    ni, defined, case = _ni_closed_arr(tp, fp, tn, fn)
    return ni.reshape(shape), defined.reshape(shape), case.reshape(shape)


def classify(tp, fp, tn, fn):
    (tp, fp, tn, fn), shape = _flat_cells(tp, fp, tn, fn)
    return _classify_arr(tp, fp, tn, fn).reshape(shape)


@njit(cache=True)
def _sweep_compare(cap: int):
    xt = np.empty(cap + 1, np.float64)
    xt[0] = 0.0
    for i in range(1, cap + 1):
        xt[i] = i * np.log2(float(i))
    n = 0
    n_defined = 0
    max_diff = 0.0
    wtp = wfp = wtn = wfn = 0
    for tp in range(cap + 1):
        for fp in range(cap + 1 - tp):
            for tn in range(cap + 1 - tp - fp):
                for fn in range(cap + 1 - tp - fp - tn):
                    if tp == 0 and fp == 0 and tn == 0 and fn == 0:
                        continue
                    n += 1
                    w1 = tp + fn
                    w2 = fp + tn
                    if w1 == 0 or w2 == 0:
                        continue
                    n_defined += 1
                    s_ht = xt[w1 + w2] - xt[w1] - xt[w2]
                    s_hty = xt[tp + fp] - xt[tp] - xt[fp] + xt[fn + tn] - xt[fn] - xt[tn]
                    nid = _clamp((s_ht - s_hty) / s_ht)
                    nic, _, _ = _ni_closed_cells(float(tp), float(fp), float(tn), float(fn))
                    d = abs(nid - nic)
                    if d > max_diff:
                        max_diff = d
                        wtp, wfp, wtn, wfn = tp, fp, tn, fn
    return n, n_defined, max_diff, wtp, wfp, wtn, wfn


def sweep_compare(cap: int):
    """Compare closed-form vs direct NI over every integer matrix with
    total <= cap; see numpy_impl.sweep_compare."""
    n, n_defined, max_diff, wtp, wfp, wtn, wfn = _sweep_compare(cap)
    return n, n_defined, max_diff, (wtp, wfp, wtn, wfn)


@njit(cache=True)
def _pre_bound(tp: float, fp: float, w1: float, w2: float) -> float:
    p = tp / (tp + fp)
    if p <= 0.0:
        c_max = w2
    elif p >= 1.0:
        c_max = w1
    else:
        c_max = min(w1 / p, w2 / (1.0 - p))
    tp_e = p * c_max
    fp_e = (1.0 - p) * c_max
    ni, _ = _ni_direct_cells(tp_e, fp_e, w2 - fp_e, w1 - tp_e)
    return ni


@njit(cache=True)
def _envelope_sweep(sum_cap: int):
    n_points = 0
    v_acc = -np.inf
    v_rec = -np.inf
    v_pre = -np.inf
    min_ni = np.inf
    for w1 in range(1, sum_cap):
        for w2 in range(1, min(w1, sum_cap - w1) + 1):
            fw1 = float(w1)
            fw2 = float(w2)
            for tp in range(w1 + 1):
                for fp in range(w2 + 1):
                    ftp = float(tp)
                    ffp = float(fp)
                    ftn = fw2 - ffp
                    ffn = fw1 - ftp
                    ni, _ = _ni_direct_cells(ftp, ffp, ftn, ffn)
                    n_points += 1
                    if ni < min_ni:
                        min_ni = ni

                    a_cells = ftp + ftn
                    tp_lo = max(0.0, a_cells - fw2)
                    tp_hi = min(fw1, a_cells)
                    ni_lo, _ = _ni_direct_cells(
                        tp_lo, fw2 - (a_cells - tp_lo), a_cells - tp_lo, fw1 - tp_lo
                    )
                    ni_hi, _ = _ni_direct_cells(
                        tp_hi, fw2 - (a_cells - tp_hi), a_cells - tp_hi, fw1 - tp_hi
                    )
                    v = ni - max(ni_lo, ni_hi)
                    if v > v_acc:
                        v_acc = v

                    ni_fp0, _ = _ni_direct_cells(ftp, 0.0, fw2, ffn)
                    ni_fpw, _ = _ni_direct_cells(ftp, fw2, 0.0, ffn)
                    v = ni - max(ni_fp0, ni_fpw)
                    if v > v_rec:
                        v_rec = v

                    if tp + fp > 0:
                        v = ni - _pre_bound(ftp, ffp, fw1, fw2)
                        if v > v_pre:
                            v_pre = v
    return n_points, v_acc, v_rec, v_pre, min_ni


def envelope_sweep(sum_cap: int):
    """Envelope-bound check over all class sizes with w1 >= w2 >= 1 and
    w1 + w2 <= sum_cap; see numpy_impl.envelope_sweep."""
    return _envelope_sweep(sum_cap)
