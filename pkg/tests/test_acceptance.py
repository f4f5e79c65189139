"""Acceptance suite: one test per release criterion, each printing a
PASS line with its measured runtime (run with ``pytest -s`` to see them).

Stated runtime limits are asserted only under the default (numba) kernel
backend; the pure-numpy fallback checks the same values but is allowed to
be slower.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from nimetrics import (
    ConfusionMatrix,
    CountMatrix,
    ModelRecord,
    accuracy_from_pr,
    complement,
    kernel_backend,
    ni_closed,
    ni_from_counts,
    normalized_mutual_information,
    precision_from_fr,
    rank,
    surface_fr,
    surface_pr,
    table_report,
)
from nimetrics import _kernels
from nimetrics.cli import main as cli_main
from nimetrics.maps import check_envelopes, check_pr_region, junction_gaps, pr_region_mask

from conftest import TABLE2

README = Path(__file__).resolve().parents[1] / "README.md"

TIMED = kernel_backend == "numba"


def report(criterion: str, elapsed: float, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS ({elapsed:.2f} s) {detail}")


def test_criterion_1_reference_table_reproduction(table2_matrices):
    t0 = time.perf_counter()
    for name, cm in table2_matrices.items():
        _, (acc4, p4, r4, ni4) = TABLE2[name]
        m = ModelRecord(name, cm)
        rep = m.report
        assert rep.accuracy == pytest.approx(acc4, abs=5e-5)
        assert rep.precision == pytest.approx(p4, abs=5e-5)
        assert rep.recall == pytest.approx(r4, abs=5e-5)
        assert rep.ni == pytest.approx(ni4, abs=5e-5)

    # complements of the two sub-half-accuracy models: accuracy, recall, and
    # NI follow by reflection/invariance; precision is recomputed from the
    # flipped counts (no reflection law) and the rows are flagged
    c4 = complement(ModelRecord("M_4", table2_matrices["M_4"]))
    rep4 = c4.report
    assert rep4.accuracy == pytest.approx(0.8, abs=5e-5)
    assert rep4.recall == pytest.approx(0.7, abs=5e-5)
    assert rep4.ni == pytest.approx(0.2958, abs=5e-5)
    assert rep4.precision == pytest.approx(35 / 40, abs=1e-12)

    c5 = complement(ModelRecord("M_5", table2_matrices["M_5"]))
    rep5 = c5.report
    assert rep5.accuracy == pytest.approx(0.64, abs=5e-5)
    assert rep5.recall == pytest.approx(0.76, abs=5e-5)
    assert rep5.ni == pytest.approx(0.0611, abs=5e-5)
    assert rep5.precision == pytest.approx(38 / 62, abs=1e-12)

    text = table_report([c4, c5])
    assert text.splitlines()[1].startswith("-M_4")
    assert "complement" in text.splitlines()[-1]
    elapsed = time.perf_counter() - t0
    if TIMED:
        assert elapsed < 1.0
    report("criterion 1", elapsed,
           "six models + two complements reproduced to 5e-5")


def test_criterion_2_reference_ranking(table2_matrices):
    t0 = time.perf_counter()
    models = [ModelRecord(name, cm) for name, cm in sorted(table2_matrices.items())]
    ranking = rank(models)
    assert ranking.ordering() == "-M_4 > M_1 > M_2 > -M_5 > M_6 > M_3"
    elapsed = time.perf_counter() - t0
    if TIMED:
        assert elapsed < 1.0
    report("criterion 2", elapsed, f"ordering {ranking.ordering()!r}")


def test_criterion_3_closed_form_oracle_equivalence():
    cap = 200
    t0 = time.perf_counter()
    n, n_defined, max_diff, worst = _kernels.sweep_compare(cap)
    elapsed = time.perf_counter() - t0
    assert n == math.comb(cap + 4, 4) - 1
    assert n - n_defined == 2 * (math.comb(cap + 2, 2) - 1)
    assert max_diff <= 1e-9, f"worst matrix {worst}: |closed - direct| = {max_diff}"
    if TIMED:
        assert elapsed < 60.0
    report("criterion 3", elapsed,
           f"max|closed - direct| = {max_diff:.3e} over {n_defined:,} matrices "
           f"(total <= {cap}, backend {kernel_backend})")


def test_criterion_4_bridge_identities(rng):
    t0 = time.perf_counter()
    n = 100_000
    tp, fp, tn, fn = rng.integers(1, 400, size=(4, n)).astype(np.float64)
    w1, w2 = tp + fn, fp + tn
    s = w1 + w2
    a, p, r, f = (tp + tn) / s, tp / (tp + fp), tp / w1, fp / w2
    a_bridge = (2 * p * r * w1 + p * w2 - r * w1) / (p * s)
    p_bridge = r * w1 / (r * w1 + f * w2)
    acc_err = float(np.max(np.abs(a_bridge - a)))
    pre_err = float(np.max(np.abs(p_bridge - p)))
    assert acc_err <= 1e-12
    assert pre_err <= 1e-12
    # the scalar entry points implement the same expressions
    assert accuracy_from_pr(float(p[0]), float(r[0]), float(w1[0]), float(w2[0])) == a_bridge[0]
    assert precision_from_fr(float(f[0]), float(r[0]), float(w1[0]), float(w2[0])) == p_bridge[0]
    elapsed = time.perf_counter() - t0
    if TIMED:
        assert elapsed < 5.0
    report("criterion 4", elapsed,
           f"accuracy identity max err {acc_err:.2e}, "
           f"precision identity max err {pre_err:.2e} over {n:,} matrices")


def test_criterion_5_constant_cases_exact(rng):
    t0 = time.perf_counter()
    def draw(n):
        return rng.integers(1, 500, size=n)

    checked = 0
    for expected, build in (
        (0.0, lambda a, b: ConfusionMatrix(0, 0, a, b)),       # all predicted negative
        (0.0, lambda a, b: ConfusionMatrix(a, b, 0, 0)),       # all predicted positive
        (1.0, lambda a, b: ConfusionMatrix(0, a, 0, b)),       # fully inverted
        (1.0, lambda a, b: ConfusionMatrix(a, 0, b, 0)),       # perfect
    ):
        for a, b in zip(draw(100), draw(100)):
            cm = build(int(a), int(b))
            assert ni_from_counts(cm) == expected
            assert ni_closed(cm) == expected
            assert normalized_mutual_information(CountMatrix.from_confusion(cm)) == expected
            checked += 1
    elapsed = time.perf_counter() - t0
    report("criterion 5", elapsed,
           f"{checked} single-zero-pattern matrices pinned at exactly 0 or 1 "
           "on all three paths")


def test_criterion_6_envelope_property():
    t0 = time.perf_counter()
    summary = check_envelopes(60, tol=1e-9)
    worst_junction = 0.0
    for w1 in range(1, 60):
        for w2 in range(1, min(w1, 60 - w1) + 1):
            worst_junction = max(worst_junction, max(junction_gaps(w1, w2).values()))
    assert worst_junction <= 1e-9
    elapsed = time.perf_counter() - t0
    if TIMED:
        assert elapsed < 30.0
    report("criterion 6", elapsed,
           f"{summary['n_points']:,} points within bounds "
           f"(worst excess {max(summary['max_violation_acc'], summary['max_violation_rec'], summary['max_violation_pre']):.2e}, "
           f"worst junction gap {worst_junction:.2e})")


def test_criterion_7_feasible_region_agreement():
    t0 = time.perf_counter()
    summary = check_pr_region(100, tol=1e-9)
    # the verdict on the second boundary curve's reading is part of the docs
    readme = README.read_text()
    assert "false positives = 1" in readme
    elapsed = time.perf_counter() - t0
    report("criterion 7", elapsed,
           f"{summary['n_points']:,} integer (p, r) points inside the band; "
           "fp = 1 verdict recorded in README")


def test_criterion_8_surface_sanity():
    t0 = time.perf_counter()
    fr = surface_fr(50, 50, 201, 201)
    diag = float(np.abs(np.diagonal(fr.values)).max())
    assert diag <= 1e-12
    sym = float(np.nanmax(np.abs(fr.values - fr.values[::-1, ::-1])))
    assert sym <= 1e-12
    mask_mismatch = 0
    for w1, w2 in [(50.0, 50.0), (60.0, 40.0), (75.0, 25.0)]:
        grid = surface_pr(w1, w2, 201, 201, mode="actual")
        oracle = pr_region_mask(grid.x[:, None], grid.y[None, :], w1, w2)
        mask_mismatch += int((grid.defined != oracle).sum())
    assert mask_mismatch == 0
    elapsed = time.perf_counter() - t0
    report("criterion 8", elapsed,
           f"diag max {diag:.2e}, flip asymmetry {sym:.2e}, mask mismatches 0")


def test_criterion_9_deterministic_datasets(tmp_path, capsys):
    t0 = time.perf_counter()
    jobs = [
        ("map", "acc", "--w1", "60", "--w2", "40", "--samples", "101"),
        ("map", "pr-surface", "--w1", "50", "--w2", "50", "--nx", "41",
         "--ny", "41", "--mode", "actual"),
        ("map", "fr-surface", "--w1", "50", "--w2", "50", "--nx", "41", "--ny", "41"),
    ]
    for i, args in enumerate(jobs):
        dirs = [tmp_path / f"run{i}a", tmp_path / f"run{i}b"]
        for d in dirs:
            assert cli_main([*args, "--out", str(d)]) == 0
        capsys.readouterr()
        files = sorted(p.name for p in dirs[0].iterdir())
        assert files
        for name in files:
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()
    elapsed = time.perf_counter() - t0
    report("criterion 9", elapsed,
           f"{len(jobs)} dataset commands byte-identical across reruns")
