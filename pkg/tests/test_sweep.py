"""Sweep harness rows, CSV determinism, and chart emission."""

import numpy as np
import pytest

from svdc.ppm import write_ppm
from svdc.svgplot import line_chart, write_sweep_charts
from svdc.sweep import SweepSpec, format_csv, run_sweep, write_csv

from conftest import random_rgb


@pytest.fixture
def image_file(rng, tmp_path):
    path = tmp_path / "sample.ppm"
    write_ppm(path, random_rgb(rng, 24, 24))
    return path


def small_spec(image_file, **kwargs):
    defaults = dict(
        images=(str(image_file),), k_values=(2, 4, 8), v_values=(1, 2)
    )
    defaults.update(kwargs)
    return SweepSpec(**defaults)


def test_row_grid_shape(image_file):
    rows = run_sweep(small_spec(image_file))
    assert len(rows) == 6  # 3 k values x 2 v values
    assert {(r.k, r.v) for r in rows} == {(k, v) for k in (2, 4, 8) for v in (1, 2)}
    assert all(r.scheme == "ycbcr" for r in rows)
    assert all(not r.failed for r in rows)


def test_rgb_baseline_emits_one_row_per_k(image_file):
    rows = run_sweep(small_spec(image_file, schemes=("ycbcr", "rgb-baseline")))
    baseline = [r for r in rows if r.scheme == "rgb-baseline"]
    assert [r.k for r in baseline] == [2, 4, 8]
    assert all(r.k_prime == r.k for r in baseline)


def test_psnr_monotone_within_v_group(image_file):
    rows = run_sweep(small_spec(image_file))
    for v in (1, 2):
        group = sorted((r.k, r.psnr_db) for r in rows if r.v == v)
        values = [p for _, p in group]
        assert all(b >= a - 1e-6 for a, b in zip(values, values[1:]))


def test_csv_deterministic_excluding_timing(image_file):
    spec = small_spec(image_file)
    first = format_csv(run_sweep(spec), include_timing=False)
    second = format_csv(run_sweep(spec), include_timing=False)
    assert first == second
    assert "encode_ms" not in first
    assert "encode_ms" in format_csv(run_sweep(spec))


def test_missing_image_becomes_error_row(tmp_path):
    spec = SweepSpec(images=(str(tmp_path / "missing.ppm"),), k_values=(2,))
    rows = run_sweep(spec)
    assert len(rows) == 1
    assert rows[0].failed


def test_threshold_noted_not_failed(image_file):
    rows = run_sweep(small_spec(image_file, k_values=(20,), v_values=(2,)))
    (row,) = rows
    assert row.note.startswith("warning:")
    assert not row.failed
    assert row.psnr_db != ""


def test_write_csv(image_file, tmp_path):
    rows = run_sweep(small_spec(image_file, k_values=(2,), v_values=(1,)))
    out = tmp_path / "rows.csv"
    write_csv(out, rows)
    text = out.read_text()
    assert text.splitlines()[0] == (
        "image,scheme,k,v,k_prime,ratio_g,psnr_db,eqm,energy_ratio,encode_ms,note"
    )
    assert text.endswith("\n")


def test_spec_validation():
    with pytest.raises(ValueError, match="schemes"):
        SweepSpec(images=("x.ppm",), schemes=("jpeg",))
    with pytest.raises(ValueError, match="trials"):
        SweepSpec(images=("x.ppm",), trials=0)


def test_line_chart_skips_nonfinite():
    svg = line_chart(
        [("v=1", [(1, 10.0), (2, float("inf")), (3, 12.0)])],
        "demo", "k", "PSNR",
    )
    assert svg.startswith("<svg")
    assert "inf" not in svg
    assert svg.count("<polyline") == 1


def test_write_sweep_charts(image_file, tmp_path):
    rows = run_sweep(small_spec(image_file))
    written = write_sweep_charts(rows, tmp_path / "charts")
    names = sorted(p.name for p in written)
    assert names == ["sample_energy.svg", "sample_psnr.svg", "sample_ratio.svg"]
    for path in written:
        assert path.read_text().startswith("<svg")
