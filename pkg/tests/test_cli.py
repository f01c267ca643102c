import json
import os

import numpy as np
import pytest
from click.testing import CliRunner

from algebra.signal import Grid2D, GridMask, sample_function
from cli import app
from formats.images import write_pbm
from formats.qsig import read_qsig, write_qsig
from models import GaussianSpec, RandomSpec


@pytest.fixture
def runner(tmp_path, monkeypatch):
    """CliRunner with an empty home directory and working directory"""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    for key in [k for k in os.environ if k.startswith("QQPFT_")]:
        monkeypatch.delenv(key)
    return CliRunner()


@pytest.fixture
def signal_file(tmp_path):
    grid = Grid2D.from_extent(16, 20.0)
    return write_qsig(sample_function(grid, RandomSpec(seed=2)), tmp_path / "f.qsig")


def test_transform_rejects_zero_b(runner, signal_file, tmp_path):
    result = runner.invoke(app, ["transform", "--in", str(signal_file), "--out", str(tmp_path / "g.qsig"), "--mu1", "0,0,0,0,0"])
    assert result.exit_code == 2
    assert "b must be nonzero" in result.output


def test_transform_then_inverse(runner, signal_file, tmp_path):
    mu = ["--mu1", "1,2,0,1,0", "--mu2", "0,-1,1,0,1"]
    spectrum, back = tmp_path / "F.qsig", tmp_path / "back.qsig"
    result = runner.invoke(app, ["transform", "--in", str(signal_file), "--out", str(spectrum), *mu])
    assert result.exit_code == 0, result.output
    result = runner.invoke(app, ["inverse", "--in", str(spectrum), "--out", str(back), "--form", "text", *mu])
    assert result.exit_code == 0, result.output
    np.testing.assert_allclose(read_qsig(back).samples, read_qsig(signal_file).samples, atol=1e-12)


def test_transform_direct_matches_fast(runner, signal_file, tmp_path):
    for method in ("fast", "direct"):
        out = tmp_path / f"{method}.qsig"
        result = runner.invoke(app, ["transform", "--in", str(signal_file), "--out", str(out), "--method", method])
        assert result.exit_code == 0, result.output
    np.testing.assert_allclose(
        read_qsig(tmp_path / "fast.qsig").samples, read_qsig(tmp_path / "direct.qsig").samples, atol=1e-10
    )


def test_sided_variant(runner, signal_file, tmp_path):
    result = runner.invoke(app, ["transform", "--in", str(signal_file), "--out", str(tmp_path / "r.qsig"), "--variant", "right"])
    assert result.exit_code == 0, result.output


def test_gaussian_command(runner, tmp_path):
    out = tmp_path / "oracle.qsig"
    result = runner.invoke(app, ["gaussian", "--k1", "0.5", "--k2", "0.5", "--n", "8", "--extent", "8", "--out", str(out)])
    assert result.exit_code == 0, result.output
    F = read_qsig(out)
    assert F.grid.shape == (8, 8)
    # w = 0 sits at index n/2
    np.testing.assert_allclose(F.samples[4, 4], [0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_gaussian_rejects_non_positive_rate(runner, tmp_path):
    result = runner.invoke(app, ["gaussian", "--k1", "0", "--out", str(tmp_path / "x.qsig")])
    assert result.exit_code == 2
    assert "Gaussian rates k must be positive" in result.output


def test_verify_parseval_writes_json(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["verify", "--suite", "parseval", "--n", "32", "--seed", "1", "--json", str(out)])
    assert result.exit_code == 0, result.output
    reports = json.loads(out.read_text())
    assert reports
    for report in reports:
        assert {"name", "max_abs_error", "tolerance", "pass", "grid", "parameters", "seed"} <= set(report)
        assert report["pass"] is True
    assert all(r["max_abs_error"] < 1e-10 for r in reports if r["name"] == "parseval-norm")


def test_verify_exits_1_on_failure(runner, monkeypatch):
    monkeypatch.setenv("QQPFT_TOL_FAST_VS_DIRECT", "0")
    result = runner.invoke(app, ["verify", "--suite", "fast-vs-direct", "--n", "16"])
    assert result.exit_code == 1


def test_verify_rejects_unknown_suite(runner):
    result = runner.invoke(app, ["verify", "--suite", "everything"])
    assert result.exit_code == 2


def test_uncertainty_with_masks(runner, tmp_path):
    grid = Grid2D.from_extent(128, 16.0)
    f = sample_function(grid, GaussianSpec())
    signal = write_qsig(f, tmp_path / "g.qsig")
    e1 = write_pbm(GridMask.disk(grid, 3.0), tmp_path / "e1.pbm")
    e2 = write_pbm(GridMask.disk(grid.frequency_grid(), 3.0), tmp_path / "e2.pbm")
    out = tmp_path / "up.json"
    result = runner.invoke(
        app,
        ["uncertainty", "--in", str(signal), "--e1", str(e1), "--e2", str(e2), "--log-constant", "paper", "--json", str(out)],
    )
    assert result.exit_code == 0, result.output
    names = [r["name"] for r in json.loads(out.read_text())]
    assert "donoho-stark" in names
    assert "log-paper" in names
    assert "log-corrected" not in names


def test_uncertainty_needs_both_masks(runner, signal_file, tmp_path):
    e1 = write_pbm(GridMask.full(Grid2D.from_extent(16, 20.0)), tmp_path / "e1.pbm")
    result = runner.invoke(app, ["uncertainty", "--in", str(signal_file), "--e1", str(e1)])
    assert result.exit_code == 2


def test_image_import_export(runner, tmp_path):
    ppm = tmp_path / "img.ppm"
    ppm.write_bytes(b"P6\n2 2\n255\n" + bytes([255, 0, 0, 0, 255, 0, 0, 0, 255, 128, 128, 128]))
    qsig, copy = tmp_path / "img.qsig", tmp_path / "copy.ppm"
    assert runner.invoke(app, ["image", "import", "--in", str(ppm), "--out", str(qsig)]).exit_code == 0
    np.testing.assert_array_equal(read_qsig(qsig).samples[0, 0], [0.0, 1.0, 0.0, 0.0])
    assert runner.invoke(app, ["image", "export", "--in", str(qsig), "--out", str(copy)]).exit_code == 0
    assert copy.read_bytes() == ppm.read_bytes()


def test_missing_input_file(runner, tmp_path):
    result = runner.invoke(app, ["transform", "--in", str(tmp_path / "nope.qsig"), "--out", str(tmp_path / "x")])
    assert result.exit_code == 2


def test_corrupt_input_file(runner, tmp_path):
    bad = tmp_path / "bad.qsig"
    bad.write_bytes(b"junk")
    result = runner.invoke(app, ["transform", "--in", str(bad), "--out", str(tmp_path / "x")])
    assert result.exit_code == 2
    assert "bad magic" in result.output


def test_config_save_and_show(runner, tmp_path):
    result = runner.invoke(app, ["config", "save", "--n", "32", "--seed", "5"])
    assert result.exit_code == 0, result.output
    saved = json.loads((tmp_path / ".qqpft" / "config.json").read_text())
    assert saved["n"] == 32
    assert saved["seed"] == 5
    result = runner.invoke(app, ["config", "show"])
    assert result.exit_code == 0
    assert "32" in result.output


def test_invalid_config_file_exits_2(runner, tmp_path):
    config = tmp_path / ".qqpft" / "config.json"
    config.parent.mkdir()
    config.write_text(json.dumps({"n": "many"}))
    result = runner.invoke(app, ["config", "show"])
    assert result.exit_code == 2


def test_image_import_odd_sides(runner, tmp_path):
    ppm = tmp_path / "odd.ppm"
    ppm.write_bytes(b"P6\n3 2\n255\n" + bytes(18))
    qsig = tmp_path / "odd.qsig"
    result = runner.invoke(app, ["image", "import", "--in", str(ppm), "--out", str(qsig)])
    assert result.exit_code == 2
    assert "even" in result.output
    result = runner.invoke(app, ["image", "import", "--in", str(ppm), "--out", str(qsig), "--pad"])
    assert result.exit_code == 0, result.output
    assert read_qsig(qsig).grid.shape == (2, 4)


def test_uncertainty_on_non_gaussian_signal(runner, tmp_path):
    signal = write_qsig(sample_function(Grid2D.from_extent(64, 20.0), RandomSpec(seed=1)), tmp_path / "r.qsig")
    out = tmp_path / "up.json"
    result = runner.invoke(app, ["uncertainty", "--in", str(signal), "--json", str(out)])
    assert result.exit_code == 0, result.output
    hardy = next(r for r in json.loads(out.read_text()) if r["name"] == "hardy")
    assert hardy["kind"] == "diagnostic"


def test_verify_all_suites(runner):
    result = runner.invoke(app, ["verify", "--suite", "all", "--n", "16"])
    assert result.exit_code == 0, result.output
