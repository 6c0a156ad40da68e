"""Tests for CLI commands."""

import json
import sys
from unittest.mock import patch

import numpy as np
import pytest
from click.testing import CliRunner

from levelspacing import __version__
from levelspacing.cli.main import exit_code, main
from levelspacing.cli.reproduce import PRINTED_LAMBDA, REFERENCE_FITS
from levelspacing.errors import (
    AcceptanceFailureError,
    CacheCorruptionError,
    FitFailureError,
    InvalidArgumentError,
    NumericalFailureError,
)
from levelspacing.exact import rho_to_lambda_big, tabulate_lsd
from levelspacing.surmise import crossover_surmise
from levelspacing.utils import read_csv

# the package re-exports the click group as levelspacing.cli.main, shadowing the module
cli_module = sys.modules["levelspacing.cli.main"]


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, cache_dir):
    """Run the CLI against the temporary cache with one thread."""

    def run(*args):
        return runner.invoke(main, ["--threads", "1", "--cache-dir", str(cache_dir), *map(str, args)])

    return run


def payload(output):
    """The JSON document printed by a command."""
    return json.loads(output[output.index("{") :])


def test_cli_help(runner):
    """Test that --help lists every command."""
    result = runner.invoke(main, ["--help"])

    assert result.exit_code == 0
    assert "levelspacing" in result.output
    for command in ("quad", "kernel", "gap", "lsd", "converge", "surmise", "simulate", "fit", "ratio",
                    "reproduce", "cache"):
        assert command in result.output


def test_cli_version(runner):
    result = runner.invoke(main, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.output


@pytest.mark.parametrize(
    "error, code",
    [
        (InvalidArgumentError("x"), 2),
        (NumericalFailureError("x"), 3),
        (FitFailureError("x"), 3),
        (CacheCorruptionError("x", ["k"]), 3),
        (AcceptanceFailureError("x", []), 4),
        (RuntimeError("x"), 1),
    ],
)
def test_exit_codes(error, code):
    assert exit_code(error) == code


def test_quad_dump(invoke):
    result = invoke("quad", "dump", "--m", "2")

    lines = result.output.splitlines()
    assert result.exit_code == 0
    assert lines[0] == "index,node,weight"
    assert float(lines[1].split(",")[2]) == pytest.approx(0.5)


def test_quad_dump_interval(invoke, tmp_path):
    out = tmp_path / "rule.csv"
    result = invoke("quad", "dump", "--m", "5", "--interval", "-1,3", "--out", out)

    assert result.exit_code == 0
    metadata, columns, data = read_csv(out)
    assert columns == ["index", "node", "weight"]
    assert metadata["interval"] == [-1.0, 3.0]
    assert data[:, 2].sum() == pytest.approx(4.0)


def test_quad_dump_invalid_order(invoke):
    result = invoke("quad", "dump", "--m", "0")

    assert result.exit_code == 2
    assert "Error" in result.output


def test_kernel_eval(invoke):
    result = invoke("kernel", "eval", "--kind", "sine", "--x", "0.5", "--y", "0")

    assert result.exit_code == 0
    assert payload(result.output)["value"] == pytest.approx(2 / np.pi)


def test_kernel_eval_dynamical_block(invoke):
    result = invoke("kernel", "eval", "--kind", "dyn", "--rho", "0.3", "--x", "0.2", "--y", "0.2")

    assert result.exit_code == 0
    np.testing.assert_allclose(payload(result.output)["value"], np.eye(2), atol=1e-14)


def test_gap_command(invoke, tmp_path, cache_dir):
    """CSV s,E plus a sidecar naming the cache key."""
    out = tmp_path / "gap.csv"
    result = invoke("gap", "--kernel", "sine", "--m", "30", "--smax", "1", "--out", out)

    assert result.exit_code == 0, result.output
    _, columns, data = read_csv(out)
    assert columns == ["s", "E"]
    assert data[0, 1] == 1.0
    sidecar = json.loads(out.with_suffix(".json").read_text())
    assert sidecar["convention"] == "det"
    assert sidecar["manifest"]["config"]["m"] == 30
    assert len(list(cache_dir.glob("*.npz"))) == 1
    assert sidecar["cache_keys"] == [p.stem for p in cache_dir.glob("*.npz")]


def test_gap_dynamical_needs_parameter(invoke, tmp_path):
    result = invoke("gap", "--kernel", "dyn", "--out", tmp_path / "g.csv")

    assert result.exit_code == 2
    assert "--rho" in result.output


def test_gap_rejects_rho_above_cap(invoke, tmp_path):
    result = invoke("gap", "--kernel", "dyn", "--rho", "50", "--out", tmp_path / "g.csv")

    assert result.exit_code == 2


def test_gap_at_large_rho(invoke, tmp_path):
    """rho up to the cap evaluates instead of overflowing."""
    out = tmp_path / "g.csv"
    result = invoke("gap", "--kernel", "dyn", "--rho", "10", "--m", "20", "--smax", "1", "--out", out)

    assert result.exit_code == 0, result.output
    _, _, data = read_csv(out)
    assert np.all(np.isfinite(data[:, 1]))


def test_gap_numerical_failure(invoke, tmp_path):
    with patch.object(cli_module, "gap_curve", side_effect=NumericalFailureError("boom", {"s": 1.0})):
        result = invoke("gap", "--kernel", "sine", "--out", tmp_path / "g.csv")

    assert result.exit_code == 3
    assert "boom" in result.output


def test_unknown_choice_is_usage_error(invoke, tmp_path):
    result = invoke("gap", "--kernel", "airy", "--out", tmp_path / "g.csv")

    assert result.exit_code == 2


def test_lsd_pure_class(invoke, tmp_path):
    out = tmp_path / "gue.csv"
    result = invoke("lsd", "--class", "gue", "--m", "60", "--out", out)

    assert result.exit_code == 0, result.output
    _, columns, data = read_csv(out)
    assert columns == ["s", "P"]
    assert np.all(data[:, 1] >= 0)
    sidecar = json.loads(out.with_suffix(".json").read_text())
    assert sidecar["normalization"]["ok"]
    assert sidecar["mass"] == pytest.approx(1.0, abs=1e-4)


def test_lsd_needs_one_source(invoke, tmp_path):
    result = invoke("lsd", "--class", "goe", "--kernel", "sine", "--out", tmp_path / "p.csv")

    assert result.exit_code == 2


def test_converge_command(invoke, tmp_path):
    out = tmp_path / "conv.csv"
    result = invoke("converge", "--kernel", "sine", "--s", "1,2", "--m", "10,20,40", "--out", out)

    assert result.exit_code == 0, result.output
    _, columns, data = read_csv(out)
    assert columns == ["s", "m_low", "m_high", "rel_shift"]
    assert data.shape == (4, 4)


def test_surmise_curve(invoke, tmp_path):
    out = tmp_path / "ws.csv"
    result = invoke("surmise", "--lambda", "0.3", "--out", out)

    assert result.exit_code == 0, result.output
    metadata, _, data = read_csv(out)
    assert metadata == {"beta": None, "lambda": 0.3}
    np.testing.assert_allclose(data[:, 1], crossover_surmise(data[:, 0], 0.3))


def test_surmise_needs_one_parameter(invoke, tmp_path):
    result = invoke("surmise", "--beta", "1", "--lambda", "0.3", "--out", tmp_path / "ws.csv")

    assert result.exit_code == 2


def test_surmise_mc_and_fit(invoke, tmp_path):
    """2x2 spacings written by `surmise mc` fit back near their lambda."""
    spacings = tmp_path / "mc.csv"
    result = invoke("surmise", "mc", "--lambda", "0.5", "--n", "300000", "--seed", "3", "--out", spacings)
    assert result.exit_code == 0, result.output
    assert "KS distance" in result.output

    result = invoke("fit", "--sample", spacings)
    assert result.exit_code == 0, result.output
    fit = payload(result.output)
    assert fit["lambda_star"] == pytest.approx(0.5, abs=0.05)
    assert fit["target"]["type"] == "step_density"


def test_fit_needs_one_target(invoke):
    result = invoke("fit")

    assert result.exit_code == 2


def test_ratio_command(invoke, tmp_path):
    """Ratio of a surmise file with itself is one."""
    curve = tmp_path / "ws.csv"
    assert invoke("surmise", "--beta", "2", "--smax", "3", "--out", curve).exit_code == 0

    out = tmp_path / "ratio.csv"
    result = invoke("ratio", "--num", curve, "--den", curve, "--out", out)

    assert result.exit_code == 0, result.output
    _, columns, data = read_csv(out)
    assert columns == ["s", "ratio"]
    assert data[0, 0] == pytest.approx(0.05)
    np.testing.assert_allclose(data[:, 1], 1.0)


def test_simulate_command(invoke, tmp_path):
    out = tmp_path / "run"
    result = invoke("simulate", "--alpha", "0.01", "--N", "40", "--samples", "12", "--seed", "1", "--out", out)

    assert result.exit_code == 0, result.output
    report = json.loads((out / "report.json").read_text())
    assert report["lambda_big_measured"] > 0
    assert report["n_kept"] == 12 * 19
    assert report["config"]["n"] == 40
    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest["outputs"]) == {"spacings.csv", "report.json"}
    assert manifest["seed"] == 1


def test_simulate_rejects_both_alpha_and_target(invoke, tmp_path):
    result = invoke("simulate", "--alpha", "0.01", "--target-Lambda", "0.2", "--out", tmp_path / "run")

    assert result.exit_code == 2


def test_config_file(runner, cache_dir, tmp_path):
    """Section values apply to their command; explicit flags win."""
    config = tmp_path / "levelspacing.cfg"
    config.write_text("threads = 1\n[gap]\nm = 20\nsmax = 0.5\n")
    out = tmp_path / "gap.csv"

    result = runner.invoke(main, ["--config", str(config), "--cache-dir", str(cache_dir), "gap", "--kernel", "sine",
                                  "--smax", "0.2", "--out", str(out)])

    assert result.exit_code == 0, result.output
    sidecar = json.loads(out.with_suffix(".json").read_text())
    assert sidecar["m"] == 20
    assert sidecar["grid"]["stop"] == pytest.approx(0.2)
    assert sidecar["manifest"]["config"]["threads"] == 1


def test_cache_commands(invoke, tmp_path):
    invoke("gap", "--kernel", "sine", "--m", "20", "--smax", "0.5", "--out", tmp_path / "g.csv")

    listed = invoke("cache", "list")
    assert listed.exit_code == 0
    assert "sine" in listed.output

    verified = invoke("cache", "verify", "--fraction", "0.1")
    assert verified.exit_code == 0, verified.output
    assert "1 curves verified" in verified.output

    cleared = invoke("cache", "clear", "--yes")
    assert cleared.exit_code == 0
    assert "Removed 1" in cleared.output
    assert "No cached curves" in invoke("cache", "list").output


def test_cache_verify_reports_corruption(invoke):
    with patch("levelspacing.exact.cache.GapCache.verify", side_effect=CacheCorruptionError("bad", ["abc"])):
        result = invoke("cache", "verify")

    assert result.exit_code == 3


def _tabulated_crossover(lambdas):
    """Stand-in for the exact crossover LSD: the surmise at a chosen lambda per Lambda."""

    def fake(rho, grid, *args, **kwargs):
        lambda_big = min(lambdas, key=lambda key: abs(key - rho_to_lambda_big(rho)))
        return tabulate_lsd(lambda s: crossover_surmise(s, lambdas[lambda_big]), grid)

    return fake


def test_reproduce_lambda_table(invoke, tmp_path):
    out = tmp_path / "table"
    with patch("levelspacing.cli.reproduce.crossover_lsd", side_effect=_tabulated_crossover(REFERENCE_FITS)):
        result = invoke("reproduce", "lambda-table", "--out", out)

    assert result.exit_code == 0, result.output
    _, columns, data = read_csv(out / "lambda_table.csv")
    assert columns[:3] == ["Lambda", "rho", "lambda_star"]
    np.testing.assert_allclose(data[:, 2], list(REFERENCE_FITS.values()), atol=1e-3)
    assert columns[-1] == "Lambda_printed"
    np.testing.assert_array_equal(data[:, -1], [PRINTED_LAMBDA[key] for key in REFERENCE_FITS])
    checks = json.loads((out / "checks.json").read_text())["checks"]
    assert all(check["passed"] for check in checks)
    manifest = json.loads((out / "manifest.json").read_text())
    assert "lambda_table.csv" in manifest["outputs"]


def test_reproduce_reports_failed_checks(invoke, tmp_path):
    """Out-of-tolerance fits exit with 4 after writing every file."""
    wrong = {key: key for key in REFERENCE_FITS}
    out = tmp_path / "table"
    with patch("levelspacing.cli.reproduce.crossover_lsd", side_effect=_tabulated_crossover(wrong)):
        result = invoke("reproduce", "lambda-table", "--out", out)

    assert result.exit_code == 4
    assert "FAIL" in result.output
    checks = json.loads((out / "checks.json").read_text())["checks"]
    assert not all(check["passed"] for check in checks)
    assert (out / "lambda_table.csv").exists()


def test_reproduce_unknown_target(invoke, tmp_path):
    result = invoke("reproduce", "fig9", "--out", tmp_path)

    assert result.exit_code == 2
