"""Tests for the command line, the runner and the data generators."""

import json

import numpy as np
import pandas as pd
import pytest
import yaml
from click.testing import CliRunner

from dnls_lab.cli.main import cli, load_run_config
from dnls_lab.core import Side, make_grid
from dnls_lab.errors import InvalidParameterError
from dnls_lab.experiments import ALL_EXPERIMENTS, Experiment
from dnls_lab.experiments.base import ratio_check
from dnls_lab.models import DiagnosticsReport, RunConfig
from dnls_lab.models.run_config import BoundaryData, Domain, InitialData
from dnls_lab.orchestration import boundary_trace, initial_field
from dnls_lab.orchestration.runner import ExperimentRunner, git_blob_hash

ZERO_RUN = {
    "grid": {"L": 20.0, "N": 64, "dt": 0.01, "n_steps": 10},
    "equation": {"alpha": -1.0, "domain": "full"},
    "data": {"initial": {"generator": "zero"}},
    "checks": [{"name": "pde_residual", "tolerance": 1e-12}],
    "experiment": {"sample_times": 3},
}

GAUSSIAN_RUN = {
    "grid": {"L": 20.0, "N": 128, "dt": 0.001, "n_steps": 20},
    "equation": {"alpha": 0.0},
    "data": {"initial": {"generator": "gaussian", "amplitude": 0.2}},
    "experiment": {"sample_times": 2},
}


def _write(path, content):
    path.write_text(yaml.safe_dump(content))
    return str(path)


def test_simulate_zero_data(tmp_path):
    """Zero data gives an all-zero solution.csv and a complete manifest."""
    config = _write(tmp_path / "zero.yaml", ZERO_RUN)
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["simulate", config, "-o", str(out)])
    assert result.exit_code == 0, result.output

    frame = pd.read_csv(out / "solution.csv")
    assert list(frame.columns) == ["t", "x", "re_u", "im_u"]
    assert len(frame) == 3 * 64
    assert (frame["re_u"] == 0.0).all() and (frame["im_u"] == 0.0).all()

    manifest = json.loads((out / "manifest.json").read_text())
    for key in ("config", "versions", "timing_seconds", "output_hashes"):
        assert key in manifest
    assert manifest["exit_code"] == 0
    assert manifest["config"]["grid"]["N"] == 64
    content = (out / "solution.csv").read_bytes()
    assert manifest["output_hashes"]["solution.csv"] == git_blob_hash(content)


def test_missing_seed_is_invalid_config(tmp_path):
    run = dict(ZERO_RUN, data={"initial": {"generator": "threshold", "amplitude": 0.1}})
    config = _write(tmp_path / "noseed.yaml", run)
    result = CliRunner().invoke(cli, ["simulate", config, "-o", str(tmp_path / "out")])
    assert result.exit_code == 1
    lines = [line for line in result.output.splitlines() if line.strip()]
    assert len(lines) == 1
    assert "data.initial" in lines[0]
    assert "seed" in lines[0]


def test_missing_config_file(tmp_path):
    result = CliRunner().invoke(cli, ["simulate", str(tmp_path / "absent.yaml")])
    assert result.exit_code == 1
    assert "not found" in result.output


def test_reruns_are_byte_identical(tmp_path):
    config = _write(tmp_path / "gauss.yaml", GAUSSIAN_RUN)
    runner = CliRunner()
    hashes = []
    for name in ("first", "second"):
        out = tmp_path / name
        result = runner.invoke(cli, ["simulate", config, "-o", str(out)])
        assert result.exit_code == 0, result.output
        hashes.append(json.loads((out / "manifest.json").read_text())["output_hashes"])
    assert hashes[0] == hashes[1]
    first = (tmp_path / "first" / "solution.csv").read_bytes()
    assert first == (tmp_path / "second" / "solution.csv").read_bytes()
    assert b"\r\n" not in first


def test_failed_check_exits_three(tmp_path):
    run = dict(GAUSSIAN_RUN, checks=[{"name": "max_modulus", "tolerance": 1e-3}])
    config = _write(tmp_path / "tight.yaml", run)
    result = CliRunner().invoke(cli, ["simulate", config, "-o", str(tmp_path / "out")])
    assert result.exit_code == 3
    assert "check_failed name=max_modulus" in result.output


def test_window_violation_exits_one(tmp_path):
    run = dict(ZERO_RUN, experiment={"estimates": ["smooth"], "a": 0.6, "samples": 1})
    config = _write(tmp_path / "window.yaml", run)
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["estimate-ratio", config, "-o", str(out)])
    assert result.exit_code == 1
    assert "WindowViolation" in result.output
    assert json.loads((out / "manifest.json").read_text())["exit_code"] == 1


def test_json_config_is_accepted(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps(ZERO_RUN))
    config = load_run_config(str(path))
    assert config.grid.N == 64


def test_init_writes_loadable_template(tmp_path):
    target = tmp_path / "run.yaml"
    result = CliRunner().invoke(cli, ["init", "-o", str(target)])
    assert result.exit_code == 0
    config = load_run_config(str(target))
    assert config.grid.N == 256
    assert config.tolerance("pde_residual") is not None


def test_every_subcommand_is_registered():
    expected = {
        "simulate",
        "smoothing-scan",
        "conservation-check",
        "gauge-check",
        "kato-check",
        "picard-trace",
        "normalform-check",
        "estimate-ratio",
        "gamma-fixed-point",
    }
    assert expected <= set(cli.commands)
    assert set(ExperimentRunner.create_default().names) == expected


def test_runner_rejects_unknown_subcommand():
    config = RunConfig.model_validate(ZERO_RUN)
    with pytest.raises(InvalidParameterError):
        ExperimentRunner.create_default().run("plot", config)


def test_runner_honors_output_formats(tmp_path):
    config = RunConfig.model_validate(
        dict(ZERO_RUN, output={"directory": str(tmp_path), "formats": ["json"]})
    )
    outcome = ExperimentRunner.create_default().run("simulate", config)
    assert outcome.exit_code == 0
    assert outcome.directory == tmp_path
    assert not (tmp_path / "solution.csv").exists()
    assert (tmp_path / "report.json").exists()
    assert set(outcome.manifest["output_hashes"]) == {"report.json"}


class _SingularExperiment(Experiment):
    name = "singular"
    description = "Fails inside a linear solve"

    def run(self, config, report):
        raise np.linalg.LinAlgError("Singular matrix")


class _UnwritableExperiment(Experiment):
    name = "unwritable"
    description = "Returns a table whose path cannot be written"

    def run(self, config, report):
        return {"missing/table.csv": pd.DataFrame({"a": [1.0]})}


def test_unexpected_failure_still_writes_manifest(tmp_path):
    config = RunConfig.model_validate(dict(ZERO_RUN, output={"directory": str(tmp_path)}))
    outcome = ExperimentRunner({"singular": _SingularExperiment()}).run("singular", config)
    assert outcome.exit_code == 2
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["exit_code"] == 2
    assert "LinAlgError" in manifest["error"]
    assert (tmp_path / "report.json").exists()


def test_output_failure_still_writes_manifest(tmp_path):
    config = RunConfig.model_validate(dict(ZERO_RUN, output={"directory": str(tmp_path)}))
    outcome = ExperimentRunner({"unwritable": _UnwritableExperiment()}).run("unwritable", config)
    assert outcome.exit_code == 2
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["exit_code"] == 2
    assert manifest["output_hashes"] == {}


def test_ratio_check_records_both_bounds():
    config = RunConfig.model_validate(ZERO_RUN)
    report = DiagnosticsReport(subcommand="test")
    assert ratio_check(report, config, "refinement_ratio", 4.0, 1.0, 2.8, 5.2) == 4.0
    ratio_check(report, config, "stability", 3.0, 1.0, 0.5, 1.5)
    names = {o.name: o.passed for o in report.outcomes}
    assert names == {
        "refinement_ratio": True,
        "refinement_ratio_max": True,
        "stability": True,
        "stability_max": False,
    }


def _experiment(name):
    return next(exp() for exp in ALL_EXPERIMENTS if exp.name == name)


def test_coercivity_mode_writes_candidates():
    run = dict(ZERO_RUN, data={"initial": {"generator": "zero", "seed": 3}})
    run["experiment"] = {"mode": "coercivity", "samples": 6, "refine": True}
    result = _experiment("conservation-check").execute(RunConfig.model_validate(run))
    table = result.output.tables["coercivity.csv"]
    assert list(table.columns) == ["sample", "radius", "candidate"]
    assert len(table) == 6
    names = {o.name for o in result.output.report.outcomes}
    assert {"gn_constant", "gn_sample_stability", "gn_sample_stability_max"} <= names
    constant = next(o for o in result.output.report.outcomes if o.name == "gn_constant")
    assert constant.passed


def test_estimate_ratio_refine_adds_stability_checks():
    run = dict(ZERO_RUN, data={"initial": {"generator": "zero", "seed": 3}})
    run["experiment"] = {"estimates": ["smooth"], "samples": 1, "refine": True}
    run["grid"] = {"L": 16.0, "N": 32, "dt": 0.01, "n_steps": 50}
    result = _experiment("estimate-ratio").execute(RunConfig.model_validate(run))
    names = {o.name for o in result.output.report.outcomes}
    expected = {"max_ratio_smooth", "sample_stability_smooth", "grid_stability_smooth"}
    assert expected <= names
    assert "grid_stability_smooth_max" in names


def test_git_blob_hash_of_empty_content():
    assert git_blob_hash(b"") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"


def test_seeded_initial_data_is_reproducible():
    grid = make_grid(20.0, 64, 0.01, 10)
    initial = InitialData(generator="random_smooth", amplitude=0.5, seed=11)
    first = initial_field(initial, grid)
    second = initial_field(initial, grid)
    assert np.array_equal(first.values, second.values)


def test_halfline_random_data_vanishes_near_the_seam():
    grid = make_grid(20.0, 128, 0.01, 10)
    initial = InitialData(generator="threshold", amplitude=0.5, seed=2)
    g = initial_field(initial, grid, Domain.HALF)
    assert g.side is Side.HALF_LINE
    assert np.all(g.values[grid.x > 0.5 * grid.half_length + 2.0] == 0.0)


def test_boundary_generators():
    grid = make_grid(20.0, 64, 0.01, 10)
    g = initial_field(InitialData(generator="gaussian", amplitude=0.3), grid, Domain.HALF)

    trace = boundary_trace(BoundaryData(generator="gaussian_trace", amplitude=0.3), g, 5)
    t = 0.01 * np.arange(5)
    assert np.allclose(trace.values, 0.3 / np.sqrt(1.0 + 4j * t))

    matched = boundary_trace(BoundaryData(generator="matched_exponential", rate=2.0), g, 5)
    assert matched.values[0] == pytest.approx(0.3)

    free = boundary_trace(BoundaryData(generator="free_trace"), g, 5)
    assert free.values[0] == pytest.approx(g.at_origin)

    assert not np.any(boundary_trace(BoundaryData(), g, 5).values)
