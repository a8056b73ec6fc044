"""Tests for the run configuration and result models."""

import pytest
from pydantic import ValidationError

from dnls_lab.models import RunConfig
from dnls_lab.models.results import CheckOutcome, DiagnosticsReport, PicardTrace
from dnls_lab.models.run_config import Domain, InitialGenerator


def _config(**overrides):
    data = {"grid": {"L": 20.0, "N": 64, "dt": 0.01, "n_steps": 10}}
    data.update(overrides)
    return RunConfig.model_validate(data)


def test_minimal_config_uses_defaults():
    config = _config()
    assert config.equation.alpha == -1.0
    assert config.equation.domain is Domain.FULL
    assert config.data.initial.generator is InitialGenerator.ZERO
    assert config.solver.eta_support == 1.0
    assert config.output.formats == ["csv", "json"]
    assert config.output.directory is None
    assert config.grid.final_time == pytest.approx(0.1)


def test_random_generators_need_a_seed():
    with pytest.raises(ValidationError) as info:
        _config(data={"initial": {"generator": "threshold", "amplitude": 0.1}})
    error = info.value.errors()[0]
    assert error["loc"] == ("data", "initial")
    assert "seed" in error["msg"]

    config = _config(data={"initial": {"generator": "random_smooth", "seed": 7}})
    assert config.data.initial.seed == 7


def test_grid_size_must_be_power_of_two():
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"grid": {"L": 20.0, "N": 100, "dt": 0.01, "n_steps": 10}})


def test_unknown_keys_are_rejected():
    with pytest.raises(ValidationError):
        _config(plot={"style": "dark"})


def test_check_tolerance_must_be_positive():
    with pytest.raises(ValidationError):
        _config(checks=[{"name": "pde_residual", "tolerance": 0.0}])
    with pytest.raises(ValidationError):
        _config(checks=[{"name": "pde_residual", "tolerance": 1.0, "kind": "equal"}])


def test_declared_tolerance_lookup():
    config = _config(checks=[{"name": "pde_residual", "tolerance": 1e-3}])
    assert config.tolerance("pde_residual").tolerance == 1e-3
    assert config.tolerance("max_modulus") is None


def test_unknown_estimate_and_mode_are_rejected():
    with pytest.raises(ValidationError):
        _config(experiment={"estimates": ["smooth", "smooth7"]})
    with pytest.raises(ValidationError):
        _config(experiment={"mode": "quarter"})


def test_echo_is_json_ready():
    echo = _config(equation={"domain": "half"}).echo()
    assert echo["equation"]["domain"] == "half"
    assert echo["grid"]["N"] == 64


def test_check_outcome_directions():
    assert CheckOutcome.evaluate("x", 1.0, 2.0).passed
    assert not CheckOutcome.evaluate("x", 3.0, 2.0).passed
    assert CheckOutcome.evaluate("x", 3.0, 2.0, kind="min").passed
    info = CheckOutcome.evaluate("x", 3.0, None)
    assert info.informational and info.passed


def test_report_collects_failures():
    report = DiagnosticsReport(subcommand="simulate")
    report.add(CheckOutcome.evaluate("a", 1.0, 2.0))
    report.add(CheckOutcome.evaluate("b", 5.0, 2.0))
    assert not report.passed
    assert [o.name for o in report.get_failed()] == ["b"]
    assert report.value("a") == 1.0
    assert report.value("c") is None


def test_picard_trace_properties():
    trace = PicardTrace(T_used=0.1, iterate_distances=[1e-2, 1e-4, 1e-6])
    trace.contraction_factors = [1e-2, 1e-2]
    assert trace.iterations == 3
    assert trace.final_distance == 1e-6
    assert trace.geometric_after(0, 0.5)
