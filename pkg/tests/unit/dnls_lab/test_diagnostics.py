"""Tests for energies, identities, smoothing fits, X^{s,b} norms and probes."""

import numpy as np
import pytest

from dnls_lab.core import Side, SolutionHistory, TimeTrace, make_grid
from dnls_lab.core.sampling import gaussian, random_smooth_field
from dnls_lab.core.spectral import cutoff_eta, sobolev_norm
from dnls_lab.diagnostics import (
    EnergyVariant,
    EstimateId,
    boundary_It,
    check_estimate_window,
    conservation_series,
    duhamel_trace_probe,
    energy_functional,
    energy_identity_residual,
    gauge_halfline_history,
    gauge_lipschitz_sweep,
    global_bound_run,
    gn_candidate,
    gn_coercivity_probe,
    identity_series,
    mass_identity_residual,
    multilinear_ratio_probe,
    smoothing_fit,
    xsb_norm,
)
from dnls_lab.diagnostics.energy import CONSERVATION_COLUMNS
from dnls_lab.errors import InsufficientRangeError, InvalidParameterError, WindowViolation
from dnls_lab.evolution import EquationForm, HalflineProblem, solve_fullline, solve_halfline_gauged
from dnls_lab.linear.propagators import free_evolution, trace_times


def _grid(N: int = 256, L: float = 20.0, dt: float = 1e-2, n_steps: int = 10):
    return make_grid(L, N, dt, n_steps)


def test_energy_of_zero_is_zero():
    g = gaussian(_grid(), amplitude=0.0)
    assert energy_functional(g) == 0.0
    assert energy_functional(g, EnergyVariant.E_DNLS) == 0.0


def test_energy_of_real_gaussian():
    """Real data has no mixed term: E_half is ||u_x||^2 = sqrt(pi/2)."""
    g = gaussian(_grid())
    kinetic = np.sqrt(np.pi / 2.0)
    assert energy_functional(g) == pytest.approx(kinetic, rel=1e-10)
    sextic = 0.5 * np.sqrt(np.pi / 6.0)
    assert energy_functional(g, "E_dnls") == pytest.approx(kinetic + sextic, rel=1e-10)


def test_energy_over_half_line_of_even_data():
    g = gaussian(_grid())
    full = energy_functional(g)
    half = energy_functional(g, half_line=True)
    assert half == pytest.approx(0.5 * full, rel=1e-3)


def test_coercivity_probe_vanishes_for_real_data():
    grid = _grid()
    samples = [gaussian(grid, amplitude=a) for a in (0.1, 0.5, 1.0)]
    assert gn_coercivity_probe(samples) == pytest.approx(0.0, abs=1e-12)


def test_coercivity_candidates():
    grid = _grid()
    assert gn_candidate(gaussian(grid, amplitude=0.0)) is None
    assert gn_candidate(gaussian(grid, amplitude=0.5)) == pytest.approx(0.0, abs=1e-12)
    rng = np.random.default_rng(3)
    samples = [random_smooth_field(grid, rng, radius=0.5) for _ in range(20)]
    candidates = [gn_candidate(u) for u in samples]
    assert all(c is not None and abs(c) <= 1.0 / np.pi for c in candidates)
    assert gn_coercivity_probe(samples) == pytest.approx(max(0.0, *candidates))


def test_conservation_series_columns():
    grid = _grid(N=256, dt=1e-3, n_steps=20)
    hist = solve_fullline(gaussian(grid, amplitude=0.3), 0.02, 1e-3, EquationForm(-1.0))
    series = conservation_series(hist)
    assert list(series.columns) == CONSERVATION_COLUMNS
    assert len(series) == 21
    assert series["mass_drift_rel"].iloc[0] == 0.0
    assert float(series["energy_drift_rel"].max()) < 1e-5


def test_smoothing_fit_needs_dyadic_range():
    grid = _grid()
    g = gaussian(grid, amplitude=0.5)
    linear = SolutionHistory(grid, free_evolution(g, grid.times))
    with pytest.raises(InsufficientRangeError):
        smoothing_fit(linear, linear, s=1.0)


def test_identities_of_zero_history():
    hist = SolutionHistory.zeros(_grid(), Side.HALF_LINE)
    assert mass_identity_residual(hist) == 0.0
    assert boundary_It(hist) == (0.0, 0.0)


def test_mass_identity_along_halfline_solution():
    grid = _grid()
    g = gaussian(grid, amplitude=0.05, side=Side.HALF_LINE)
    t = trace_times(grid.dt, 1.0)
    h = TimeTrace(grid.dt, 0.05 / np.sqrt(1.0 + 4j * t))
    u, _ = solve_halfline_gauged(g, h, 0.1)
    half = gauge_halfline_history(u, 0.5)
    assert half.n_frames == 11
    assert half.metadata["alpha"] == pytest.approx(-0.5)
    assert mass_identity_residual(half) < 2e-4


def test_energy_and_momentum_identities_along_halfline_solution():
    grid = _grid()
    g = gaussian(grid, amplitude=0.05, side=Side.HALF_LINE)
    t = trace_times(grid.dt, 1.0)
    h = TimeTrace(grid.dt, 0.05 / np.sqrt(1.0 + 4j * t))
    u, _ = solve_halfline_gauged(g, h, 0.1)
    series = identity_series(gauge_halfline_history(u, 0.5))
    assert float(np.max(series.energy_residual)) <= 1e-2
    assert float(np.max(series.It_residual)) <= 1e-2
    assert series.I_t[0] == 0.0
    assert np.all(np.diff(series.I_t) >= 0.0)
    assert energy_identity_residual(gauge_halfline_history(u, 0.5)) <= 1e-2


def test_xsb_of_zero_is_zero():
    grid = _grid(N=64, n_steps=20)
    assert xsb_norm(SolutionHistory.zeros(grid), 1.0, 0.4, 0.1) == 0.0


def test_xsb_without_modulation_weight_is_windowed_l2():
    grid = _grid(N=64, n_steps=20)
    g = gaussian(grid, amplitude=0.5)
    hist = SolutionHistory(grid, np.tile(g.values, (21, 1)))
    window = 0.1
    weights = cutoff_eta(grid.times / window)
    expected = sobolev_norm(g, 1.0) * np.sqrt(grid.dt * np.sum(weights**2))
    assert xsb_norm(hist, 1.0, 0.0, window) == pytest.approx(expected, rel=1e-10)


def test_xsb_needs_window_coverage():
    grid = _grid(N=64, n_steps=5)
    with pytest.raises(InvalidParameterError):
        xsb_norm(SolutionHistory.zeros(grid), 1.0, 0.4, 0.1)


def test_estimate_windows():
    with pytest.raises(WindowViolation):
        check_estimate_window(EstimateId.QUINTIC, 1.0, 0.6, 0.45)
    with pytest.raises(WindowViolation):
        check_estimate_window(EstimateId.CUBIC_DERIVATIVE, 1.0, 0.4, 0.45)
    with pytest.raises(WindowViolation):
        check_estimate_window(EstimateId.W_BOUND, 0.4, 0.0, 0.45)
    check_estimate_window(EstimateId.NORMAL_FORM, 1.0, 0.4, 0.45)


def test_ratio_probe_rejects_window_before_sampling():
    grid = _grid(N=64)
    with pytest.raises(WindowViolation):
        multilinear_ratio_probe("smooth", 3, 1.0, 0.6, 0.45, grid, np.random.default_rng(0))


def test_ratio_probe_is_seeded():
    grid = _grid(N=64, dt=1e-2)
    first = multilinear_ratio_probe("smooth", 2, 1.0, 0.4, 0.45, grid, np.random.default_rng(5))
    second = multilinear_ratio_probe("smooth", 2, 1.0, 0.4, 0.45, grid, np.random.default_rng(5))
    assert first.ratios == second.ratios
    assert list(first.ratios) == ["smooth"]
    assert len(first.rows) == 2
    assert all(np.isfinite(r) and r > 0 for r in first.ratios["smooth"])
    assert first.max_ratio == max(first.ratios["smooth"])


def test_normal_form_ratios_report_every_term():
    grid = _grid(N=64, dt=1e-2)
    probe = multilinear_ratio_probe("smooth5", 1, 1.0, 0.4, 0.45, grid, np.random.default_rng(2))
    terms = ["smooth5", "smooth5_R", "smooth5_quintic", "smooth5_NR"]
    assert list(probe.ratios) == terms
    assert [row["estimate_id"] for row in probe.rows] == terms
    assert all(np.isfinite(value) and value > 0 for value in probe.max_ratios.values())
    assert probe.max_ratio == max(probe.max_ratios.values())


def test_lipschitz_sweep_columns():
    grid = _grid(N=128)
    frame = gauge_lipschitz_sweep(grid, np.random.default_rng(0), [0.5, 1.0], -1.0, pairs=3)
    assert list(frame.columns) == ["radius", "alpha", "max_ratio", "guarded"]
    assert list(frame["radius"]) == [0.5, 1.0]
    assert (frame["max_ratio"] > 0).all()


def test_duhamel_trace_probe_of_zero_is_zero():
    grid = _grid(N=64)
    g = gaussian(grid, amplitude=0.0, side=Side.HALF_LINE)
    problem = HalflineProblem(g, TimeTrace.zeros(grid.dt, 201), 0.1)
    zero = SolutionHistory.zeros(problem.grid, Side.HALF_LINE)
    assert duhamel_trace_probe(problem, zero, 1.0) == 0.0


def test_global_run_of_zero_data():
    grid = _grid(N=64)
    g = gaussian(grid, amplitude=0.0, side=Side.HALF_LINE)
    run = global_bound_run(g, TimeTrace.zeros(grid.dt, 241), 0.4, 0.2, sample_every=5)
    assert run.restarts == 2
    assert run.growth == 0.0
    assert run.times == pytest.approx([0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4])
    assert list(run.to_frame().columns) == ["t", "h1_norm"]
