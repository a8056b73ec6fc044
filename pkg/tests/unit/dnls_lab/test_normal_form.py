"""Tests for the resonant sums and the normal form identity."""

import numpy as np
import pytest

from dnls_lab.core import Field, SolutionHistory, make_grid
from dnls_lab.core.spectral import forward_values
from dnls_lab.core.sampling import gaussian, random_smooth_field
from dnls_lab.errors import BandlimitViolation
from dnls_lab.evolution import EquationForm, solve_fullline
from dnls_lab.evolution.equation import DealiasedProducts
from dnls_lab.normal_form import (
    bandlimit,
    compute_B,
    compute_R,
    normal_form_residual,
    resonance_factor,
    resonance_factorization_error,
    trilinear_partition_error,
)
from dnls_lab.normal_form.resonant_sums import bandlimit_index, nonresonant_numerator


def _grid(n_steps: int = 1):
    return make_grid(10.0, 64, 1e-3, n_steps)


def _smooth(grid, seed: int = 0, radius: float = 0.2) -> Field:
    rng = np.random.default_rng(seed)
    return random_smooth_field(
        grid, rng, radius=radius, width=2.0, max_index=bandlimit_index(grid)
    )


def test_resonance_factorization():
    grid = make_grid(20.0, 256, 1e-3, 1)
    error = resonance_factorization_error(grid, np.random.default_rng(0), n_samples=10_000)
    assert error <= 1e-9


def test_resonance_factor_vanishes_on_resonant_set():
    assert resonance_factor(1.0, 1.0, 3.0) == 0.0
    assert resonance_factor(2.0, 0.0, 1.0) == pytest.approx(4.0)


def test_bandlimit_index():
    assert bandlimit_index(_grid()) == 10


def test_single_mode_has_no_nonresonant_part():
    grid = _grid()
    u = Field(grid, np.exp(1j * grid.dxi * 3 * grid.x))
    assert np.max(np.abs(compute_B(u).values)) <= 1e-12


def test_wideband_data_is_rejected():
    grid = _grid()
    with pytest.raises(BandlimitViolation):
        compute_B(gaussian(grid, width=0.3))


def test_bandlimit_removes_high_modes():
    grid = _grid()
    u = bandlimit(gaussian(grid, width=0.3))
    compute_R(u)


def test_partition_reproduces_trilinear_term():
    u = _smooth(_grid())
    assert trilinear_partition_error(u) <= 1e-10


def test_sums_do_not_depend_on_workers():
    u = _smooth(_grid(), seed=3)
    serial = compute_B(u, workers=1)
    threaded = compute_B(u, workers=4)
    assert np.array_equal(serial.values, threaded.values)


def test_residual_of_zero_history_is_zero():
    grid = _grid(4)
    assert normal_form_residual(SolutionHistory.zeros(grid)) == 0.0


def test_normal_form_identity_holds_along_the_flow():
    grid = _grid(6)
    g = _smooth(grid, seed=1)
    hist = solve_fullline(g, grid.final_time, grid.dt, EquationForm(-1.0))
    assert normal_form_residual(hist, n_samples=2) < 1e-3


def test_flow_form_matches_resonant_plus_quintic():
    """Dealiased flow minus the non-resonant numerator is R + |u|^4 u / 2 on |k| <= N/3."""
    grid = _grid()
    u = _smooth(grid, seed=4)
    flow = forward_values(grid, EquationForm(-1.0).nonlinearity(grid, u.values))
    lhs = flow - forward_values(grid, nonresonant_numerator(u).values)
    quintic = DealiasedProducts(grid, u.values).quintic()
    rhs = forward_values(grid, compute_R(u).values + 0.5 * quintic)
    band = np.abs(grid.k) <= grid.n_points // 3
    assert np.linalg.norm(lhs[band] - rhs[band]) <= 1e-10 * np.linalg.norm(rhs[band])
