"""Tests for grids, transforms, norms, cutoffs and the gauge family."""

import numpy as np
import pytest

from dnls_lab.core import (
    Field,
    Side,
    SobolevParams,
    SolutionHistory,
    TimeTrace,
    apply_gauge,
    cutoff_eta,
    cutoff_rho,
    extend,
    forward_transform,
    gauge_compose_check,
    gauge_lipschitz_probe,
    halfline_sobolev_norm,
    halfline_time_fourier,
    inverse_transform,
    make_grid,
    restrict,
    sobolev_norm,
)
from dnls_lab.core.sampling import gaussian, random_smooth_field, threshold_field
from dnls_lab.core.spectral import (
    integrate_uniform,
    japanese,
    refine_field,
    sobolev_norms,
)
from dnls_lab.errors import GridMismatchError, InvalidParameterError, TruncationWarning


def _grid(N: int = 256, L: float = 20.0):
    return make_grid(L, N, 1e-3, 10)


def test_grid_rejects_bad_sizes():
    """N must be a power of two and L positive."""
    with pytest.raises(InvalidParameterError):
        make_grid(10.0, 100, 0.01, 1)
    with pytest.raises(InvalidParameterError):
        make_grid(-1.0, 64, 0.01, 1)


def test_origin_index_is_x_zero():
    grid = _grid()
    assert grid.x[grid.origin_index] == 0.0
    assert grid.xi[1] == pytest.approx(np.pi / 20.0)


def test_field_shape_is_checked():
    grid = _grid()
    with pytest.raises(GridMismatchError):
        Field(grid, np.zeros(grid.n_points + 1))


def test_transform_of_gaussian_matches_closed_form():
    """exp(-x^2) transforms to sqrt(pi) exp(-xi^2 / 4)."""
    grid = _grid()
    spectrum = forward_transform(gaussian(grid))
    expected = np.sqrt(np.pi) * np.exp(-(grid.xi**2) / 4.0)
    assert np.max(np.abs(spectrum.values - expected)) < 1e-10


def test_inverse_transform_recovers_field():
    grid = _grid()
    f = gaussian(grid, amplitude=0.7, center=1.0, wavenumber=2.0)
    back = inverse_transform(forward_transform(f))
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_sobolev_norms_of_gaussian():
    """||e^{-x^2}||^2 = sqrt(pi/2) and ||(e^{-x^2})'||^2 = sqrt(pi/2)."""
    grid = _grid()
    g = gaussian(grid)
    assert sobolev_norm(g, 0.0) ** 2 == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)
    assert sobolev_norm(g, 1.0) ** 2 == pytest.approx(2.0 * np.sqrt(np.pi / 2.0), rel=1e-10)


def test_sobolev_norm_is_monotone_in_s():
    grid = _grid()
    f = random_smooth_field(grid, np.random.default_rng(0))
    norms = [sobolev_norm(f, s) for s in (0.0, 0.5, 1.0, 2.0)]
    assert norms == sorted(norms)


def test_sobolev_norms_rowwise():
    grid = _grid()
    rows = np.stack([gaussian(grid, amplitude=a).values for a in (0.0, 1.0, 2.0)])
    norms = sobolev_norms(grid, rows, 1.0)
    assert norms[0] == 0.0
    assert norms[2] == pytest.approx(2.0 * norms[1], rel=1e-12)


def test_japanese_bracket():
    assert japanese(0.0) == 1.0
    assert japanese(np.array([3.0]))[0] == pytest.approx(np.sqrt(10.0))


def test_cutoffs():
    t = np.array([-3.0, -1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 5.0])
    eta = cutoff_eta(t)
    assert eta[1:5].tolist() == [1.0, 1.0, 1.0, 1.0]
    assert eta[0] == 0.0 and eta[-1] == 0.0 and eta[-2] == 0.0
    assert 0.0 < eta[5] < 1.0
    assert cutoff_eta(1.5, 1.0) == cutoff_eta(-1.5, 1.0)
    assert cutoff_eta(3.0, 2.0) < 1.0
    assert cutoff_rho(0.0) == 1.0
    assert cutoff_rho(-2.0) == 0.0
    with pytest.raises(InvalidParameterError):
        cutoff_eta(0.0, 0.0)


def test_integrate_uniform_is_exact_for_cubics():
    x = np.linspace(0.0, 1.0, 21)
    assert integrate_uniform(x**3, x[1] - x[0]) == pytest.approx(0.25, abs=1e-13)


def test_extension_keeps_halfline_values():
    grid = _grid()
    g = gaussian(grid, center=2.0, side=Side.HALF_LINE)
    g_e = extend(g)
    origin = grid.origin_index
    assert np.array_equal(g_e.values[origin:], g.values[origin:])
    assert np.all(g_e.values[grid.x <= -grid.half_length / 2.0] == 0.0)
    # continuous across the origin
    assert abs(g_e.values[origin - 1] - g.values[origin + 1]) < 0.05


def test_extension_uses_integer_dilations():
    """g_e(-y) = 6 g(y) - 8 g(2y) + 3 g(3y) where the window is still 1."""
    grid = _grid()
    x = grid.x
    g = Field(grid, np.where(x >= 0.0, np.exp(-x), 0.0), Side.HALF_LINE)
    g_e = extend(g)
    inner = (x < 0.0) & (x >= -grid.half_length / 4.0)
    y = -x[inner]
    expected = 6.0 * np.exp(-y) - 8.0 * np.exp(-2.0 * y) + 3.0 * np.exp(-3.0 * y)
    assert np.max(np.abs(g_e.values[inner] - expected)) < 1e-12


def test_extension_difference_is_bounded():
    grid = _grid()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(100):
        g = restrict(random_smooth_field(grid, rng, radius=float(rng.uniform(0.1, 2.0))))
        f = restrict(random_smooth_field(grid, rng, radius=float(rng.uniform(0.1, 2.0))))
        lhs = sobolev_norm(Field(grid, extend(g).values - extend(f).values), 1.0)
        difference = Field(grid, g.values - f.values, Side.HALF_LINE)
        worst = max(worst, lhs / halfline_sobolev_norm(difference, 1.0))
    assert worst <= 8.0


def test_halfline_norm_of_half_gaussian():
    """The H^0 value is at least the half-line L^2 mass (pi/8)^(1/4)."""
    grid = _grid()
    g = restrict(gaussian(grid))
    norms = [halfline_sobolev_norm(g, s) for s in (0.0, 0.5, 1.0)]
    assert norms[0] >= (np.pi / 8.0) ** 0.25
    assert norms == sorted(norms)
    assert halfline_sobolev_norm(restrict(gaussian(grid, amplitude=0.0)), 1.0) == 0.0


def test_refined_field_interpolates_on_coarse_points():
    grid = _grid(N=128)
    f = gaussian(grid, amplitude=0.7, wavenumber=1.0)
    fine = refine_field(f)
    assert fine.grid.n_points == 256
    assert np.max(np.abs(fine.values[::2] - f.values)) < 1e-12
    assert sobolev_norm(fine, 1.0) == pytest.approx(sobolev_norm(f, 1.0), rel=1e-12)


def test_restrict_zeroes_negative_side():
    grid = _grid()
    r = restrict(gaussian(grid))
    assert r.side is Side.HALF_LINE
    assert np.all(r.values[: grid.origin_index] == 0.0)


def test_gauge_preserves_modulus():
    grid = _grid()
    f = random_smooth_field(grid, np.random.default_rng(1), radius=1.5)
    for alpha in (-1.0, -0.5, 0.5, 2.0):
        gauged = apply_gauge(f, alpha)
        assert np.max(np.abs(np.abs(gauged.values) - np.abs(f.values))) < 1e-14


def test_gauge_composition_and_inverse():
    """G_beta G_alpha = G_{alpha+beta} and G_{-alpha} inverts G_alpha."""
    grid = _grid()
    rng = np.random.default_rng(2)
    for _ in range(100):
        f = random_smooth_field(grid, rng, radius=float(rng.uniform(0.1, 2.0)))
        scale = f.max_modulus
        assert gauge_compose_check(f, 0.7, -1.3) <= 1e-10 * scale
        back = apply_gauge(apply_gauge(f, 0.9), -0.9)
        assert np.max(np.abs(back.values - f.values)) <= 1e-10 * scale


def test_gauge_zero_is_identity():
    grid = _grid()
    f = gaussian(grid, amplitude=0.3)
    assert np.array_equal(apply_gauge(f, 0.0).values, f.values)


def test_gauge_on_halfline_touches_only_positive_side_data():
    grid = _grid()
    f = gaussian(grid, amplitude=0.5, side=Side.HALF_LINE)
    gauged = apply_gauge(f, 1.0)
    origin = grid.origin_index
    assert np.allclose(np.abs(gauged.values[origin:]), np.abs(f.values[origin:]), atol=1e-14)


def test_gauge_warns_on_undecayed_field():
    grid = _grid()
    with pytest.warns(TruncationWarning):
        apply_gauge(Field(grid, np.ones(grid.n_points)), 1.0)


def test_lipschitz_probe_guard():
    grid = _grid()
    f = gaussian(grid, amplitude=0.4)
    probe = gauge_lipschitz_probe(f, f, 1.0, 1.0)
    assert probe.guarded and probe.ratio is None
    other = gaussian(grid, amplitude=0.5)
    assert gauge_lipschitz_probe(f, other, 1.0, 0.0).ratio == 1.0
    ratio = gauge_lipschitz_probe(f, other, 1.0, -1.0).ratio
    assert ratio is not None and np.isfinite(ratio) and ratio > 0.0


def test_threshold_field_spectrum_and_norm():
    grid = _grid(N=512, L=40.0)
    g = threshold_field(grid, np.random.default_rng(7), s=1.0, amplitude=0.5)
    assert sobolev_norm(g, 0.0) == pytest.approx(0.5, rel=1e-12)
    spectrum = np.abs(forward_transform(g).values)
    band = (np.abs(grid.k) <= grid.n_points // 3) & (grid.k != 0)
    profile = spectrum[band] * japanese(grid.xi[band]) ** 1.5
    assert np.ptp(profile) < 1e-8 * np.max(profile)


def test_random_fields_are_seeded():
    grid = _grid()
    a = random_smooth_field(grid, np.random.default_rng(5), radius=0.8, s=1.0)
    b = random_smooth_field(grid, np.random.default_rng(5), radius=0.8, s=1.0)
    assert np.array_equal(a.values, b.values)
    assert sobolev_norm(a, 1.0) == pytest.approx(0.8, rel=1e-12)


def test_history_truncation_and_trace():
    grid = make_grid(20.0, 64, 0.1, 4)
    values = np.outer(np.arange(5), np.ones(64)).astype(complex)
    hist = SolutionHistory(grid, values)
    assert hist.truncated(2).n_frames == 3
    assert hist.boundary_trace().values.tolist() == [0, 1, 2, 3, 4]


def test_local_theory_range():
    SobolevParams(s=1.0).check_local_theory()
    for s in (0.5, 1.5, 2.5):
        with pytest.raises(InvalidParameterError):
            SobolevParams(s=s).check_local_theory()


def test_predicted_smoothing_gain():
    assert SobolevParams(s=1.0).predicted_gain(half_line=False) == 0.5
    assert SobolevParams(s=0.6).predicted_gain(half_line=False) == pytest.approx(0.2)
    assert SobolevParams(s=1.0).predicted_gain(half_line=True) == 0.25
    assert SobolevParams(s=2.4).predicted_gain(half_line=True) == pytest.approx(0.1)


def _exp_trace(rate: complex = 1.0) -> TimeTrace:
    return TimeTrace.from_function(lambda t: np.exp(-rate * t), 1e-3, 40_001)


def test_halfline_time_fourier_of_exponential():
    h = _exp_trace()
    assert abs(halfline_time_fourier(h, 0.0) - 1.0) < 1e-8
    assert abs(halfline_time_fourier(h, 1.0) - (0.5 - 0.5j)) < 1e-8


def test_halfline_time_fourier_is_linear():
    first, second = _exp_trace(), _exp_trace(2.0 + 3.0j)
    a, b = 0.3 - 1.0j, 2.5
    combined = first.with_values(a * first.values + b * second.values)
    xi = np.array([-4.0, -1.0, 0.0, 1.5, 6.0])
    expected = a * halfline_time_fourier(first, xi) + b * halfline_time_fourier(second, xi)
    assert np.max(np.abs(halfline_time_fourier(combined, xi) - expected)) < 1e-12


def test_halfline_time_fourier_of_zero():
    h = TimeTrace.zeros(1e-2, 101)
    assert halfline_time_fourier(h, 2.0) == 0.0
    assert not np.any(halfline_time_fourier(h, np.linspace(-3.0, 3.0, 7)))
