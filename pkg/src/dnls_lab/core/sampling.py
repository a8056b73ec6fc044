"""Random and closed-form data generators on a grid."""

from __future__ import annotations

import numpy as np

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, Side
from dnls_lab.core.spectral import forward_values, inverse_values, japanese, sobolev_norm


def band_mask(grid: GridSpec, max_index: int) -> np.ndarray:
    """Modes with |k| <= max_index."""
    return np.abs(grid.k) <= max_index


def random_smooth_field(
    grid: GridSpec,
    rng: np.random.Generator,
    radius: float = 1.0,
    s: float = 1.0,
    width: float = 3.0,
    max_index: int | None = None,
) -> Field:
    """Localized random field with H^s norm equal to radius.

    Gaussian-envelope spectrum times complex normal coefficients, multiplied in space
    by a Gaussian of the given width so it decays well inside the grid.
    """
    xi = grid.xi
    coeffs = rng.standard_normal(grid.n_points) + 1j * rng.standard_normal(grid.n_points)
    spectrum = coeffs * np.exp(-(xi**2) / 8.0)
    if max_index is not None:
        spectrum = np.where(band_mask(grid, max_index), spectrum, 0.0)
    values = inverse_values(grid, spectrum) * np.exp(-((grid.x / width) ** 2))
    if max_index is not None:
        values = inverse_values(
            grid, np.where(band_mask(grid, max_index), forward_values(grid, values), 0.0)
        )
    field = Field(grid, values)
    norm = sobolev_norm(field, s)
    return field.scaled(radius / norm) if norm > 0 else field


def threshold_field(
    grid: GridSpec,
    rng: np.random.Generator,
    s: float,
    amplitude: float,
    max_index: int | None = None,
) -> Field:
    """|g_hat(xi)| = <xi>^(-s-1/2) with uniform random phases, scaled to L^2 norm amplitude.

    Modes above max_index (default N/3) are zeroed.
    """
    cut = grid.n_points // 3 if max_index is None else max_index
    phases = np.exp(2j * np.pi * rng.random(grid.n_points))
    spectrum = japanese(grid.xi) ** (-s - 0.5) * phases
    spectrum = np.where(band_mask(grid, cut), spectrum, 0.0)
    field = Field(grid, inverse_values(grid, spectrum))
    norm = sobolev_norm(field, 0.0)
    return field.scaled(amplitude / norm) if norm > 0 else field


def gaussian(
    grid: GridSpec,
    amplitude: float = 1.0,
    center: float = 0.0,
    width: float = 1.0,
    wavenumber: float = 0.0,
    side: Side = Side.FULL_LINE,
) -> Field:
    """amplitude * exp(-((x-center)/width)^2 + i wavenumber x)."""
    x = grid.x
    values: ComplexArray = amplitude * np.exp(-(((x - center) / width) ** 2) + 1j * wavenumber * x)
    return Field(grid, values, side)
