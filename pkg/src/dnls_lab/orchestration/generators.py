"""Initial and boundary data built from the generator ids of a run configuration."""

from __future__ import annotations

import logging

import numpy as np

from dnls_lab.core.grid import Field, GridSpec, Side, TimeTrace, TraceRole
from dnls_lab.core.sampling import gaussian, random_smooth_field, threshold_field
from dnls_lab.core.spectral import extend, spatial_window
from dnls_lab.linear.propagators import free_trace
from dnls_lab.models.run_config import (
    BoundaryData,
    BoundaryGenerator,
    Domain,
    InitialData,
    InitialGenerator,
)

logger = logging.getLogger(__name__)


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def initial_field(spec: InitialData, grid: GridSpec, domain: Domain = Domain.FULL) -> Field:
    """Sample the configured initial data on the grid.

    Random half-line data is windowed to vanish on [L/2 + 2, L) so it decays before
    the periodic seam.
    """
    side = Side.HALF_LINE if domain is Domain.HALF else Side.FULL_LINE
    gen = spec.generator
    if gen is InitialGenerator.ZERO:
        return Field.zeros(grid, side)
    if gen is InitialGenerator.GAUSSIAN:
        return gaussian(grid, spec.amplitude, spec.center, spec.width, spec.wavenumber, side)
    rng = make_rng(spec.seed)
    if gen is InitialGenerator.THRESHOLD:
        field = threshold_field(grid, rng, spec.s, spec.amplitude)
    else:
        field = random_smooth_field(grid, rng, radius=spec.amplitude, s=spec.s, width=spec.width)
    if side is Side.HALF_LINE:
        window = spatial_window(grid, -grid.half_length, 0.5 * grid.half_length, ramp=2.0)
        return Field(grid, field.values * window, side)
    return field


def boundary_trace(spec: BoundaryData, g: Field, n_samples: int) -> TimeTrace:
    """h on t_j = j dt, j < n_samples, for the configured boundary generator."""
    dt = g.grid.dt
    t = dt * np.arange(n_samples)
    gen = spec.generator
    if gen is BoundaryGenerator.ZERO:
        return TimeTrace.zeros(dt, n_samples)
    if gen is BoundaryGenerator.FREE_TRACE:
        g_e = extend(g) if g.side is Side.HALF_LINE else g
        values = free_trace(g_e, t)[:, 0]
        values[0] = g.at_origin
    elif gen is BoundaryGenerator.GAUSSIAN_TRACE:
        # trace at x = 0 of the free evolution of amplitude * exp(-x^2)
        values = spec.amplitude / np.sqrt(1.0 + 4j * t)
    else:
        decay = np.exp(-spec.rate * t)
        values = g.at_origin * decay + spec.amplitude * t * decay
    peak = float(np.max(np.abs(values))) if n_samples else 0.0
    logger.debug("boundary data %s: %d samples, max|h|=%.3g", gen.value, n_samples, peak)
    return TimeTrace(dt, np.asarray(values, dtype=np.complex128), TraceRole.BOUNDARY_H)
