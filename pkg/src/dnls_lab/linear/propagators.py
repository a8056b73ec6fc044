"""Free Schrödinger evolution on the line and its traces at x = 0."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, TimeTrace, TraceRole
from dnls_lab.core.spectral import cutoff_eta, forward_values, inverse_values


def free_propagator(grid: GridSpec, t: float) -> ComplexArray:
    """Fourier multiplier exp(-i t xi^2)."""
    return np.exp(-1j * t * grid.xi**2)


def free_propagate(g: Field, t: float) -> Field:
    """W_R(t) g: inverse transform of exp(-i t xi^2) g_hat."""
    if t == 0.0:
        return g.replace(g.values.copy())
    spectrum = forward_values(g.grid, g.values)
    return g.replace(inverse_values(g.grid, free_propagator(g.grid, t) * spectrum))


def free_evolution(g: Field, times: ArrayLike) -> ComplexArray:
    """Rows W_R(t_j) g for every t_j."""
    grid = g.grid
    t = np.asarray(times, dtype=np.float64)
    spectrum = forward_values(grid, g.values)
    rows = np.exp(-1j * np.outer(t, grid.xi**2)) * spectrum
    out = inverse_values(grid, rows)
    if t.size and t[0] == 0.0:
        out[0] = g.values
    return out


def free_trace(g: Field, times: ArrayLike, positions: ArrayLike | None = None) -> ComplexArray:
    """(W_R(t) g)(x_p) for t in times and x_p in positions (default x = 0).

    Returns an array of shape (len(times), len(positions)).
    """
    grid = g.grid
    t = np.asarray(times, dtype=np.float64)
    x = np.zeros(1) if positions is None else np.asarray(positions, dtype=np.float64)
    spectrum = forward_values(grid, g.values) * grid.dxi / (2.0 * np.pi)
    columns = spectrum[:, None] * np.exp(1j * np.outer(grid.xi, x))
    out = np.empty((t.size, x.size), dtype=np.complex128)
    block = max(1, 2**22 // grid.n_points)
    for start in range(0, t.size, block):
        chunk = t[start : start + block]
        out[start : start + block] = np.exp(-1j * np.outer(chunk, grid.xi**2)) @ columns
    return out


def trace_times(dt: float, eta_support: float) -> RealArray:
    """Uniform samples of [0, 2 eta_support], the support of eta on t >= 0."""
    n = int(round(2.0 * eta_support / dt)) + 1
    return dt * np.arange(n)


def corrector_p(g_e: Field, dt: float, eta_support: float = 1.0) -> TimeTrace:
    """p(t) = eta(t) (W_R(t) g_e)(0) on the trace grid."""
    t = trace_times(dt, eta_support)
    trace = free_trace(g_e, t)[:, 0] * cutoff_eta(t, eta_support)
    trace[0] = g_e.at_origin
    return TimeTrace(dt, trace, TraceRole.TRACE_D0)
