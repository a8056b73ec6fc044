"""Linear half-line problem i u_t + u_xx = 0, u(x, 0) = g, u(0, t) = h."""

from __future__ import annotations

import logging
import warnings
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from dnls_lab.core.grid import (
    ComplexArray,
    Field,
    GridSpec,
    Side,
    SolutionHistory,
    TimeTrace,
    TraceRole,
)
from dnls_lab.core.spectral import (
    EXTENSION_ID,
    cutoff_eta,
    extend,
    forward_values,
    integrate_uniform,
    sobolev_norm,
    sobolev_norm_values,
    spatial_window,
    spectral_derivative,
)
from dnls_lab.errors import CompatibilityViolation, TruncationWarning
from dnls_lab.linear.boundary import BoundaryPropagator
from dnls_lab.linear.propagators import corrector_p, free_evolution, trace_times

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundaryOptions:
    """Time cutoff and beta-quadrature settings shared by the half-line solvers."""

    eta_support: float = 1.0
    order: int = 8
    oversampling: float = 4.0
    min_nodes: int = 1000
    s: float = 1.0


def check_compatibility(g: Field, h: TimeTrace, s: float = 1.0) -> None:
    """Require |g(0) - h(0)| <= 1e-6 (1 + max|g|) when s > 1/2."""
    if s <= 0.5 or h.values.size == 0:
        return
    gap = abs(g.at_origin - h.values[0])
    bound = 1e-6 * (1.0 + g.max_modulus)
    if gap > bound:
        raise CompatibilityViolation(f"|g(0) - h(0)| = {gap:.3e} exceeds {bound:.3e}")


def cut_boundary_data(h: TimeTrace, dt: float, eta_support: float) -> TimeTrace:
    """eta(t) h(t) resampled onto the trace grid [0, 2 eta_support]."""
    if not np.isclose(h.dt, dt, rtol=1e-12, atol=0.0):
        raise CompatibilityViolation(f"boundary trace dt={h.dt} differs from grid dt={dt}")
    t = trace_times(dt, eta_support)
    if h.values.size < t.size:
        last = abs(h.values[-1]) if h.values.size else 0.0
        if last > 1e-8 * (1.0 + float(np.max(np.abs(h.values)))):
            warnings.warn(
                f"boundary data ends at t={h.t_max:.4g} before the cutoff support",
                TruncationWarning,
                stacklevel=3,
            )
    padded = h.padded(t.size)
    return padded.with_values(padded.values * cutoff_eta(t, eta_support))


def boundary_solution(
    k: TimeTrace, grid: GridSpec, times: np.ndarray, options: BoundaryOptions
) -> ComplexArray:
    """W1 k + W2 k at the given times on the whole grid."""
    if not np.any(k.values):
        return np.zeros((len(times), grid.n_points), dtype=np.complex128)
    prop = BoundaryPropagator(
        k,
        grid.x,
        float(np.max(times)),
        order=options.order,
        oversampling=options.oversampling,
        min_nodes=options.min_nodes,
    )
    return prop.evaluate(times)


def linear_ibvp_solve(
    g: Field, h: TimeTrace, options: BoundaryOptions | None = None
) -> SolutionHistory:
    """W_0^t(g, h) = W_R(t) g_e + W1(h - p) + W2(h - p) at the grid's frame times.

    Only x >= 0 values are contractual; x < 0 carries the extension and the
    analytic continuation of the boundary operators.
    """
    options = options or BoundaryOptions()
    grid = g.grid
    check_compatibility(g, h, options.s)
    g_e = extend(g) if g.side is Side.HALF_LINE else g
    times = grid.times
    cut = cut_boundary_data(h, grid.dt, options.eta_support)
    p = corrector_p(g_e, grid.dt, options.eta_support)
    k = cut.with_values(cut.values - p.values, TraceRole.BOUNDARY_H)
    values = free_evolution(g_e, times) + boundary_solution(k, grid, times, options)
    values[0] = g_e.values
    metadata = {"extension": EXTENSION_ID, "eta_support": options.eta_support}
    return SolutionHistory(grid, values, Side.HALF_LINE, metadata)


def residual_region(grid: GridSpec) -> tuple[int, int]:
    """Index range of x in [1, L - 5]."""
    x = grid.x
    idx = np.nonzero((x >= 1.0) & (x <= grid.half_length - 5.0))[0]
    if idx.size == 0:
        return 0, 0
    return int(idx[0]), int(idx[-1]) + 1


def localized_derivative(grid: GridSpec, values: ComplexArray, order: int) -> ComplexArray:
    """Spectral derivative of the field times a window that is 1 on [1/2, L - 4].

    Agrees with the derivative of the field on the residual region while ignoring
    whatever the field does near the periodic seam and the extension region.
    """
    window = spatial_window(grid, 0.5, grid.half_length - 4.0, ramp=0.5)
    return spectral_derivative(grid, window * values, order)


def interior_residual(
    hist: SolutionHistory,
    nonlinearity: Callable[[ComplexArray], ComplexArray] | None = None,
) -> float:
    """max_j ||i d_t u + u_xx + N(u)||_{L^2([1, L-5])} over interior frames."""
    local = hist.metadata.get("local_steps")
    if local is not None and local < hist.grid.n_steps:
        hist = hist.truncated(int(local))
    if hist.n_frames < 3:
        return 0.0
    grid = hist.grid
    lo, hi = residual_region(grid)
    if hi - lo < 2:
        return 0.0
    u = hist.values
    dudt = (u[2:] - u[:-2]) / (2.0 * grid.dt)
    inner = u[1:-1]
    residual = 1j * dudt + localized_derivative(grid, inner, 2)
    if nonlinearity is not None:
        residual = residual + nonlinearity(inner)
    norms = np.sqrt(np.real(integrate_uniform(np.abs(residual[:, lo:hi]) ** 2, grid.dx)))
    return float(np.max(norms))


def pde_residual_linear(hist: SolutionHistory) -> float:
    """Interior residual of i u_t + u_xx = 0."""
    return interior_residual(hist)


def kato_trace_check(
    g: Field, s: float, n_positions: int = 32, eta_support: float = 1.0
) -> float:
    """max_x ||eta W_R g(x, .)||_{H^{(2s+1)/4}_t} / ||g||_{H^s}.

    The time functions live on [-2 eta_support, 2 eta_support) with a sampling
    fine enough to resolve the largest lattice frequency xi^2.
    """
    norm = sobolev_norm(g, s)
    if norm == 0.0:
        return 0.0
    grid = g.grid
    xi_max_sq = float(np.max(grid.xi**2))
    span = 4.0 * eta_support
    n_t = 256
    while span / n_t > np.pi / (2.0 * xi_max_sq):
        n_t *= 2
    time_grid = GridSpec(2.0 * eta_support, n_t)
    t = time_grid.x
    positions = np.linspace(-grid.half_length / 2.0, grid.half_length / 2.0, n_positions)
    spectrum = forward_values(grid, g.values) * grid.dxi / (2.0 * np.pi)
    columns = spectrum[:, None] * np.exp(1j * np.outer(grid.xi, positions))
    traces = np.exp(-1j * np.outer(t, grid.xi**2)) @ columns
    traces *= cutoff_eta(t, eta_support)[:, None]
    s_t = (2.0 * s + 1.0) / 4.0
    best = max(sobolev_norm_values(time_grid, traces[:, p], s_t) for p in range(n_positions))
    return best / norm


_ONE_SIDED = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0


def boundary_derivative(grid: GridSpec, values: ComplexArray) -> ComplexArray:
    """u_x(0) from x >= 0 samples by one-sided fourth-order differences (last axis is space)."""
    origin = grid.origin_index
    stencil = values[..., origin : origin + 5]
    return (stencil @ _ONE_SIDED) / grid.dx
