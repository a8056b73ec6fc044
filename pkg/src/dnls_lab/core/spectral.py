"""Discrete Fourier transforms, Sobolev norms, cutoffs and the half-line extension.

Transforms approximate the continuum convention

    g_hat(xi) = int exp(-i x xi) g(x) dx,    g(x) = (1/2pi) int exp(i x xi) g_hat(xi) dxi,

so the forward sum carries a factor dx and the inverse sum a factor dxi/(2pi).
"""

from __future__ import annotations

import logging
import warnings
from typing import overload

import numpy as np
from numpy.typing import ArrayLike

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, Side, Spectrum, TimeTrace
from dnls_lab.errors import InvalidParameterError, TruncationWarning

logger = logging.getLogger(__name__)

EXTENSION_ID = "reflect3-integer-dilations"

# Reflection g_e(-y) = sum_j c_j g(j y) matching g, g', g'' at 0.
_DILATIONS = np.array([1, 2, 3])
_REFLECTION_COEFFS = np.linalg.solve(
    np.array([[(-float(j)) ** m for j in _DILATIONS] for m in range(3)]),
    np.ones(3),
)

# Fourth-order end corrections for uniform composite quadrature.
_END_WEIGHTS = np.array([17.0, 59.0, 43.0, 49.0]) / 48.0


def _phase(grid: GridSpec) -> RealArray:
    # exp(i L xi_k) = (-1)^k; N is even so FFT-order index parity equals k parity
    return np.where(np.arange(grid.n_points) % 2 == 0, 1.0, -1.0)


def forward_values(grid: GridSpec, values: ComplexArray) -> ComplexArray:
    """Forward transform of raw samples (last axis is space)."""
    return grid.dx * _phase(grid) * np.fft.fft(values, axis=-1)


def inverse_values(grid: GridSpec, spectrum: ComplexArray) -> ComplexArray:
    """Inverse of forward_values."""
    return np.fft.ifft(_phase(grid) * spectrum, axis=-1) / grid.dx


def forward_transform(f: Field) -> Spectrum:
    """Approximate the continuum Fourier transform of f on the lattice."""
    return Spectrum(f.grid, forward_values(f.grid, f.values))


def inverse_transform(spec: Spectrum, side: Side = Side.FULL_LINE) -> Field:
    return Field(spec.grid, inverse_values(spec.grid, spec.values), side)


def japanese(xi: ArrayLike) -> RealArray:
    """<xi> = (1 + xi^2)^(1/2)."""
    return np.sqrt(1.0 + np.asarray(xi, dtype=np.float64) ** 2)


def sobolev_norm_values(grid: GridSpec, values: ComplexArray, s: float) -> float:
    spectrum = forward_values(grid, values)
    weight = japanese(grid.xi) ** (2.0 * s)
    total = np.sum(weight * np.abs(spectrum) ** 2) * grid.dxi / (2.0 * np.pi)
    return float(np.sqrt(total))


def sobolev_norms(grid: GridSpec, values: ComplexArray, s: float) -> RealArray:
    """H^s norm of every row (last axis is space)."""
    spectrum = forward_values(grid, values)
    weight = japanese(grid.xi) ** (2.0 * s)
    total = np.sum(weight * np.abs(spectrum) ** 2, axis=-1) * grid.dxi / (2.0 * np.pi)
    return np.sqrt(total)


def sobolev_norm(f: Field, s: float) -> float:
    """Discrete H^s(R) norm."""
    return sobolev_norm_values(f.grid, f.values, s)


def halfline_sobolev_norm(g: Field, s: float) -> float:
    """H^s(R+) norm taken as the H^s(R) norm of the canonical extension.

    This bounds the infimum over all extensions from above.
    """
    return sobolev_norm(extend(g), s)


def spectral_derivative(grid: GridSpec, values: ComplexArray, order: int = 1) -> ComplexArray:
    """d^order/dx^order along the last axis."""
    multiplier = (1j * grid.xi) ** order
    return np.fft.ifft(multiplier * np.fft.fft(values, axis=-1), axis=-1)


def dealias(grid: GridSpec, spectrum: ComplexArray) -> ComplexArray:
    """Zero every mode with |k| > N/3."""
    keep = np.abs(grid.k) <= grid.n_points // 3
    return np.where(keep, spectrum, 0.0)


def smooth_step(r: ArrayLike) -> RealArray:
    """C-infinity monotone step: 0 for r <= 0, 1 for r >= 1."""
    r = np.asarray(r, dtype=np.float64)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        left = np.where(r > 0, np.exp(-1.0 / np.where(r > 0, r, 1.0)), 0.0)
        right = np.where(r < 1, np.exp(-1.0 / np.where(r < 1, 1.0 - r, 1.0)), 0.0)
        out = left / (left + right)
    return np.where(r <= 0, 0.0, np.where(r >= 1, 1.0, out))


@overload
def cutoff_eta(t: float, T_support: float = ...) -> float: ...
@overload
def cutoff_eta(t: RealArray, T_support: float = ...) -> RealArray: ...
def cutoff_eta(t: float | RealArray, T_support: float = 1.0) -> float | RealArray:
    """Even bump: 1 on |t| <= T_support, 0 on |t| >= 2 T_support."""
    if not T_support > 0:
        raise InvalidParameterError(f"T_support must be positive, got {T_support}")
    r = (np.abs(np.asarray(t, dtype=np.float64)) - T_support) / T_support
    out = 1.0 - smooth_step(r)
    return float(out) if np.ndim(out) == 0 else out


@overload
def cutoff_rho(x: float) -> float: ...
@overload
def cutoff_rho(x: RealArray) -> RealArray: ...
def cutoff_rho(x: float | RealArray) -> float | RealArray:
    """1 for x >= 0, 0 for x <= -2."""
    out = smooth_step((np.asarray(x, dtype=np.float64) + 2.0) / 2.0)
    return float(out) if np.ndim(out) == 0 else out


def spatial_window(grid: GridSpec, left: float, right: float, ramp: float = 1.0) -> RealArray:
    """Smooth window equal to 1 on [left, right], vanishing outside [left-ramp, right+ramp]."""
    x = grid.x
    return cutoff_rho(2.0 * (x - left) / ramp) * cutoff_rho(2.0 * (right - x) / ramp)


def quadrature_weights(n: int, h: float) -> RealArray:
    """Composite weights of fourth order on n uniform samples (trapezoid below 8)."""
    if n <= 0:
        return np.zeros(0)
    if n == 1:
        return np.zeros(1)
    w = np.ones(n)
    if n < 8:
        w[0] = w[-1] = 0.5
    else:
        w[:4] = _END_WEIGHTS
        w[-4:] = _END_WEIGHTS[::-1]
    return h * w


def integrate_uniform(values: ArrayLike, h: float, axis: int = -1) -> ComplexArray:
    """Integral of uniformly sampled values along axis."""
    arr = np.asarray(values)
    w = quadrature_weights(arr.shape[axis], h)
    return np.tensordot(arr, w, axes=([axis], [0]))


def positive_l2_squared(grid: GridSpec, values: ComplexArray) -> RealArray:
    """int_0^L |u|^2 dx along the last axis."""
    pos = values[..., grid.origin_index :]
    return np.real(integrate_uniform(np.abs(pos) ** 2, grid.dx))


def restrict(g: Field) -> Field:
    """Zero the x < 0 samples."""
    return g.replace(np.where(g.positive_mask, g.values, 0.0), Side.HALF_LINE)


def extend(g: Field, target_smoothness: float = 2.5) -> Field:
    """Canonical extension of half-line data to the full line.

    For y > 0, g_e(-y) = 6 g(y) - 8 g(2y) + 3 g(3y), which matches g and its first
    two derivatives at 0, then damped by a smooth window vanishing at x = -L/2.
    Samples beyond the right edge are treated as zero.
    """
    if target_smoothness > 2.5:
        logger.warning(
            "extension matches two derivatives; requested smoothness %.3g exceeds H^5/2",
            target_smoothness,
        )
    grid = g.grid
    origin = grid.origin_index
    positive = g.values[origin:]
    n_pos = positive.size
    out = g.values.copy()
    m = np.arange(1, origin + 1)  # x = -m dx
    reflected = np.zeros(m.size, dtype=np.complex128)
    for coeff, j in zip(_REFLECTION_COEFFS, _DILATIONS):
        idx = j * m
        inside = idx < n_pos
        reflected[inside] += coeff * positive[idx[inside]]
    window = cutoff_rho((-m * grid.dx + grid.half_length / 4.0) * 8.0 / grid.half_length)
    out[origin - m] = reflected * window
    return Field(grid, out, Side.FULL_LINE)


def extend_values(grid: GridSpec, values: ComplexArray) -> ComplexArray:
    """extend() applied to raw samples."""
    return extend(Field(grid, values, Side.HALF_LINE)).values


def refine_field(f: Field, factor: int = 2) -> Field:
    """Trigonometric interpolation of f onto the same box with factor times the points."""
    grid = f.grid
    fine = GridSpec(grid.half_length, factor * grid.n_points, grid.dt, grid.n_steps)
    spectrum = np.zeros(fine.n_points, dtype=np.complex128)
    spectrum[grid.k % fine.n_points] = forward_values(grid, f.values)
    return Field(fine, inverse_values(fine, spectrum), f.side)


def halfline_time_fourier(h: TimeTrace, xi: float | ArrayLike) -> complex | ComplexArray:
    """int_0^inf exp(-i xi t) h(t) dt by fourth-order composite quadrature.

    The interior weights are uniform so the rule does not alias at the Nyquist band.
    """
    values = h.values
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak > 0 and abs(values[-1]) > 1e-8 * peak:
        warnings.warn(
            f"trace not decayed at t_max={h.t_max:.4g}: |h|={abs(values[-1]):.3g}",
            TruncationWarning,
            stacklevel=2,
        )
    w = quadrature_weights(values.size, h.dt) * values
    t = h.times
    scalar = np.ndim(xi) == 0
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    out = np.empty(xi_arr.size, dtype=np.complex128)
    block = max(1, 2**22 // max(1, t.size))
    for start in range(0, xi_arr.size, block):
        chunk = xi_arr[start : start + block]
        out[start : start + block] = np.exp(-1j * np.outer(chunk, t)) @ w
    return complex(out[0]) if scalar else out.reshape(np.shape(xi))
