"""The gauge family G_alpha f(x) = f(x) exp(-i alpha int_x^inf |f|^2 dy)."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, Side
from dnls_lab.core.spectral import extend_values, sobolev_norm, sobolev_norm_values
from dnls_lab.errors import TruncationWarning

logger = logging.getLogger(__name__)


def tail_mass(values: ComplexArray, dx: float) -> RealArray:
    """int_{x_j}^{x_end} |f|^2 along the last axis, zero beyond the edge."""
    density = np.abs(values) ** 2
    if density.shape[-1] < 3:
        return np.zeros(density.shape)
    reversed_cum = cumulative_simpson(density[..., ::-1], dx=dx, axis=-1, initial=0.0)
    return np.asarray(reversed_cum[..., ::-1], dtype=np.float64)


def _check_decay(values: ComplexArray) -> None:
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak > 0 and abs(values[-1]) > 1e-8 * peak:
        warnings.warn(
            f"field not decayed at the right edge (|f|={abs(values[-1]):.3g}); "
            "gauge tail integral is truncated",
            TruncationWarning,
            stacklevel=3,
        )


def gauge_values(
    grid: GridSpec, values: ComplexArray, alpha: float, half_line: bool
) -> ComplexArray:
    """Gauge raw samples; the last axis is space and may be preceded by a time axis.

    Half-line samples are gauged on x >= 0 only and the x < 0 part is re-extended.
    """
    if alpha == 0.0:
        return values.copy()
    if not half_line:
        return values * np.exp(-1j * alpha * tail_mass(values, grid.dx))
    origin = grid.origin_index
    out = values.copy()
    positive = values[..., origin:]
    out[..., origin:] = positive * np.exp(-1j * alpha * tail_mass(positive, grid.dx))
    if out.ndim == 1:
        return extend_values(grid, out)
    return np.stack([extend_values(grid, row) for row in out])


def apply_gauge(f: Field, alpha: float) -> Field:
    """G_alpha f. Pointwise modulus is preserved."""
    half = f.side is Side.HALF_LINE
    _check_decay(f.values)
    return f.replace(gauge_values(f.grid, f.values, alpha, half))


def gauge_compose_check(f: Field, alpha: float, beta: float) -> float:
    """max_x |G_beta(G_alpha f) - G_{alpha+beta} f|."""
    composed = apply_gauge(apply_gauge(f, alpha), beta)
    direct = apply_gauge(f, alpha + beta)
    return float(np.max(np.abs(composed.values - direct.values)))


@dataclass(frozen=True)
class LipschitzProbe:
    """Outcome of one Lipschitz ratio measurement."""

    ratio: float | None
    guarded: bool = False
    numerator: float = 0.0
    denominator: float = 0.0


def gauge_lipschitz_probe(f: Field, g: Field, s: float, alpha: float) -> LipschitzProbe:
    """||G_alpha f - G_alpha g||_{H^s} / ||f - g||_{H^s}.

    Returns a guarded probe (ratio None) when ||f - g|| < 1e-14.
    """
    f.grid.require_same_space(g.grid)
    denominator = sobolev_norm(f - g, s)
    if denominator < 1e-14:
        return LipschitzProbe(ratio=None, guarded=True, denominator=denominator)
    if alpha == 0.0:
        return LipschitzProbe(ratio=1.0, numerator=denominator, denominator=denominator)
    diff = apply_gauge(f, alpha).values - apply_gauge(g, alpha).values
    numerator = sobolev_norm_values(f.grid, diff, s)
    return LipschitzProbe(
        ratio=numerator / denominator, numerator=numerator, denominator=denominator
    )
