"""Integrated mass, energy and boundary-smoothing identities on the half-line.

They are stated for the alpha = -1/2 equation; its solution is obtained as the
G_{1/2} gauge of the alpha = -1 Picard solution.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from dnls_lab.core.gauge import gauge_values
from dnls_lab.core.grid import RealArray, SolutionHistory, TimeTrace, TraceRole
from dnls_lab.core.spectral import integrate_uniform, positive_l2_squared, spectral_derivative
from dnls_lab.diagnostics.energy import EnergyVariant, energy_values
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.linear.ibvp import boundary_derivative

logger = logging.getLogger(__name__)

IDENTITY_COLUMNS = [
    "t",
    "mass_identity_residual",
    "energy_identity_residual",
    "I_t",
    "It_identity_residual",
]

_HALF = EquationForm(-0.5)


def gauge_halfline_history(hist: SolutionHistory, shift: float = 0.5) -> SolutionHistory:
    """G_shift of every frame on x >= 0, re-extended; restricted to the local interval."""
    local = hist.metadata.get("local_steps")
    if local is not None and local < hist.grid.n_steps:
        hist = hist.truncated(int(local))
    values = gauge_values(hist.grid, hist.values, shift, half_line=True)
    alpha = float(hist.metadata.get("alpha", -1.0)) + shift
    return hist.replace(values, alpha=alpha)


@dataclass
class IdentitySeries:
    """Per-frame residuals of the three integrated identities."""

    t: RealArray
    mass_residual: RealArray
    energy_residual: RealArray
    I_t: RealArray
    It_residual: RealArray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": self.t,
                "mass_identity_residual": self.mass_residual,
                "energy_identity_residual": self.energy_residual,
                "I_t": self.I_t,
                "It_identity_residual": self.It_residual,
            }
        )[IDENTITY_COLUMNS]


def identity_series(
    hist: SolutionHistory, h: TimeTrace | None = None, eq: EquationForm = _HALF
) -> IdentitySeries:
    """Residuals of the mass, energy and I_t identities for a half-line history of eq.

    h defaults to the x = 0 trace of the history.
    """
    grid = hist.grid
    u = hist.values
    t = hist.times
    n = hist.n_frames
    if h is None:
        h = hist.boundary_trace(TraceRole.BOUNDARY_H)
    hv = h.padded(n).values
    dh = np.gradient(hv, grid.dt) if n > 2 else np.zeros_like(hv)
    ux0 = boundary_derivative(grid, u)

    def running(values: np.ndarray) -> RealArray:
        return np.asarray(cumulative_trapezoid(values, dx=grid.dt, initial=0.0))

    mass = positive_l2_squared(grid, u)
    flux = 2.0 * np.imag(np.conj(hv) * ux0) - eq.boundary_flux_quartic * np.abs(hv) ** 4
    mass_res = mass - mass[0] - running(flux)

    energy = energy_values(grid, u, EnergyVariant.E_HALF, half_line=True)
    energy_flux = -2.0 * np.real(ux0 * np.conj(dh))
    energy_flux += 0.5 * np.imag(np.conj(hv) * dh * np.abs(hv) ** 2)
    energy_res = energy - energy[0] - running(energy_flux)

    ux = spectral_derivative(grid, u, 1)
    density = (u * np.conj(ux))[:, grid.origin_index :]
    momentum = np.real(1j * integrate_uniform(density, grid.dx))
    I_t = running(np.abs(ux0) ** 2)
    It_rhs = momentum - momentum[0] + running(np.real(1j * hv * np.conj(dh)))
    return IdentitySeries(t, np.abs(mass_res), np.abs(energy_res), I_t, np.abs(I_t - It_rhs))


def mass_identity_residual(hist: SolutionHistory, h: TimeTrace | None = None) -> float:
    """sup_t of the integrated mass identity residual for the alpha = -1/2 solution."""
    if hist.n_frames < 2 or not np.any(hist.values):
        return 0.0
    return float(np.max(identity_series(hist, h).mass_residual))


def energy_identity_residual(hist: SolutionHistory, h: TimeTrace | None = None) -> float:
    if hist.n_frames < 2 or not np.any(hist.values):
        return 0.0
    return float(np.max(identity_series(hist, h).energy_residual))


def boundary_It(hist: SolutionHistory, h: TimeTrace | None = None) -> tuple[float, float]:
    """(I_t at the last frame, sup_t residual of the I_t identity)."""
    if hist.n_frames < 2 or not np.any(hist.values):
        return 0.0, 0.0
    series = identity_series(hist, h)
    return float(series.I_t[-1]), float(np.max(series.It_residual))
