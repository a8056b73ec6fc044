"""Mass and energy functionals, their drift along full-line runs, and the GN probe."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from enum import Enum

import numpy as np
import pandas as pd

from dnls_lab.core.gauge import gauge_values
from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, SolutionHistory
from dnls_lab.core.spectral import integrate_uniform, spectral_derivative

logger = logging.getLogger(__name__)

CONSERVATION_COLUMNS = ["t", "mass", "E_half", "E_dnls", "mass_drift_rel", "energy_drift_rel"]


class EnergyVariant(str, Enum):
    """Which conserved energy."""

    E_HALF = "E_half"  # ||u_x||^2 + 1/2 Im int u conj(u_x) |u|^2, for alpha = -1/2
    E_DNLS = "E_dnls"  # ||q_x||^2 + 3/2 Im int q conj(q_x) |q|^2 + 1/2 ||q||_6^6, for alpha = 0


def _integrate(grid: GridSpec, density: np.ndarray, half_line: bool) -> RealArray:
    if half_line:
        density = density[..., grid.origin_index :]
    return np.real(integrate_uniform(density, grid.dx))


def energy_values(
    grid: GridSpec, values: ComplexArray, variant: EnergyVariant, half_line: bool = False
) -> RealArray:
    """The functional for every row of values (last axis is space)."""
    ux = spectral_derivative(grid, values, 1)
    modulus_sq = np.abs(values) ** 2
    kinetic = _integrate(grid, np.abs(ux) ** 2, half_line)
    mixed = _integrate(grid, np.imag(values * np.conj(ux)) * modulus_sq, half_line)
    if variant is EnergyVariant.E_HALF:
        return kinetic + 0.5 * mixed
    sextic = _integrate(grid, modulus_sq**3, half_line)
    return kinetic + 1.5 * mixed + 0.5 * sextic


def energy_functional(
    u: Field, variant: EnergyVariant | str = EnergyVariant.E_HALF, half_line: bool = False
) -> float:
    """E_{-1/2}(u) or the DNLS energy E(u), over R or R+."""
    return float(energy_values(u.grid, u.values, EnergyVariant(variant), half_line))


def mass_values(grid: GridSpec, values: ComplexArray, half_line: bool = False) -> RealArray:
    return _integrate(grid, np.abs(values) ** 2, half_line)


def _relative_drift(series: RealArray) -> RealArray:
    reference = abs(series[0])
    scale = reference if reference > 0 else 1.0
    return np.abs(series - series[0]) / scale


def conservation_series(hist: SolutionHistory, alpha: float = -1.0) -> pd.DataFrame:
    """Mass and both energies per frame of a full-line run of eq(alpha).

    E_half is evaluated on the alpha = -1/2 gauge of the solution and E_dnls on the
    alpha = 0 gauge, where each is conserved.
    """
    grid = hist.grid
    half_gauge = gauge_values(grid, hist.values, -0.5 - alpha, half_line=False)
    dnls_gauge = gauge_values(grid, hist.values, -alpha, half_line=False)
    mass = mass_values(grid, hist.values)
    e_half = energy_values(grid, half_gauge, EnergyVariant.E_HALF)
    e_dnls = energy_values(grid, dnls_gauge, EnergyVariant.E_DNLS)
    frame = pd.DataFrame(
        {
            "t": hist.times,
            "mass": mass,
            "E_half": e_half,
            "E_dnls": e_dnls,
            "mass_drift_rel": _relative_drift(mass),
            "energy_drift_rel": _relative_drift(e_dnls),
        }
    )
    logger.info(
        "conservation: max mass drift %.2e, max energy drift %.2e",
        float(frame["mass_drift_rel"].max()),
        float(frame["energy_drift_rel"].max()),
    )
    return frame[CONSERVATION_COLUMNS]


def gn_candidate(u: Field) -> float | None:
    """(||u_x||^2 - E_{-1/2}(u)) / (||u_x||^2 ||u||^2), or None when either factor vanishes."""
    grid = u.grid
    kinetic = float(_integrate(grid, np.abs(spectral_derivative(grid, u.values)) ** 2, False))
    mass = float(mass_values(grid, u.values))
    if kinetic == 0.0 or mass == 0.0:
        return None
    energy = energy_functional(u, EnergyVariant.E_HALF)
    return (kinetic - energy) / (kinetic * mass)


def gn_coercivity_probe(samples: Iterable[Field]) -> float:
    """Smallest C >= 0 with E_{-1/2}(u) >= ||u_x||^2 (1 - C ||u||^2) over the samples."""
    candidates = (gn_candidate(u) for u in samples)
    return max([0.0, *(c for c in candidates if c is not None)])
