"""Smoothing exponent from dyadic spectral energies."""

from __future__ import annotations

import logging

import numpy as np

from dnls_lab.core.grid import (
    ComplexArray,
    Field,
    GridSpec,
    RealArray,
    Side,
    SobolevParams,
    SolutionHistory,
)
from dnls_lab.core.spectral import extend, forward_values, restrict
from dnls_lab.errors import InsufficientRangeError
from dnls_lab.models.results import SmoothingFit

logger = logging.getLogger(__name__)

ENERGY_FLOOR = 1e-13
MIN_LEVELS = 4


def dyadic_energies(grid: GridSpec, values: ComplexArray) -> tuple[list[int], RealArray]:
    """E_j = sum over 2^j <= |xi| < 2^(j+1) of |f_hat|^2 dxi, for levels inside |k| <= N/3."""
    spectrum = np.abs(forward_values(grid, values)) ** 2
    xi = np.abs(grid.xi)
    xi_max = grid.dxi * (grid.n_points // 3)
    levels = list(range(0, int(np.floor(np.log2(xi_max)))))
    energies = np.array(
        [np.sum(spectrum[(xi >= 2.0**j) & (xi < 2.0 ** (j + 1))]) * grid.dxi for j in levels]
    )
    return levels, energies


def _halfline_view(f: Field) -> Field:
    return extend(restrict(f))


def smoothing_fit(
    hist: SolutionHistory,
    linear_hist: SolutionHistory,
    s: float,
    half_line: bool | None = None,
) -> SmoothingFit:
    """Fit the extra regularity of u - linear at the middle frame.

    a_measured is half the gap between the log2-energy slopes of the linear part and
    of the residual over the usable dyadic levels.
    """
    hist.grid.require_same_space(linear_hist.grid)
    half = hist.side is Side.HALF_LINE if half_line is None else half_line
    j = hist.n_frames // 2
    u = hist.frame(j)
    lin = linear_hist.frame(min(j, linear_hist.n_frames - 1))
    if half:
        u, lin = _halfline_view(u), _halfline_view(lin)
    grid = hist.grid
    levels, e_lin = dyadic_energies(grid, lin.values)
    _, e_res = dyadic_energies(grid, u.values - lin.values)
    usable = [i for i in range(len(levels)) if min(e_res[i], e_lin[i]) > ENERGY_FLOOR]
    if len(usable) < MIN_LEVELS:
        raise InsufficientRangeError(
            f"only {len(usable)} dyadic levels carry energy above {ENERGY_FLOOR:g}"
        )
    js = np.array([levels[i] for i in usable], dtype=np.float64)
    log_lin = np.log2(e_lin[usable])
    log_res = np.log2(e_res[usable])
    slope_lin = float(np.polyfit(js, log_lin, 1)[0])
    fit_res = np.polyfit(js, log_res, 1)
    slope_res = float(fit_res[0])
    misfit = log_res - np.polyval(fit_res, js)
    a_measured = 0.5 * (slope_lin - slope_res)
    a_predicted = SobolevParams(s=s).predicted_gain(half)
    logger.info(
        "smoothing s=%.3g: measured a=%.3f, predicted %.3f over %d levels",
        s,
        a_measured,
        a_predicted,
        len(usable),
    )
    return SmoothingFit(
        s=s,
        a_predicted=a_predicted,
        a_measured=a_measured,
        dyadic_levels=len(usable),
        residual_of_fit=float(np.sqrt(np.mean(misfit**2))),
        slope_linear=slope_lin,
        slope_residual=slope_res,
        levels=[int(v) for v in js],
        energy_linear=[float(v) for v in e_lin[usable]],
        energy_residual=[float(v) for v in e_res[usable]],
    )
