"""Integrating-factor RK4 for the gauged family on the (periodized) line."""

from __future__ import annotations

import logging

import numpy as np

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, SolutionHistory
from dnls_lab.errors import BlowupDetected, InvalidParameterError
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.linear.ibvp import interior_residual, localized_derivative

logger = logging.getLogger(__name__)

BLOWUP_THRESHOLD = 1e6


class FullLineStepper:
    """Fourth-order integrating-factor stepper in frequency space.

    With v = exp(i t xi^2) u_hat, the linear part is exact and classical RK4
    advances v under i F[N(u)].
    """

    def __init__(self, grid: GridSpec, dt: float, eq: EquationForm) -> None:
        if not dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {dt}")
        self.grid = grid
        self.dt = dt
        self.eq = eq
        self.half = np.exp(-0.5j * dt * grid.xi**2)
        self.full = self.half**2

    def _rhs(self, u_hat: ComplexArray) -> ComplexArray:
        u = np.fft.ifft(u_hat)
        return 1j * np.fft.fft(self.eq.nonlinearity(self.grid, u))

    def step_hat(self, u_hat: ComplexArray) -> ComplexArray:
        dt, e_half, e_full = self.dt, self.half, self.full
        k1 = self._rhs(u_hat)
        k2 = self._rhs(e_half * (u_hat + 0.5 * dt * k1))
        k3 = self._rhs(e_half * u_hat + 0.5 * dt * k2)
        k4 = self._rhs(e_full * u_hat + dt * e_half * k3)
        return e_full * u_hat + dt / 6.0 * (e_full * k1 + 2.0 * e_half * (k2 + k3) + k4)

    def step(self, u: ComplexArray, t: float = 0.0) -> ComplexArray:
        out = np.fft.ifft(self.step_hat(np.fft.fft(u)))
        check_blowup(out, t + self.dt)
        return out


def check_blowup(u: ComplexArray, t: float) -> None:
    finite = bool(np.all(np.isfinite(u)))
    peak = float(np.max(np.abs(u))) if finite else float("inf")
    if not finite or peak > BLOWUP_THRESHOLD:
        raise BlowupDetected(t, peak)


def step_fullline(u: Field, dt: float, eq: EquationForm) -> Field:
    """One integrating-factor RK4 step."""
    return u.replace(FullLineStepper(u.grid, dt, eq).step(u.values))


def solve_fullline(g: Field, T: float, dt: float, eq: EquationForm) -> SolutionHistory:
    """Frames at t_j = j dt on [0, T]; frame 0 is g."""
    n_steps = int(round(T / dt))
    if n_steps < 1 or abs(n_steps * dt - T) > 1e-9 * max(T, 1.0):
        raise InvalidParameterError(f"T={T} is not an integer multiple of dt={dt}")
    grid = g.grid.with_time(dt, n_steps)
    stepper = FullLineStepper(grid, dt, eq)
    values = np.empty((n_steps + 1, grid.n_points), dtype=np.complex128)
    values[0] = g.values
    if not np.any(g.values):
        values[1:] = 0.0
        return SolutionHistory(grid, values, g.side, {"equation": eq.label()})
    u_hat = np.fft.fft(g.values)
    for j in range(1, n_steps + 1):
        u_hat = stepper.step_hat(u_hat)
        values[j] = np.fft.ifft(u_hat)
        check_blowup(values[j], j * dt)
    logger.info("full-line solve %s: %d steps of %.3g", eq.label(), n_steps, dt)
    return SolutionHistory(grid, values, g.side, {"equation": eq.label()})


def residual_pde(hist: SolutionHistory, eq: EquationForm) -> float:
    """Interior residual of the gauged equation on x in [1, L-5]."""
    grid = hist.grid

    def nonlinearity(u: ComplexArray) -> ComplexArray:
        return eq.pointwise_nonlinearity(u, localized_derivative(grid, u, 1))

    return interior_residual(hist, nonlinearity)
