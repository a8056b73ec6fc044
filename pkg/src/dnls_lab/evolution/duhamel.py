"""The half-line fixed-point map

    Gamma u = eta(t) [ W_0^t(g, h) + i int_0^t W_R(t - s) F(u)(s) ds - W_0^t(0, q) ],

with F(u) = eta(t/T) N(u) and q = eta(t) times the x = 0 trace of the Duhamel term.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

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
from dnls_lab.core.spectral import cutoff_eta, extend
from dnls_lab.errors import InvalidParameterError
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.evolution.fullline import check_blowup
from dnls_lab.linear.ibvp import BoundaryOptions, boundary_solution, linear_ibvp_solve
from dnls_lab.linear.propagators import free_trace, trace_times

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HalflineProblem:
    """Data, local time and solver settings of one half-line run.

    Histories cover [0, 2T], the support of eta(t/T) on t >= 0.
    """

    g: Field
    h: TimeTrace
    T: float
    eq: EquationForm = field(default_factory=EquationForm)
    options: BoundaryOptions = field(default_factory=BoundaryOptions)

    def __post_init__(self) -> None:
        dt = self.g.grid.dt
        n = int(round(self.T / dt))
        if n < 1 or abs(n * dt - self.T) > 1e-9 * max(self.T, 1.0):
            raise InvalidParameterError(f"T={self.T} is not an integer multiple of dt={dt}")
        if not self.T < self.options.eta_support:
            raise InvalidParameterError(
                f"local time T={self.T} must be below the cutoff plateau "
                f"{self.options.eta_support}"
            )

    @property
    def n_local(self) -> int:
        """Number of steps covering [0, T]."""
        return int(round(self.T / self.g.grid.dt))

    @cached_property
    def grid(self) -> GridSpec:
        return self.g.grid.with_time(self.g.grid.dt, 2 * self.n_local)

    @cached_property
    def g_e(self) -> Field:
        return extend(self.g) if self.g.side is Side.HALF_LINE else self.g

    @cached_property
    def eta_frames(self) -> np.ndarray:
        return cutoff_eta(self.grid.times, self.options.eta_support)

    @cached_property
    def linear(self) -> SolutionHistory:
        """eta(t) W_0^t(g, h) on [0, 2T]."""
        g = Field(self.grid, self.g.values, self.g.side)
        hist = linear_ibvp_solve(g, self.h, self.options)
        values = hist.values * self.eta_frames[:, None]
        values[0] = self.g_e.values
        return hist.replace(values)

    def forcing(self, u: ComplexArray) -> ComplexArray:
        """F(u) = eta(t/T) N(u) frame by frame."""
        weights = cutoff_eta(self.grid.times, self.T)
        return weights[:, None] * self.eq.nonlinearity(self.grid, u)


def duhamel_integral(grid: GridSpec, forcing: ComplexArray) -> ComplexArray:
    """i int_0^{t_n} W_R(t_n - s) F(s) ds, trapezoidal in s with the integrating factor."""
    dt = grid.dt
    e_full = np.exp(-1j * dt * grid.xi**2)
    f_hat = np.fft.fft(forcing, axis=-1)
    d_hat = np.zeros_like(f_hat)
    for n in range(f_hat.shape[0] - 1):
        d_hat[n + 1] = e_full * d_hat[n] + 0.5j * dt * (e_full * f_hat[n] + f_hat[n + 1])
    return np.fft.ifft(d_hat, axis=-1)


def duhamel_trace(problem: HalflineProblem, duhamel: ComplexArray) -> TimeTrace:
    """q(t) = eta(t) D(0, t) on [0, 2 eta_support].

    Past 2T the forcing vanishes and D continues by free evolution.
    """
    grid = problem.grid
    dt = grid.dt
    t = trace_times(dt, problem.options.eta_support)
    d0 = np.zeros(t.size, dtype=np.complex128)
    n_hist = min(duhamel.shape[0], t.size)
    d0[:n_hist] = duhamel[:n_hist, grid.origin_index]
    if t.size > duhamel.shape[0]:
        last = Field(grid, duhamel[-1])
        tail = t[duhamel.shape[0] :] - grid.final_time
        d0[duhamel.shape[0] :] = free_trace(last, tail)[:, 0]
    q = d0 * cutoff_eta(t, problem.options.eta_support)
    q[0] = 0.0
    return TimeTrace(dt, q, TraceRole.DUHAMEL_TRACE)


def duhamel_map(
    u_cand: SolutionHistory,
    g: Field,
    h: TimeTrace,
    T: float,
    eq: EquationForm | None = None,
    options: BoundaryOptions | None = None,
) -> SolutionHistory:
    """Gamma u_cand for the half-line problem with data (g, h) and local time T."""
    problem = HalflineProblem(g, h, T, eq or EquationForm(), options or BoundaryOptions())
    return apply_duhamel_map(problem, u_cand)


def apply_duhamel_map(problem: HalflineProblem, u_cand: SolutionHistory) -> SolutionHistory:
    grid = problem.grid
    grid.require_same_space(u_cand.grid)
    u = u_cand.values
    if u.shape != (grid.n_steps + 1, grid.n_points):
        raise InvalidParameterError(
            f"candidate has {u.shape[0]} frames, the map needs {grid.n_steps + 1}"
        )
    linear = problem.linear
    if not np.any(u):
        return linear.replace(linear.values.copy(), duhamel="zero-candidate")
    duhamel = duhamel_integral(grid, problem.forcing(u))
    q = duhamel_trace(problem, duhamel)
    correction = boundary_solution(q, grid, grid.times, problem.options)
    values = linear.values + problem.eta_frames[:, None] * (duhamel - correction)
    values[0] = problem.g_e.values
    for j in range(1, grid.n_steps + 1):
        check_blowup(values[j], grid.times[j])
    logger.debug("duhamel map: max|q|=%.3e", float(np.max(np.abs(q.values))))
    return linear.replace(values, duhamel="trapezoid-integrating-factor")
