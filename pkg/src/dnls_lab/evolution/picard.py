"""Picard iteration u_{n+1} = Gamma u_n for the gauged half-line problem."""

from __future__ import annotations

import logging

import numpy as np

from dnls_lab.core.grid import ComplexArray, Field, SolutionHistory, TimeTrace
from dnls_lab.core.spectral import sobolev_norms
from dnls_lab.errors import NoContraction
from dnls_lab.evolution.duhamel import HalflineProblem, apply_duhamel_map
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.linear.ibvp import BoundaryOptions
from dnls_lab.models.results import PicardTrace

logger = logging.getLogger(__name__)

_GROWTH_STREAK = 3


class PicardSolver:
    """Fixed-point iteration of the half-line map from u_0 = eta W_0^t(g, h)."""

    def __init__(self, problem: HalflineProblem, tol: float = 1e-8, max_iter: int = 50) -> None:
        self.problem = problem
        self.tol = tol
        self.max_iter = max_iter

    def distance(self, a: ComplexArray, b: ComplexArray) -> float:
        """sup over frames in [0, T] of the H^s distance."""
        n = self.problem.n_local + 1
        norms = sobolev_norms(self.problem.grid, a[:n] - b[:n], self.problem.options.s)
        return float(np.max(norms))

    def solve(self) -> tuple[SolutionHistory, PicardTrace]:
        problem = self.problem
        current = problem.linear
        trace = PicardTrace(T_used=problem.T, tolerance=self.tol)
        streak = 0
        for it in range(1, self.max_iter + 1):
            nxt = apply_duhamel_map(problem, current)
            dist = self.distance(nxt.values, current.values)
            if trace.iterate_distances and trace.iterate_distances[-1] > 0:
                factor = dist / trace.iterate_distances[-1]
                trace.contraction_factors.append(factor)
                streak = streak + 1 if factor > 1.0 else 0
            trace.iterate_distances.append(dist)
            logger.debug("picard iterate %d: distance %.3e", it, dist)
            current = nxt
            if dist <= self.tol:
                trace.converged = True
                break
            if streak >= _GROWTH_STREAK:
                raise NoContraction(
                    f"distances grew for {streak} consecutive iterates at T={problem.T}"
                )
        if not trace.converged:
            logger.warning(
                "picard loop stopped after %d iterates at distance %.3e (tol %.1e)",
                trace.iterations,
                trace.final_distance,
                self.tol,
            )
        trace.fixed_point_residual = self.distance(
            apply_duhamel_map(problem, current).values, current.values
        )
        logger.info(
            "picard T=%.3g: %d iterates, final distance %.3e",
            problem.T,
            trace.iterations,
            trace.final_distance,
        )
        return (
            current.replace(
                current.values, picard_iterations=trace.iterations, local_steps=problem.n_local
            ),
            trace,
        )


def solve_halfline_gauged(
    g: Field,
    h: TimeTrace,
    T: float,
    tol: float = 1e-8,
    max_iter: int = 50,
    eq: EquationForm | None = None,
    options: BoundaryOptions | None = None,
) -> tuple[SolutionHistory, PicardTrace]:
    """Half-line solution on [0, 2T] (contractual on [0, T]) and its contraction trace."""
    problem = HalflineProblem(g, h, T, eq or EquationForm(), options or BoundaryOptions())
    return PicardSolver(problem, tol, max_iter).solve()


def discover_local_time(
    g: Field,
    h: TimeTrace,
    T_start: float,
    tol: float = 1e-8,
    max_iter: int = 50,
    eq: EquationForm | None = None,
    options: BoundaryOptions | None = None,
    min_steps: int = 4,
) -> tuple[SolutionHistory, PicardTrace]:
    """Halve T on NoContraction until the loop contracts.

    T stays an integer multiple of dt; gives up below min_steps steps.
    """
    dt = g.grid.dt
    n = int(round(T_start / dt))
    while True:
        try:
            return solve_halfline_gauged(g, h, n * dt, tol, max_iter, eq, options)
        except NoContraction:
            if n // 2 < min_steps:
                raise
            logger.info("no contraction at T=%.4g, halving", n * dt)
            n //= 2
