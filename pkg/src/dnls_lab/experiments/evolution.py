"""Solver runs: plain simulation, the Picard contraction record and the phase fixed point."""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from dnls_lab.core.grid import SolutionHistory
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.evolution.fullline import residual_pde, solve_fullline
from dnls_lab.evolution.gamma import GammaFixedPoint, gamma_rate_identity_check
from dnls_lab.evolution.picard import discover_local_time, solve_halfline_gauged
from dnls_lab.experiments.base import (
    Experiment,
    boundary,
    boundary_options,
    build_grid,
    check,
    data,
    equation,
    frame_table,
)
from dnls_lab.models import DiagnosticsReport, Domain, RunConfig

logger = logging.getLogger(__name__)

PICARD_COLUMNS = ["iter", "distance", "contraction_factor"]
GAMMA_COLUMNS = ["outer_iter", "sup_gamma_change", "gamma_anchor_error"]


def _local(hist: SolutionHistory) -> SolutionHistory:
    steps = hist.metadata.get("local_steps")
    return hist.truncated(int(steps)) if steps is not None else hist


class SimulateExperiment(Experiment):
    """Evolve the configured data and emit sampled frames."""

    name = "simulate"
    description = "Solve the gauged equation on the line or the half-line"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        eq = equation(config)
        g = data(config, grid)
        half = config.equation.domain is Domain.HALF
        if half:
            h = boundary(config, g)
            hist, trace = solve_halfline_gauged(
                g,
                h,
                grid.final_time,
                config.solver.tol,
                config.solver.max_iter,
                eq,
                boundary_options(config),
            )
            hist = _local(hist)
            check(report, config, "picard_iterations", float(trace.iterations))
        else:
            hist = solve_fullline(g, grid.final_time, grid.dt, eq)
        check(report, config, "pde_residual", residual_pde(hist, eq))
        check(report, config, "max_modulus", float(np.max(np.abs(hist.values))))
        return {"solution.csv": frame_table(hist, config.experiment.sample_times, half)}


class PicardTraceExperiment(Experiment):
    """Record iterate distances and contraction factors of the half-line Picard loop."""

    name = "picard-trace"
    description = "Contraction record of the half-line fixed-point iteration"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        g = data(config, grid, Domain.HALF)
        h = boundary(config, g)
        solver = config.solver
        args = (solver.tol, solver.max_iter, equation(config), boundary_options(config))
        if config.experiment.mode == "discover":
            _, trace = discover_local_time(g, h, grid.final_time, *args)
        else:
            _, trace = solve_halfline_gauged(g, h, grid.final_time, *args)
        factors = [float("nan"), *trace.contraction_factors]
        table = pd.DataFrame(
            {
                "iter": np.arange(1, trace.iterations + 1),
                "distance": trace.iterate_distances,
                "contraction_factor": factors[: trace.iterations],
            }
        )
        check(report, config, "converged", 1.0 if trace.converged else 0.0, 1.0, "min")
        check(report, config, "max_contraction_factor", max(trace.contraction_factors, default=0.0))
        decay = 1.0 if trace.geometric_after(1, 0.9) else 0.0
        check(report, config, "geometric_decay", decay, note="factors <= 0.9 after iterate 2")
        residual = trace.fixed_point_residual
        if residual is not None:
            check(report, config, "fixed_point_residual", residual, 10.0 * solver.tol)
        check(report, config, "T_used", trace.T_used)
        return {"picard.csv": table[PICARD_COLUMNS]}


class GammaFixedPointExperiment(Experiment):
    """Solve the ungauged half-line problem through the outer phase iteration."""

    name = "gamma-fixed-point"
    description = "Half-line solution of eq(alpha) via the gamma fixed point"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        G = data(config, grid, Domain.HALF)
        H = boundary(config, G)
        solver = config.solver
        result = GammaFixedPoint(
            G,
            H,
            grid.final_time,
            config.equation.alpha,
            solver.outer_tol,
            solver.tol,
            solver.max_iter,
            boundary_options(config),
        ).solve()
        table = pd.DataFrame(
            {
                "outer_iter": np.arange(1, result.outer_iterations + 1),
                "sup_gamma_change": result.outer_changes,
                "gamma_anchor_error": result.anchor_errors,
            }
        )
        check(report, config, "sup_gamma_change", result.outer_changes[-1], solver.outer_tol)
        rate = gamma_rate_identity_check(result.u, result.h, EquationForm(-1.0))
        check(report, config, "rate_identity_residual", rate)
        check(report, config, "pde_residual", residual_pde(result.q, equation(config)))
        check(report, config, "outer_iterations", float(result.outer_iterations))
        return {"gamma.csv": table[GAMMA_COLUMNS]}
