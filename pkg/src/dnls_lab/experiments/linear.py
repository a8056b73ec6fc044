"""Gauge algebra and Kato trace smoothing checks."""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from dnls_lab.core.gauge import apply_gauge, gauge_compose_check
from dnls_lab.core.sampling import random_smooth_field
from dnls_lab.core.spectral import refine_field
from dnls_lab.diagnostics.probes import duhamel_trace_probe, gauge_lipschitz_sweep
from dnls_lab.evolution.duhamel import HalflineProblem
from dnls_lab.evolution.picard import PicardSolver
from dnls_lab.experiments.base import (
    Experiment,
    boundary,
    boundary_options,
    build_grid,
    check,
    data,
    equation,
    experiment_rng,
    ratio_check,
)
from dnls_lab.linear.ibvp import kato_trace_check
from dnls_lab.models import DiagnosticsReport, Domain, RunConfig

logger = logging.getLogger(__name__)

LIPSCHITZ_COLUMNS = ["radius", "alpha", "max_ratio", "guarded"]
KATO_COLUMNS = ["sample", "ratio"]


class GaugeCheckExperiment(Experiment):
    """Modulus invariance, composition and local Lipschitz ratios of the gauge family."""

    name = "gauge-check"
    description = "Algebra and Lipschitz probes of G_alpha"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        rng = experiment_rng(config)
        exp = config.experiment
        modulus_error = 0.0
        compose_error = 0.0
        for _ in range(exp.samples):
            f = random_smooth_field(grid, rng, radius=float(rng.uniform(0.1, 2.0)), s=exp.s)
            scale = f.max_modulus
            for alpha in exp.alphas:
                gauged = apply_gauge(f, alpha)
                drift = float(np.max(np.abs(np.abs(gauged.values) - np.abs(f.values))))
                modulus_error = max(modulus_error, drift / scale)
                for beta in exp.betas:
                    compose_error = max(compose_error, gauge_compose_check(f, alpha, beta) / scale)
        check(report, config, "modulus_error", modulus_error, 1e-12)
        check(report, config, "compose_error", compose_error, 1e-10)
        sweeps = [
            gauge_lipschitz_sweep(grid, rng, exp.radii, alpha, exp.s, pairs=exp.samples)
            for alpha in exp.alphas
        ]
        table = pd.concat(sweeps, ignore_index=True)
        check(report, config, "lipschitz_max_ratio", float(table["max_ratio"].max()))
        return {"lipschitz.csv": table[LIPSCHITZ_COLUMNS]}


class KatoCheckExperiment(Experiment):
    """Trace regularity of the free flow and of the Duhamel term at x = 0.

    With experiment.refine every sample is interpolated onto twice the points and the
    max ratio must move by at most 20%.
    """

    name = "kato-check"
    description = "Kato smoothing ratios for W_R g and the Duhamel trace"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        rng = experiment_rng(config)
        exp = config.experiment
        eta_support = config.solver.eta_support
        fields = [random_smooth_field(grid, rng, radius=1.0, s=exp.s) for _ in range(exp.samples)]
        ratios = [kato_trace_check(g, exp.s, eta_support=eta_support) for g in fields]
        table = pd.DataFrame({"sample": np.arange(exp.samples), "ratio": ratios})
        worst = float(np.max(ratios))
        check(report, config, "kato_max_ratio", worst)
        if exp.refine:
            fine = max(
                kato_trace_check(refine_field(g), exp.s, eta_support=eta_support) for g in fields
            )
            ratio_check(report, config, "kato_grid_stability", fine, worst, 0.8, 1.2)
        if config.equation.domain is Domain.HALF:
            g = data(config, grid, Domain.HALF)
            problem = HalflineProblem(
                g, boundary(config, g), grid.final_time, equation(config), boundary_options(config)
            )
            hist, _ = PicardSolver(problem, config.solver.tol, config.solver.max_iter).solve()
            check(report, config, "duhamel_trace_ratio", duhamel_trace_probe(problem, hist, exp.s))
        return {"kato.csv": table[KATO_COLUMNS]}
