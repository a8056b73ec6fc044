"""Normal form identity checks and multilinear estimate ratio probes."""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from dnls_lab.core.grid import Field, make_grid
from dnls_lab.core.spectral import sobolev_norm
from dnls_lab.diagnostics.xsb import RATIO_COLUMNS, RatioProbe, multilinear_ratio_probe
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.evolution.fullline import solve_fullline
from dnls_lab.experiments.base import (
    Experiment,
    build_grid,
    check,
    data,
    experiment_rng,
    ratio_check,
)
from dnls_lab.models import DiagnosticsReport, Domain, RunConfig
from dnls_lab.normal_form.resonant_sums import (
    bandlimit,
    compute_B,
    normal_form_residual,
    resonance_factorization_error,
    trilinear_partition_error,
)
from dnls_lab.settings import settings

logger = logging.getLogger(__name__)

NORMAL_FORM_COLUMNS = ["name", "value"]
_SINGLE_MODE = 3


class NormalFormCheckExperiment(Experiment):
    """Resonance algebra, trilinear partition and the integrated normal form identity."""

    name = "normalform-check"
    description = "Normal form transformation checks on the line"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        rng = experiment_rng(config)
        cutoff = config.solver.resonance_cutoff
        workers = settings.workers
        g = bandlimit(data(config, grid, Domain.FULL))

        values = {
            "factorization_error": resonance_factorization_error(grid, rng),
            "partition_error": trilinear_partition_error(g, cutoff, workers),
        }
        mode = Field(grid, np.exp(1j * grid.dxi * _SINGLE_MODE * grid.x))
        values["single_mode_B"] = sobolev_norm(compute_B(mode, cutoff, workers=workers), 0.0)

        alpha = EquationForm(-1.0)
        hist = solve_fullline(g, grid.final_time, grid.dt, alpha)
        residual = normal_form_residual(hist, cutoff, workers=workers)
        values["identity_residual"] = residual

        check(report, config, "factorization_error", values["factorization_error"], 1e-9)
        check(report, config, "partition_error", values["partition_error"], 1e-10)
        check(report, config, "single_mode_B", values["single_mode_B"], 1e-12)
        check(report, config, "identity_residual", residual)
        if config.experiment.refine:
            fine = solve_fullline(g, grid.final_time, 0.5 * grid.dt, alpha)
            fine_residual = normal_form_residual(fine, cutoff, workers=workers)
            values["refinement_ratio"] = ratio_check(
                report, config, "refinement_ratio", residual, fine_residual, 2.8, 5.2
            )
        table = pd.DataFrame({"name": list(values), "value": list(values.values())})
        return {"normalform.csv": table[NORMAL_FORM_COLUMNS]}


class EstimateRatioExperiment(Experiment):
    """Empirical LHS / RHS ratios of the multilinear smoothing estimates.

    With experiment.refine the probe is repeated with twice the samples and on a grid
    with twice the points; each term's max ratio must stay within a factor [0.5, 1.5].
    """

    name = "estimate-ratio"
    description = "Ratio probes over random band-limited space-time fields"

    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        grid = build_grid(config)
        rng = experiment_rng(config)
        exp = config.experiment
        window = 0.5 * grid.final_time
        rows = []
        for estimate in exp.estimates:
            probe = multilinear_ratio_probe(
                estimate, exp.samples, exp.s, exp.a, exp.b, grid, rng, window
            )
            rows.extend(probe.rows)
            for term, worst in probe.max_ratios.items():
                check(report, config, f"max_ratio_{term}", worst)
            if exp.refine:
                self._stability(config, report, probe, window)
        return {"ratios.csv": pd.DataFrame(rows, columns=RATIO_COLUMNS)}

    @staticmethod
    def _stability(
        config: RunConfig, report: DiagnosticsReport, probe: RatioProbe, window: float
    ) -> None:
        grid = build_grid(config)
        exp = config.experiment
        estimate, s, a, b = probe.estimate, exp.s, exp.a, exp.b
        more = multilinear_ratio_probe(
            estimate, 2 * exp.samples, s, a, b, grid, experiment_rng(config), window
        )
        fine_grid = make_grid(grid.half_length, 2 * grid.n_points, grid.dt, grid.n_steps)
        finer = multilinear_ratio_probe(
            estimate, exp.samples, s, a, b, fine_grid, experiment_rng(config), window
        )
        for term, worst in probe.max_ratios.items():
            sampled = more.max_ratios.get(term, 0.0)
            gridded = finer.max_ratios.get(term, 0.0)
            ratio_check(report, config, f"sample_stability_{term}", sampled, worst, 0.5, 1.5)
            ratio_check(report, config, f"grid_stability_{term}", gridded, worst, 0.5, 1.5)
