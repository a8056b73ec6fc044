"""Base experiment implementation."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from dnls_lab.core.grid import Field, GridSpec, SolutionHistory, TimeTrace, make_grid
from dnls_lab.core.spectral import EXTENSION_ID
from dnls_lab.errors import DnlsLabError, InsufficientRangeError, NumericalFailure
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.linear.ibvp import BoundaryOptions
from dnls_lab.linear.propagators import trace_times
from dnls_lab.models import CheckOutcome, DiagnosticsReport, Domain, RunConfig
from dnls_lab.orchestration.generators import boundary_trace, initial_field, make_rng

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_CHECK_FAILED = 3


@dataclass
class ExperimentOutput:
    """Tables keyed by CSV file name plus the diagnostics report."""

    report: DiagnosticsReport
    tables: dict[str, pd.DataFrame] = field(default_factory=dict)


@dataclass
class ExperimentResult:
    """Result from experiment execution."""

    success: bool
    output: ExperimentOutput | None
    error: str | None = None
    exit_code: int = EXIT_OK


class Experiment(ABC):
    """Base class for lab subcommands."""

    name: str
    description: str

    def execute(self, config: RunConfig) -> ExperimentResult:
        """Run the experiment and map errors onto exit codes.

        Lab parameter errors exit 1; numerical failures and any other exception exit 2.

        Args:
            config: Validated run configuration

        Returns:
            ExperimentResult carrying the tables and report, or the failure
        """
        report = DiagnosticsReport(subcommand=self.name, metadata=run_metadata(config))
        output = ExperimentOutput(report)
        try:
            output.tables = self.run(config, report)
        except (NumericalFailure, InsufficientRangeError) as e:
            logger.error("%s: %s", self.name, e)
            return ExperimentResult(False, output, f"{type(e).__name__}: {e}", EXIT_NUMERICAL)
        except DnlsLabError as e:
            logger.error("%s: %s", self.name, e)
            return ExperimentResult(False, output, f"{type(e).__name__}: {e}", EXIT_INVALID)
        except Exception as e:
            # numpy, scipy or pandas failures still end in a manifest
            logger.exception("%s: unexpected failure", self.name)
            return ExperimentResult(False, output, f"{type(e).__name__}: {e}", EXIT_NUMERICAL)
        if not report.passed:
            names = ", ".join(o.name for o in report.get_failed())
            return ExperimentResult(False, output, f"checks failed: {names}", EXIT_CHECK_FAILED)
        return ExperimentResult(True, output)

    @abstractmethod
    def run(self, config: RunConfig, report: DiagnosticsReport) -> dict[str, pd.DataFrame]:
        """Compute, record outcomes on the report and return the CSV tables."""
        ...


def run_metadata(config: RunConfig) -> dict[str, object]:
    return {
        "grid": build_grid(config).to_dict(),
        "alpha": config.equation.alpha,
        "domain": config.equation.domain.value,
        "seed": config.data.initial.seed,
        "extension": EXTENSION_ID,
    }


def check(
    report: DiagnosticsReport,
    config: RunConfig,
    name: str,
    value: float,
    default: float | None = None,
    kind: str = "max",
    note: str = "",
) -> CheckOutcome:
    """Record value against the configured tolerance for name, else against default."""
    declared = config.tolerance(name)
    if declared is not None:
        outcome = CheckOutcome.evaluate(name, value, declared.tolerance, declared.kind, note)
    else:
        outcome = CheckOutcome.evaluate(name, value, default, kind, note)
    report.add(outcome)
    if not outcome.passed:
        logger.warning("check %s failed: %.6g vs %.6g", name, value, outcome.threshold)
    return outcome


def ratio_check(
    report: DiagnosticsReport,
    config: RunConfig,
    name: str,
    value: float,
    reference: float,
    low: float,
    high: float | None = None,
) -> float:
    """Record value / reference as `name` (min low) and, with high, as `name_max` (max high)."""
    ratio = value / reference if reference > 0.0 else float("inf")
    check(report, config, name, ratio, low, "min")
    if high is not None:
        check(report, config, f"{name}_max", ratio, high)
    return ratio


def build_grid(config: RunConfig) -> GridSpec:
    g = config.grid
    return make_grid(g.L, g.N, g.dt, g.n_steps)


def refined(config: RunConfig) -> RunConfig:
    """Same run with (dt, dx) halved and the same final time."""
    g = config.grid
    grid = g.model_copy(update={"N": 2 * g.N, "dt": 0.5 * g.dt, "n_steps": 2 * g.n_steps})
    return config.model_copy(update={"grid": grid})


def boundary_options(config: RunConfig) -> BoundaryOptions:
    solver = config.solver
    return BoundaryOptions(
        eta_support=solver.eta_support,
        order=solver.quadrature_order,
        oversampling=solver.beta_oversampling,
        min_nodes=solver.min_beta_nodes,
        s=solver.sobolev_s,
    )


def equation(config: RunConfig) -> EquationForm:
    return EquationForm(config.equation.alpha)


def data(config: RunConfig, grid: GridSpec, domain: Domain | None = None) -> Field:
    return initial_field(config.data.initial, grid, domain or config.equation.domain)


def boundary(config: RunConfig, g: Field, horizon: float = 0.0) -> TimeTrace:
    """Boundary data covering [0, horizon + 2 eta_support]."""
    n = trace_times(g.grid.dt, config.solver.eta_support).size
    n += int(round(horizon / g.grid.dt))
    return boundary_trace(config.data.boundary, g, n)


def frame_table(hist: SolutionHistory, n_samples: int, half_line: bool) -> pd.DataFrame:
    """Long-format rows t, x, re_u, im_u for n_samples evenly spaced frames."""
    grid = hist.grid
    n_samples = min(n_samples, hist.n_frames)
    picks = np.unique(np.linspace(0, hist.n_frames - 1, n_samples).round().astype(int))
    start = grid.origin_index if half_line else 0
    x = grid.x[start:]
    parts = []
    for j in picks:
        u = hist.values[j, start:]
        parts.append(
            pd.DataFrame({"t": hist.times[j], "x": x, "re_u": u.real, "im_u": u.imag})
        )
    return pd.concat(parts, ignore_index=True)


def experiment_rng(config: RunConfig) -> np.random.Generator:
    """Generator for probe sampling, seeded from data.initial.seed (0 when unset)."""
    seed = config.data.initial.seed
    return make_rng(0 if seed is None else seed)
