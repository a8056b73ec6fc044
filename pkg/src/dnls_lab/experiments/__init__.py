"""One experiment per lab subcommand."""

from dnls_lab.experiments.base import (
    EXIT_CHECK_FAILED,
    EXIT_INVALID,
    EXIT_NUMERICAL,
    EXIT_OK,
    Experiment,
    ExperimentOutput,
    ExperimentResult,
)
from dnls_lab.experiments.conservation import (
    ConservationCheckExperiment,
    SmoothingScanExperiment,
)
from dnls_lab.experiments.estimates import EstimateRatioExperiment, NormalFormCheckExperiment
from dnls_lab.experiments.evolution import (
    GammaFixedPointExperiment,
    PicardTraceExperiment,
    SimulateExperiment,
)
from dnls_lab.experiments.linear import GaugeCheckExperiment, KatoCheckExperiment

ALL_EXPERIMENTS: list[type[Experiment]] = [
    SimulateExperiment,
    SmoothingScanExperiment,
    ConservationCheckExperiment,
    GaugeCheckExperiment,
    KatoCheckExperiment,
    PicardTraceExperiment,
    NormalFormCheckExperiment,
    EstimateRatioExperiment,
    GammaFixedPointExperiment,
]

__all__ = [
    "Experiment",
    "ExperimentOutput",
    "ExperimentResult",
    "ALL_EXPERIMENTS",
    "EXIT_OK",
    "EXIT_INVALID",
    "EXIT_NUMERICAL",
    "EXIT_CHECK_FAILED",
    # Subcommands
    "SimulateExperiment",
    "SmoothingScanExperiment",
    "ConservationCheckExperiment",
    "GaugeCheckExperiment",
    "KatoCheckExperiment",
    "PicardTraceExperiment",
    "NormalFormCheckExperiment",
    "EstimateRatioExperiment",
    "GammaFixedPointExperiment",
]
