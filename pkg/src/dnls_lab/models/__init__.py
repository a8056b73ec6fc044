"""Configuration and result models."""

from dnls_lab.models.results import CheckOutcome, DiagnosticsReport, PicardTrace, SmoothingFit
from dnls_lab.models.run_config import (
    BoundaryData,
    BoundaryGenerator,
    CheckSpec,
    DataBlock,
    Domain,
    EquationBlock,
    ExperimentBlock,
    GridBlock,
    InitialData,
    InitialGenerator,
    OutputBlock,
    RunConfig,
    SolverBlock,
)

__all__ = [
    # Run configuration
    "RunConfig",
    "GridBlock",
    "EquationBlock",
    "Domain",
    "DataBlock",
    "InitialData",
    "InitialGenerator",
    "BoundaryData",
    "BoundaryGenerator",
    "SolverBlock",
    "CheckSpec",
    "ExperimentBlock",
    "OutputBlock",
    # Results
    "PicardTrace",
    "SmoothingFit",
    "CheckOutcome",
    "DiagnosticsReport",
]
