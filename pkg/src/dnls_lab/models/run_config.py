"""Run configuration model."""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class Domain(str, Enum):
    """Spatial domain of a run."""

    FULL = "full"
    HALF = "half"


class InitialGenerator(str, Enum):
    """Initial-data generators."""

    ZERO = "zero"
    GAUSSIAN = "gaussian"
    THRESHOLD = "threshold"
    RANDOM_SMOOTH = "random_smooth"


class BoundaryGenerator(str, Enum):
    """Boundary-data generators for half-line runs."""

    ZERO = "zero"
    FREE_TRACE = "free_trace"
    GAUSSIAN_TRACE = "gaussian_trace"
    MATCHED_EXPONENTIAL = "matched_exponential"


RANDOM_GENERATORS = {InitialGenerator.THRESHOLD, InitialGenerator.RANDOM_SMOOTH}
ESTIMATE_IDS = {"smooth", "smooth3", "smooth5", "b38"}
MODES = {"fullline", "halfline", "global", "discover", "coercivity"}


class GridBlock(BaseModel):
    """Spatial and temporal discretization."""

    L: float = Field(..., gt=0, description="Grid covers [-L, L)")
    N: int = Field(..., ge=16, description="Number of points, a power of two")
    dt: float = Field(..., gt=0, description="Time step")
    n_steps: int = Field(..., ge=1, description="Number of time steps")

    @field_validator("N")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("N must be a power of two")
        return value

    @property
    def final_time(self) -> float:
        return self.dt * self.n_steps


class EquationBlock(BaseModel):
    """Which member of the gauged family, on which domain."""

    alpha: float = Field(default=-1.0, description="Gauge parameter")
    domain: Domain = Field(default=Domain.FULL)


class InitialData(BaseModel):
    """Initial-data generator selection."""

    generator: InitialGenerator = Field(default=InitialGenerator.ZERO)
    amplitude: float = Field(default=0.05, ge=0)
    width: float = Field(default=1.0, gt=0)
    center: float = Field(default=0.0)
    wavenumber: float = Field(default=0.0)
    s: float = Field(default=1.0, description="Regularity index for threshold/random data")
    seed: Optional[int] = Field(default=None, description="Required for random generators")

    @model_validator(mode="after")
    def _seed_for_random(self) -> "InitialData":
        if self.generator in RANDOM_GENERATORS and self.seed is None:
            raise ValueError(f"seed is required for generator '{self.generator.value}'")
        return self


class BoundaryData(BaseModel):
    """Boundary-data generator selection."""

    generator: BoundaryGenerator = Field(default=BoundaryGenerator.ZERO)
    amplitude: float = Field(default=0.0)
    rate: float = Field(default=1.0, gt=0)


class DataBlock(BaseModel):
    """Initial and boundary data."""

    initial: InitialData = Field(default_factory=InitialData)
    boundary: BoundaryData = Field(default_factory=BoundaryData)


class SolverBlock(BaseModel):
    """Solver knobs with defaults."""

    eta_support: float = Field(default=1.0, gt=0, description="Plateau half-width of eta")
    tol: float = Field(default=1e-8, gt=0)
    max_iter: int = Field(default=50, ge=1)
    outer_tol: float = Field(default=1e-6, gt=0)
    sobolev_s: float = Field(default=1.0, description="Regularity used for Picard distances")
    quadrature_order: int = Field(default=8, ge=2)
    beta_oversampling: float = Field(default=4.0, gt=0)
    min_beta_nodes: int = Field(default=1000, ge=16)
    resonance_cutoff: float = Field(default=1.0, gt=0)


class CheckSpec(BaseModel):
    """A named check with its threshold."""

    name: str
    tolerance: float = Field(..., gt=0)
    kind: str = Field(default="max", pattern="^(max|min)$", description="max: value <= tol")


class ExperimentBlock(BaseModel):
    """Subcommand-specific parameters."""

    s: float = Field(default=1.0)
    a: float = Field(default=0.4)
    b: float = Field(default=0.45)
    samples: int = Field(default=20, ge=1)
    estimates: list[str] = Field(default_factory=lambda: ["smooth"])
    radii: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    alphas: list[float] = Field(default_factory=lambda: [-1.0, -0.5, 0.0])
    betas: list[float] = Field(default_factory=lambda: [0.5, -0.5, 1.0, -1.0])
    sample_times: int = Field(default=5, ge=1)
    total_time: float = Field(default=10.0, gt=0)
    local_time: float = Field(default=0.2, gt=0)
    mode: str = Field(default="fullline", description="Variant selector for the subcommand")
    refine: bool = Field(
        default=False, description="Repeat refined or with doubled samples for stability checks"
    )

    @field_validator("estimates")
    @classmethod
    def _known_estimates(cls, value: list[str]) -> list[str]:
        unknown = sorted(set(value) - ESTIMATE_IDS)
        if unknown:
            expected = sorted(ESTIMATE_IDS)
            raise ValueError(f"unknown estimate ids {unknown}; expected one of {expected}")
        return value

    @field_validator("mode")
    @classmethod
    def _known_mode(cls, value: str) -> str:
        if value not in MODES:
            raise ValueError(f"unknown mode '{value}'; expected one of {sorted(MODES)}")
        return value


class OutputBlock(BaseModel):
    """Where outputs go."""

    directory: Optional[str] = Field(
        default=None, description="Defaults to <DNLS_LAB_OUTPUT_DIR>/<subcommand>"
    )
    formats: list[str] = Field(default_factory=lambda: ["csv", "json"])


class RunConfig(BaseModel):
    """Complete configuration of one run."""

    grid: GridBlock
    equation: EquationBlock = Field(default_factory=EquationBlock)
    data: DataBlock = Field(default_factory=DataBlock)
    solver: SolverBlock = Field(default_factory=SolverBlock)
    checks: list[CheckSpec] = Field(default_factory=list)
    experiment: ExperimentBlock = Field(default_factory=ExperimentBlock)
    output: OutputBlock = Field(default_factory=OutputBlock)

    model_config = {"extra": "forbid"}

    def tolerance(self, name: str) -> Optional[CheckSpec]:
        """The declared check with this name, if any."""
        return next((c for c in self.checks if c.name == name), None)

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json")
