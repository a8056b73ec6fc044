"""Result records produced by solvers and diagnostics."""

from typing import Any, Optional

from pydantic import BaseModel, Field


class PicardTrace(BaseModel):
    """Convergence record of a Picard iteration."""

    iterate_distances: list[float] = Field(default_factory=list)
    contraction_factors: list[float] = Field(default_factory=list)
    converged: bool = Field(default=False)
    T_used: float = Field(..., description="Local time of the run")
    tolerance: float = Field(default=1e-8)
    fixed_point_residual: Optional[float] = Field(
        default=None, description="sup_t ||Gamma u* - u*|| for the returned iterate"
    )

    @property
    def iterations(self) -> int:
        return len(self.iterate_distances)

    @property
    def final_distance(self) -> float:
        return self.iterate_distances[-1] if self.iterate_distances else 0.0

    def geometric_after(self, start: int, bound: float) -> bool:
        """All contraction factors from index start on are <= bound."""
        return all(f <= bound for f in self.contraction_factors[start:])


class SmoothingFit(BaseModel):
    """Fitted smoothing exponent from dyadic spectra."""

    s: float
    a_predicted: float
    a_measured: float
    dyadic_levels: int = Field(..., ge=4)
    residual_of_fit: float = Field(default=0.0)
    slope_linear: float = Field(default=0.0)
    slope_residual: float = Field(default=0.0)
    levels: list[int] = Field(default_factory=list)
    energy_linear: list[float] = Field(default_factory=list)
    energy_residual: list[float] = Field(default_factory=list)


class CheckOutcome(BaseModel):
    """One named scalar result against its threshold."""

    name: str
    value: float
    threshold: Optional[float] = None
    kind: str = Field(default="max")
    passed: bool = Field(default=True)
    informational: bool = Field(default=False)
    note: str = Field(default="")

    @classmethod
    def evaluate(
        cls, name: str, value: float, threshold: Optional[float], kind: str = "max", note: str = ""
    ) -> "CheckOutcome":
        if threshold is None:
            return cls(name=name, value=value, informational=True, note=note)
        passed = value <= threshold if kind == "max" else value >= threshold
        return cls(
            name=name, value=value, threshold=threshold, kind=kind, passed=passed, note=note
        )


class DiagnosticsReport(BaseModel):
    """Named results of one run plus its metadata."""

    subcommand: str
    outcomes: list[CheckOutcome] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def get_failed(self) -> list[CheckOutcome]:
        """Outcomes that missed their threshold."""
        return [o for o in self.outcomes if not o.passed]

    def add(self, outcome: CheckOutcome) -> None:
        self.outcomes.append(outcome)

    def value(self, name: str) -> Optional[float]:
        return next((o.value for o in self.outcomes if o.name == name), None)
