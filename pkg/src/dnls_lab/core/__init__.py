"""Grids, fields, transforms, norms and the gauge family."""

from dnls_lab.core.gauge import (
    LipschitzProbe,
    apply_gauge,
    gauge_compose_check,
    gauge_lipschitz_probe,
    gauge_values,
)
from dnls_lab.core.grid import (
    Field,
    GridSpec,
    Side,
    SobolevParams,
    SolutionHistory,
    Spectrum,
    TimeTrace,
    TraceRole,
    make_grid,
)
from dnls_lab.core.spectral import (
    EXTENSION_ID,
    cutoff_eta,
    cutoff_rho,
    extend,
    forward_transform,
    halfline_sobolev_norm,
    halfline_time_fourier,
    inverse_transform,
    restrict,
    sobolev_norm,
)

__all__ = [
    # Discretization
    "GridSpec",
    "make_grid",
    "Field",
    "Spectrum",
    "TimeTrace",
    "TraceRole",
    "SolutionHistory",
    "Side",
    "SobolevParams",
    # Spectral operations
    "forward_transform",
    "inverse_transform",
    "sobolev_norm",
    "halfline_sobolev_norm",
    "cutoff_eta",
    "cutoff_rho",
    "extend",
    "restrict",
    "halfline_time_fourier",
    "EXTENSION_ID",
    # Gauge
    "apply_gauge",
    "gauge_values",
    "gauge_compose_check",
    "gauge_lipschitz_probe",
    "LipschitzProbe",
]
