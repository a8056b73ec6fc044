"""Quantitative checks: smoothing fits, identities, energies, X^{s,b} norms and probes."""

from dnls_lab.diagnostics.energy import (
    EnergyVariant,
    conservation_series,
    energy_functional,
    gn_candidate,
    gn_coercivity_probe,
)
from dnls_lab.diagnostics.global_bound import GlobalBoundRun, global_bound_run
from dnls_lab.diagnostics.identities import (
    boundary_It,
    energy_identity_residual,
    gauge_halfline_history,
    identity_series,
    mass_identity_residual,
)
from dnls_lab.diagnostics.probes import duhamel_trace_probe, gauge_lipschitz_sweep
from dnls_lab.diagnostics.smoothing import dyadic_energies, smoothing_fit
from dnls_lab.diagnostics.xsb import (
    EstimateId,
    RatioProbe,
    check_estimate_window,
    multilinear_ratio_probe,
    xsb_norm,
)

__all__ = [
    # Smoothing
    "dyadic_energies",
    "smoothing_fit",
    # Conservation and identities
    "EnergyVariant",
    "energy_functional",
    "conservation_series",
    "gn_candidate",
    "gn_coercivity_probe",
    "gauge_halfline_history",
    "identity_series",
    "mass_identity_residual",
    "energy_identity_residual",
    "boundary_It",
    "GlobalBoundRun",
    "global_bound_run",
    # Norms and estimates
    "xsb_norm",
    "EstimateId",
    "RatioProbe",
    "check_estimate_window",
    "multilinear_ratio_probe",
    "gauge_lipschitz_sweep",
    "duhamel_trace_probe",
]
