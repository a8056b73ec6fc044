"""Normal form transformation on the line and its identity residual."""

from dnls_lab.normal_form.resonant_sums import (
    Region,
    ResonantSums,
    bandlimit,
    compute_B,
    compute_NR1,
    compute_NR2,
    compute_R,
    compute_w,
    normal_form_residual,
    resonance_factor,
    resonance_factorization_error,
    trilinear_partition_error,
)

__all__ = [
    "Region",
    "ResonantSums",
    "bandlimit",
    "resonance_factor",
    "resonance_factorization_error",
    "compute_B",
    "compute_R",
    "compute_w",
    "compute_NR1",
    "compute_NR2",
    "trilinear_partition_error",
    "normal_form_residual",
]
