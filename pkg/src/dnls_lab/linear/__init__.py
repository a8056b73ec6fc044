"""Free and boundary propagators and the linear half-line problem."""

from dnls_lab.linear.boundary import BoundaryPropagator, boundary_w1, boundary_w2
from dnls_lab.linear.ibvp import (
    BoundaryOptions,
    kato_trace_check,
    linear_ibvp_solve,
    pde_residual_linear,
)
from dnls_lab.linear.propagators import corrector_p, free_propagate, free_trace

__all__ = [
    "free_propagate",
    "free_trace",
    "corrector_p",
    "BoundaryPropagator",
    "boundary_w1",
    "boundary_w2",
    "BoundaryOptions",
    "linear_ibvp_solve",
    "pde_residual_linear",
    "kato_trace_check",
]
