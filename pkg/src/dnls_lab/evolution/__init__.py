"""Nonlinear solvers for the gauged family on the line and the half-line."""

from dnls_lab.evolution.duhamel import HalflineProblem, duhamel_map
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.evolution.fullline import residual_pde, solve_fullline, step_fullline
from dnls_lab.evolution.gamma import (
    GammaFixedPoint,
    GammaSolution,
    gamma_rate_identity_check,
    solve_halfline_dnls,
)
from dnls_lab.evolution.picard import PicardSolver, discover_local_time, solve_halfline_gauged

__all__ = [
    "EquationForm",
    # Full line
    "step_fullline",
    "solve_fullline",
    "residual_pde",
    # Half line
    "HalflineProblem",
    "duhamel_map",
    "PicardSolver",
    "solve_halfline_gauged",
    "discover_local_time",
    # Ungauged half line
    "GammaFixedPoint",
    "GammaSolution",
    "solve_halfline_dnls",
    "gamma_rate_identity_check",
]
