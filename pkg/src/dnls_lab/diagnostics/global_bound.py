"""Small-data H^1(R+) bound over long times by restarting the local solver."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from dnls_lab.core.grid import Field, Side, TimeTrace, TraceRole
from dnls_lab.core.spectral import halfline_sobolev_norm
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.evolution.picard import solve_halfline_gauged
from dnls_lab.linear.ibvp import BoundaryOptions
from dnls_lab.linear.propagators import trace_times

logger = logging.getLogger(__name__)


@dataclass
class GlobalBoundRun:
    """H^1(R+) norms sampled along the restarted run."""

    times: list[float] = field(default_factory=list)
    norms: list[float] = field(default_factory=list)
    restarts: int = 0

    @property
    def growth(self) -> float:
        """sup_t ||u(t)|| / ||u(0)||."""
        if not self.norms or self.norms[0] == 0.0:
            return 0.0
        return max(self.norms) / self.norms[0]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "h1_norm": self.norms})


def _shifted(H: TimeTrace, start: int, n_samples: int) -> TimeTrace:
    values = np.zeros(n_samples, dtype=np.complex128)
    piece = H.values[start : start + n_samples]
    values[: piece.size] = piece
    return TimeTrace(H.dt, values, TraceRole.BOUNDARY_H)


def _matched(g: Field, target: complex) -> Field:
    """Add (target - g(0)) exp(-x^2) so the restart data meets the boundary value."""
    bump = np.exp(-(g.grid.x**2))
    return g.replace(g.values + (target - g.at_origin) * bump, Side.HALF_LINE)


def global_bound_run(
    g: Field,
    H: TimeTrace,
    total_time: float,
    local_time: float,
    tol: float = 1e-8,
    max_iter: int = 50,
    options: BoundaryOptions | None = None,
    sample_every: int = 10,
) -> GlobalBoundRun:
    """Advance eq(alpha = -1) on [0, total_time] in local steps of local_time.

    H must be sampled on the grid's dt over [0, total_time + 2 eta_support].
    """
    options = options or BoundaryOptions()
    dt = g.grid.dt
    n_local = int(round(local_time / dt))
    n_segments = int(np.ceil(total_time / (n_local * dt) - 1e-9))
    n_trace = trace_times(dt, options.eta_support).size
    run = GlobalBoundRun()
    current = g.replace(g.values, Side.HALF_LINE)
    for segment in range(n_segments):
        start = segment * n_local
        h = _shifted(H, start, n_trace)
        if segment > 0:
            current = _matched(current, h.values[0])
        hist, trace = solve_halfline_gauged(
            current, h, n_local * dt, tol, max_iter, EquationForm(-1.0), options
        )
        frames = sorted(set(range(0, n_local + 1, max(1, sample_every))) | {n_local})
        for j in frames:
            if segment > 0 and j == 0:
                continue
            run.times.append((start + j) * dt)
            run.norms.append(halfline_sobolev_norm(hist.frame(j), 1.0))
        current = Field(g.grid, hist.values[n_local], Side.HALF_LINE)
        run.restarts += 1
        logger.debug("segment %d: %d picard iterates", segment, trace.iterations)
    logger.info("global run to t=%.3g: H1 growth %.4g", total_time, run.growth)
    return run
