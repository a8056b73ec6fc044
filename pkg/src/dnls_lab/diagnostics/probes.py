"""Ratio probes for the gauge map and for the Duhamel boundary trace."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import pandas as pd

from dnls_lab.core.gauge import gauge_lipschitz_probe
from dnls_lab.core.grid import GridSpec, SolutionHistory
from dnls_lab.core.sampling import random_smooth_field
from dnls_lab.core.spectral import sobolev_norm_values, sobolev_norms
from dnls_lab.evolution.duhamel import HalflineProblem, duhamel_integral, duhamel_trace

logger = logging.getLogger(__name__)


def gauge_lipschitz_sweep(
    grid: GridSpec,
    rng: np.random.Generator,
    radii: Sequence[float],
    alpha: float,
    s: float = 1.0,
    pairs: int = 20,
) -> pd.DataFrame:
    """Max ||G f - G g||_{H^s} / ||f - g||_{H^s} over random pairs in each ball of radius R."""
    rows = []
    for radius in radii:
        worst = 0.0
        guarded = 0
        for _ in range(pairs):
            f = random_smooth_field(grid, rng, radius=radius * rng.uniform(0.2, 1.0), s=s)
            g = random_smooth_field(grid, rng, radius=radius * rng.uniform(0.2, 1.0), s=s)
            probe = gauge_lipschitz_probe(f, g, s, alpha)
            if probe.ratio is None:
                guarded += 1
                continue
            worst = max(worst, probe.ratio)
        rows.append({"radius": radius, "alpha": alpha, "max_ratio": worst, "guarded": guarded})
        logger.debug("lipschitz R=%.3g alpha=%.3g: max ratio %.4g", radius, alpha, worst)
    return pd.DataFrame(rows, columns=["radius", "alpha", "max_ratio", "guarded"])


def duhamel_trace_probe(problem: HalflineProblem, u: SolutionHistory, s: float) -> float:
    """||q||_{H^{(2s+1)/4}_t} / sup_t ||F(u)||_{H^s} for the Duhamel trace q of u."""
    grid = problem.grid
    forcing = problem.forcing(u.values)
    denominator = float(np.max(sobolev_norms(grid, forcing, s)))
    if denominator == 0.0:
        return 0.0
    q = duhamel_trace(problem, duhamel_integral(grid, forcing))
    n_time = 16
    while n_time < 2 * q.values.size:
        n_time *= 2
    time_grid = GridSpec(0.5 * n_time * q.dt, n_time)
    samples = np.zeros(n_time, dtype=np.complex128)
    origin = time_grid.origin_index
    samples[origin : origin + q.values.size] = q.values
    return sobolev_norm_values(time_grid, samples, (2.0 * s + 1.0) / 4.0) / denominator
