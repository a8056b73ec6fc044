"""Windowed X^{s,b} norms and empirical ratios for the multilinear smoothing estimates.

The norm is taken of eta(t/T_w) u on the sampled interval [0, 2 T_w], zero-padded in
time, so it approximates the restriction norm only up to a window factor. Ratios use
the same window on both sides.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from dnls_lab.core.grid import ComplexArray, GridSpec, SolutionHistory
from dnls_lab.core.sampling import random_smooth_field
from dnls_lab.core.spectral import (
    cutoff_eta,
    forward_values,
    japanese,
    sobolev_norm,
    sobolev_norms,
)
from dnls_lab.errors import InvalidParameterError, WindowViolation
from dnls_lab.evolution.equation import DealiasedProducts
from dnls_lab.linear.propagators import free_evolution
from dnls_lab.normal_form.resonant_sums import (
    bandlimit_index,
    compute_B,
    compute_NR1,
    compute_NR2,
    compute_R,
    compute_w,
)

logger = logging.getLogger(__name__)

RATIO_COLUMNS = ["estimate_id", "s", "a", "b", "sample", "lhs", "rhs", "ratio"]


class EstimateId(str, Enum):
    """Multilinear smoothing estimates that can be probed."""

    QUINTIC = "smooth"  # || |u|^4 u ||_{X^{s+a,-b}} vs ||u||_{X^{s,b}}^5
    CUBIC_DERIVATIVE = "smooth3"  # || u^2 conj(u_x) ||_{X^{s+a,-b}} vs ||u||_{X^{s,b}}^3
    NORMAL_FORM = "smooth5"  # B(u), R(u), |u|^4 u and NR1 + NR2 in the smoothed norms
    W_BOUND = "b38"  # || w ||_{X^{s,-3/8}} vs ||u||^3 + ||u||^5 in X^{s,b}


def check_estimate_window(estimate: EstimateId, s: float, a: float, b: float) -> None:
    """Raise WindowViolation when (s, a, b) lies outside the estimate's stated range."""
    if estimate is EstimateId.W_BOUND:
        if not s > 0.5:
            raise WindowViolation(f"{estimate.value} needs s > 1/2, got s={s}")
        if not 0.0 < b < 1.0:
            raise WindowViolation(f"{estimate.value} needs 0 < b < 1, got b={b}")
        return
    if not 0.0 < b < 0.5:
        raise WindowViolation(f"{estimate.value} needs 0 < b < 1/2, got b={b}")
    if estimate is EstimateId.QUINTIC:
        edge = min(4.0 * s, 0.5)
        if not (s > 0.0 and a < edge):
            raise WindowViolation(f"smooth needs s > 0 and a < {edge:.4g}, got s={s}, a={a}")
        return
    cap = 0.25 if estimate is EstimateId.CUBIC_DERIVATIVE else 0.5
    edge = min(2.0 * s - 1.0, cap)
    if not (s > 0.5 and a < edge):
        raise WindowViolation(
            f"{estimate.value} needs s > 1/2 and a < {edge:.4g}, got s={s}, a={a}"
        )


def xsb_values(
    grid: GridSpec, values: ComplexArray, s: float, b: float, window: float
) -> float:
    """Windowed X^{s,b} norm of frames sampled at t_j = j dt covering [0, 2 window]."""
    n_window = int(round(2.0 * window / grid.dt)) + 1
    if values.shape[0] < n_window:
        raise InvalidParameterError(
            f"history covers {values.shape[0] - 1} steps, the window needs {n_window - 1}"
        )
    frames = values[:n_window]
    if not np.any(frames):
        return 0.0
    t = grid.dt * np.arange(n_window)
    windowed = frames * cutoff_eta(t / window)[:, None]
    n_time = 2 * n_window
    spectrum = forward_values(grid, windowed)
    full = grid.dt * np.fft.fft(spectrum, n=n_time, axis=0)
    tau = 2.0 * np.pi * np.fft.fftfreq(n_time, d=grid.dt)
    modulation = japanese(tau[:, None] + grid.xi[None, :] ** 2) ** (2.0 * b)
    weight = japanese(grid.xi)[None, :] ** (2.0 * s) * modulation
    dtau = 2.0 * np.pi / (n_time * grid.dt)
    total = np.sum(weight * np.abs(full) ** 2) * grid.dxi / (2.0 * np.pi) * dtau / (2.0 * np.pi)
    return float(np.sqrt(total))


def xsb_norm(hist: SolutionHistory, s: float, b: float, window: float) -> float:
    """(sum <xi>^{2s} <tau + xi^2>^{2b} |(eta(t/T_w) u)^(xi, tau)|^2)^{1/2}."""
    return xsb_values(hist.grid, hist.values, s, b, window)


def random_spacetime_field(
    grid: GridSpec, rng: np.random.Generator, window: float, radius: float = 0.5
) -> SolutionHistory:
    """Free waves plus an off-shell time-modulated part, band-limited for the lattice sums."""
    n_steps = int(round(2.0 * window / grid.dt))
    grid = grid.with_time(grid.dt, n_steps)
    band = bandlimit_index(grid)
    g1 = random_smooth_field(grid, rng, radius=radius, s=1.0, max_index=band)
    g2 = random_smooth_field(grid, rng, radius=0.5 * radius, s=1.0, max_index=band)
    omega = rng.uniform(0.0, 20.0)
    t = grid.times
    values = free_evolution(g1, t) + np.cos(omega * t)[:, None] * free_evolution(g2, t)
    return SolutionHistory(grid, values)


@dataclass
class RatioProbe:
    """All sampled ratios of one estimate, keyed by term.

    smooth5 carries four terms: B at the first frame, then R(u), |u|^4 u and NR1 + NR2
    over the window. Every other estimate has a single term named after it.
    """

    estimate: EstimateId
    s: float
    a: float
    b: float
    rows: list[dict[str, float | int | str]] = field(default_factory=list)
    ratios: dict[str, list[float]] = field(default_factory=dict)

    @property
    def max_ratios(self) -> dict[str, float]:
        """Largest ratio per term over nonzero samples."""
        return {term: max(values, default=0.0) for term, values in self.ratios.items()}

    @property
    def max_ratio(self) -> float:
        return max(self.max_ratios.values(), default=0.0)


def _normal_form_terms(
    hist: SolutionHistory, s: float, a: float, b: float, window: float
) -> dict[str, tuple[float, float]]:
    grid = hist.grid
    u0 = hist.frame(0)
    b_sides = (sobolev_norm(compute_B(u0), s + a), sobolev_norm(u0, s) ** 3)
    sides = {EstimateId.NORMAL_FORM.value: b_sides}
    base = xsb_values(grid, hist.values, s, b, window)
    frames = list(hist.frames)
    w = [compute_w(u) for u in frames]
    resonant = np.stack([compute_R(u).values for u in frames])
    nr = np.stack(
        [compute_NR1(u, wu).values + compute_NR2(u, wu).values for u, wu in zip(frames, w)]
    )
    sup_hs = float(np.max(sobolev_norms(grid, hist.values, s)))
    w_norm = xsb_values(grid, np.stack([wu.values for wu in w]), s, -0.375, window)
    quintic = DealiasedProducts(grid, hist.values).quintic()
    sides["smooth5_R"] = (xsb_values(grid, resonant, s + a, -b, window), sup_hs**3)
    sides["smooth5_quintic"] = (xsb_values(grid, quintic, s + a, -b, window), base**5)
    sides["smooth5_NR"] = (xsb_values(grid, nr, s + a, -b, window), base**2 * w_norm)
    return sides


def _sides(
    estimate: EstimateId, hist: SolutionHistory, s: float, a: float, b: float, window: float
) -> dict[str, tuple[float, float]]:
    if estimate is EstimateId.NORMAL_FORM:
        return _normal_form_terms(hist, s, a, b, window)
    grid = hist.grid
    base = xsb_values(grid, hist.values, s, b, window)
    if estimate is EstimateId.W_BOUND:
        w = np.stack([compute_w(frame).values for frame in hist.frames])
        sides = (xsb_values(grid, w, s, -0.375, window), base**3 + base**5)
    else:
        products = DealiasedProducts(grid, hist.values)
        if estimate is EstimateId.QUINTIC:
            sides = (xsb_values(grid, products.quintic(), s + a, -b, window), base**5)
        else:
            sides = (xsb_values(grid, products.cubic_derivative(), s + a, -b, window), base**3)
    return {estimate.value: sides}


def multilinear_ratio_probe(
    estimate_id: EstimateId | str,
    samples: int,
    s: float,
    a: float,
    b: float,
    grid: GridSpec,
    rng: np.random.Generator,
    window: float = 0.25,
) -> RatioProbe:
    """LHS / RHS over random band-limited space-time fields; zero fields are skipped."""
    estimate = EstimateId(estimate_id)
    check_estimate_window(estimate, s, a, b)
    probe = RatioProbe(estimate, s, a, b)
    for sample in range(samples):
        hist = random_spacetime_field(grid, rng, window)
        for term, (lhs, rhs) in _sides(estimate, hist, s, a, b, window).items():
            ratio = lhs / rhs if rhs > 0.0 else 0.0
            if rhs > 0.0:
                probe.ratios.setdefault(term, []).append(ratio)
            probe.rows.append(
                {
                    "estimate_id": term,
                    "s": s,
                    "a": a,
                    "b": b,
                    "sample": sample,
                    "lhs": lhs,
                    "rhs": rhs,
                    "ratio": ratio,
                }
            )
    logger.info("%s: max ratio %.4g over %d samples", estimate.value, probe.max_ratio, samples)
    return probe
