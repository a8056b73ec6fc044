"""Differentiation by parts on the line.

All sums run over lattice triples (k1, k3) with k2 = k1 + k3 - k inside the lattice,

    S(a1, a2, a3)(xi) = (dxi / 2pi)^2 sum xi2 a1(xi1) conj(a2(xi2)) a3(xi3) m(xi, xi1, xi3),

where m = 1/r with r = 2 (xi - xi1)(xi - xi3) on the non-resonant region
|xi - xi1|, |xi - xi3| >= c, and m = 1 for numerator sums. With a1 = a2 = a3 = u_hat the
unrestricted sum is the transform of i u^2 conj(u_x).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, SolutionHistory
from dnls_lab.core.spectral import forward_values, inverse_values, spectral_derivative
from dnls_lab.errors import BandlimitViolation
from dnls_lab.evolution.equation import EquationForm
from dnls_lab.settings import settings

logger = logging.getLogger(__name__)

_ALPHA = EquationForm(-1.0)


class Region(str, Enum):
    """Which part of the constraint set a sum covers and with which multiplier."""

    NONRESONANT = "nonresonant"  # |xi - xi1|, |xi - xi3| >= c, divided by r
    NONRESONANT_NUMERATOR = "nonresonant_numerator"
    RESONANT = "resonant"  # complement, no denominator


def resonance_factor(xi0: ArrayLike, xi1: ArrayLike, xi3: ArrayLike) -> RealArray:
    """2 (xi0 - xi1)(xi0 - xi3).

    Equals xi0^2 - xi1^2 + xi2^2 - xi3^2 on the constraint xi2 = xi1 + xi3 - xi0.
    """
    xi0 = np.asarray(xi0, dtype=np.float64)
    return 2.0 * (xi0 - np.asarray(xi1)) * (xi0 - np.asarray(xi3))


def resonance_factorization_error(
    grid: GridSpec, rng: np.random.Generator, n_samples: int = 100_000
) -> float:
    """max |factorized - direct| / (1 + |direct|) over random lattice quadruples."""
    half = grid.n_points // 2
    k0, k1, k3 = rng.integers(-half, half, size=(3, n_samples))
    xi0, xi1, xi3 = (grid.dxi * k for k in (k0, k1, k3))
    xi2 = xi1 + xi3 - xi0
    direct = xi0**2 - xi1**2 + xi2**2 - xi3**2
    error = np.abs(resonance_factor(xi0, xi1, xi3) - direct) / (1.0 + np.abs(direct))
    return float(np.max(error))


def bandlimit_index(grid: GridSpec) -> int:
    """Largest |k| for which cubic products stay on the lattice without wraparound."""
    return (grid.n_points // 2 - 1) // 3


def bandlimit(u: Field) -> Field:
    """Zero every mode beyond bandlimit_index."""
    keep = np.abs(u.grid.k) <= bandlimit_index(u.grid)
    return u.replace(np.fft.ifft(np.where(keep, np.fft.fft(u.values), 0.0)))


def check_bandlimit(u: Field, rel_tol: float = 1e-10) -> None:
    spectrum = np.abs(np.fft.fft(u.values))
    peak = float(np.max(spectrum)) if spectrum.size else 0.0
    if peak == 0.0:
        return
    outside = np.abs(u.grid.k) > bandlimit_index(u.grid)
    tail = float(np.max(spectrum[outside]))
    if tail > rel_tol * peak:
        raise BandlimitViolation(
            f"modes beyond |k| = {bandlimit_index(u.grid)} carry {tail / peak:.2e} of the peak"
        )


def _support(spectrum: ComplexArray) -> np.ndarray:
    """Indices of modes above roundoff; the rest contribute nothing measurable."""
    magnitude = np.abs(spectrum)
    peak = float(np.max(magnitude)) if magnitude.size else 0.0
    return np.nonzero(magnitude > 1e-15 * peak)[0]


class ResonantSums:
    """Direct O(N^3) trilinear lattice sums, parallel over output frequencies.

    Each output frequency is reduced on its own in a fixed order, so results do not
    depend on the worker count.
    """

    def __init__(self, grid: GridSpec, cutoff: float = 1.0, workers: int | None = None) -> None:
        self.grid = grid
        self.cutoff = cutoff
        self.workers = max(1, workers if workers is not None else settings.workers)
        half = grid.n_points // 2
        self.k = np.arange(-half, half)
        self.xi = grid.dxi * self.k.astype(np.float64)
        self.scale = (grid.dxi / (2.0 * np.pi)) ** 2
        self.min_abs_denominator = float("inf")

    def _row(
        self,
        out_index: int,
        a1: ComplexArray,
        a2c: ComplexArray,
        a3: ComplexArray,
        s1: np.ndarray,
        s3: np.ndarray,
        region: Region,
    ) -> tuple[complex, float]:
        n = self.grid.n_points
        xi = self.xi[out_index]
        xi1 = self.xi[s1][:, None]
        xi3 = self.xi[s3][None, :]
        idx2 = s1[:, None] + s3[None, :] - out_index
        valid = (idx2 >= 0) & (idx2 < n)
        idx2 = np.clip(idx2, 0, n - 1)
        d1 = xi - xi1
        d3 = xi - xi3
        nonresonant = (np.abs(d1) >= self.cutoff) & (np.abs(d3) >= self.cutoff)
        xi2 = xi1 + xi3 - xi
        terms = xi2 * a1[s1][:, None] * a2c[idx2] * a3[s3][None, :]
        smallest = float("inf")
        if region is Region.RESONANT:
            return complex(np.sum(np.where(valid & ~nonresonant, terms, 0.0))), smallest
        mask = valid & nonresonant
        if region is Region.NONRESONANT:
            r = 2.0 * d1 * d3
            if np.any(mask):
                smallest = float(np.min(np.abs(r[mask])))
            terms = terms / np.where(mask, r, 1.0)
        return complex(np.sum(np.where(mask, terms, 0.0))), smallest

    def evaluate(
        self, a1: ComplexArray, a2: ComplexArray, a3: ComplexArray, region: Region
    ) -> ComplexArray:
        """The lattice sum for spectra given in FFT order; result in FFT order."""
        c1, c2, c3 = (np.fft.fftshift(a) for a in (a1, a2, a3))
        a2c = np.conj(c2)
        s1 = _support(c1)
        s3 = _support(c3)
        n = self.grid.n_points
        out = np.zeros(n, dtype=np.complex128)
        if s1.size == 0 or s3.size == 0 or not np.any(c2):
            return out

        def row(j: int) -> tuple[complex, float]:
            return self._row(j, c1, a2c, c3, s1, s3, region)

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(row, range(n)))
        else:
            rows = [row(j) for j in range(n)]
        out[:] = [value for value, _ in rows]
        smallest = min(bound for _, bound in rows)
        self.min_abs_denominator = min(self.min_abs_denominator, smallest)
        return np.fft.ifftshift(self.scale * out)


def _spectrum(u: Field) -> ComplexArray:
    return forward_values(u.grid, u.values)


def _field(grid: GridSpec, spectrum: ComplexArray) -> Field:
    return Field(grid, inverse_values(grid, spectrum))


def _sums(u: Field, cutoff: float, check: bool, workers: int | None) -> ResonantSums:
    if check:
        check_bandlimit(u)
    return ResonantSums(u.grid, cutoff, workers)


def compute_B(
    u: Field, cutoff: float = 1.0, check: bool = True, workers: int | None = None
) -> Field:
    """B(u): the non-resonant sum divided by r."""
    a = _spectrum(u)
    return _field(u.grid, _sums(u, cutoff, check, workers).evaluate(a, a, a, Region.NONRESONANT))


def compute_R(
    u: Field, cutoff: float = 1.0, check: bool = True, workers: int | None = None
) -> Field:
    """R(u): the resonant-region numerator sum."""
    a = _spectrum(u)
    return _field(u.grid, _sums(u, cutoff, check, workers).evaluate(a, a, a, Region.RESONANT))


def nonresonant_numerator(
    u: Field, cutoff: float = 1.0, check: bool = True, workers: int | None = None
) -> Field:
    """The numerator of B summed over the non-resonant region."""
    a = _spectrum(u)
    sums = _sums(u, cutoff, check, workers)
    return _field(u.grid, sums.evaluate(a, a, a, Region.NONRESONANT_NUMERATOR))


def trilinear_physical(u: Field) -> Field:
    """i u^2 conj(u_x) from physical-space products with no filtering."""
    ux = spectral_derivative(u.grid, u.values, 1)
    return u.replace(1j * u.values**2 * np.conj(ux))


def compute_w(u: Field) -> Field:
    """w = -i u^2 conj(u_x) - |u|^4 u / 2 from dealiased products."""
    return u.replace(-_ALPHA.nonlinearity(u.grid, u.values))


def compute_NR1(
    u: Field, w: Field, cutoff: float = 1.0, check: bool = True, workers: int | None = None
) -> Field:
    """2 S(u, u, w) / r: w in the xi3 slot."""
    a, b = _spectrum(u), _spectrum(w)
    sums = _sums(u, cutoff, check, workers)
    return _field(u.grid, 2.0 * sums.evaluate(a, a, b, Region.NONRESONANT))


def compute_NR2(
    u: Field, w: Field, cutoff: float = 1.0, check: bool = True, workers: int | None = None
) -> Field:
    """-S(u, w, u) / r: w in the conjugated xi2 slot."""
    a, b = _spectrum(u), _spectrum(w)
    sums = _sums(u, cutoff, check, workers)
    return _field(u.grid, -sums.evaluate(a, b, a, Region.NONRESONANT))


def trilinear_partition_error(
    u: Field, cutoff: float = 1.0, workers: int | None = None
) -> float:
    """||T - R - (non-resonant numerator)|| / ||T|| with T from physical products."""
    check_bandlimit(u)
    total = _spectrum(trilinear_physical(u))
    resonant = _spectrum(compute_R(u, cutoff, False, workers))
    numerator = _spectrum(nonresonant_numerator(u, cutoff, False, workers))
    scale = float(np.linalg.norm(total))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(total - resonant - numerator)) / scale


def _l2_from_spectrum(grid: GridSpec, spectrum: ComplexArray) -> float:
    return float(np.sqrt(np.sum(np.abs(spectrum) ** 2) * grid.dxi / (2.0 * np.pi)))


def normal_form_residual(
    hist: SolutionHistory,
    cutoff: float = 1.0,
    n_samples: int = 3,
    workers: int | None = None,
) -> float:
    """max over sampled interior times of the L^2 mismatch in

        i d/dt exp(-it Delta)(u - B(u)) = -exp(-it Delta)(R(u) + |u|^4 u / 2 + NR1 + NR2).

    The history must come from the alpha = -1 full-line solver with band-limited data.
    R(u) + |u|^4 u / 2 is not summed directly: it is taken as the dealiased flow
    nonlinearity minus the non-resonant numerator, which is how the discrete flow
    produces it, so the identity is exact up to the time differencing. On |k| <= N/3
    the two forms agree to rounding once the trilinear partition holds.
    """
    if hist.n_frames < 3 or not np.any(hist.values):
        return 0.0
    grid = hist.grid
    check_bandlimit(hist.frame(0))
    sums = ResonantSums(grid, cutoff, workers)
    phase_xi = grid.xi**2
    frames = np.unique(np.linspace(1, hist.n_frames - 2, n_samples).round().astype(int))

    def profile(j: int) -> ComplexArray:
        a = _spectrum(hist.frame(j))
        b = sums.evaluate(a, a, a, Region.NONRESONANT)
        return np.exp(1j * hist.times[j] * phase_xi) * (a - b)

    worst = 0.0
    for j in frames:
        u = hist.frame(int(j))
        a = _spectrum(u)
        w = _spectrum(compute_w(u))
        lhs = 1j * (profile(j + 1) - profile(j - 1)) / (2.0 * grid.dt)
        flow = _spectrum(u.replace(_ALPHA.nonlinearity(grid, u.values)))
        numerator = sums.evaluate(a, a, a, Region.NONRESONANT_NUMERATOR)
        nr = 2.0 * sums.evaluate(a, a, w, Region.NONRESONANT) - sums.evaluate(
            a, w, a, Region.NONRESONANT
        )
        rhs = -np.exp(1j * hist.times[j] * phase_xi) * (flow - numerator + nr)
        mismatch = _l2_from_spectrum(grid, lhs - rhs)
        logger.debug("normal form residual at t=%.4g: %.3e", hist.times[j], mismatch)
        worst = max(worst, mismatch)
    return worst
