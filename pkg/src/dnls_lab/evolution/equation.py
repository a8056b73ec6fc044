"""The gauged DNLS family

    i u_t + u_xx + c1 u^2 conj(u)_x + c2 |u|^2 u_x + c3 |u|^4 u = 0,

with c1 = -i(2a+1), c2 = -i(2a+2), c3 = a(2a+1)/2 for gauge parameter a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dnls_lab.core.grid import ComplexArray, GridSpec
from dnls_lab.core.spectral import dealias


@dataclass(frozen=True)
class EquationForm:
    """Member of the gauged family selected by alpha."""

    alpha: float = -1.0

    @property
    def c1(self) -> complex:
        return -1j * (2.0 * self.alpha + 1.0)

    @property
    def c2(self) -> complex:
        return -1j * (2.0 * self.alpha + 2.0)

    @property
    def c3(self) -> float:
        return self.alpha * (2.0 * self.alpha + 1.0) / 2.0

    @property
    def boundary_flux_quartic(self) -> float:
        """Coefficient k in d/dt ||u||^2_{L^2(R+)} = 2 Im(conj(h) u_x(0)) - k |h|^4.

        Both derivative terms contribute Re int |u|^2 conj(u) u_x = -|h|^4 / 4 on R+,
        with weights 2(2a+1) and 2(2a+2), so k = +(4a+3)/2 (k = -1/2 at a = -1).
        """
        return (4.0 * self.alpha + 3.0) / 2.0

    def label(self) -> str:
        return f"alpha={self.alpha:g}"

    def nonlinearity(self, grid: GridSpec, u: ComplexArray) -> ComplexArray:
        """N(u) from pairwise dealiased products; last axis is space."""
        return DealiasedProducts(grid, u).nonlinearity(self)

    def pointwise_nonlinearity(self, u: ComplexArray, ux: ComplexArray) -> ComplexArray:
        """N(u) from given samples of u and u_x with no spectral filtering."""
        modulus_sq = np.abs(u) ** 2
        out = self.c1 * u * u * np.conj(ux) + self.c3 * modulus_sq**2 * u
        if self.c2 != 0:
            out = out + self.c2 * modulus_sq * ux
        return out


class DealiasedProducts:
    """Products of u, conj(u) and u_x, each truncated to |k| <= N/3.

    The input is filtered to |k| <= N/3 first and every pairwise product is filtered
    again before it enters the next one.
    """

    def __init__(self, grid: GridSpec, u: ComplexArray) -> None:
        self.grid = grid
        u_hat = dealias(grid, np.fft.fft(u, axis=-1))
        self.u = np.fft.ifft(u_hat, axis=-1)
        self.ux = np.fft.ifft(1j * grid.xi * u_hat, axis=-1)
        self._modulus_sq: ComplexArray | None = None

    def project(self, values: ComplexArray) -> ComplexArray:
        return np.fft.ifft(dealias(self.grid, np.fft.fft(values, axis=-1)), axis=-1)

    def product(self, a: ComplexArray, b: ComplexArray) -> ComplexArray:
        return self.project(a * b)

    @property
    def modulus_sq(self) -> ComplexArray:
        if self._modulus_sq is None:
            self._modulus_sq = self.product(self.u, np.conj(self.u))
        return self._modulus_sq

    def cubic_derivative(self) -> ComplexArray:
        """u^2 conj(u_x)."""
        return self.product(self.product(self.u, self.u), np.conj(self.ux))

    def modulus_derivative(self) -> ComplexArray:
        """|u|^2 u_x."""
        return self.product(self.modulus_sq, self.ux)

    def quintic(self) -> ComplexArray:
        """|u|^4 u."""
        return self.product(self.product(self.modulus_sq, self.modulus_sq), self.u)

    def nonlinearity(self, eq: EquationForm) -> ComplexArray:
        out = eq.c1 * self.cubic_derivative()
        if eq.c2 != 0:
            out = out + eq.c2 * self.modulus_derivative()
        if eq.c3 != 0:
            out = out + eq.c3 * self.quintic()
        return out
