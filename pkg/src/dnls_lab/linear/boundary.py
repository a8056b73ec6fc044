"""Boundary operators W1 and W2 of the linear half-line problem.

For boundary data k(t), t >= 0,

    W1 k(x, t) = (1/pi) int_0^inf exp(-i b^2 t + i b x) b k_hat(-b^2) db
    W2 k(x, t) = (1/pi) int_0^inf exp(i b^2 t - b x) rho(b x) b k_hat(b^2) db

with k_hat the half-line time transform. W1 k + W2 k has trace k at x = 0 and solves
i u_t + u_xx = 0.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import roots_legendre

from dnls_lab.core.grid import ComplexArray, Field, GridSpec, RealArray, TimeTrace
from dnls_lab.core.spectral import cutoff_rho, halfline_time_fourier
from dnls_lab.errors import BandwidthWarning

logger = logging.getLogger(__name__)

_BLOCK = 2048


@dataclass(frozen=True)
class BetaQuadrature:
    """Composite Gauss-Legendre rule on [0, beta_max]."""

    nodes: RealArray
    weights: RealArray
    beta_max: float

    @classmethod
    def build(
        cls,
        beta_max: float,
        max_wavenumber: float,
        order: int = 8,
        oversampling: float = 4.0,
        min_nodes: int = 1000,
    ) -> BetaQuadrature:
        """Panels sized so each integrand wavelength gets 2*oversampling nodes.

        The first panel is split into three graded sub-panels.
        """
        wavelength = 2.0 * math.pi / max(max_wavenumber, 1e-12)
        width = wavelength * order / (2.0 * oversampling)
        n_panels = max(math.ceil(beta_max / width), math.ceil(min_nodes / order), 1)
        edges = np.linspace(0.0, beta_max, n_panels + 1)
        first = edges[1]
        edges = np.concatenate([[0.0, first / 4.0, first / 2.0], edges[1:]])
        ref_nodes, ref_weights = roots_legendre(order)
        left, right = edges[:-1, None], edges[1:, None]
        half = 0.5 * (right - left)
        nodes = (left + half * (ref_nodes[None, :] + 1.0)).ravel()
        weights = (half * ref_weights[None, :]).ravel()
        return cls(nodes=nodes, weights=weights, beta_max=beta_max)

    @property
    def size(self) -> int:
        return int(self.nodes.size)


class BoundaryPropagator:
    """Precomputed W1/W2 evaluator for one boundary trace.

    The beta rule resolves the phase b^2 (t - t') + b x over the trace support,
    the evaluation times and |x| <= L. Evaluation is a blocked matrix product with
    a fixed block order, so results do not depend on how callers split the work.
    """

    def __init__(
        self,
        trace: TimeTrace,
        x: ArrayLike,
        t_eval_max: float,
        order: int = 8,
        oversampling: float = 4.0,
        min_nodes: int = 1000,
    ) -> None:
        self.trace = trace
        self.x = np.asarray(x, dtype=np.float64)
        beta_max = math.sqrt(math.pi / trace.dt)
        span = trace.t_max + t_eval_max
        max_wavenumber = 2.0 * beta_max * span + float(np.max(np.abs(self.x), initial=0.0))
        self.quadrature = BetaQuadrature.build(
            beta_max, max_wavenumber, order, oversampling, min_nodes
        )
        beta = self.quadrature.nodes
        self.is_zero = not np.any(trace.values)
        if self.is_zero:
            self._c1 = np.zeros(beta.size, dtype=np.complex128)
            self._c2 = np.zeros(beta.size, dtype=np.complex128)
        else:
            hat_minus = np.asarray(halfline_time_fourier(trace, -(beta**2)))
            hat_plus = np.asarray(halfline_time_fourier(trace, beta**2))
            scale = self.quadrature.weights * beta / math.pi
            self._c1 = scale * hat_minus
            self._c2 = scale * hat_plus
            self._check_bandwidth(beta * np.abs(hat_minus), beta * np.abs(hat_plus))
        logger.debug(
            "boundary propagator: %d beta nodes, beta_max=%.4g", beta.size, beta_max
        )

    @staticmethod
    def _check_bandwidth(*integrands: RealArray) -> None:
        for integrand in integrands:
            peak = float(np.max(integrand))
            if peak > 0 and integrand[-1] > 1e-8 * peak:
                warnings.warn(
                    f"beta integrand at beta_max is {integrand[-1] / peak:.2e} of its peak",
                    BandwidthWarning,
                    stacklevel=3,
                )
                return

    def _blocked(
        self, coeff: ComplexArray, sign: float, times: RealArray, kind: int
    ) -> ComplexArray:
        beta = self.quadrature.nodes
        out = np.zeros((times.size, self.x.size), dtype=np.complex128)
        if self.is_zero:
            return out
        for start in range(0, beta.size, _BLOCK):
            b = beta[start : start + _BLOCK]
            temporal = coeff[start : start + _BLOCK] * np.exp(sign * 1j * np.outer(times, b**2))
            bx = np.outer(b, self.x)
            if kind == 1:
                spatial = np.exp(1j * bx)
            else:
                damped = np.exp(-np.maximum(bx, -2.0)) * cutoff_rho(bx)
                spatial = np.where(bx > -2.0, damped, 0.0)
            out += temporal @ spatial
        return out

    def w1(self, times: ArrayLike) -> ComplexArray:
        """W1 k at every (t, x); shape (len(times), len(x))."""
        return self._blocked(self._c1, -1.0, np.atleast_1d(np.asarray(times, float)), 1)

    def w2(self, times: ArrayLike) -> ComplexArray:
        """W2 k at every (t, x); shape (len(times), len(x))."""
        return self._blocked(self._c2, 1.0, np.atleast_1d(np.asarray(times, float)), 2)

    def evaluate(self, times: ArrayLike) -> ComplexArray:
        """W1 k + W2 k."""
        return self.w1(times) + self.w2(times)


def boundary_w1(h: TimeTrace, grid: GridSpec, t: float, min_nodes: int = 1000) -> Field:
    """W1 h on the spatial grid at time t."""
    prop = BoundaryPropagator(h, grid.x, t, min_nodes=min_nodes)
    return Field(grid, prop.w1([t])[0])


def boundary_w2(h: TimeTrace, grid: GridSpec, t: float, min_nodes: int = 1000) -> Field:
    """W2 h on the spatial grid at time t; x < 0 values are not contractual."""
    prop = BoundaryPropagator(h, grid.x, t, min_nodes=min_nodes)
    return Field(grid, prop.w2([t])[0])
