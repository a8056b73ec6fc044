"""Discretization types shared by every solver and diagnostic."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from dnls_lab.errors import GridMismatchError, InvalidParameterError

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]


class Side(str, Enum):
    """Which line a field lives on."""

    FULL_LINE = "full_line"
    HALF_LINE = "half_line"


class TraceRole(str, Enum):
    """What a time trace represents."""

    BOUNDARY_H = "boundary_h"
    BOUNDARY_H_UNGAUGED = "boundary_H"
    TRACE_D0 = "trace_D0"
    GAMMA_PHASE = "gamma_phase"
    DUHAMEL_TRACE = "duhamel_trace"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [-L, L) with a time step for histories.

    The frequency lattice is xi_k = pi k / L for k in {-N/2, ..., N/2 - 1},
    stored in FFT order.
    """

    half_length: float
    n_points: int
    dt: float = 1e-3
    n_steps: int = 1

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.n_points) or self.n_points < 16:
            raise InvalidParameterError(
                f"n_points must be a power of two >= 16, got {self.n_points}"
            )
        if not self.half_length > 0:
            raise InvalidParameterError(f"half_length must be positive, got {self.half_length}")
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if self.n_steps < 1:
            raise InvalidParameterError(f"n_steps must be >= 1, got {self.n_steps}")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def dxi(self) -> float:
        return np.pi / self.half_length

    @property
    def x(self) -> RealArray:
        return -self.half_length + self.dx * np.arange(self.n_points)

    @property
    def k(self) -> NDArray[np.int64]:
        """Signed integer lattice indices in FFT order."""
        return np.fft.fftfreq(self.n_points, d=1.0 / self.n_points).astype(np.int64)

    @property
    def xi(self) -> RealArray:
        return self.dxi * self.k.astype(np.float64)

    @property
    def origin_index(self) -> int:
        """Grid index of x = 0."""
        return self.n_points // 2

    @property
    def times(self) -> RealArray:
        return self.dt * np.arange(self.n_steps + 1)

    @property
    def final_time(self) -> float:
        return self.dt * self.n_steps

    def with_time(self, dt: float, n_steps: int) -> GridSpec:
        """Same spatial grid with a different time discretization."""
        return GridSpec(self.half_length, self.n_points, dt, n_steps)

    def same_space(self, other: GridSpec) -> bool:
        return self.half_length == other.half_length and self.n_points == other.n_points

    def require_same_space(self, other: GridSpec) -> None:
        if not self.same_space(other):
            raise GridMismatchError(
                f"grids differ: (L={self.half_length}, N={self.n_points}) vs "
                f"(L={other.half_length}, N={other.n_points})"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "L": self.half_length,
            "N": self.n_points,
            "dx": self.dx,
            "dt": self.dt,
            "n_steps": self.n_steps,
        }


def make_grid(L: float, N: int, dt: float, n_steps: int) -> GridSpec:
    """Build a GridSpec, raising InvalidParameterError on bad input."""
    return GridSpec(half_length=float(L), n_points=int(N), dt=float(dt), n_steps=int(n_steps))


@dataclass(frozen=True, eq=False)
class Field:
    """Complex samples of a function on the spatial grid."""

    grid: GridSpec
    values: ComplexArray
    side: Side = Side.FULL_LINE

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"field has shape {values.shape}, grid expects ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("field contains non-finite values")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: GridSpec, side: Side = Side.FULL_LINE) -> Field:
        return cls(grid, np.zeros(grid.n_points, dtype=np.complex128), side)

    @classmethod
    def from_function(cls, grid: GridSpec, func: Any, side: Side = Side.FULL_LINE) -> Field:
        """Sample a callable of x on the grid."""
        return cls(grid, np.asarray(func(grid.x), dtype=np.complex128), side)

    def replace(self, values: ComplexArray, side: Side | None = None) -> Field:
        return Field(self.grid, values, self.side if side is None else side)

    def scaled(self, factor: complex) -> Field:
        return self.replace(factor * self.values)

    def __add__(self, other: Field) -> Field:
        self.grid.require_same_space(other.grid)
        return self.replace(self.values + other.values)

    def __sub__(self, other: Field) -> Field:
        self.grid.require_same_space(other.grid)
        return self.replace(self.values - other.values)

    @property
    def positive_mask(self) -> NDArray[np.bool_]:
        return self.grid.x >= 0.0

    @property
    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    @property
    def at_origin(self) -> complex:
        return complex(self.values[self.grid.origin_index])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Samples of the continuum Fourier transform on the frequency lattice (FFT order)."""

    grid: GridSpec
    values: ComplexArray

    @property
    def xi(self) -> RealArray:
        return self.grid.xi


@dataclass(frozen=True, eq=False)
class TimeTrace:
    """Complex samples of a function of time on a uniform grid starting at t0."""

    dt: float
    values: ComplexArray
    role: TraceRole = TraceRole.BOUNDARY_H
    t0: float = 0.0

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise InvalidParameterError(f"trace dt must be positive, got {self.dt}")
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != 1:
            raise InvalidParameterError("trace values must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("trace contains non-finite values")
        if self.role is TraceRole.GAMMA_PHASE and values.size:
            if float(np.max(np.abs(values.imag))) >= 1e-12:
                raise InvalidParameterError("gamma phase trace must be real-valued")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls,
        func: Any,
        dt: float,
        n_samples: int,
        role: TraceRole = TraceRole.BOUNDARY_H,
    ) -> TimeTrace:
        t = dt * np.arange(n_samples)
        return cls(dt, np.asarray(func(t), dtype=np.complex128), role)

    @classmethod
    def zeros(cls, dt: float, n_samples: int, role: TraceRole = TraceRole.BOUNDARY_H) -> TimeTrace:
        return cls(dt, np.zeros(n_samples, dtype=np.complex128), role)

    @property
    def times(self) -> RealArray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def t_max(self) -> float:
        return self.t0 + self.dt * (self.values.size - 1)

    def with_values(self, values: ComplexArray, role: TraceRole | None = None) -> TimeTrace:
        return TimeTrace(self.dt, values, self.role if role is None else role, self.t0)

    def padded(self, n_samples: int) -> TimeTrace:
        """Zero-pad or cut to exactly n_samples."""
        out = np.zeros(n_samples, dtype=np.complex128)
        m = min(n_samples, self.values.size)
        out[:m] = self.values[:m]
        return self.with_values(out)


@dataclass(frozen=True, eq=False)
class SolutionHistory:
    """Frames u(., t_j) at t_j = j dt, j = 0..n_steps, on one grid."""

    grid: GridSpec
    values: ComplexArray
    side: Side = Side.FULL_LINE
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.complex128)
        expected = (self.grid.n_steps + 1, self.grid.n_points)
        if values.shape != expected:
            raise GridMismatchError(f"history has shape {values.shape}, expected {expected}")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: GridSpec, side: Side = Side.FULL_LINE) -> SolutionHistory:
        return cls(grid, np.zeros((grid.n_steps + 1, grid.n_points), dtype=np.complex128), side)

    @property
    def n_frames(self) -> int:
        return int(self.values.shape[0])

    @property
    def times(self) -> RealArray:
        return self.grid.times

    @property
    def frames(self) -> list[Field]:
        return [self.frame(j) for j in range(self.n_frames)]

    def frame(self, j: int) -> Field:
        return Field(self.grid, self.values[j], self.side)

    def replace(self, values: ComplexArray, **metadata: Any) -> SolutionHistory:
        return SolutionHistory(self.grid, values, self.side, {**self.metadata, **metadata})

    def truncated(self, n_steps: int) -> SolutionHistory:
        """Keep frames 0..n_steps."""
        grid = self.grid.with_time(self.grid.dt, n_steps)
        return SolutionHistory(grid, self.values[: n_steps + 1], self.side, dict(self.metadata))

    def boundary_trace(self, role: TraceRole = TraceRole.BOUNDARY_H) -> TimeTrace:
        """Values at x = 0 over time."""
        return TimeTrace(self.grid.dt, self.values[:, self.grid.origin_index].copy(), role)


@dataclass(frozen=True)
class SobolevParams:
    """Regularity s, smoothing gain a, modulation exponent b and gauge parameter alpha."""

    s: float = 1.0
    a: float = 0.0
    b: float = 0.45
    alpha: float = -1.0

    def check_local_theory(self) -> None:
        if not 0.5 < self.s < 2.5 or self.s == 1.5:
            raise InvalidParameterError(
                f"local theory needs 1/2 < s < 5/2, s != 3/2; got s={self.s}"
            )

    def predicted_gain(self, half_line: bool) -> float:
        """Upper edge of the smoothing window."""
        if half_line:
            return min(2.5 - self.s, 0.25, 2.0 * self.s - 1.0)
        return min(0.5, 2.0 * self.s - 1.0)
