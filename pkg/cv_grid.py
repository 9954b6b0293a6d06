# -*- coding: utf-8 -*-
"""
Uniform coordinate/momentum grids and the unitary Fourier pair.

Conventions:
    Coordinate points   x_j = x_min + j*dx,          j = 0..N-1   (x_max excluded)
    Momentum points     p_k = (k - N/2)*dp,          dp = 2*pi/(N*dx)
    Forward kernel      psi~(p) = (2*pi)^(-1/2) * Integral dx exp(-i*p*x) psi(x)

With the periodic convention the discrete transform is exactly unitary, so
Parseval holds to machine precision.
"""

import enum
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy import fft

import config
from cat_errors import (
    InvalidExtentError,
    InvalidSizeError,
    RepresentationError,
    ZeroStateError,
)

logger = logging.getLogger(__name__)


class Representation(enum.Enum):
    COORDINATE = 'coordinate'
    MOMENTUM = 'momentum'


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid1D:
    """Periodic uniform lattice; the conjugate momentum lattice is derived from it."""
    x_min: float
    n_points: int
    dx: float

    def __post_init__(self):
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise InvalidExtentError(f"grid step must be positive, got dx={self.dx}")
        if (not isinstance(self.n_points, (int, np.integer)) or self.n_points < config.MIN_GRID_POINTS
                or not _is_power_of_two(int(self.n_points))):
            raise InvalidSizeError(
                f"grid size must be a power of two >= {config.MIN_GRID_POINTS}, got {self.n_points}")

    @property
    def length(self) -> float:
        return self.n_points * self.dx

    @property
    def x_max(self) -> float:
        return self.x_min + self.length

    @property
    def dp(self) -> float:
        return 2 * math.pi / self.length

    @property
    def p_max(self) -> float:
        """Largest representable momentum magnitude (Nyquist)."""
        return self.dp * (self.n_points // 2)

    @cached_property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @cached_property
    def p(self) -> np.ndarray:
        return self.dp * (np.arange(self.n_points) - self.n_points // 2)

    def momentum_grid(self) -> 'Grid1D':
        """The conjugate momentum lattice as a grid in its own right."""
        return Grid1D(-(self.n_points // 2) * self.dp, self.n_points, self.dp)

    @property
    def edge_points(self) -> int:
        return max(1, math.ceil(config.EDGE_FRACTION * self.n_points))

    def matches(self, other: 'Grid1D') -> bool:
        return (self.n_points == other.n_points
                and math.isclose(self.x_min, other.x_min, rel_tol=1e-12, abs_tol=1e-12)
                and math.isclose(self.dx, other.dx, rel_tol=1e-12))

    def describe(self) -> str:
        return f"{self.x_min!r},{self.x_max!r},{self.n_points}"


def make_grid(x_min: float, x_max: float, n_points: int) -> Grid1D:
    """Build a periodic grid covering [x_min, x_max) with n_points samples."""
    if not (math.isfinite(x_min) and math.isfinite(x_max)) or x_max <= x_min:
        raise InvalidExtentError(f"grid extent must satisfy x_max > x_min, got ({x_min}, {x_max})")
    if isinstance(n_points, bool) or not isinstance(n_points, (int, np.integer)):
        raise InvalidSizeError(f"grid size must be an integer, got {n_points!r}")
    if n_points < config.MIN_GRID_POINTS or not _is_power_of_two(int(n_points)):
        raise InvalidSizeError(
            f"grid size must be a power of two >= {config.MIN_GRID_POINTS}, got {n_points}")
    return Grid1D(float(x_min), int(n_points), (x_max - x_min) / n_points)


def parse_grid(text: str) -> Grid1D:
    """Parse the command-line form "xmin,xmax,n"."""
    try:
        x_min, x_max, n_points = text.split(',')
        bounds = float(x_min), float(x_max)
        size = int(n_points)
    except ValueError:
        raise InvalidSizeError(f"grid must look like 'xmin,xmax,n', got {text!r}") from None
    return make_grid(bounds[0], bounds[1], size)


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Single-mode amplitudes on a grid; `grid` is always the coordinate lattice."""
    grid: Grid1D
    amps: np.ndarray
    rep: Representation = Representation.COORDINATE

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise InvalidSizeError(
                f"expected {self.grid.n_points} amplitudes, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, 'amps', amps)

    @property
    def points(self) -> np.ndarray:
        return self.grid.x if self.rep is Representation.COORDINATE else self.grid.p

    @property
    def step(self) -> float:
        return self.grid.dx if self.rep is Representation.COORDINATE else self.grid.dp

    def density(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm_squared(self) -> float:
        return float(np.sum(self.density()) * self.step)

    def normalized(self) -> 'Wavefunction':
        norm_sq = self.norm_squared()
        if not norm_sq > 0:
            raise ZeroStateError("cannot normalize a zero wavefunction")
        return Wavefunction(self.grid, self.amps / math.sqrt(norm_sq), self.rep)

    def mean_position(self) -> float:
        psi = self if self.rep is Representation.COORDINATE else to_coordinate(self)
        return float(np.sum(psi.grid.x * psi.density()) * psi.step / psi.norm_squared())

    def mean_momentum(self) -> float:
        psi = self if self.rep is Representation.MOMENTUM else to_momentum(self)
        return float(np.sum(psi.grid.p * psi.density()) * psi.step / psi.norm_squared())


def _along(vector: np.ndarray, ndim: int, axis: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = vector.size
    return vector.reshape(shape)


def fourier_forward(amps: np.ndarray, grid: Grid1D, axis: int = -1) -> np.ndarray:
    """Coordinate -> momentum amplitudes along one axis."""
    axis = axis % amps.ndim
    spectrum = fft.fftshift(fft.fft(amps, axis=axis), axes=axis)
    phase = np.exp(-1j * grid.p * grid.x_min) * (grid.dx / math.sqrt(2 * math.pi))
    return spectrum * _along(phase, amps.ndim, axis)


def fourier_inverse(amps: np.ndarray, grid: Grid1D, axis: int = -1) -> np.ndarray:
    """Momentum -> coordinate amplitudes along one axis; exact inverse of fourier_forward."""
    axis = axis % amps.ndim
    phase = np.exp(1j * grid.p * grid.x_min) * (math.sqrt(2 * math.pi) / grid.dx)
    spectrum = amps * _along(phase, amps.ndim, axis)
    return fft.ifft(fft.ifftshift(spectrum, axes=axis), axis=axis)


def to_momentum(psi: Wavefunction) -> Wavefunction:
    if psi.rep is not Representation.COORDINATE:
        raise RepresentationError("to_momentum expects a coordinate-representation wavefunction")
    return Wavefunction(psi.grid, fourier_forward(psi.amps, psi.grid), Representation.MOMENTUM)


def to_coordinate(psi: Wavefunction) -> Wavefunction:
    if psi.rep is not Representation.MOMENTUM:
        raise RepresentationError("to_coordinate expects a momentum-representation wavefunction")
    return Wavefunction(psi.grid, fourier_inverse(psi.amps, psi.grid), Representation.COORDINATE)


def edge_profile(amps: np.ndarray, grid: Grid1D) -> Tuple[float, float]:
    """Largest |amplitude| and norm fraction inside the outer band at both ends."""
    band = grid.edge_points
    density = np.abs(amps) ** 2
    edges = np.concatenate([amps[:band], amps[-band:]])
    total = float(np.sum(density))
    edge_norm = float(np.sum(density[:band]) + np.sum(density[-band:]))
    return float(np.max(np.abs(edges))), (edge_norm / total if total > 0 else 0.0)


def check_grid_adequacy(psi: Wavefunction, label: str = 'state') -> float:
    """Warn when the state is not negligible near the grid edges; returns the edge norm fraction."""
    max_edge, edge_fraction = edge_profile(psi.amps, psi.grid)
    if max_edge >= config.EDGE_AMPLITUDE_TOL:
        logger.warning("%s: |psi| reaches %.3g on the outer %.0f%% of the grid (edge norm fraction %.3g)",
                       label, max_edge, 100 * config.EDGE_FRACTION, edge_fraction)
    return edge_fraction


def check_momentum_reach(grid: Grid1D, max_momentum: float, label: str = 'state') -> bool:
    """Warn when a local momentum would alias on the conjugate grid."""
    if abs(max_momentum) >= grid.p_max:
        logger.warning("%s: local momentum %.3g exceeds the grid's Nyquist momentum %.3g",
                       label, max_momentum, grid.p_max)
        return False
    return True
