# -*- coding: utf-8 -*-
"""
Gaussian single-mode operations used to orient a bred cat in phase space.

    displace(psi, q, p)   (q, p) -> (q + q0, p + p0)
    shear(psi, s)         p -> p + s q
    rotate(psi, theta)    exp(-i theta (q^2 + p^2) / 2)
    squeeze(psi, r)       q -> e^(-r) q, p -> e^(r) p

All take and return normalized coordinate-representation wavefunctions.
"""

import math

import numpy as np
from scipy.interpolate import CubicSpline

from cat_errors import RepresentationError
from cv_grid import Representation, Wavefunction, fourier_forward, fourier_inverse

# each rotation step stays at or below a quarter turn so tan(theta/2) <= 1
_MAX_ROTATION_STEP = math.pi / 2


def _require_coordinate(psi: Wavefunction, op: str):
    if psi.rep is not Representation.COORDINATE:
        raise RepresentationError(f"{op} expects a coordinate-representation wavefunction")


def _momentum_phase(psi_amps: np.ndarray, psi: Wavefunction, phase: np.ndarray) -> np.ndarray:
    spectrum = fourier_forward(psi_amps, psi.grid)
    return fourier_inverse(spectrum * np.exp(1j * phase), psi.grid)


def displace(psi: Wavefunction, q: float, p: float) -> Wavefunction:
    """psi(x) -> exp(i p (x - q/2)) psi(x - q), the shift done exactly in momentum space."""
    _require_coordinate(psi, 'displace')
    grid = psi.grid
    shifted = _momentum_phase(psi.amps, psi, -grid.p * q)
    amps = np.exp(1j * p * (grid.x - q / 2)) * shifted
    return Wavefunction(grid, amps).normalized()


def shear(psi: Wavefunction, s: float) -> Wavefunction:
    _require_coordinate(psi, 'shear')
    return Wavefunction(psi.grid, psi.amps * np.exp(0.5j * s * psi.grid.x ** 2)).normalized()


def _rotation_step(amps: np.ndarray, psi: Wavefunction, theta: float) -> np.ndarray:
    a = math.tan(theta / 2)
    b = math.sin(theta)
    chirp = np.exp(-0.5j * a * psi.grid.x ** 2)
    amps = _momentum_phase(amps * chirp, psi, -0.5 * b * psi.grid.p ** 2)
    return amps * chirp


def rotate(psi: Wavefunction, theta: float) -> Wavefunction:
    """Phase-space rotation by theta, as chirp / momentum chirp / chirp factors."""
    _require_coordinate(psi, 'rotate')
    theta = math.remainder(theta, 2 * math.pi)
    steps = max(1, math.ceil(abs(theta) / _MAX_ROTATION_STEP - 1e-12))
    amps = psi.amps
    if theta != 0.0:
        for _ in range(steps):
            amps = _rotation_step(amps, psi, theta / steps)
    return Wavefunction(psi.grid, amps).normalized()


def squeeze(psi: Wavefunction, r: float) -> Wavefunction:
    """psi(x) -> e^(r/2) psi(e^r x), resampled with a cubic spline; zero outside the grid."""
    _require_coordinate(psi, 'squeeze')
    grid = psi.grid
    target = math.exp(r) * grid.x
    inside = (target >= grid.x[0]) & (target <= grid.x[-1])
    amps = np.zeros(grid.n_points, dtype=complex)
    for part, unit in ((psi.amps.real, 1.0), (psi.amps.imag, 1j)):
        spline = CubicSpline(grid.x, part)
        amps[inside] += unit * spline(target[inside])
    return Wavefunction(grid, math.exp(r / 2) * amps).normalized()
