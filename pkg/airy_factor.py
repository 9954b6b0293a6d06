# -*- coding: utf-8 -*-
"""
The gate factor phi_gamma(x - y_m) that an ancilla momentum outcome y_m
multiplies onto the target coordinate wavefunction.

    phi_gamma(u) = (2*pi)^(-1/2) * Integral dx' exp(i*x'*(u + gamma*x'^2))
                 = sqrt(2*pi) / (3*gamma)^(1/3) * Ai(u / (3*gamma)^(1/3))

Three independent evaluators are provided: the Airy closed form (own Ai
evaluator), the integral itself on a rotated contour, and the two-branch
stationary-phase approximation valid for y_m > x.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import integrate, special

import config
from cat_errors import (
    InvalidGammaError,
    InvalidOutcomeError,
    NonConvergenceError,
    OutOfRegimeError,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Ai(0) and Ai'(0)
_AI_0 = 3.0 ** (-2.0 / 3.0) / special.gamma(2.0 / 3.0)
_AIP_0 = -(3.0 ** (-1.0 / 3.0)) / special.gamma(1.0 / 3.0)


def _asymptotic_coefficients(count: int) -> np.ndarray:
    """u_k of the large-argument Airy expansions."""
    u = np.empty(count)
    u[0] = 1.0
    for k in range(1, count):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
    return u


_U = _asymptotic_coefficients(2 * config.AIRY_ASYMPTOTIC_TERMS + 2)


@dataclass(frozen=True)
class GateFactorParams:
    gamma: float
    y_m: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidGammaError(f"cubic strength gamma must be > 0, got {self.gamma}")
        if not math.isfinite(self.y_m):
            raise InvalidOutcomeError(f"outcome y_m must be finite, got {self.y_m}")

    @property
    def airy_length(self) -> float:
        """(3*gamma)^(1/3), the natural length of the factor."""
        return (3.0 * self.gamma) ** (1.0 / 3.0)

    def scaled_argument(self, x: ArrayLike) -> ArrayLike:
        return (np.asarray(x, dtype=float) - self.y_m) / self.airy_length


class Branch(enum.Enum):
    PLUS = 'plus'
    MINUS = 'minus'


@dataclass(frozen=True)
class BranchFactor:
    value: complex
    branch: Branch
    stationary_point: float


def _as_output(values: np.ndarray, like: ArrayLike):
    if np.ndim(like) == 0:
        return values.reshape(()).item()
    return values


# -- Airy function ---------------------------------------------------------

def airy_series(t: ArrayLike) -> ArrayLike:
    """Maclaurin series Ai(t) = Ai(0) f(t) + Ai'(0) g(t)."""
    t_arr = np.asarray(t, dtype=float)
    t3 = t_arr ** 3
    f_term = np.ones_like(t_arr)
    g_term = t_arr.copy()
    f_sum = f_term.copy()
    g_sum = g_term.copy()
    for k in range(1, config.AIRY_SERIES_TERMS):
        f_term = f_term * t3 / ((3 * k - 1) * (3 * k))
        g_term = g_term * t3 / ((3 * k) * (3 * k + 1))
        f_sum += f_term
        g_sum += g_term
    return _as_output(_AI_0 * f_sum + _AIP_0 * g_sum, t)


def _optimally_truncated(coefficients: np.ndarray, inv_zeta: np.ndarray, alternate: bool) -> np.ndarray:
    """Sum c_k * (+-1)^k * inv_zeta^k, stopping per element once terms start to grow."""
    total = np.zeros_like(inv_zeta)
    previous = np.full_like(inv_zeta, np.inf)
    active = np.ones(inv_zeta.shape, dtype=bool)
    power = np.ones_like(inv_zeta)
    for k, c in enumerate(coefficients):
        term = (-1.0) ** k * c * power if alternate else c * power
        magnitude = np.abs(term)
        active &= magnitude < previous
        total += np.where(active, term, 0.0)
        previous = np.where(active, magnitude, previous)
        power = power * inv_zeta
    return total


def _airy_decaying(t: np.ndarray) -> np.ndarray:
    zeta = 2.0 / 3.0 * t ** 1.5
    series = _optimally_truncated(_U, 1.0 / zeta, alternate=True)
    return np.exp(-zeta) / (2.0 * math.sqrt(math.pi) * t ** 0.25) * series


def _airy_oscillating(s: np.ndarray) -> np.ndarray:
    """Ai(-s) for large s > 0."""
    zeta = 2.0 / 3.0 * s ** 1.5
    inv_zeta_sq = 1.0 / zeta ** 2
    even = _optimally_truncated(_U[0::2], inv_zeta_sq, alternate=True)
    odd = _optimally_truncated(_U[1::2], inv_zeta_sq, alternate=True) / zeta
    phase = zeta - math.pi / 4
    return (np.cos(phase) * even + np.sin(phase) * odd) / (math.sqrt(math.pi) * s ** 0.25)


def airy_asymptotic(t: ArrayLike) -> ArrayLike:
    """Large-|t| expansions: exponential decay for t > 0, oscillatory form for t < 0."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t_arr)
    positive = t_arr > 0
    out[positive] = _airy_decaying(t_arr[positive])
    out[~positive] = _airy_oscillating(-t_arr[~positive])
    return _as_output(out.reshape(np.shape(t)), t)


def airy(t: ArrayLike) -> ArrayLike:
    """Ai(t): series for |t| <= AIRY_SWITCH, asymptotic expansions beyond."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t_arr)
    near = np.abs(t_arr) <= config.AIRY_SWITCH
    out[near] = airy_series(t_arr[near])
    out[~near] = airy_asymptotic(t_arr[~near])
    return _as_output(out.reshape(np.shape(t)), t)


# -- gate factor evaluators --------------------------------------------------

def gate_factor_exact(x: ArrayLike, p: GateFactorParams):
    """phi_gamma(x - y_m) from the Airy closed form; imaginary part is exactly zero."""
    scale = p.airy_length
    values = math.sqrt(2 * math.pi) / scale * np.asarray(airy(p.scaled_argument(x)), dtype=float)
    return _as_output(values.astype(complex), x)


def _half_line_integral(u: float, gamma: float, side: int, tolerance: float) -> complex:
    """Integral over x' >= 0 (side=+1) or x' <= 0 (side=-1) on the rotated ray.

    Each of the real and imaginary parts is asked for tolerance/4. For
    x < y_m the rotated integrand first grows like exp(|u| z / 2), which puts
    QUADPACK's roundoff floor near that share, so only an estimate above the
    whole budget (or an exhausted subdivision limit) counts as failure.
    """
    rotation = cmath.exp(1j * side * config.CONTOUR_ANGLE)
    # integrand decays like exp(-gamma z^3 + |u| z / 2); cut where that is below exp(-DECAY)
    z_cut = (config.QUADRATURE_DECAY_EXPONENT / gamma) ** (1.0 / 3.0) + math.sqrt(abs(u) / (2.0 * gamma))

    def integrand(z: float) -> complex:
        return rotation * cmath.exp(side * 1j * u * rotation * z - gamma * z ** 3)

    parts = []
    for component in (lambda z: integrand(z).real, lambda z: integrand(z).imag):
        result = integrate.quad(component, 0.0, z_cut, epsabs=tolerance / 4.0, epsrel=0.0,
                                limit=config.QUADRATURE_SUBDIVISIONS, full_output=1)
        value, abserr = result[0], result[1]
        limit_hit = len(result) > 3 and result[2].get('last', 0) >= config.QUADRATURE_SUBDIVISIONS
        if abserr > tolerance or limit_hit:
            message = result[3] if len(result) > 3 else 'error estimate above tolerance'
            raise NonConvergenceError(
                f"rotated-contour quadrature did not reach {tolerance:.1e} (estimate {abserr:.2e}): {message}")
        logger.debug("half-line %+d at u=%.6g: error estimate %.2e", side, u, abserr)
        parts.append(value)
    return complex(parts[0], parts[1])


def gate_factor_quadrature(x: ArrayLike, p: GateFactorParams,
                           tolerance: float = config.QUADRATURE_ABS_TOL):
    """phi_gamma(x - y_m) by adaptive quadrature of the defining integral.

    The integral is split at x' = 0 and each half-line is rotated by
    +-pi/6 into the complex plane, where exp(i*gamma*x'^3) becomes
    exp(-gamma*z^3).
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.shape, dtype=complex)
    for i, xi in enumerate(xs.flat):
        u = xi - p.y_m
        total = (_half_line_integral(u, p.gamma, +1, tolerance)
                 + _half_line_integral(u, p.gamma, -1, tolerance))
        out.flat[i] = total / math.sqrt(2 * math.pi)
    return _as_output(out.reshape(np.shape(x)), x)


def _distance_below_outcome(x: ArrayLike, p: GateFactorParams) -> np.ndarray:
    d = p.y_m - np.asarray(x, dtype=float)
    if np.any(d <= 0):
        raise OutOfRegimeError(
            "stationary-phase factor needs y_m > x (two distinct stationary points); "
            f"got y_m={p.y_m} with x up to {np.max(np.asarray(x)):.6g}")
    return d


def plus_branch_factor(x: ArrayLike, p: GateFactorParams):
    """phi_gamma^(+): exp[i(pi/4 - 2/(3 sqrt(3 gamma)) (y_m-x)^(3/2))] (12 gamma (y_m-x))^(-1/4)."""
    d = _distance_below_outcome(x, p)
    phase = math.pi / 4 - 2.0 / (3.0 * math.sqrt(3.0 * p.gamma)) * d ** 1.5
    values = np.exp(1j * phase) * (12.0 * p.gamma * d) ** -0.25
    return _as_output(np.asarray(values, dtype=complex), x)


def gate_factor_stationary(x: ArrayLike, p: GateFactorParams):
    """Two-branch approximation phi^(+) + c.c.; real, defined only for y_m > x."""
    plus = np.asarray(plus_branch_factor(x, p), dtype=complex)
    values = (2.0 * plus.real).astype(complex)
    return _as_output(values, x)


def stationary_envelope(x: ArrayLike, p: GateFactorParams):
    """Magnitude 2 (12 gamma (y_m - x))^(-1/4) of the two-branch approximation."""
    d = _distance_below_outcome(x, p)
    return _as_output(np.asarray(2.0 * (12.0 * p.gamma * d) ** -0.25, dtype=float), x)


def stationary_relative_error(x: ArrayLike, p: GateFactorParams):
    """|stationary - exact| measured against the stationary envelope."""
    exact = np.asarray(gate_factor_exact(x, p))
    approx = np.asarray(gate_factor_stationary(x, p))
    envelope = np.asarray(stationary_envelope(x, p))
    return _as_output(np.abs(approx - exact) / envelope, x)


def branch_factors(x: float, p: GateFactorParams) -> Tuple[BranchFactor, BranchFactor]:
    d = float(_distance_below_outcome(x, p))
    x_s = math.sqrt(d / (3.0 * p.gamma))
    plus = complex(plus_branch_factor(x, p))
    return (BranchFactor(plus, Branch.PLUS, x_s),
            BranchFactor(plus.conjugate(), Branch.MINUS, -x_s))


def linearized_kick(p: GateFactorParams) -> float:
    """Momentum shift sqrt(y_m / (3 gamma)) of each cat branch for y_m >> |x|."""
    if not p.y_m > 0:
        raise InvalidOutcomeError(f"linearized kick needs y_m > 0, got {p.y_m}")
    return math.sqrt(p.y_m / (3.0 * p.gamma))
