# -*- coding: utf-8 -*-
"""
Cat-state diagnostics: Wigner map, momentum peaks, fidelities, fringe
visibility, Wigner negativity and success-window probability.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.signal import find_peaks

import config
from airy_factor import GateFactorParams, gate_factor_stationary, linearized_kick
from cat_errors import (
    GridMismatchError,
    InvalidWindowError,
    NoBimodalityError,
    RepresentationError,
)
from cv_grid import Grid1D, Representation, Wavefunction, make_grid, to_coordinate, to_momentum

logger = logging.getLogger(__name__)

BRANCH_MODES = ('linear', 'stationary')


# -- Wigner function ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WignerMap:
    x_grid: Grid1D
    p_grid: Grid1D
    values: np.ndarray  # shape (n_x, n_p)

    @property
    def cell(self) -> float:
        return self.x_grid.dx * self.p_grid.dx

    def total(self) -> float:
        return float(np.sum(self.values) * self.cell)

    def minimum(self) -> float:
        return float(np.min(self.values))

    def position_marginal(self) -> np.ndarray:
        return self.values.sum(axis=1) * self.p_grid.dx

    def momentum_marginal(self) -> np.ndarray:
        return self.values.sum(axis=0) * self.x_grid.dx

    def cut_at_momentum(self, p: float) -> np.ndarray:
        """W(x, p) along x at the p lattice point nearest to p."""
        k = int(np.argmin(np.abs(self.p_grid.x - p)))
        return self.values[:, k]

    def cut_at_position(self, x: float) -> np.ndarray:
        i = int(np.argmin(np.abs(self.x_grid.x - x)))
        return self.values[i, :]


def wigner_momentum_limit(grid: Grid1D) -> float:
    """Largest |p| the lag-sampled Wigner transform resolves on this grid, pi / (2 dx)."""
    return math.pi / (2 * grid.dx)


def wigner_momentum_grid(grid: Grid1D, p_extent: float, n_points: int = 256) -> Grid1D:
    """Symmetric momentum lattice for wigner(), clipped to the resolvable range."""
    extent = min(p_extent, wigner_momentum_limit(grid))
    return make_grid(-extent, extent, n_points)


def wigner(psi: Wavefunction, p_grid: Grid1D) -> WignerMap:
    """W(x, p) = (1/pi) Integral dy psi*(x + y) psi(x - y) exp(2 i p y).

    Lags run over the doubled range |y| < L with zero padding outside the
    grid, so the correlation never wraps around.
    """
    if psi.rep is not Representation.COORDINATE:
        raise RepresentationError("wigner expects a coordinate-representation wavefunction")
    grid = psi.grid
    p = p_grid.x
    limit = wigner_momentum_limit(grid)
    if np.max(np.abs(p)) > limit * (1 + 1e-12):
        raise GridMismatchError(
            f"momentum grid reaches |p|={np.max(np.abs(p)):.6g}, beyond the Wigner limit "
            f"{limit:.6g} of coordinate grid {grid.describe()}")

    n = grid.n_points
    amps = psi.normalized().amps
    idx = np.arange(n)[:, None]
    lags = np.arange(-(n - 1), n)[None, :]
    plus = idx + lags
    minus = idx - lags
    inside = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
    correlation = np.where(inside,
                           np.conj(amps[np.clip(plus, 0, n - 1)]) * amps[np.clip(minus, 0, n - 1)],
                           0.0)

    y = lags[0] * grid.dx
    kernel = np.exp(2j * np.outer(y, p))
    values = (correlation @ kernel) * (grid.dx / math.pi)
    logger.debug("wigner on %dx%d cells, max |Im W| %.3g", n, p.size, float(np.max(np.abs(values.imag))))
    return WignerMap(grid, p_grid, np.ascontiguousarray(values.real))


def negativity_volume(w: WignerMap) -> float:
    """Integral of max(0, -W) over the map."""
    return float(np.sum(np.clip(-w.values, 0.0, None)) * w.cell)


def sign_changes(values: np.ndarray, rel_floor: float = 1e-3) -> int:
    """Sign changes along a 1D cut, ignoring samples below rel_floor * max|values|."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0
    floor = rel_floor * float(np.max(np.abs(values)))
    signs = np.sign(values[np.abs(values) > floor])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


# -- momentum peaks and fidelities --------------------------------------------

@dataclass(frozen=True)
class MomentumPeak:
    position: float
    height: float


def find_momentum_peaks(psi: Wavefunction) -> List[MomentumPeak]:
    """Local maxima of |psi~(p)|^2 above PEAK_THRESHOLD of the global maximum."""
    mom = psi if psi.rep is Representation.MOMENTUM else to_momentum(psi)
    density = mom.density()
    p = mom.grid.p
    indices, _ = find_peaks(density, height=config.PEAK_THRESHOLD * float(np.max(density)))

    peaks = []
    for k in indices:
        left, mid, right = density[k - 1], density[k], density[k + 1]
        curvature = left - 2 * mid + right
        offset = 0.5 * (left - right) / curvature if curvature != 0 else 0.0
        height = mid - 0.25 * (left - right) * offset
        peaks.append(MomentumPeak(float(p[k] + offset * mom.grid.dp), float(height)))
    return sorted(peaks, key=lambda peak: peak.position)


def momentum_peaks(psi: Wavefunction) -> List[float]:
    """Sorted sub-grid positions of the momentum-density peaks."""
    return [peak.position for peak in find_momentum_peaks(psi)]


def dominant_pair(peaks: List[MomentumPeak]) -> List[MomentumPeak]:
    """The two tallest peaks, ordered by position."""
    if len(peaks) < 2:
        raise NoBimodalityError(f"found {len(peaks)} momentum peak(s); a cat needs two")
    tallest = sorted(peaks, key=lambda peak: peak.height, reverse=True)[:2]
    return sorted(tallest, key=lambda peak: peak.position)


def fidelity(a: Wavefunction, b: Wavefunction) -> float:
    """|<a|b>|^2 of the normalized states; b is brought into a's representation."""
    if not a.grid.matches(b.grid):
        raise GridMismatchError(f"fidelity needs a common grid, got {a.grid.describe()} and {b.grid.describe()}")
    if b.rep is not a.rep:
        b = to_coordinate(b) if a.rep is Representation.COORDINATE else to_momentum(b)
    overlap = np.vdot(a.amps, b.amps) * a.step
    value = abs(overlap) ** 2 / (a.norm_squared() * b.norm_squared())
    return float(min(1.0, value))


def branch_reference(psi_in: Wavefunction, p: GateFactorParams, mode: str = 'linear') -> Wavefunction:
    """Two-copy reference cat built from the input.

    linear:      psi_in(x) cos(k x + pi/4 - 2 k y_m / 3),  k = sqrt(y_m / (3 gamma))
    stationary:  psi_in(x) times the two-branch factor where y_m > x, zero elsewhere
    """
    if mode not in BRANCH_MODES:
        raise ValueError(f"unknown branch reference mode {mode!r}")
    x = psi_in.grid.x
    if mode == 'linear':
        k = linearized_kick(p)
        factor = np.cos(k * x + math.pi / 4 - 2.0 * k * p.y_m / 3.0)
    else:
        factor = np.zeros(x.size, dtype=complex)
        reachable = x < p.y_m
        factor[reachable] = gate_factor_stationary(x[reachable], p)
    return Wavefunction(psi_in.grid, psi_in.amps * factor).normalized()


def branch_fidelity(cat: Wavefunction, psi_in: Wavefunction, p: GateFactorParams,
                    mode: str = 'linear') -> float:
    """Fidelity of the cat with the ideal two-copy reference."""
    dominant_pair(find_momentum_peaks(cat))
    return fidelity(cat, branch_reference(psi_in, p, mode))


# -- coordinate fringes ---------------------------------------------------------

def fringe_visibility(psi: Wavefunction, separation: float) -> float:
    """(max - min)/(max + min) of |psi(x)|^2 within one fringe period 2 pi / separation of <x>."""
    if not separation > 0:
        return 0.0
    coord = psi if psi.rep is Representation.COORDINATE else to_coordinate(psi)
    period = 2 * math.pi / separation
    center = coord.mean_position()
    window = np.abs(coord.grid.x - center) <= period / 2
    if np.count_nonzero(window) < 3:
        logger.warning("fringe period %.3g is under-resolved on grid %s", period, coord.grid.describe())
        return 0.0
    density = coord.density()[window]
    high, low = float(np.max(density)), float(np.min(density))
    return (high - low) / (high + low) if high + low > 0 else 0.0


# -- outcome probabilities -----------------------------------------------------

def success_window(state_density, y_lo: float, y_hi: float) -> float:
    """Trapezoidal probability mass of outcomes in [y_lo, y_hi].

    Evaluated as a difference of the cumulative integral, so disjoint
    windows add up exactly.
    """
    y = np.asarray(state_density.y, dtype=float)
    density = np.asarray(state_density.density, dtype=float)
    if not (math.isfinite(y_lo) and math.isfinite(y_hi)) or y_lo > y_hi:
        raise InvalidWindowError(f"window needs y_lo <= y_hi, got [{y_lo}, {y_hi}]")
    if y_lo < y[0] or y_hi > y[-1]:
        raise InvalidWindowError(f"window [{y_lo}, {y_hi}] leaves the outcome grid [{y[0]:.6g}, {y[-1]:.6g}]")
    cumulative = cumulative_trapezoid(density, y, initial=0.0)
    mass = float(np.interp(y_hi, y, cumulative) - np.interp(y_lo, y, cumulative))
    return max(0.0, mass)


# -- report --------------------------------------------------------------------

@dataclass
class CatReport:
    peak_positions: List[float]
    separation: float
    width_ratio: float
    visibility: float
    branch_fidelity: Optional[float]
    branch_fidelity_stationary: Optional[float]
    negativity_volume: Optional[float]
    outcome_density: float
    outcome_density_kind: str
    extras: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data.update(data.pop('extras'))
        return data


def cat_report(cat: Wavefunction, psi_in: Wavefunction, p: GateFactorParams,
               outcome_density: float, density_kind: str = 'relative',
               with_wigner: bool = True) -> CatReport:
    """Collect the cat diagnostics; a single-peaked output reports zero separation."""
    peaks = find_momentum_peaks(cat)
    positions = [peak.position for peak in peaks]
    input_spread = math.sqrt(max(_momentum_variance(psi_in), 0.0))

    if len(peaks) >= 2:
        pair = dominant_pair(peaks)
        separation = max(positions) - min(positions)
        lobe_gap = pair[1].position - pair[0].position
        visibility = fringe_visibility(cat, lobe_gap)
        linear = fidelity(cat, branch_reference(psi_in, p, 'linear')) if p.y_m > 0 else None
        stationary = fidelity(cat, branch_reference(psi_in, p, 'stationary'))
    else:
        separation, visibility, linear, stationary = 0.0, 0.0, None, None

    negativity = None
    if with_wigner:
        extent = max(8.0, 2 * max((abs(v) for v in positions), default=0.0) + 8 * input_spread)
        negativity = negativity_volume(wigner(cat, wigner_momentum_grid(cat.grid, extent)))

    return CatReport(
        peak_positions=positions,
        separation=separation,
        width_ratio=separation / (2 * input_spread) if input_spread > 0 else 0.0,
        visibility=visibility,
        branch_fidelity=linear,
        branch_fidelity_stationary=stationary,
        negativity_volume=negativity,
        outcome_density=float(outcome_density),
        outcome_density_kind=density_kind,
    )


def _momentum_variance(psi: Wavefunction) -> float:
    mom = psi if psi.rep is Representation.MOMENTUM else to_momentum(psi)
    mean = mom.mean_momentum()
    return float(np.sum((mom.grid.p - mean) ** 2 * mom.density()) * mom.step / mom.norm_squared())
