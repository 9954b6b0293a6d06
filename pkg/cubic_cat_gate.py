# -*- coding: utf-8 -*-
"""
The cat-breeding gate: target (mode 1) and cubic phase ancilla (mode 2) are
entangled by C_Z = exp(i q1 q2), the ancilla momentum is measured with
outcome y_m, and the target is left in

    psi~(x) = N psi(x) phi_gamma(x - y_m)

Two pipelines produce that state independently:
    brute force   tensor -> apply_cz -> project_outcome   (finite-squeeze ancilla)
    analytic      analytic_condition                     (ideal ancilla, Airy factor)
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

import config
from airy_factor import GateFactorParams, gate_factor_exact
from cat_analysis import fidelity
from cat_errors import (
    GridMismatchError,
    OutcomeOffGridError,
    RepresentationError,
    ZeroOverlapError,
    ZeroStateError,
)
from cv_grid import Grid1D, Representation, Wavefunction, fourier_forward
from cv_states import AncillaSpec, prepare_cubic_ancilla

logger = logging.getLogger(__name__)

COORDINATE_PAIR = (Representation.COORDINATE, Representation.COORDINATE)


@dataclass(frozen=True, eq=False)
class TwoModeState:
    grid1: Grid1D
    grid2: Grid1D
    amps: np.ndarray
    reps: Tuple[Representation, Representation] = COORDINATE_PAIR

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.grid1.n_points, self.grid2.n_points):
            raise GridMismatchError(
                f"two-mode amplitudes of shape {amps.shape} do not match grids "
                f"{self.grid1.n_points}x{self.grid2.n_points}")
        amps.setflags(write=False)
        object.__setattr__(self, 'amps', amps)

    def steps(self) -> Tuple[float, float]:
        return tuple(g.dx if r is Representation.COORDINATE else g.dp
                     for g, r in zip((self.grid1, self.grid2), self.reps))

    def norm_squared(self) -> float:
        d1, d2 = self.steps()
        return float(np.sum(np.abs(self.amps) ** 2) * d1 * d2)

    def normalized(self) -> 'TwoModeState':
        norm_sq = self.norm_squared()
        if not norm_sq > 0:
            raise ZeroStateError("cannot normalize a zero two-mode state")
        return TwoModeState(self.grid1, self.grid2, self.amps / math.sqrt(norm_sq), self.reps)

    def reduced_density(self, mode: int) -> np.ndarray:
        """Marginal probability density of one mode in its current representation."""
        d1, d2 = self.steps()
        density = np.abs(self.amps) ** 2
        return density.sum(axis=1) * d2 if mode == 1 else density.sum(axis=0) * d1


@dataclass(frozen=True)
class MeasurementOutcome:
    y_m: float
    density: float


@dataclass(frozen=True, eq=False)
class OutcomeDensity:
    """P(y) sampled on the ancilla momentum lattice.

    kind is 'joint' for a brute-force two-mode density and 'relative' for the
    ideal-ancilla weight, which is not normalized over y.
    """
    y: np.ndarray
    density: np.ndarray
    kind: str = 'joint'

    @property
    def step(self) -> float:
        return float(self.y[1] - self.y[0])

    def total(self) -> float:
        return float(np.sum(self.density) * self.step)

    def outcomes(self) -> List[MeasurementOutcome]:
        return [MeasurementOutcome(float(y), float(d)) for y, d in zip(self.y, self.density)]

    def at(self, y_m: float) -> float:
        return float(np.interp(y_m, self.y, self.density))


@dataclass(frozen=True)
class ProjectedOutcome:
    psi: Wavefunction
    y_requested: float
    y_snapped: float
    joint_density: float

    @property
    def snap_distance(self) -> float:
        return abs(self.y_snapped - self.y_requested)


@dataclass(frozen=True)
class PipelineComparison:
    fidelity: float
    brute: ProjectedOutcome
    analytic: Wavefunction
    relative_density: float

    @property
    def y_requested(self) -> float:
        return self.brute.y_requested

    @property
    def y_snapped(self) -> float:
        return self.brute.y_snapped

    @property
    def snap_distance(self) -> float:
        return self.brute.snap_distance

    @property
    def joint_density(self) -> float:
        return self.brute.joint_density


def _require_coordinate_pair(state: TwoModeState, op: str):
    if state.reps != COORDINATE_PAIR:
        raise RepresentationError(f"{op} expects both modes in coordinate representation")


def tensor(psi1: Wavefunction, psi2: Wavefunction) -> TwoModeState:
    """amps[i, j] = psi1(x_i) psi2(x_j), normalized."""
    if psi1.rep is not Representation.COORDINATE or psi2.rep is not Representation.COORDINATE:
        raise RepresentationError("tensor expects coordinate-representation factors")
    a = psi1.normalized()
    b = psi2.normalized()
    return TwoModeState(a.grid, b.grid, np.outer(a.amps, b.amps)).normalized()


def apply_cz(state: TwoModeState) -> TwoModeState:
    """amps[i, j] *= exp(i x_i x_j); a pure phase, so the norm is untouched."""
    _require_coordinate_pair(state, 'apply_cz')
    phase = np.exp(1j * np.outer(state.grid1.x, state.grid2.x))
    return TwoModeState(state.grid1, state.grid2, state.amps * phase, state.reps)


def _ancilla_to_momentum(state: TwoModeState) -> TwoModeState:
    _require_coordinate_pair(state, 'ancilla measurement')
    amps = fourier_forward(state.amps, state.grid2, axis=1)
    return TwoModeState(state.grid1, state.grid2, amps,
                        (Representation.COORDINATE, Representation.MOMENTUM))


def outcome_density(state: TwoModeState) -> OutcomeDensity:
    """P(y) = Integral dx1 |psi(x1, y)|^2 over the ancilla momentum lattice."""
    measured = _ancilla_to_momentum(state)
    density = measured.reduced_density(2)
    return OutcomeDensity(state.grid2.p.copy(), density, kind='joint')


def snap_outcome(grid: Grid1D, y_m: float) -> Tuple[int, float]:
    """Index and value of the momentum lattice point nearest to y_m."""
    p = grid.p
    if not (p[0] - grid.dp / 2 <= y_m <= p[-1] + grid.dp / 2):
        raise OutcomeOffGridError(
            f"outcome y_m={y_m} lies outside the ancilla momentum grid [{p[0]:.6g}, {p[-1]:.6g}]")
    k = int(np.argmin(np.abs(p - y_m)))
    return k, float(p[k])


def measure_outcome(state: TwoModeState, y_m: float) -> ProjectedOutcome:
    """Project the ancilla on momentum y_m (snapped to the lattice); keeps the joint density."""
    k, y_snapped = snap_outcome(state.grid2, y_m)
    measured = _ancilla_to_momentum(state)
    row = np.asarray(measured.amps[:, k])
    joint = float(np.sum(np.abs(row) ** 2) * state.grid1.dx)
    logger.debug("projected y_m=%.6g onto lattice point %.6g (snap %.3g), joint density %.6g",
                 y_m, y_snapped, abs(y_snapped - y_m), joint)
    if not joint > 0:
        raise ZeroOverlapError(f"outcome y_m={y_m} has zero probability for this state")
    psi = Wavefunction(state.grid1, row).normalized()
    return ProjectedOutcome(psi, float(y_m), y_snapped, joint)


def project_outcome(state: TwoModeState, y_m: float) -> Wavefunction:
    return measure_outcome(state, y_m).psi


def _conditioned_amplitudes(psi: Wavefunction, p: GateFactorParams) -> np.ndarray:
    if psi.rep is not Representation.COORDINATE:
        raise RepresentationError("conditioning expects a coordinate-representation wavefunction")
    return psi.amps * np.asarray(gate_factor_exact(psi.grid.x, p))


def conditioning_weight(psi: Wavefunction, p: GateFactorParams) -> float:
    """Integral |psi(x) phi_gamma(x - y_m)|^2 dx, the ideal-ancilla outcome weight."""
    amps = _conditioned_amplitudes(psi, p)
    return float(np.sum(np.abs(amps) ** 2) * psi.grid.dx / psi.norm_squared())


def analytic_condition(psi: Wavefunction, p: GateFactorParams) -> Wavefunction:
    """N psi(x) phi_gamma(x - y_m) with N from direct quadrature."""
    amps = _conditioned_amplitudes(psi, p)
    weight = float(np.sum(np.abs(amps) ** 2) * psi.grid.dx)
    if weight < config.ZERO_OVERLAP_TOL:
        raise ZeroOverlapError(
            f"input has overlap {weight:.3g} with the gate factor at y_m={p.y_m}, gamma={p.gamma}")
    return Wavefunction(psi.grid, amps / math.sqrt(weight))


def run_brute_force(psi_in: Wavefunction, ancilla: AncillaSpec, ancilla_grid: Grid1D,
                    y_m: float) -> ProjectedOutcome:
    """Ancilla preparation, C_Z and homodyne projection on the full two-mode grid."""
    psi2 = prepare_cubic_ancilla(ancilla, ancilla_grid)
    state = apply_cz(tensor(psi_in, psi2))
    return measure_outcome(state, y_m)


def compare_pipelines(psi_in: Wavefunction, ancilla: AncillaSpec, ancilla_grid: Grid1D,
                      y_m: float) -> PipelineComparison:
    """Fidelity between the two pipelines; the analytic one runs at the snapped outcome."""
    brute = run_brute_force(psi_in, ancilla, ancilla_grid, y_m)
    params = GateFactorParams(ancilla.gamma, brute.y_snapped)
    analytic = analytic_condition(psi_in, params)
    result = PipelineComparison(
        fidelity=fidelity(brute.psi, analytic),
        brute=brute,
        analytic=analytic,
        relative_density=conditioning_weight(psi_in, params),
    )
    logger.info("pipelines at y_m=%.6g squeeze=%.3g: fidelity %.6f", brute.y_snapped, ancilla.squeeze,
                result.fidelity)
    return result


def quadrature_means(state: TwoModeState) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """((<q1>, <p1>), (<q2>, <p2>)) of a coordinate-representation two-mode state."""
    _require_coordinate_pair(state, 'quadrature_means')
    norm_sq = state.norm_squared()
    density_x = np.abs(state.amps) ** 2 * state.grid1.dx * state.grid2.dx / norm_sq
    q1 = float(np.sum(density_x.sum(axis=1) * state.grid1.x))
    q2 = float(np.sum(density_x.sum(axis=0) * state.grid2.x))

    mom1 = fourier_forward(state.amps, state.grid1, axis=0)
    p1 = float(np.sum(np.abs(mom1) ** 2 * state.grid1.p[:, None]) * state.grid1.dp * state.grid2.dx / norm_sq)
    mom2 = fourier_forward(state.amps, state.grid2, axis=1)
    p2 = float(np.sum(np.abs(mom2) ** 2 * state.grid2.p[None, :]) * state.grid1.dx * state.grid2.dp / norm_sq)
    return (q1, p1), (q2, p2)
