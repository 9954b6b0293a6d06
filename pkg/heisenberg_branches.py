# -*- coding: utf-8 -*-
"""
Heisenberg-picture view of the gate.

After C_Z and the ancilla momentum measurement the output quadratures read

    q1_out = q1
    p1_out = p1 +- (3 gamma)^(-1/2) sqrt(y_m - q1)

(the initial ancilla momentum dropped). The two signs are the two cat
components; for y_m < q1 the formula has no real solution and the result
is flagged invalid rather than raised.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from airy_factor import GateFactorParams
from cat_analysis import dominant_pair, find_momentum_peaks
from cubic_cat_gate import analytic_condition
from cv_grid import Wavefunction
from cv_states import AncillaSpec, CoherentGaussian

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeisenbergBranches:
    q_out: float
    p_plus: Optional[float]
    p_minus: Optional[float]
    valid: bool

    @property
    def shift(self) -> Optional[float]:
        return None if not self.valid else (self.p_plus - self.p_minus) / 2


@dataclass(frozen=True)
class BranchComparison:
    predicted: HeisenbergBranches
    peaks: Tuple[float, float]
    deviation_minus: Optional[float]
    deviation_plus: Optional[float]
    predicted_separation: Optional[float]
    measured_separation: float
    conditioned: Wavefunction

    @property
    def relative_deviation(self) -> Optional[float]:
        """Largest peak deviation relative to the predicted branch shift."""
        if not self.predicted.valid or not self.predicted.shift:
            return None
        return max(abs(self.deviation_minus), abs(self.deviation_plus)) / self.predicted.shift

    @property
    def separation_error(self) -> Optional[float]:
        if not self.predicted_separation:
            return None
        return abs(self.measured_separation - self.predicted_separation) / self.predicted_separation


def branch_momenta(q1: float, p1: float, p: GateFactorParams) -> HeisenbergBranches:
    radicand = p.y_m - q1
    if radicand < 0:
        return HeisenbergBranches(q1, None, None, False)
    shift = math.sqrt(radicand) / math.sqrt(3.0 * p.gamma)
    return HeisenbergBranches(q1, p1 + shift, p1 - shift, True)


def compare_branches_to_distribution(psi_in: Wavefunction, p: GateFactorParams) -> BranchComparison:
    """Condition psi_in and match the two tallest momentum peaks to the predicted branches."""
    predicted = branch_momenta(psi_in.mean_position(), psi_in.mean_momentum(), p)
    conditioned = analytic_condition(psi_in, p)
    low, high = dominant_pair(find_momentum_peaks(conditioned))

    deviation_minus = deviation_plus = predicted_separation = None
    if predicted.valid:
        deviation_minus = low.position - predicted.p_minus
        deviation_plus = high.position - predicted.p_plus
        predicted_separation = predicted.p_plus - predicted.p_minus

    result = BranchComparison(
        predicted=predicted,
        peaks=(low.position, high.position),
        deviation_minus=deviation_minus,
        deviation_plus=deviation_plus,
        predicted_separation=predicted_separation,
        measured_separation=high.position - low.position,
        conditioned=conditioned,
    )
    logger.debug("branches at q1=%.4g: predicted %s, peaks %s", predicted.q_out,
                 (predicted.p_minus, predicted.p_plus), result.peaks)
    return result


def semiclassical_ensemble(input_spec: CoherentGaussian, ancilla: AncillaSpec, y_m: float,
                           window: float, q2_range: Tuple[float, float],
                           n_samples: int = 100_000, seed: int = 0) -> np.ndarray:
    """Output momenta p1' of classical samples whose ancilla momentum lands within y_m +- window/2.

    q1, p1 follow the input Gaussian, q2 is uniform over q2_range and the
    initial ancilla momentum is N(0, squeeze^2); then p2 = p2_0 + 3 gamma q2^2
    and C_Z adds p1' = p1 + q2, p2' = p2 + q1.
    """
    if not window > 0:
        raise ValueError(f"acceptance window must be > 0, got {window}")
    rng = np.random.default_rng(seed)
    q1 = rng.normal(input_spec.center_x, input_spec.width, n_samples)
    p1 = rng.normal(input_spec.center_p, input_spec.momentum_width, n_samples)
    q2 = rng.uniform(q2_range[0], q2_range[1], n_samples)
    p2 = rng.normal(0.0, ancilla.squeeze, n_samples) + 3.0 * ancilla.gamma * q2 ** 2

    p1_out = p1 + q2
    p2_out = p2 + q1
    accepted = np.abs(p2_out - y_m) <= window / 2
    logger.debug("semiclassical ensemble: %d of %d samples accepted", int(np.count_nonzero(accepted)), n_samples)
    return p1_out[accepted]
