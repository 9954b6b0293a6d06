#!/usr/bin/env python3
"""
Tests for displacement, shear, rotation and squeezing
"""

import math

import numpy as np
import pytest

from cat_analysis import fidelity
from cat_errors import RepresentationError
from cv_grid import to_momentum
from cv_states import CoherentGaussian, SqueezedGaussian, prepare_input
from gaussian_ops import displace, rotate, shear, squeeze


def momentum_variance(psi):
    mom = to_momentum(psi)
    mean = mom.mean_momentum()
    return float(np.sum((mom.grid.p - mean) ** 2 * mom.density()) * mom.grid.dp)


def position_variance(psi):
    mean = psi.mean_position()
    return float(np.sum((psi.grid.x - mean) ** 2 * psi.density()) * psi.grid.dx)


class TestDisplace:
    def test_matches_coherent_state(self, desk_grid, vacuum):
        moved = displace(vacuum, 1.5, -0.75)
        reference = prepare_input(CoherentGaussian(1.5, -0.75), desk_grid)
        assert fidelity(moved, reference) == pytest.approx(1.0, abs=1e-10)
        assert moved.mean_position() == pytest.approx(1.5, abs=1e-10)
        assert moved.mean_momentum() == pytest.approx(-0.75, abs=1e-8)

    def test_inverse(self, vacuum):
        there = displace(vacuum, 0.4, 2.0)
        back = displace(there, -0.4, -2.0)
        assert np.max(np.abs(back.amps - vacuum.amps)) < 1e-10


class TestShear:
    def test_momentum_shift_proportional_to_position(self, desk_grid):
        psi = prepare_input(CoherentGaussian(2.0, 0.0), desk_grid)
        assert shear(psi, 0.5).mean_momentum() == pytest.approx(1.0, abs=1e-8)

    def test_leaves_position_density(self, vacuum):
        assert np.max(np.abs(shear(vacuum, 1.3).density() - vacuum.density())) < 1e-14


class TestRotate:
    def test_quarter_turn_maps_position_to_momentum(self, desk_grid):
        psi = prepare_input(CoherentGaussian(2.0, 0.0), desk_grid)
        turned = rotate(psi, math.pi / 2)
        assert turned.mean_position() == pytest.approx(0.0, abs=1e-8)
        assert turned.mean_momentum() == pytest.approx(-2.0, abs=1e-8)

    def test_quarter_turn_swaps_variances(self, desk_grid):
        psi = prepare_input(SqueezedGaussian(0.0, 0.0, 0.4), desk_grid)
        turned = rotate(psi, math.pi / 2)
        assert position_variance(turned) == pytest.approx(momentum_variance(psi), rel=1e-6)
        assert momentum_variance(turned) == pytest.approx(position_variance(psi), rel=1e-6)

    def test_vacuum_is_invariant(self, vacuum):
        assert fidelity(rotate(vacuum, 1.1), vacuum) == pytest.approx(1.0, abs=1e-10)

    def test_composition(self, desk_grid):
        psi = prepare_input(CoherentGaussian(1.0, 0.5, 0.5), desk_grid)
        two_steps = rotate(rotate(psi, 0.7), 1.9)
        one_step = rotate(psi, 2.6)
        assert fidelity(two_steps, one_step) == pytest.approx(1.0, abs=1e-9)

    def test_full_turn_is_identity_up_to_phase(self, desk_grid):
        psi = prepare_input(CoherentGaussian(1.0, -0.5, 0.6), desk_grid)
        assert fidelity(rotate(psi, 2 * math.pi), psi) == pytest.approx(1.0, abs=1e-12)

    def test_half_turn_reflects(self, desk_grid):
        psi = prepare_input(CoherentGaussian(1.0, -0.5, 0.6), desk_grid)
        reflected = prepare_input(CoherentGaussian(-1.0, 0.5, 0.6), desk_grid)
        assert fidelity(rotate(psi, math.pi), reflected) == pytest.approx(1.0, abs=1e-9)


class TestSqueeze:
    def test_narrows_position(self, desk_grid, vacuum):
        squeezed = squeeze(vacuum, 0.5)
        reference = prepare_input(SqueezedGaussian(0.0, 0.0, math.exp(-0.5) / math.sqrt(2)), desk_grid)
        assert fidelity(squeezed, reference) == pytest.approx(1.0, abs=1e-6)

    def test_normalized(self, vacuum):
        assert squeeze(vacuum, -0.3).norm_squared() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize('op, args', [
    (displace, (1.0, 0.0)),
    (shear, (0.3,)),
    (rotate, (0.3,)),
    (squeeze, (0.3,)),
])
def test_momentum_input_is_rejected(vacuum, op, args):
    with pytest.raises(RepresentationError):
        op(to_momentum(vacuum), *args)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
