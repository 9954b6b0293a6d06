#!/usr/bin/env python3
"""
Tests for the Heisenberg-picture branch prediction
"""

import math

import numpy as np
import pytest

import config
from airy_factor import GateFactorParams
from cv_states import AncillaSpec, CoherentGaussian
from heisenberg_branches import branch_momenta, compare_branches_to_distribution, semiclassical_ensemble


class TestBranchMomenta:
    def test_symmetric_shift(self):
        branches = branch_momenta(0.0, 0.0, GateFactorParams(1 / 3, 9.0))
        assert branches.valid
        assert branches.p_plus == pytest.approx(3.0, rel=1e-14)
        assert branches.p_minus == pytest.approx(-3.0, rel=1e-14)
        assert branches.shift == pytest.approx(3.0, rel=1e-14)

    def test_centered_on_input_momentum(self):
        branches = branch_momenta(1.0, 0.4, GateFactorParams(2.0, 7.0))
        shift = math.sqrt(6.0 / 6.0)
        assert branches.q_out == 1.0
        assert branches.p_plus == pytest.approx(0.4 + shift)
        assert branches.p_minus == pytest.approx(0.4 - shift)

    def test_no_real_branch_beyond_outcome(self):
        branches = branch_momenta(2.0, 0.0, GateFactorParams(1.0, 1.0))
        assert not branches.valid
        assert branches.p_plus is None and branches.p_minus is None
        assert branches.shift is None

    def test_branches_meet_at_outcome(self):
        branches = branch_momenta(3.0, 0.5, GateFactorParams(1.0, 3.0))
        assert branches.valid
        assert branches.p_plus == branches.p_minus == 0.5


class TestAgainstDistribution:
    def test_peaks_follow_prediction(self, vacuum):
        comparison = compare_branches_to_distribution(vacuum, GateFactorParams(1 / 3, 9.0))
        low, high = comparison.peaks
        assert low == pytest.approx(-3.0, abs=0.15)
        assert high == pytest.approx(3.0, abs=0.15)
        assert comparison.relative_deviation <= config.HEISENBERG_AGREEMENT_TOL
        assert comparison.separation_error <= config.HEISENBERG_AGREEMENT_TOL

    def test_conditioned_state_is_kept(self, vacuum):
        comparison = compare_branches_to_distribution(vacuum, GateFactorParams(1 / 3, 9.0))
        assert comparison.conditioned.norm_squared() == pytest.approx(1.0, abs=config.NORM_TOL)


class TestSemiclassicalEnsemble:
    def test_two_signed_branches(self):
        samples = semiclassical_ensemble(CoherentGaussian(0.0, 0.0), AncillaSpec(1.0, 0.05), 12.0,
                                         window=0.5, q2_range=(-6.0, 6.0), n_samples=200_000, seed=3)
        assert samples.size > 500
        positive = np.count_nonzero(samples > 0) / samples.size
        assert 0.35 < positive < 0.65
        assert np.mean(np.abs(samples)) == pytest.approx(2.0, abs=0.1)

    def test_reproducible(self):
        args = (CoherentGaussian(0.0, 0.0), AncillaSpec(1.0, 0.05), 12.0, 0.5, (-6.0, 6.0))
        first = semiclassical_ensemble(*args, n_samples=20_000, seed=11)
        second = semiclassical_ensemble(*args, n_samples=20_000, seed=11)
        assert np.array_equal(first, second)

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            semiclassical_ensemble(CoherentGaussian(0.0, 0.0), AncillaSpec(1.0, 0.05), 12.0,
                                   window=0.0, q2_range=(-6.0, 6.0))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
