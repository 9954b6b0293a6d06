# -*- coding: utf-8 -*-
"""Shared fixtures for the cat gate test suite"""

import math

import numpy as np
import pytest

from cv_grid import Wavefunction, make_grid
from cv_states import CoherentGaussian, prepare_input


@pytest.fixture
def small_grid():
    return make_grid(-8, 8, 512)


@pytest.fixture
def desk_grid():
    """Default desk-scale target/ancilla grid"""
    return make_grid(-12, 12, 1024)


@pytest.fixture
def vacuum(desk_grid):
    return prepare_input(CoherentGaussian(0.0, 0.0, 1 / math.sqrt(2)), desk_grid)


@pytest.fixture
def small_vacuum(small_grid):
    x = small_grid.x
    return Wavefunction(small_grid, math.pi ** -0.25 * np.exp(-x ** 2 / 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
