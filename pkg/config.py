# -*- coding: utf-8 -*-
"""
Configuration for the cubic-phase cat gate simulator

Run defaults can be overridden from a .env file (see config.env).
Numerical tolerances below are fixed and referenced by name in the tests.
"""

import math
import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

TOOL_VERSION = "cubic-cat-sim 1.0.0"

# Run defaults
DEFAULT_GAMMA = float(os.getenv('CAT_GAMMA', '0.2'))
DEFAULT_Y_M = float(os.getenv('CAT_Y_M', '6.0'))
DEFAULT_SQUEEZE = float(os.getenv('CAT_SQUEEZE', '0.05'))
DEFAULT_TARGET_GRID = os.getenv('CAT_TARGET_GRID', '-12,12,1024')
DEFAULT_ANCILLA_GRID = os.getenv('CAT_ANCILLA_GRID', '-12,12,1024')
DEFAULT_INPUT = os.getenv('CAT_INPUT', f'coherent:0,0,{1 / math.sqrt(2)!r}')
DEFAULT_PIPELINE = os.getenv('CAT_PIPELINE', 'analytic')
DEFAULT_FORMAT = os.getenv('CAT_FORMAT', 'csv')
OUTPUT_DIR = os.getenv('CAT_OUTPUT_DIR', 'results')
MAX_WORKERS = int(os.getenv('CAT_MAX_WORKERS', '4'))
LOG_LEVEL = os.getenv('CAT_LOG_LEVEL', 'INFO')

# Grid
MIN_GRID_POINTS = 8
NORM_TOL = 1e-10
EDGE_FRACTION = 0.05  # per side
EDGE_AMPLITUDE_TOL = 1e-8
TRUNCATION_NORM_TOL = 1e-4

# Airy evaluator
AIRY_SWITCH = 6.0
AIRY_HANDOFF_BAND = (5.5, 6.5)
AIRY_HANDOFF_TOL = 1e-9
AIRY_SERIES_TERMS = 80
AIRY_ASYMPTOTIC_TERMS = 40

# Gate factor quadrature
CONTOUR_ANGLE = math.pi / 6
QUADRATURE_ABS_TOL = 1e-9
QUADRATURE_SUBDIVISIONS = 400
QUADRATURE_DECAY_EXPONENT = 60.0
EVALUATOR_AGREEMENT_TOL = 1e-8
REALNESS_TOL = 1e-9

# Stationary-phase accuracy, relative to the stationary envelope
STATIONARY_TOL_NEAR = 0.10  # scaled argument -2
STATIONARY_TOL_FAR = 0.005  # scaled argument -8

# Conditioning and analysis
ZERO_OVERLAP_TOL = 1e-12
PEAK_THRESHOLD = 0.1
SUCCESS_WINDOW_TOL = 1e-6
HEISENBERG_AGREEMENT_TOL = 0.05
BRANCH_FIDELITY_CAT = 0.95

# Output
FLOAT_FORMAT = '.17g'
