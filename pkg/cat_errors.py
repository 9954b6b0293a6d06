# -*- coding: utf-8 -*-
"""
Error taxonomy for the cat gate simulator.

Every error carries a machine-readable code and the exit status the
command-line driver uses for it.
"""

from typing import Dict


class CubicCatError(Exception):
    code = 'error'
    exit_code = 1

    def __init__(self, message: str, code: str = None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code

    def to_dict(self) -> Dict:
        return {'error': self.code, 'message': self.message, 'exit_code': self.exit_code}


class ConfigError(CubicCatError, ValueError):
    """Invalid input or precondition violation"""
    code = 'config'
    exit_code = 2


class NumericalError(CubicCatError):
    """Numerical failure: non-convergence or grid truncation"""
    code = 'numerical'
    exit_code = 3


class RegimeError(CubicCatError):
    """Parameters outside the regime an operation is defined for"""
    code = 'regime'
    exit_code = 4


class InvalidExtentError(ConfigError):
    code = 'invalid-extent'


class InvalidSizeError(ConfigError):
    code = 'invalid-size'


class InvalidGammaError(ConfigError):
    code = 'invalid-gamma'


class InvalidOutcomeError(ConfigError):
    code = 'invalid-outcome'


class InvalidWindowError(ConfigError):
    code = 'invalid-window'


class RepresentationError(ConfigError):
    code = 'wrong-representation'


class GridMismatchError(ConfigError):
    code = 'grid-mismatch'


class ZeroStateError(ConfigError):
    code = 'zero-state'


class OutcomeOffGridError(ConfigError):
    code = 'outcome-off-grid'


class NonConvergenceError(NumericalError):
    code = 'non-convergence'


class GridTruncationError(NumericalError):
    code = 'truncation'


class OutOfRegimeError(RegimeError):
    code = 'out-of-regime'


class ZeroOverlapError(RegimeError):
    code = 'zero-overlap'


class NoBimodalityError(RegimeError):
    code = 'no-bimodality'
