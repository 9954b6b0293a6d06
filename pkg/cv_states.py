# -*- coding: utf-8 -*-
"""
Target input states and the cubic phase ancilla.

Input kinds (command-line form in brackets):
    CoherentGaussian   [coherent:x0,p0,width]
    SqueezedGaussian   [squeezed:x0,p0,width]
    CustomTable        [file:path.csv]   columns x, re, im

Gaussian kinds give psi(x) ~ exp(-(x - x0)^2 / (4 width^2) + i p0 x), so
`width` is the position standard deviation (vacuum: 1/sqrt(2)).
"""

import csv
import logging
import math
import os
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.signal import windows

import config
from cat_errors import (
    ConfigError,
    GridTruncationError,
    InvalidGammaError,
    ZeroStateError,
)
from cv_grid import Grid1D, Wavefunction, check_grid_adequacy, check_momentum_reach, edge_profile

logger = logging.getLogger(__name__)

VACUUM_WIDTH = 1 / math.sqrt(2)


@dataclass(frozen=True)
class CoherentGaussian:
    center_x: float
    center_p: float
    width: float = VACUUM_WIDTH

    kind = 'coherent'

    def __post_init__(self):
        if not (math.isfinite(self.width) and self.width > 0):
            raise ConfigError(f"{self.kind} width must be > 0, got {self.width}", code='invalid-width')
        if not (math.isfinite(self.center_x) and math.isfinite(self.center_p)):
            raise ConfigError(f"{self.kind} center must be finite", code='invalid-center')

    @property
    def momentum_width(self) -> float:
        return 1.0 / (2.0 * self.width)

    def amplitudes(self, x: np.ndarray) -> np.ndarray:
        return np.exp(-(x - self.center_x) ** 2 / (4.0 * self.width ** 2) + 1j * self.center_p * x)

    def describe(self) -> str:
        return f"{self.kind}:{self.center_x!r},{self.center_p!r},{self.width!r}"


@dataclass(frozen=True)
class SqueezedGaussian(CoherentGaussian):
    """Gaussian whose width differs from the vacuum width."""
    kind = 'squeezed'

    @property
    def squeezing(self) -> float:
        """r with width = e^(-r) / sqrt(2); positive r narrows the position spread."""
        return -math.log(self.width / VACUUM_WIDTH)


@dataclass(frozen=True, eq=False)
class CustomTable:
    """Tabulated amplitudes, linearly interpolated onto the target grid (zero outside the table)."""
    x: np.ndarray
    amps: np.ndarray
    source: str = '<table>'

    kind = 'file'

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        amps = np.asarray(self.amps, dtype=complex)
        if x.ndim != 1 or x.shape != amps.shape or x.size < 2:
            raise ConfigError("custom table needs matching x and amplitude columns with at least 2 rows",
                              code='invalid-table')
        if np.any(np.diff(x) <= 0):
            raise ConfigError("custom table x column must be strictly increasing", code='invalid-table')
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'amps', amps)

    def amplitudes(self, x: np.ndarray) -> np.ndarray:
        real = np.interp(x, self.x, self.amps.real, left=0.0, right=0.0)
        imag = np.interp(x, self.x, self.amps.imag, left=0.0, right=0.0)
        return real + 1j * imag

    def describe(self) -> str:
        return f"{self.kind}:{self.source}"


InputStateSpec = Union[CoherentGaussian, SqueezedGaussian, CustomTable]


@dataclass(frozen=True)
class AncillaSpec:
    gamma: float
    squeeze: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidGammaError(f"cubic strength gamma must be > 0, got {self.gamma}")
        if not (math.isfinite(self.squeeze) and self.squeeze > 0):
            raise ConfigError(f"ancilla squeeze must be > 0, got {self.squeeze}", code='invalid-squeeze')

    @property
    def position_spread(self) -> float:
        return 1.0 / (2.0 * self.squeeze)


def load_custom_table(path: str) -> CustomTable:
    """Read an (x, re, im) CSV; '#' lines and at most one non-numeric header row are skipped."""
    if not os.path.exists(path):
        raise ConfigError(f"input table not found: {path}", code='invalid-table')

    rows = []
    header_seen = False
    with open(path, 'r', encoding='utf-8') as file:
        for line_no, row in enumerate(csv.reader(file), 1):
            if not row or row[0].lstrip().startswith('#'):
                continue
            try:
                rows.append([float(value) for value in row[:3]])
            except ValueError:
                if rows or header_seen:
                    raise ConfigError(f"{path}:{line_no}: non-numeric row {row!r}", code='invalid-table') from None
                header_seen = True
                continue
            if len(rows[-1]) != 3:
                raise ConfigError(f"{path}:{line_no}: expected 3 columns x,re,im", code='invalid-table')

    if not rows:
        raise ConfigError(f"input table {path} has no data rows", code='invalid-table')
    table = np.array(rows)
    logger.debug("loaded %d amplitude rows from %s", len(rows), path)
    return CustomTable(table[:, 0], table[:, 1] + 1j * table[:, 2], source=path)


def parse_input_spec(text: str) -> InputStateSpec:
    """Parse 'coherent:x0,p0,width', 'squeezed:x0,p0,width' or 'file:path.csv'."""
    kind, sep, args = text.partition(':')
    if not sep:
        raise ConfigError(f"input must look like 'coherent:x0,p0,width' or 'file:path', got {text!r}",
                          code='invalid-input')
    kind = kind.strip().lower()
    if kind == 'file':
        return load_custom_table(args.strip())
    classes = {'coherent': CoherentGaussian, 'squeezed': SqueezedGaussian}
    if kind not in classes:
        raise ConfigError(f"unknown input kind {kind!r}", code='invalid-input')
    try:
        values = [float(v) for v in args.split(',')]
    except ValueError:
        raise ConfigError(f"bad numbers in input spec {text!r}", code='invalid-input') from None
    if len(values) not in (2, 3):
        raise ConfigError(f"{kind} input takes x0,p0[,width], got {text!r}", code='invalid-input')
    return classes[kind](*values)


def prepare_input(spec: InputStateSpec, grid: Grid1D) -> Wavefunction:
    """Normalized coordinate wavefunction of the target input on `grid`."""
    amps = spec.amplitudes(grid.x)
    _, edge_fraction = edge_profile(amps, grid)
    if edge_fraction > config.TRUNCATION_NORM_TOL:
        raise GridTruncationError(
            f"input {spec.describe()} puts {edge_fraction:.3g} of its norm on the outer "
            f"{100 * config.EDGE_FRACTION:.0f}% of grid {grid.describe()}")
    try:
        psi = Wavefunction(grid, amps).normalized()
    except ZeroStateError:
        raise ZeroStateError(f"input {spec.describe()} vanishes on grid {grid.describe()}") from None
    check_grid_adequacy(psi, label=f"input {spec.describe()}")
    return psi


def ancilla_envelope(spec: AncillaSpec, grid: Grid1D) -> np.ndarray:
    """Pre-cubic Gaussian with momentum spread `squeeze`, tapered to zero at the grid ends."""
    taper = windows.tukey(grid.n_points, alpha=2 * config.EDGE_FRACTION)
    return np.exp(-(spec.squeeze * grid.x) ** 2) * taper


def prepare_cubic_ancilla(spec: AncillaSpec, grid: Grid1D) -> Wavefunction:
    """psi_2(x) ~ exp(i gamma x^3) G(x); |psi_2| flattens as squeeze -> 0."""
    reach = 3 * spec.gamma * max(grid.x_min ** 2, grid.x[-1] ** 2)
    check_momentum_reach(grid, reach, label=f"cubic ancilla gamma={spec.gamma}")
    amps = np.exp(1j * spec.gamma * grid.x ** 3) * ancilla_envelope(spec, grid)
    return Wavefunction(grid, amps).normalized()
