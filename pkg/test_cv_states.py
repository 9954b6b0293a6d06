#!/usr/bin/env python3
"""
Tests for input state and cubic phase ancilla preparation
"""

import logging
import math

import numpy as np
import pytest

import config
from cat_analysis import wigner, wigner_momentum_grid
from cat_errors import ConfigError, GridTruncationError, InvalidGammaError, ZeroStateError
from cv_grid import make_grid, to_momentum
from cv_states import (
    AncillaSpec,
    CoherentGaussian,
    CustomTable,
    SqueezedGaussian,
    ancilla_envelope,
    load_custom_table,
    parse_input_spec,
    prepare_cubic_ancilla,
    prepare_input,
)


class TestInputStates:
    def test_vacuum_is_normalized(self, small_grid):
        psi = prepare_input(CoherentGaussian(0, 0, 1 / math.sqrt(2)), small_grid)
        assert psi.norm_squared() == pytest.approx(1.0, abs=config.NORM_TOL)
        expected = math.pi ** -0.25 * np.exp(-small_grid.x ** 2 / 2)
        assert np.max(np.abs(psi.amps - expected)) < 1e-12

    def test_momentum_kick(self, small_grid):
        psi = prepare_input(CoherentGaussian(0, 2, 1 / math.sqrt(2)), small_grid)
        mom = to_momentum(psi)
        assert abs(mom.grid.p[np.argmax(mom.density())] - 2) <= mom.grid.dp / 2
        assert psi.mean_momentum() == pytest.approx(2.0, abs=1e-8)

    def test_width_is_position_spread(self, desk_grid):
        psi = prepare_input(SqueezedGaussian(1.0, 0, 0.3), desk_grid)
        variance = np.sum((desk_grid.x - 1.0) ** 2 * psi.density()) * desk_grid.dx
        assert math.sqrt(variance) == pytest.approx(0.3, rel=1e-8)
        assert psi.mean_position() == pytest.approx(1.0, abs=1e-10)

    def test_squeezing_parameter(self):
        assert SqueezedGaussian(0, 0, 1 / math.sqrt(2)).squeezing == pytest.approx(0.0, abs=1e-15)
        assert SqueezedGaussian(0, 0, math.exp(-1) / math.sqrt(2)).squeezing == pytest.approx(1.0)

    def test_truncation_is_an_error(self, small_grid):
        with pytest.raises(GridTruncationError):
            prepare_input(CoherentGaussian(7.9, 0, 2), small_grid)

    @pytest.mark.parametrize('width', [0.0, -1.0])
    def test_width_must_be_positive(self, width):
        with pytest.raises(ConfigError):
            CoherentGaussian(0, 0, width)

    def test_custom_table_interpolates(self, small_grid):
        x = np.linspace(-4, 4, 801)
        table = CustomTable(x, np.exp(-x ** 2) * (1 + 0.5j))
        psi = prepare_input(table, small_grid)
        assert psi.norm_squared() == pytest.approx(1.0, abs=config.NORM_TOL)
        assert np.all(psi.amps[np.abs(small_grid.x) > 4] == 0)

    def test_empty_custom_table(self, small_grid):
        x = np.linspace(-4, 4, 9)
        with pytest.raises(ZeroStateError):
            prepare_input(CustomTable(x, np.zeros(9)), small_grid)


class TestInputParsing:
    def test_coherent(self):
        spec = parse_input_spec('coherent:0.5,-1,0.7')
        assert spec == CoherentGaussian(0.5, -1.0, 0.7)

    def test_default_width(self):
        assert parse_input_spec('coherent:0,0').width == pytest.approx(1 / math.sqrt(2))

    def test_squeezed(self):
        assert isinstance(parse_input_spec('squeezed:0,0,0.3'), SqueezedGaussian)

    @pytest.mark.parametrize('text', ['coherent', 'thermal:1,2,3', 'coherent:a,b,c', 'coherent:1,2,3,4'])
    def test_rejects(self, text):
        with pytest.raises(ConfigError):
            parse_input_spec(text)

    def test_file_table(self, tmp_path, small_grid):
        path = tmp_path / 'input.csv'
        x = np.linspace(-5, 5, 201)
        lines = ['# amplitude table', 'x,re,im']
        lines += [f"{xi!r},{math.exp(-xi ** 2 / 2)!r},0" for xi in x]
        path.write_text('\n'.join(lines) + '\n')

        spec = parse_input_spec(f'file:{path}')
        assert isinstance(spec, CustomTable)
        psi = prepare_input(spec, small_grid)
        assert psi.mean_position() == pytest.approx(0.0, abs=1e-10)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_custom_table(str(tmp_path / 'missing.csv'))

    def test_bad_row(self, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text('x,re,im\n0,1,0\n1,oops,0\n')
        with pytest.raises(ConfigError):
            load_custom_table(str(path))

    def test_only_one_header_row(self, tmp_path):
        path = tmp_path / 'garbled.csv'
        path.write_text('# amplitudes\nx,re,im\nzero,one,zero\none,half,zero\n')
        with pytest.raises(ConfigError, match=r'garbled\.csv:3: non-numeric row'):
            load_custom_table(str(path))


class TestCubicAncilla:
    @pytest.fixture
    def ancilla_grid(self):
        return make_grid(-6, 6, 1024)

    def test_normalized(self, ancilla_grid):
        psi = prepare_cubic_ancilla(AncillaSpec(1.0, 0.05), ancilla_grid)
        assert psi.norm_squared() == pytest.approx(1.0, abs=config.NORM_TOL)

    def test_flat_over_central_half(self, ancilla_grid):
        psi = prepare_cubic_ancilla(AncillaSpec(1.0, 0.05), ancilla_grid)
        central = np.abs(ancilla_grid.x) <= 3
        magnitude = np.abs(psi.amps[central])
        assert np.min(magnitude) >= 0.9 * np.max(magnitude)

    def test_vanishing_gamma_gives_the_envelope(self, ancilla_grid):
        spec = AncillaSpec(1e-14, 0.05)
        psi = prepare_cubic_ancilla(spec, ancilla_grid)
        envelope = ancilla_envelope(spec, ancilla_grid)
        envelope = envelope / math.sqrt(np.sum(envelope ** 2) * ancilla_grid.dx)
        assert np.max(np.abs(psi.amps - envelope)) < 1e-10

    def test_local_momentum_is_parabola(self, ancilla_grid):
        gamma = 0.5
        psi = prepare_cubic_ancilla(AncillaSpec(gamma, 0.05), ancilla_grid)
        phase = np.unwrap(np.angle(psi.amps))
        local_p = np.gradient(phase, ancilla_grid.dx)
        x = ancilla_grid.x
        inside = np.abs(x) <= 4
        assert np.max(np.abs(local_p[inside] - 3 * gamma * x[inside] ** 2)) < 1e-2

    def test_momentum_distribution_is_one_sided(self, ancilla_grid):
        spec = AncillaSpec(1.0, 0.05)
        mom = to_momentum(prepare_cubic_ancilla(spec, ancilla_grid))
        cutoff = -5 * max(spec.squeeze, (3 * spec.gamma) ** (1 / 3))
        tail = np.sum(mom.density()[mom.grid.p < cutoff]) * mom.grid.dp
        assert tail < 1e-3

    def test_wigner_has_negative_values(self, ancilla_grid):
        psi = prepare_cubic_ancilla(AncillaSpec(1.0, 0.05), ancilla_grid)
        w = wigner(psi, wigner_momentum_grid(ancilla_grid, 40.0, 256))
        assert w.minimum() < -1e-3

    def test_invalid_gamma(self, ancilla_grid):
        with pytest.raises(InvalidGammaError):
            prepare_cubic_ancilla(AncillaSpec(0.0, 0.05), ancilla_grid)

    def test_invalid_squeeze(self):
        with pytest.raises(ConfigError):
            AncillaSpec(1.0, 0.0)

    def test_momentum_reach_warning(self, desk_grid, caplog):
        with caplog.at_level(logging.WARNING):
            prepare_cubic_ancilla(AncillaSpec(1.0, 0.05), desk_grid)
        assert 'Nyquist' in caplog.text


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
