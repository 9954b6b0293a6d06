#!/usr/bin/env python3
"""
Tests for run configuration, single-outcome conditioning and the sweep runner
"""

import json
import math

import pytest

from cat_errors import InvalidGammaError, OutcomeOffGridError
from cat_sweep_runner import (
    SWEEP_FIELDS,
    CatSweepRunner,
    OutputFormat,
    Pipeline,
    RunConfig,
    condition_once,
    default_run_config,
)
from cv_grid import make_grid
from cv_states import CoherentGaussian, prepare_input
from result_writer import read_table


@pytest.fixture
def run():
    grid = make_grid(-12, 12, 1024)
    return RunConfig(gamma=1 / 3, y_m=9.0, squeeze=0.05, target_grid=grid, ancilla_grid=grid,
                     input_spec=CoherentGaussian(0.0, 0.0))


class TestRunConfig:
    def test_defaults(self):
        run = default_run_config()
        assert run.pipeline is Pipeline.ANALYTIC
        assert run.output_format is OutputFormat.CSV
        assert run.target_grid.n_points == 1024

    def test_overrides(self):
        run = default_run_config(gamma=1.0, pipeline=Pipeline.BOTH)
        assert run.gamma == 1.0
        assert run.ancilla.gamma == 1.0
        assert run.pipeline is Pipeline.BOTH

    def test_validates(self, run):
        with pytest.raises(InvalidGammaError):
            RunConfig(0.0, 1.0, 0.05, run.target_grid, run.ancilla_grid, run.input_spec)

    def test_with_outcome(self, run):
        moved = run.with_outcome(4.0)
        assert moved.y_m == 4.0
        assert moved.gate_params().y_m == 4.0
        assert run.gate_params(2.5).y_m == 2.5
        assert moved.input_spec == run.input_spec

    def test_metadata(self, run):
        metadata = run.metadata()
        assert metadata['target_grid'] == '-12.0,12.0,1024'
        assert metadata['input'] == run.input_spec.describe()
        assert metadata['pipeline'] == 'analytic'


class TestConditionOnce:
    def test_analytic(self, run):
        psi_in = prepare_input(run.input_spec, run.target_grid)
        result = condition_once(run, psi_in, with_wigner=False)
        assert result.comparison is None
        assert result.y_m == 9.0
        assert result.report.separation == pytest.approx(6.0, abs=0.3)
        assert result.report.outcome_density_kind == 'relative'

    def test_brute_force_is_snapped(self):
        grid = make_grid(-12, 12, 1024)
        run = RunConfig(0.2, 6.0, 0.02, grid, grid, CoherentGaussian(0.0, 0.0), Pipeline.BRUTE)
        result = condition_once(run, prepare_input(run.input_spec, grid), with_wigner=False)
        assert abs(result.y_m - 6.0) <= grid.dp / 2
        assert result.report.outcome_density_kind == 'joint'

    def test_both_records_comparison(self):
        grid = make_grid(-12, 12, 1024)
        run = RunConfig(0.2, 6.0, 0.02, grid, grid, CoherentGaussian(0.0, 0.0), Pipeline.BOTH)
        result = condition_once(run, prepare_input(run.input_spec, grid), with_wigner=False)
        assert result.report.extras['pipeline_fidelity'] == result.comparison.fidelity
        assert result.report.extras['snap_distance'] <= grid.dp / 2


class TestCatSweepRunner:
    def test_rows_sorted_and_counted(self, run):
        runner = CatSweepRunner(run, max_workers=3)
        rows = runner.process_outcomes([9.0, 0.0, 6.0])
        assert [row['y_m'] for row in rows] == [0.0, 6.0, 9.0]
        assert runner.stats['total_processed'] == 3
        assert runner.stats['cat_outcomes'] + runner.stats['single_peak_outcomes'] == 3
        assert runner.processed_count == 3

    def test_cat_row(self, run):
        row = CatSweepRunner(run).process_outcomes([9.0])[0]
        assert row['n_peaks'] >= 2
        assert row['peak_minus'] == pytest.approx(-3.0, abs=0.15)
        assert row['peak_plus'] == pytest.approx(3.0, abs=0.15)
        assert row['pipeline_fidelity'] is None

    def test_single_peak_row(self, run):
        row = CatSweepRunner(run).process_outcomes([0.0])[0]
        assert row['separation'] == 0.0
        assert row['branch_fidelity'] is None
        assert row['peak_minus'] is None

    def test_off_grid_outcome_rejected_before_work(self, run):
        runner = CatSweepRunner(run)
        with pytest.raises(OutcomeOffGridError):
            runner.process_outcomes([3.0, 1e4])
        assert runner.stats['total_processed'] == 0

    def test_report_files(self, run, tmp_path):
        runner = CatSweepRunner(run)
        rows = runner.process_outcomes([6.0, 9.0])
        table, stats = runner.generate_report(rows, str(tmp_path))

        metadata, back = read_table(table)
        assert metadata['y_list'] == '6 9'
        assert 'y_m' not in metadata
        assert list(back[0]) == SWEEP_FIELDS
        assert back[1]['separation'] == pytest.approx(2 * math.sqrt(9.0), abs=0.3)
        assert json.loads(open(stats, encoding='utf-8').read())['stats']['total_processed'] == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
