#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Run configuration, single-outcome conditioning and the threaded outcome sweep.

A sweep conditions the same input on every y_m of a list and writes one
CatReport row per outcome, sorted by y_m:

y_m,y_snapped,n_peaks,peak_minus,peak_plus,separation,width_ratio,visibility,
branch_fidelity,branch_fidelity_stationary,outcome_density,outcome_density_kind,
pipeline_fidelity

Usage:
    python3 cat_sweep_runner.py 3,6,9,12
"""

import enum
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional

import config
from airy_factor import GateFactorParams
from cat_analysis import CatReport, cat_report
from cubic_cat_gate import (
    PipelineComparison,
    analytic_condition,
    compare_pipelines,
    conditioning_weight,
    run_brute_force,
    snap_outcome,
)
from cv_grid import Grid1D, Wavefunction, parse_grid
from cv_states import AncillaSpec, InputStateSpec, parse_input_spec, prepare_input
from result_writer import write_json, write_table


class Pipeline(enum.Enum):
    ANALYTIC = 'analytic'
    BRUTE = 'brute'
    BOTH = 'both'


class OutputFormat(enum.Enum):
    CSV = 'csv'
    JSON = 'json'


@dataclass(frozen=True)
class RunConfig:
    gamma: float
    y_m: float
    squeeze: float
    target_grid: Grid1D
    ancilla_grid: Grid1D
    input_spec: InputStateSpec
    pipeline: Pipeline = Pipeline.ANALYTIC
    output_format: OutputFormat = OutputFormat.CSV
    rotate: float = 0.0

    def __post_init__(self):
        # fail fast on values the modules below would reject
        GateFactorParams(self.gamma, self.y_m)
        AncillaSpec(self.gamma, self.squeeze)

    @property
    def ancilla(self) -> AncillaSpec:
        return AncillaSpec(self.gamma, self.squeeze)

    def gate_params(self, y_m: Optional[float] = None) -> GateFactorParams:
        return GateFactorParams(self.gamma, self.y_m if y_m is None else y_m)

    def with_outcome(self, y_m: float) -> 'RunConfig':
        return RunConfig(self.gamma, y_m, self.squeeze, self.target_grid, self.ancilla_grid,
                         self.input_spec, self.pipeline, self.output_format, self.rotate)

    def metadata(self) -> Dict:
        return {
            'gamma': self.gamma,
            'y_m': self.y_m,
            'squeeze': self.squeeze,
            'target_grid': self.target_grid.describe(),
            'ancilla_grid': self.ancilla_grid.describe(),
            'input': self.input_spec.describe(),
            'pipeline': self.pipeline.value,
            'rotate': self.rotate,
        }


def default_run_config(**overrides) -> RunConfig:
    """RunConfig from the config module defaults (and so from .env)."""
    values = dict(
        gamma=config.DEFAULT_GAMMA,
        y_m=config.DEFAULT_Y_M,
        squeeze=config.DEFAULT_SQUEEZE,
        target_grid=parse_grid(config.DEFAULT_TARGET_GRID),
        ancilla_grid=parse_grid(config.DEFAULT_ANCILLA_GRID),
        input_spec=parse_input_spec(config.DEFAULT_INPUT),
        pipeline=Pipeline(config.DEFAULT_PIPELINE),
        output_format=OutputFormat(config.DEFAULT_FORMAT),
    )
    values.update(overrides)
    return RunConfig(**values)


@dataclass(frozen=True)
class ConditionResult:
    psi_in: Wavefunction
    output: Wavefunction
    y_m: float
    report: CatReport
    comparison: Optional[PipelineComparison] = None


def condition_once(run: RunConfig, psi_in: Wavefunction, with_wigner: bool = True) -> ConditionResult:
    """Run the configured pipeline(s) at run.y_m and build the CatReport of the output."""
    comparison = None
    if run.pipeline is Pipeline.ANALYTIC:
        y_m = run.y_m
        params = run.gate_params()
        output = analytic_condition(psi_in, params)
        density, kind = conditioning_weight(psi_in, params), 'relative'
    elif run.pipeline is Pipeline.BRUTE:
        projected = run_brute_force(psi_in, run.ancilla, run.ancilla_grid, run.y_m)
        y_m, output = projected.y_snapped, projected.psi
        density, kind = projected.joint_density, 'joint'
    else:
        comparison = compare_pipelines(psi_in, run.ancilla, run.ancilla_grid, run.y_m)
        y_m, output = comparison.y_snapped, comparison.brute.psi
        density, kind = comparison.joint_density, 'joint'

    report = cat_report(output, psi_in, run.gate_params(y_m), density, kind, with_wigner=with_wigner)
    if comparison is not None:
        report.extras.update({
            'pipeline_fidelity': comparison.fidelity,
            'y_requested': comparison.y_requested,
            'y_snapped': comparison.y_snapped,
            'snap_distance': comparison.snap_distance,
            'relative_density': comparison.relative_density,
        })
    return ConditionResult(psi_in, output, y_m, report, comparison)


SWEEP_FIELDS = ['y_m', 'y_snapped', 'n_peaks', 'peak_minus', 'peak_plus', 'separation', 'width_ratio',
                'visibility', 'branch_fidelity', 'branch_fidelity_stationary', 'outcome_density',
                'outcome_density_kind', 'pipeline_fidelity']


class CatSweepRunner:
    def __init__(self, run: RunConfig, max_workers: int = config.MAX_WORKERS):
        """Prepare the input state once; every outcome reuses it"""
        self.run = run
        self.max_workers = max(1, int(max_workers))
        self.psi_in = prepare_input(run.input_spec, run.target_grid)
        self.stats = {
            'total_processed': 0,
            'cat_outcomes': 0,
            'single_peak_outcomes': 0,
            'failed': 0,
        }
        self.stats_lock = threading.Lock()  # Thread-safe statistics
        self.processed_count = 0
        self.total_count = 0
        self.start_time = None

    def update_stats(self, key: str, increment: int = 1):
        """Thread-safe statistics update"""
        with self.stats_lock:
            self.stats[key] += increment

    def update_progress(self, increment: int = 1):
        """Update progress counter"""
        with self.stats_lock:
            self.processed_count += increment

    def process_single_outcome(self, y_m: float) -> Dict:
        """Condition on one outcome and flatten its report into a sweep row"""
        try:
            result = condition_once(self.run.with_outcome(y_m), self.psi_in, with_wigner=False)
        except Exception:
            self.update_stats('failed')
            self.update_progress()
            raise

        report = result.report
        peaks = report.peak_positions
        row = {
            'y_m': y_m,
            'y_snapped': result.y_m,
            'n_peaks': len(peaks),
            'peak_minus': peaks[0] if len(peaks) >= 2 else None,
            'peak_plus': peaks[-1] if len(peaks) >= 2 else None,
            'separation': report.separation,
            'width_ratio': report.width_ratio,
            'visibility': report.visibility,
            'branch_fidelity': report.branch_fidelity,
            'branch_fidelity_stationary': report.branch_fidelity_stationary,
            'outcome_density': report.outcome_density,
            'outcome_density_kind': report.outcome_density_kind,
            'pipeline_fidelity': report.extras.get('pipeline_fidelity'),
        }
        self.update_stats('total_processed')
        self.update_stats('cat_outcomes' if len(peaks) >= 2 else 'single_peak_outcomes')
        self.update_progress()
        print(f"✅ y_m={y_m:g}: {len(peaks)} peak(s), separation {report.separation:.4f} "
              f"[{self.processed_count}/{self.total_count}]")
        return row

    def process_outcomes(self, y_list: List[float]) -> List[Dict]:
        """Condition on every outcome concurrently; rows come back sorted by y_m"""
        for y_m in y_list:
            snap_outcome(self.run.ancilla_grid, y_m)

        self.total_count = len(y_list)
        self.processed_count = 0
        self.start_time = time.time()
        print(f"🚀 Sweeping {len(y_list)} outcomes with {self.max_workers} workers")

        rows = []
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_y = {executor.submit(self.process_single_outcome, y_m): y_m for y_m in y_list}
            for future in as_completed(future_to_y):
                rows.append(future.result())

        return sorted(rows, key=lambda row: row['y_m'])

    def generate_report(self, rows: List[Dict], output_dir: str) -> List[str]:
        """Write the sweep table and the summary statistics"""
        fmt = self.run.output_format.value
        metadata = self.run.metadata()
        metadata.pop('y_m')
        metadata['y_list'] = ' '.join(format(row['y_m'], 'g') for row in rows)

        print("\n" + "=" * 60)
        print("📊 CAT SWEEP SUMMARY")
        print("=" * 60)
        print(f"Outcomes processed: {self.stats['total_processed']}")
        print(f"Two-peak (cat) outcomes: {self.stats['cat_outcomes']}")
        print(f"Single-peak outcomes: {self.stats['single_peak_outcomes']}")
        if self.start_time is not None:
            print(f"Elapsed: {time.time() - self.start_time:.2f} s")

        table = write_table(output_dir, 'sweep', rows, SWEEP_FIELDS, metadata, fmt)
        stats = write_json(output_dir, 'sweep_stats', {'metadata': metadata, 'stats': self.stats})
        print(f"\n📄 Sweep table saved to: {table}")
        print(f"📈 Statistics saved to: {stats}")
        return [table, stats]


def main():
    """Main function"""
    try:
        y_list = [float(v) for v in sys.argv[1].split(',')] if len(sys.argv) > 1 else [config.DEFAULT_Y_M]
        run = default_run_config()
        print("🚀 Starting cat sweep")
        print("=" * 70)
        for key, value in run.metadata().items():
            print(f"{key}: {value}")
        print("=" * 70)

        runner = CatSweepRunner(run)
        rows = runner.process_outcomes(y_list)
        runner.generate_report(rows, config.OUTPUT_DIR)
        print("\n✅ Sweep completed!")

    except Exception as e:
        print(f"❌ Error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
