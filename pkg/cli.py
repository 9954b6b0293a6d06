#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command-line driver for the cubic-phase cat gate simulator

Commands:
    condition        condition an input on one outcome, write wavefunction, momentum density, report
    compare-approx   tabulate exact, quadrature and stationary-phase gate factors
    sweep            one CatReport row per outcome
    wigner           Wigner map of the input, the ancilla or the conditioned output

Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 regime error, 1 anything unexpected. Errors are reported as JSON on
standard error.

Usage:
    python3 cli.py condition --gamma 0.2 --ym 6 --pipeline both --out results
    python3 cli.py compare-approx --gamma 1 --ym 0 --x-range=-15,3 --samples 400
"""

import functools
import json
import logging
import sys
from typing import List, Tuple

import click
import numpy as np

import config
from airy_factor import (
    GateFactorParams,
    gate_factor_exact,
    gate_factor_quadrature,
    gate_factor_stationary,
    stationary_relative_error,
)
from cat_analysis import momentum_peaks, negativity_volume, sign_changes, wigner
from cat_errors import ConfigError, CubicCatError, InvalidSizeError, NonConvergenceError
from cat_sweep_runner import CatSweepRunner, OutputFormat, Pipeline, RunConfig, condition_once
from cv_grid import parse_grid, to_momentum
from cv_states import parse_input_spec, prepare_cubic_ancilla, prepare_input
from gaussian_ops import rotate
from result_writer import columns_to_rows, write_json, write_table

logger = logging.getLogger(__name__)


def _fail(error: CubicCatError):
    click.echo(json.dumps(error.to_dict()), err=True)
    sys.exit(error.exit_code)


def handle_errors(command):
    """Turn library errors into error JSON on stderr and the matching exit status"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CubicCatError as e:
            logger.debug("%s failed", command.__name__, exc_info=True)
            print(f"❌ {e.code}: {e.message}")
            _fail(e)
    return wrapper


def _parse_floats(text: str, label: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ConfigError(f"{label} must be comma-separated numbers, got {text!r}") from None


def _parse_range(text: str, label: str) -> Tuple[float, float]:
    values = _parse_floats(text, label)
    if len(values) != 2:
        raise ConfigError(f"{label} must look like 'lo,hi', got {text!r}")
    return values[0], values[1]


def run_options(command):
    """Options shared by every command that conditions a state"""
    options = [
        click.option('--gamma', type=float, default=config.DEFAULT_GAMMA, show_default=True,
                     help='Cubic strength gamma (> 0).'),
        click.option('--ym', 'y_m', type=float, default=config.DEFAULT_Y_M, show_default=True,
                     help='Ancilla momentum outcome y_m.'),
        click.option('--squeeze', type=float, default=config.DEFAULT_SQUEEZE, show_default=True,
                     help='Momentum spread of the finite-squeeze ancilla.'),
        click.option('--grid', 'target_grid', default=config.DEFAULT_TARGET_GRID, show_default=True,
                     help='Target grid "xmin,xmax,n".'),
        click.option('--ancilla-grid', default=config.DEFAULT_ANCILLA_GRID, show_default=True,
                     help='Ancilla grid "xmin,xmax,n".'),
        click.option('--input', 'input_text', default=config.DEFAULT_INPUT, show_default=True,
                     help='"coherent:x0,p0,width", "squeezed:x0,p0,width" or "file:path.csv".'),
        click.option('--pipeline', type=click.Choice([p.value for p in Pipeline]),
                     default=config.DEFAULT_PIPELINE, show_default=True),
        click.option('--format', 'fmt', type=click.Choice([f.value for f in OutputFormat]),
                     default=config.DEFAULT_FORMAT, show_default=True),
        click.option('--out', 'output_dir', default=config.OUTPUT_DIR, show_default=True,
                     type=click.Path(file_okay=False)),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def build_run_config(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt,
                     rotate_theta: float = 0.0) -> RunConfig:
    return RunConfig(
        gamma=gamma,
        y_m=y_m,
        squeeze=squeeze,
        target_grid=parse_grid(target_grid),
        ancilla_grid=parse_grid(ancilla_grid),
        input_spec=parse_input_spec(input_text),
        pipeline=Pipeline(pipeline),
        output_format=OutputFormat(fmt),
        rotate=rotate_theta,
    )


@click.group()
@click.option('--log-level', default=config.LOG_LEVEL, show_default=True,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
def cli(log_level):
    """Cubic-phase cat gate simulator"""
    logging.basicConfig(level=log_level.upper(), format='%(levelname)s %(name)s: %(message)s')


@cli.command()
@run_options
@click.option('--rotate', 'rotate_theta', type=float, default=0.0, show_default=True,
              help='Rotate the output cat by this phase-space angle (radians).')
@handle_errors
def condition(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt, output_dir,
              rotate_theta):
    """Condition the input on outcome y_m and write the output state"""
    run = build_run_config(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt,
                           rotate_theta)
    print(f"🚀 Conditioning {run.input_spec.describe()} on y_m={y_m} (gamma={gamma}, pipeline={pipeline})")

    psi_in = prepare_input(run.input_spec, run.target_grid)
    result = condition_once(run, psi_in)
    output = rotate(result.output, rotate_theta) if rotate_theta else result.output
    momentum = to_momentum(output)

    metadata = run.metadata()
    metadata['y_conditioned'] = result.y_m
    report_payload = {'metadata': metadata, 'report': result.report.to_dict(),
                      'report_state': 'pre-rotation' if rotate_theta else 'conditioned'}
    if rotate_theta:
        # the report describes the conditioned state; the written files hold the rotated one
        report_payload['rotated_momentum_peaks'] = momentum_peaks(output)
    files = [
        write_table(output_dir, 'wavefunction',
                    columns_to_rows({'x': output.grid.x, 're': output.amps.real, 'im': output.amps.imag}),
                    ['x', 're', 'im'], metadata, fmt),
        write_table(output_dir, 'momentum_density',
                    columns_to_rows({'p': momentum.grid.p, 'density': momentum.density()}),
                    ['p', 'density'], metadata, fmt),
        write_json(output_dir, 'cat_report', report_payload),
    ]
    for path in files:
        print(f"📁 Wrote {path}")
    if result.comparison is not None:
        print(f"📊 Pipeline fidelity: {result.comparison.fidelity:.6f}")
    print("✅ Done")


@cli.command('compare-approx')
@click.option('--gamma', type=float, default=1.0, show_default=True)
@click.option('--ym', 'y_m', type=float, default=0.0, show_default=True)
@click.option('--x-range', 'x_range', default='-15,3', show_default=True, help='Sample interval "lo,hi".')
@click.option('--samples', 'n_samples', type=int, default=400, show_default=True)
@click.option('--format', 'fmt', type=click.Choice([f.value for f in OutputFormat]),
              default=config.DEFAULT_FORMAT, show_default=True)
@click.option('--out', 'output_dir', default=config.OUTPUT_DIR, show_default=True,
              type=click.Path(file_okay=False))
@handle_errors
def compare_approx(gamma, y_m, x_range, n_samples, fmt, output_dir):
    """Tabulate exact, quadrature and stationary-phase gate factors over x"""
    params = GateFactorParams(gamma, y_m)
    lo, hi = _parse_range(x_range, 'x-range')
    if n_samples < 1:
        raise InvalidSizeError(f"--samples must be >= 1, got {n_samples}")
    if not hi > lo and n_samples > 1:
        raise ConfigError(f"x-range needs lo < hi, got {x_range!r}", code='invalid-extent')
    print(f"🚀 Comparing gate factor evaluators on {n_samples} points in [{lo}, {hi}] (gamma={gamma}, y_m={y_m})")

    x = np.linspace(lo, hi, n_samples)
    exact = np.asarray(gate_factor_exact(x, params))
    quadrature = np.full(x.size, np.nan, dtype=complex)
    converged = np.zeros(x.size, dtype=bool)
    for i, xi in enumerate(x):
        try:
            quadrature[i] = gate_factor_quadrature(float(xi), params)
            converged[i] = True
        except NonConvergenceError as e:
            logger.info("quadrature skipped at x=%.6g: %s", xi, e.message)
    stationary = np.full(x.size, np.nan)
    rel_error = np.full(x.size, np.nan)
    reachable = x < y_m
    if np.any(reachable):
        stationary[reachable] = np.asarray(gate_factor_stationary(x[reachable], params)).real
        rel_error[reachable] = stationary_relative_error(x[reachable], params)

    rows = []
    for i in range(x.size):
        rows.append({
            'x': x[i],
            'scaled_argument': (x[i] - y_m) / params.airy_length,
            'exact_re': exact[i].real,
            'exact_im': exact[i].imag,
            'quadrature_re': quadrature[i].real if converged[i] else None,
            'quadrature_im': quadrature[i].imag if converged[i] else None,
            'quadrature_status': 'ok' if converged[i] else NonConvergenceError.code,
            'stationary': stationary[i] if reachable[i] else None,
            'rel_error': rel_error[i] if reachable[i] else None,
            'regime': 'stationary' if reachable[i] else 'out-of-regime',
        })
    fields = ['x', 'scaled_argument', 'exact_re', 'exact_im', 'quadrature_re', 'quadrature_im',
              'quadrature_status', 'stationary', 'rel_error', 'regime']
    metadata = {'gamma': gamma, 'y_m': y_m, 'x_range': x_range, 'samples': n_samples}
    path = write_table(output_dir, 'compare_approx', rows, fields, metadata, fmt)
    print(f"📁 Wrote {path}")
    if np.any(converged):
        print(f"📊 max |exact - quadrature| = {float(np.max(np.abs(exact - quadrature)[converged])):.3g}")
    if not np.all(converged):
        print(f"⚠️  quadrature did not converge on {int(np.sum(~converged))} of {x.size} points")
    print("✅ Done")


@cli.command()
@run_options
@click.option('--ys', 'y_text', required=True, help='Comma-separated outcomes y_m.')
@click.option('--workers', type=int, default=config.MAX_WORKERS, show_default=True)
@handle_errors
def sweep(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt, output_dir, y_text,
          workers):
    """Write one CatReport row per outcome"""
    y_list = _parse_floats(y_text, 'ys')
    if not y_list:
        raise InvalidSizeError("--ys needs at least one outcome")
    run = build_run_config(gamma, y_list[0], squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt)
    runner = CatSweepRunner(run, max_workers=workers)
    rows = runner.process_outcomes(y_list)
    for path in runner.generate_report(rows, output_dir):
        print(f"📁 Wrote {path}")
    print("✅ Done")


@cli.command('wigner')
@run_options
@click.option('--state', 'which', type=click.Choice(['output', 'input', 'ancilla']), default='output',
              show_default=True)
@click.option('--p-range', 'p_range', default='-8,8,256', show_default=True,
              help='Momentum lattice "pmin,pmax,n" of the map.')
@handle_errors
def wigner_command(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt, output_dir,
                   which, p_range):
    """Write the Wigner map of the chosen state and its negativity summary"""
    run = build_run_config(gamma, y_m, squeeze, target_grid, ancilla_grid, input_text, pipeline, fmt)
    if which == 'ancilla':
        psi = prepare_cubic_ancilla(run.ancilla, run.ancilla_grid)
    else:
        psi = prepare_input(run.input_spec, run.target_grid)
        if which == 'output':
            psi = condition_once(run, psi, with_wigner=False).output

    p_values = p_range.split(',')
    if len(p_values) != 3:
        raise ConfigError(f"--p-range must look like 'pmin,pmax,n', got {p_range!r}")
    p_grid = parse_grid(p_range)
    print(f"🚀 Wigner map of the {which} state on {psi.grid.n_points}x{p_grid.n_points} cells")
    w = wigner(psi, p_grid)

    x_mean = psi.mean_position()
    summary = {
        'metadata': {**run.metadata(), 'state': which, 'p_range': p_range},
        'minimum': w.minimum(),
        'total': w.total(),
        'negativity_volume': negativity_volume(w),
        'sign_changes_along_x_at_p0': sign_changes(w.cut_at_momentum(psi.mean_momentum())),
        'sign_changes_along_p_at_mean_x': sign_changes(w.cut_at_position(x_mean)),
    }
    xx, pp = np.meshgrid(w.x_grid.x, w.p_grid.x, indexing='ij')
    rows = columns_to_rows({'x': xx.ravel(), 'p': pp.ravel(), 'w': w.values.ravel()})
    files = [
        write_table(output_dir, f"wigner_{which}", rows, ['x', 'p', 'w'], summary['metadata'], fmt),
        write_json(output_dir, f"wigner_{which}_summary", summary),
    ]
    for path in files:
        print(f"📁 Wrote {path}")
    print(f"📊 min W = {summary['minimum']:.4g}, negativity volume = {summary['negativity_volume']:.4g}")
    print("✅ Done")


def main():
    """Main function"""
    try:
        cli(standalone_mode=False)
    except click.ClickException as e:
        e.show()
        _fail(ConfigError(e.format_message()))
    except click.exceptions.Abort:
        print("❌ Aborted")
        sys.exit(1)
    except Exception as e:
        print(f"❌ Error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
