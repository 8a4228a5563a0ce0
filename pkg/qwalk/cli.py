import functools
import logging
import sys

import click
from dotenv import dotenv_values

from qwalk import config
from qwalk.analysis import (
    Series,
    crw_variance_series,
    entropy_curve,
    entropy_sweep,
    fit_power_law,
    trace_distance_series,
    uniform_grid,
    variance_series,
)
from qwalk.coin import iqw_coin_map
from qwalk.errors import QwalkError
from qwalk.observables import position_distribution
from qwalk.output import sidecar_path, write_json, write_table
from qwalk.plots import plot_distribution, plot_series, plot_sweep
from qwalk.tasks import JobRunner
from qwalk.util import parse_angle
from qwalk.verify import run_checks
from qwalk.walk import balanced_initial_state, evolve


class AngleType(click.ParamType):
    name = 'angle'

    def convert(self, value, param, ctx):
        try:
            return parse_angle(value)
        except (TypeError, ValueError):
            self.fail(f'{value!r} is not an angle in radians (e.g. 1.5708, pi/2)', param, ctx)
        return None


ANGLE = AngleType()


# run-file keys that differ from the click parameter names
_RUN_KEY_ALIASES = {'format': 'fmt', 'loss': 'loss_db', 'output_path': 'output'}


def _read_run_config(path):
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            continue
        key = key.strip().lower().replace('-', '_')
        if key == 'header':
            values['no_header'] = 'false' if value.lower() in ('true', '1', 't') else 'true'
            continue
        values[_RUN_KEY_ALIASES.get(key, key)] = value
    return values


@click.group()
@click.option(
    '--config',
    'config_file',
    type=click.Path(exists=True, dir_okay=False),
    help='Flat key=value run file; command-line flags override its values.',
)
@click.pass_context
def cli(ctx, config_file):
    """Coined quantum walk simulator with position-dependent coins."""
    if config_file:
        values = _read_run_config(config_file)
        logging.info('loaded %s keys from %s', len(values), config_file)
        ctx.default_map = {name: values for name in cli.commands}


def walk_options(fn):
    fn = click.option(
        '--phi',
        type=ANGLE,
        default=config['DEFAULT_PHI'],
        show_default=True,
        help='Phase of the defect coin at x=0 (0 gives the Hadamard walk).',
    )(fn)
    fn = click.option(
        '--theta',
        type=ANGLE,
        default=config['DEFAULT_THETA'],
        show_default=True,
        help='Relative phase of the balanced initial coin state.',
    )(fn)
    return fn


def output_options(fn):
    fn = click.option('--no-header', 'no_header', is_flag=True, help='Omit the timestamp line.')(fn)
    fn = click.option('--plot', is_flag=True, help='Also write an SVG plot next to the output.')(fn)
    fn = click.option(
        '--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True
    )(fn)
    fn = click.option('--output', '-o', default='-', show_default=True, help="Path or '-'.")(fn)
    return fn


def queue_option(fn):
    return click.option(
        '--queue', is_flag=True, help='Distribute independent units over the rq worker queue.'
    )(fn)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapped(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (QwalkError, OSError, ValueError) as e:
            logging.error('%s failed: %s', fn.__name__, e)
            raise click.ClickException(str(e)) from e

    return wrapped


def _emit(command, rows, output, fmt, no_header):
    path = write_table(command, rows, output=output, fmt=fmt, header=not no_header)
    if path is not None:
        logging.info('wrote %s', path)


@cli.command('evolve')
@walk_options
@click.option('--steps', type=click.IntRange(min=0), default=config['DEFAULT_STEPS'])
@output_options
@handle_errors
def evolve_cmd(theta, phi, steps, output, fmt, plot, no_header):
    """Position distribution and amplitudes after STEPS steps."""
    state = evolve(balanced_initial_state(theta), iqw_coin_map(phi), steps)
    rows = []
    for x, prob in position_distribution(state).as_dict().items():
        a = state.amp0[x + state.t]
        b = state.amp1[x + state.t]
        rows.append((x, prob, float(a.real), float(a.imag), float(b.real), float(b.imag)))
    _emit('evolve', rows, output, fmt, no_header)
    if plot:
        plot_distribution(sidecar_path(output, '.svg'), position_distribution(state), state.t)


@cli.command('entropy-table')
@walk_options
@click.option('--steps', type=click.IntRange(min=1), default=config['DEFAULT_STEPS'])
@output_options
@handle_errors
def entropy_table(theta, phi, steps, output, fmt, plot, no_header):
    """Coin-walker entanglement entropy for t = 1..STEPS."""
    curve = entropy_curve(steps, theta, phi)
    rows = zip(curve.t_values.tolist(), curve.y_values.tolist())
    _emit('entropy-table', rows, output, fmt, no_header)
    if plot:
        plot_series(sidecar_path(output, '.svg'), [curve], 'entropy E (bits)')


@cli.command()
@click.option('--steps', type=click.IntRange(min=1), default=config['SWEEP_STEPS'])
@click.option('--theta-points', type=click.IntRange(min=1), default=config['SWEEP_GRID_SIZE'])
@click.option('--phi-points', type=click.IntRange(min=1), default=config['SWEEP_GRID_SIZE'])
@queue_option
@output_options
@handle_errors
def sweep(steps, theta_points, phi_points, queue, output, fmt, plot, no_header):
    """Entropy over a uniform (theta, phi) grid on [0, 2pi)^2 at fixed step."""
    runner = JobRunner(use_queue=queue)
    grid = entropy_sweep(
        steps,
        uniform_grid(theta_points),
        uniform_grid(phi_points),
        column_runner=runner.sweep_columns,
    )
    theta_max, phi_max, e_max = grid.maximum()
    logging.info('maximum E=%.8f at theta=%.6f, phi=%.6f', e_max, theta_max, phi_max)
    _emit('sweep', grid.rows(), output, fmt, no_header)
    if plot:
        plot_sweep(sidecar_path(output, '.svg'), grid)


def _fit_or_error(series, t_min, t_max, parity=None):
    try:
        return fit_power_law(series, t_min, t_max, parity=parity).as_dict()
    except (QwalkError, ValueError) as e:
        logging.warning('power-law fit of %s skipped: %s', series.label, e)
        return {'error': str(e), 't_min': t_min, 't_max': t_max}


@cli.command('trace-distance')
@walk_options
@click.option('--steps', type=click.IntRange(min=2), default=config['FIT_T_MAX'])
@click.option('--fit-min', type=click.IntRange(min=1), default=config['FIT_T_MIN'])
@click.option('--fit-max', type=click.IntRange(min=1), default=config['FIT_T_MAX'])
@click.option(
    '--parity', type=click.Choice(['all', 'odd', 'even']), default='all', show_default=True
)
@output_options
@handle_errors
def trace_distance_cmd(theta, phi, steps, fit_min, fit_max, parity, output, fmt, plot, no_header):
    """Trace distance between coin states of adjacent steps, with a power-law fit."""
    if fit_min >= fit_max:
        raise click.BadParameter('must be smaller than --fit-max', param_hint='--fit-min')
    series = trace_distance_series(steps, theta, phi)
    rows = zip(series.t_values.tolist(), series.y_values.tolist())
    _emit('trace-distance', rows, output, fmt, no_header)
    fit = _fit_or_error(series, fit_min, fit_max, parity=None if parity == 'all' else parity)
    fit['parity'] = parity
    write_json(sidecar_path(output, '.fit.json'), fit)
    if plot:
        plot_series(sidecar_path(output, '.svg'), [series], 'trace distance D', loglog=True)


@cli.command()
@walk_options
@click.option('--steps', type=click.IntRange(min=1), default=config['DEFAULT_STEPS'])
@click.option('--fit-min', type=click.IntRange(min=1), default=config['VARIANCE_FIT_T_MIN'])
@click.option('--fit-max', type=click.IntRange(min=1), default=config['FIT_T_MAX'])
@output_options
@handle_errors
def variance(theta, phi, steps, fit_min, fit_max, output, fmt, plot, no_header):
    """Position variance of the inhomogeneous, Hadamard and classical walks."""
    walks = [
        variance_series(steps, theta, phi, label='IQW'),
        variance_series(steps, theta, 0.0, label='HQW'),
        crw_variance_series(steps),
    ]
    rows = [
        (int(t), float(nu), series.label)
        for series in walks
        for t, nu in zip(series.t_values, series.y_values)
    ]
    _emit('variance', rows, output, fmt, no_header)
    if steps >= fit_min:
        fits = {s.label: _fit_or_error(s, fit_min, min(fit_max, steps)) for s in walks}
        write_json(sidecar_path(output, '.fit.json'), fits)
    if plot:
        plot_series(sidecar_path(output, '.svg'), walks, 'position variance', loglog=True)


def measurement_options(fn):
    fn = click.option('--seeds', type=click.IntRange(min=1), default=config['DEFAULT_SEEDS'])(fn)
    fn = click.option('--seed', type=int, default=config['DEFAULT_SEED'], show_default=True)(fn)
    fn = click.option(
        '--loss-db',
        type=click.FloatRange(min=0.0),
        default=config['DEFAULT_LOSS_DB'],
        help='Loss per round trip in dB.',
    )(fn)
    fn = click.option(
        '--n0',
        type=click.FloatRange(min=0.0, min_open=True),
        default=config['DEFAULT_N0'],
        help='Mean photon number per basis setting at t=0.',
    )(fn)
    return fn


def _measure(theta, phi, steps, n0, loss_db, seed, seeds, queue):
    runner = JobRunner(use_queue=queue)
    return runner.measure_steps(theta, phi, steps, n0, loss_db, range(seed, seed + seeds))


@cli.command()
@walk_options
@click.option('--steps', type=click.IntRange(min=1), default=config['DEFAULT_STEPS'])
@measurement_options
@queue_option
@output_options
@handle_errors
def tomography(theta, phi, steps, n0, loss_db, seed, seeds, queue, output, fmt, plot, no_header):
    """Simulated counting + coin tomography, aggregated over seeds, for t = 1..STEPS."""
    stats = _measure(theta, phi, steps, n0, loss_db, seed, seeds, queue)
    rows = [(s.t, s.entropy_mean, s.entropy_std, s.fidelity_mean) for s in stats]
    _emit('tomography', rows, output, fmt, no_header)
    if plot:
        measured = Series([s.t for s in stats], [s.entropy_mean for s in stats], 'measured')
        theory = Series([s.t for s in stats], [s.entropy_theory for s in stats], 'theory')
        plot_series(sidecar_path(output, '.svg'), [theory, measured], 'entropy E (bits)')


@cli.command()
@walk_options
@click.option('--steps', type=click.IntRange(min=1), default=config['DEFAULT_STEPS'])
@measurement_options
@queue_option
@output_options
@handle_errors
def distribution(theta, phi, steps, n0, loss_db, seed, seeds, queue, output, fmt, plot, no_header):
    """Similarity and variance of the measured position distributions for t = 1..STEPS."""
    stats = _measure(theta, phi, steps, n0, loss_db, seed, seeds, queue)
    rows = [
        (
            s.t,
            s.similarity_mean,
            s.similarity_std,
            s.variance_mean,
            s.variance_std,
            s.variance_theory,
        )
        for s in stats
    ]
    _emit('distribution', rows, output, fmt, no_header)
    if plot:
        measured = Series([s.t for s in stats], [s.variance_mean for s in stats], 'measured')
        theory = Series([s.t for s in stats], [s.variance_theory for s in stats], 'theory')
        plot_series(sidecar_path(output, '.svg'), [theory, measured], 'position variance')


@cli.command()
@click.option('--instances', type=click.IntRange(min=1), default=config['VERIFY_INSTANCES'])
@click.option('--seed', type=int, default=config['DEFAULT_SEED'], show_default=True)
def verify(instances, seed):
    """Run the oracle-equivalence and invariant checks; exit 1 on any failure."""
    results = run_checks(instances=instances, seed=seed)
    for result in results:
        click.echo(f'{"PASS" if result.passed else "FAIL"}  {result.name}: {result.detail}')
    failed = [r.name for r in results if not r.passed]
    if failed:
        click.echo(f'{len(failed)} of {len(results)} checks failed', err=True)
        sys.exit(1)
    click.echo(f'all {len(results)} checks passed')


def main():
    cli()  # pylint: disable=no-value-for-parameter


if __name__ == '__main__':
    main()
