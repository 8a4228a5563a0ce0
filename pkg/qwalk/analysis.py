"""
Batch experiments on top of the walk engine: entropy sweeps over the initial
coin phase and the defect phase, step-indexed series and power-law fits.
"""

import logging
import math

import numpy as np

from qwalk.coin import iqw_coin_map
from qwalk.errors import NonPositiveData
from qwalk.observables import (
    position_distribution,
    position_mean_variance,
    reduced_coin_density,
    trace_distance,
    von_neumann_entropy,
)
from qwalk.oracle import crw_distribution
from qwalk.util import TWO_PI, wrap_angle
from qwalk.walk import balanced_initial_state, evolve, evolve_iter, general_initial_state

MIN_FIT_POINTS = 10


class SweepGrid:
    def __init__(self, theta_values, phi_values, t, entropy):
        self.theta_values = np.asarray(theta_values, dtype=np.float64)
        self.phi_values = np.asarray(phi_values, dtype=np.float64)
        self.t = t
        self.entropy = np.asarray(entropy, dtype=np.float64)
        if self.entropy.shape != (len(self.theta_values), len(self.phi_values)):
            raise ValueError('entropy grid shape does not match the (theta, phi) axes')

    def maximum(self):
        i, j = np.unravel_index(np.argmax(self.entropy), self.entropy.shape)
        return float(self.theta_values[i]), float(self.phi_values[j]), float(self.entropy[i, j])

    def rows(self):
        for i, theta in enumerate(self.theta_values):
            for j, phi in enumerate(self.phi_values):
                yield float(theta), float(phi), float(self.entropy[i, j])


class Series:
    def __init__(self, t_values, y_values, label):
        self.t_values = np.asarray(t_values, dtype=np.int64)
        self.y_values = np.asarray(y_values, dtype=np.float64)
        self.label = label
        if self.t_values.shape != self.y_values.shape:
            raise ValueError('t_values and y_values must have equal lengths')
        if np.any(np.diff(self.t_values) <= 0):
            raise ValueError('t_values must be strictly increasing')

    def __len__(self):
        return len(self.t_values)

    def value_at(self, t):
        (idx,) = np.nonzero(self.t_values == t)
        if idx.size == 0:
            raise KeyError(t)
        return float(self.y_values[idx[0]])

    def __repr__(self):
        return f'Series(label={self.label!r}, n={len(self)})'


class PowerLawFit:
    def __init__(self, exponent, amplitude, r_squared, fit_range, n_points):
        self.exponent = exponent
        self.amplitude = amplitude
        self.r_squared = r_squared
        self.fit_range = fit_range
        self.n_points = n_points

    def as_dict(self):
        return {
            'exponent': self.exponent,
            'amplitude': self.amplitude,
            'r_squared': self.r_squared,
            't_min': self.fit_range[0],
            't_max': self.fit_range[1],
            'n_points': self.n_points,
        }

    def __repr__(self):
        return (
            f'PowerLawFit(exponent={self.exponent:.6f}, amplitude={self.amplitude:.6g}, '
            f'r_squared={self.r_squared:.6f}, fit_range={self.fit_range})'
        )


def uniform_grid(n):
    if n < 1:
        raise ValueError(f'grid size must be at least 1, got {n}')
    return np.arange(n) * (TWO_PI / n)


def _basis_evolutions(t, phi):
    coins = iqw_coin_map(phi)
    up = evolve(general_initial_state(1.0, 0.0), coins, t)
    down = evolve(general_initial_state(0.0, 1.0), coins, t)
    return up, down


def sweep_column(t, theta_grid, phi):
    """
    Entropy at fixed phi for every theta. The walk is linear, so the state for
    (|0> + e^{i theta}|1>)/sqrt(2) is a superposition of the two evolved coin
    basis states and needs no evolution of its own.
    """
    up, down = _basis_evolutions(t, phi)
    phases = np.exp(1j * np.asarray([wrap_angle(theta) for theta in theta_grid]))[:, None]
    a = (up.amp0[None, :] + phases * down.amp0[None, :]) / math.sqrt(2.0)
    b = (up.amp1[None, :] + phases * down.amp1[None, :]) / math.sqrt(2.0)
    A = np.sum(np.abs(a) ** 2, axis=1)
    B = np.sum(np.abs(b) ** 2, axis=1)
    C = np.sum(a * b.conj(), axis=1)
    trace = A + B
    root = np.sqrt(np.clip((A - B) ** 2 + 4.0 * np.abs(C) ** 2, 0.0, None))
    lam = np.clip(np.stack([(trace + root) / 2.0, (trace - root) / 2.0]), 0.0, 1.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        terms = np.where(lam > 0.0, -lam * np.log2(lam), 0.0)
    return np.clip(terms.sum(axis=0), 0.0, 1.0)


def entropy_sweep(t, theta_grid, phi_grid, column_runner=None):
    if t < 1:
        raise ValueError(f't must be at least 1, got {t}')
    if len(theta_grid) == 0 or len(phi_grid) == 0:
        raise ValueError('theta and phi grids must be non-empty')
    theta_grid = list(theta_grid)
    phi_grid = list(phi_grid)
    if column_runner is None:
        columns = [sweep_column(t, theta_grid, phi) for phi in phi_grid]
    else:
        columns = column_runner(t, theta_grid, phi_grid)
    logging.info('entropy sweep at t=%s: %s x %s points', t, len(theta_grid), len(phi_grid))
    return SweepGrid(theta_grid, phi_grid, t, np.stack(columns, axis=1))


def _states(t_max, theta, phi):
    return evolve_iter(balanced_initial_state(theta), iqw_coin_map(phi), t_max)


def entropy_curve(t_max, theta, phi):
    if t_max < 1:
        raise ValueError(f't_max must be at least 1, got {t_max}')
    values = [von_neumann_entropy(reduced_coin_density(s)) for s in _states(t_max, theta, phi)]
    return Series(range(1, t_max + 1), values, 'entropy')


def trace_distance_series(t_max, theta, phi):
    if t_max < 2:
        raise ValueError(f't_max must be at least 2, got {t_max}')
    rhos = [reduced_coin_density(s) for s in _states(t_max, theta, phi)]
    distances = [trace_distance(rhos[i], rhos[i - 1]) for i in range(1, len(rhos))]
    return Series(range(2, t_max + 1), distances, 'trace_distance')


def variance_series(t_max, theta, phi, label='variance'):
    if t_max < 1:
        raise ValueError(f't_max must be at least 1, got {t_max}')
    values = [
        position_mean_variance(position_distribution(s))[1] for s in _states(t_max, theta, phi)
    ]
    return Series(range(1, t_max + 1), values, label)


def crw_variance_series(t_max):
    values = [position_mean_variance(crw_distribution(t))[1] for t in range(1, t_max + 1)]
    return Series(range(1, t_max + 1), values, 'CRW')


def fit_power_law(series, t_min, t_max, parity=None):
    """
    Fit y = amplitude * t**exponent by least squares on (log t, log y) over
    t_min <= t <= t_max, optionally keeping only odd or even steps.
    """
    if parity not in (None, 'odd', 'even'):
        raise ValueError(f"parity must be None, 'odd' or 'even', got {parity!r}")
    mask = (series.t_values >= t_min) & (series.t_values <= t_max)
    if parity is not None:
        mask &= series.t_values % 2 == (1 if parity == 'odd' else 0)
    t = series.t_values[mask].astype(np.float64)
    y = series.y_values[mask]
    if len(t) < MIN_FIT_POINTS:
        raise ValueError(
            f'need at least {MIN_FIT_POINTS} points in [{t_min}, {t_max}], got {len(t)}'
        )
    if np.any(y <= 0):
        bad = int(series.t_values[mask][np.argmax(y <= 0)])
        raise NonPositiveData(f'{series.label} has a non-positive value at t={bad}')
    log_t = np.log(t)
    log_y = np.log(y)
    slope, intercept = np.polyfit(log_t, log_y, 1)
    residual = np.sum((log_y - (slope * log_t + intercept)) ** 2)
    spread = np.sum((log_y - log_y.mean()) ** 2)
    r_squared = 1.0 if spread == 0 else float(min(max(1.0 - residual / spread, 0.0), 1.0))
    return PowerLawFit(float(slope), float(np.exp(intercept)), r_squared, (t_min, t_max), len(t))
