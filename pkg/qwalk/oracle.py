"""
Brute-force reference path: the full step unitary as a dense matrix on the
truncated lattice x in [-t_max, t_max], and the classical random walk baseline.
"""

import math

import numpy as np

from qwalk.errors import TruncationViolation
from qwalk.observables import ProbVector
from qwalk.walk import WalkState

CRW_RECURRENCE_MAX_T = 1000


class DenseVector:
    # data index: coin * (2 * t_max + 1) + (x + t_max)
    def __init__(self, t_max, data):
        data = np.array(data, dtype=np.complex128)
        if data.shape != (2 * (2 * t_max + 1),):
            raise ValueError(f'dense vector for t_max={t_max} needs {2 * (2 * t_max + 1)} entries')
        self.t_max = t_max
        self.data = data

    @property
    def dim(self):
        return self.data.shape[0]

    def coin_block(self, coin):
        width = 2 * self.t_max + 1
        return self.data[coin * width : (coin + 1) * width]

    def support_radius(self):
        occupied = np.nonzero(np.abs(self.coin_block(0)) + np.abs(self.coin_block(1)))[0]
        if occupied.size == 0:
            return 0
        return int(np.max(np.abs(occupied - self.t_max)))


class DenseUnitary:
    def __init__(self, t_max, matrix):
        self.t_max = t_max
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.shape[0]


def dense_from_state(state, t_max):
    if state.t > t_max:
        raise TruncationViolation(f'state at t={state.t} does not fit on a lattice of {t_max}')
    width = 2 * t_max + 1
    data = np.zeros(2 * width, dtype=np.complex128)
    lo = t_max - state.t
    data[lo : lo + 2 * state.t + 1] = state.amp0
    data[width + lo : width + lo + 2 * state.t + 1] = state.amp1
    return DenseVector(t_max, data)


def state_from_dense(vector, t):
    """Cut a dense vector back to a WalkState at step t (entries outside |x| <= t are dropped)."""
    lo = vector.t_max - t
    return WalkState(
        t,
        vector.coin_block(0)[lo : lo + 2 * t + 1],
        vector.coin_block(1)[lo : lo + 2 * t + 1],
    )


def build_step_unitary(t_max, coins):
    if t_max < 1:
        raise ValueError(f't_max must be at least 1, got {t_max}')
    width = 2 * t_max + 1
    matrix = np.zeros((2 * width, 2 * width), dtype=np.complex128)
    for x in range(-t_max, t_max + 1):
        coin = coins.coin_at(x).matrix
        for c_in in (0, 1):
            col = c_in * width + x + t_max
            # |0> moves left, |1> moves right
            for c_out, target in ((0, x - 1), (1, x + 1)):
                if -t_max <= target <= t_max:
                    matrix[c_out * width + target + t_max, col] = coin[c_out, c_in]
    return DenseUnitary(t_max, matrix)


def interior_unitarity_error(unitary, radius):
    """Max |U^H U - I| restricted to columns with |x| <= radius (radius < t_max)."""
    t_max = unitary.t_max
    width = 2 * t_max + 1
    cols = [c * width + x + t_max for c in (0, 1) for x in range(-radius, radius + 1)]
    block = unitary.matrix[:, cols]
    gram = block.conj().T @ block
    return float(np.max(np.abs(gram - np.eye(len(cols)))))


def oracle_evolve(initial, unitary, steps):
    if initial.t_max != unitary.t_max:
        raise ValueError('vector and unitary are defined on different lattices')
    radius = initial.support_radius()
    if steps > unitary.t_max - radius:
        raise TruncationViolation(
            f'{steps} steps from support radius {radius} would reach the lattice edge '
            f'at t_max={unitary.t_max}'
        )
    data = initial.data
    for _ in range(steps):
        data = unitary.matrix @ data
    return DenseVector(initial.t_max, data)


def _binomial_weights(t):
    if t <= CRW_RECURRENCE_MAX_T:
        weights = np.empty(t + 1)
        weights[0] = 0.5**t
        for k in range(t):
            weights[k + 1] = weights[k] * (t - k) / (k + 1)
        return weights
    log_norm = math.lgamma(t + 1) - t * math.log(2.0)
    return np.array(
        [math.exp(log_norm - math.lgamma(k + 1) - math.lgamma(t - k + 1)) for k in range(t + 1)]
    )


def crw_distribution(t):
    if t < 0:
        raise ValueError(f't must be non-negative, got {t}')
    # k right moves out of t puts the walker at x = 2k - t
    positions = 2 * np.arange(t + 1) - t
    return ProbVector(positions, _binomial_weights(t))
