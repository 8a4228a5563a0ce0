"""
Exact state vector of the coined walk on the integer line and its step evolution.

Amplitudes are stored densely over x = -t..t (array index x + t), including the
slots of wrong parity, which stay exactly zero.
"""

import math

import numpy as np

from qwalk.errors import NotNormalized
from qwalk.util import lazy_property, wrap_angle

NORMALIZATION_TOL = 1e-9


class WalkState:
    def __init__(self, t, amp0, amp1):
        amp0 = np.array(amp0, dtype=np.complex128)
        amp1 = np.array(amp1, dtype=np.complex128)
        if amp0.shape != (2 * t + 1,) or amp1.shape != amp0.shape:
            raise ValueError(f'amplitude arrays must have length {2 * t + 1} at t={t}')
        amp0.setflags(write=False)
        amp1.setflags(write=False)
        self.t = t
        self.amp0 = amp0
        self.amp1 = amp1

    @property
    def offset(self):
        return -self.t

    @lazy_property
    def positions(self):
        return np.arange(-self.t, self.t + 1)

    @lazy_property
    def probabilities(self):
        return np.abs(self.amp0) ** 2 + np.abs(self.amp1) ** 2

    def norm_error(self):
        return abs(float(np.sum(self.probabilities)) - 1.0)

    def with_global_phase(self, alpha):
        phase = np.exp(1j * alpha)
        return WalkState(self.t, phase * self.amp0, phase * self.amp1)

    def __repr__(self):
        return f'WalkState(t={self.t}, norm_error={self.norm_error():.2e})'


def _localized(a0, b0):
    return WalkState(0, [a0], [b0])


def balanced_initial_state(theta):
    theta = wrap_angle(theta)
    return _localized(1.0 / math.sqrt(2.0), np.exp(1j * theta) / math.sqrt(2.0))


def general_initial_state(a0, b0):
    norm = abs(a0) ** 2 + abs(b0) ** 2
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f'|a0|^2 + |b0|^2 = {norm!r}, expected 1')
    return _localized(complex(a0), complex(b0))


def step(state, coins):
    t = state.t
    stack = coins.coin_stack(-t, t)
    a, b = state.amp0, state.amp1
    coined0 = stack[:, 0, 0] * a + stack[:, 0, 1] * b
    coined1 = stack[:, 1, 0] * a + stack[:, 1, 1] * b

    # new index of x - 1 at t + 1 equals the old index of x; x + 1 lands two slots further
    n = 2 * t + 3
    amp0 = np.zeros(n, dtype=np.complex128)
    amp1 = np.zeros(n, dtype=np.complex128)
    amp0[: n - 2] = coined0
    amp1[2:] = coined1
    return WalkState(t + 1, amp0, amp1)


def evolve_iter(state, coins, steps):
    """Yield the state after each of the next ``steps`` steps."""
    for _ in range(steps):
        state = step(state, coins)
        yield state


def evolve(state, coins, steps):
    if steps < 0:
        raise ValueError(f'steps must be non-negative, got {steps}')
    for state in evolve_iter(state, coins, steps):
        pass
    return state


def amplitude(state, x, coin):
    if coin not in (0, 1):
        raise ValueError(f'coin must be 0 or 1, got {coin!r}')
    if abs(x) > state.t:
        return 0j
    amps = state.amp0 if coin == 0 else state.amp1
    return complex(amps[x + state.t])
