"""
Self-check suite behind ``app.py verify``: the recursion engine against the
dense-matrix oracle, plus the structural invariants of states and observables.
"""

import logging
import math

import numpy as np

from qwalk.coin import hqw_coin_map, iqw_coin_map, random_coin_map
from qwalk.measurement import density_from_frequencies, expected_counts
from qwalk.observables import (
    coin_eigenvalues,
    entropy_of_walk,
    fidelity,
    position_distribution,
    position_mean_variance,
    reduced_coin_density,
    trace_distance,
    von_neumann_entropy,
)
from qwalk.oracle import (
    build_step_unitary,
    crw_distribution,
    dense_from_state,
    oracle_evolve,
    state_from_dense,
)
from qwalk.util import TWO_PI
from qwalk.walk import balanced_initial_state, evolve, evolve_iter

IQW_TABLE = {
    1: 1.0,
    2: 0.81128,
    3: 1.0,
    4: 0.99967,
    5: 1.0,
    6: 0.99967,
    7: 1.0,
    8: 0.99999,
    9: 1.0,
    10: 0.99999,
    11: 1.0,
}
HQW_TABLE = {
    2: 0.811,
    3: 0.811,
    4: 0.896,
    5: 0.896,
    6: 0.857,
    7: 0.857,
    8: 0.882,
    9: 0.882,
    10: 0.865,
    11: 0.865,
}

_CHECKS = []


def check(fn):
    _CHECKS.append(fn)
    return fn


class CheckResult:
    def __init__(self, name, passed, detail):
        self.name = name
        self.passed = passed
        self.detail = detail

    def __repr__(self):
        return f'CheckResult({self.name!r}, passed={self.passed}, detail={self.detail!r})'


def _random_state(rng, t_max=12):
    """Random coin map and initial coin state evolved for a random number of steps."""
    t = int(rng.integers(0, t_max + 1))
    coins = random_coin_map(rng, t_max)
    state = balanced_initial_state(rng.uniform(0.0, TWO_PI))
    return evolve(state, coins, t)


@check
def oracle_equivalence(rng, instances):
    worst = 0.0
    for _ in range(instances):
        t = int(rng.integers(1, 13))
        coins = random_coin_map(rng, t)
        initial = balanced_initial_state(rng.uniform(0.0, TWO_PI))
        fast = evolve(initial, coins, t)
        unitary = build_step_unitary(t, coins)
        slow = state_from_dense(oracle_evolve(dense_from_state(initial, t), unitary, t), t)
        diff = max(np.max(np.abs(fast.amp0 - slow.amp0)), np.max(np.abs(fast.amp1 - slow.amp1)))
        worst = max(worst, float(diff))
    return worst < 1e-12, f'max |amplitude difference| = {worst:.3e} over {instances} instances'


@check
def normalization_and_parity(rng, instances):
    theta, phi = rng.uniform(0.0, TWO_PI, size=2)
    worst_norm = 0.0
    parity_ok = True
    for state in evolve_iter(balanced_initial_state(theta), iqw_coin_map(phi), 200):
        worst_norm = max(worst_norm, state.norm_error())
        wrong = (state.positions + state.t) % 2 == 1
        parity_ok &= not np.any(state.amp0[wrong]) and not np.any(state.amp1[wrong])
    return worst_norm < 1e-9 and parity_ok, f'norm error {worst_norm:.3e}, parity {parity_ok}'


@check
def entropy_table_iqw(rng, instances):
    worst = max(
        abs(entropy_of_walk(math.pi / 2, math.pi / 4, t) - value) for t, value in IQW_TABLE.items()
    )
    return worst < 1e-5, f'max deviation from the IQW entropy table {worst:.2e}'


@check
def entropy_table_hqw(rng, instances):
    worst = max(
        abs(entropy_of_walk(math.pi / 2, 0.0, t) - value) for t, value in HQW_TABLE.items()
    )
    return worst < 1e-3, f'max deviation from the HQW entropy table {worst:.2e}'


@check
def density_invariants(rng, instances):
    worst = 0.0
    for _ in range(instances):
        rho = reduced_coin_density(_random_state(rng))
        lam1, lam2 = coin_eigenvalues(rho)
        entropy = von_neumann_entropy(rho)
        if not 0.0 <= entropy <= 1.0:
            return False, f'entropy {entropy} outside [0, 1]'
        worst = max(worst, abs(lam1 + lam2 - 1.0), abs(lam1 * lam2 - rho.determinant))
    return worst < 1e-10, f'max eigenvalue identity error {worst:.2e}'


@check
def trace_distance_axioms(rng, instances):
    for _ in range(instances):
        r1, r2, r3 = (reduced_coin_density(_random_state(rng)) for _ in range(3))
        if trace_distance(r1, r1) > 1e-12:
            return False, 'D(rho, rho) != 0'
        if abs(trace_distance(r1, r2) - trace_distance(r2, r1)) > 1e-12:
            return False, 'D is not symmetric'
        if trace_distance(r1, r3) > trace_distance(r1, r2) + trace_distance(r2, r3) + 1e-10:
            return False, 'triangle inequality violated'
    return True, f'{instances} random triples'


@check
def global_phase(rng, instances):
    worst = 0.0
    for _ in range(instances):
        t = int(rng.integers(0, 30))
        alpha = rng.uniform(0.0, TWO_PI)
        coins = iqw_coin_map(rng.uniform(0.0, TWO_PI))
        initial = balanced_initial_state(rng.uniform(0.0, TWO_PI))
        plain = evolve(initial, coins, t)
        rotated = evolve(initial.with_global_phase(alpha), coins, t)
        expected = plain.with_global_phase(alpha)
        worst = max(
            worst,
            float(np.max(np.abs(rotated.amp0 - expected.amp0))),
            float(np.max(np.abs(rotated.amp1 - expected.amp1))),
            abs(
                von_neumann_entropy(reduced_coin_density(rotated))
                - von_neumann_entropy(reduced_coin_density(plain))
            ),
        )
    return worst < 1e-12, f'max deviation under a global phase {worst:.2e}'


@check
def noiseless_tomography(rng, instances):
    worst = 0.0
    for _ in range(instances):
        state = _random_state(rng)
        totals = expected_counts(state, 1.0, 0.0).sum(axis=0)
        rho = density_from_frequencies(*totals)
        worst = max(worst, 1.0 - fidelity(rho, reduced_coin_density(state)))
    return worst < 1e-10, f'max infidelity of noiseless reconstruction {worst:.2e}'


@check
def crw_variance(rng, instances):
    worst = max(abs(position_mean_variance(crw_distribution(t))[1] - t) for t in range(65))
    return worst < 1e-10, f'max |var - t| for the classical walk {worst:.2e}'


@check
def balanced_populations(rng, instances):
    worst = 0.0
    for coins in (hqw_coin_map(), iqw_coin_map(math.pi / 4)):
        for state in evolve_iter(balanced_initial_state(math.pi / 2), coins, 200):
            worst = max(worst, abs(reduced_coin_density(state).A - 0.5))
    return worst < 1e-9, f'max |A - 1/2| at theta = pi/2 {worst:.2e}'


@check
def position_support(rng, instances):
    state = evolve(balanced_initial_state(math.pi / 2), iqw_coin_map(math.pi / 4), 11)
    dist = position_distribution(state)
    ok = len(dist) == 12 and abs(dist.probs.sum() - 1.0) < 1e-10
    return ok, f'{len(dist)} parity-valid positions at t=11'


def run_checks(instances=200, seed=0, checks=None):
    results = []
    for fn in checks or _CHECKS:
        rng = np.random.default_rng(seed)
        try:
            passed, detail = fn(rng, instances)
        except Exception as e:  # pylint: disable=broad-except
            passed, detail = False, f'raised {type(e).__name__}: {e}'
        result = CheckResult(fn.__name__, bool(passed), detail)
        log = logging.info if result.passed else logging.error
        log('[verify] %s: %s (%s)', result.name, 'PASS' if result.passed else 'FAIL', detail)
        results.append(result)
    return results
