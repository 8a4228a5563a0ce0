import math

import numpy as np
import pytest

from qwalk.coin import hqw_coin_map, iqw_coin_map
from qwalk.observables import (
    CoinDensity,
    ProbVector,
    coin_eigenvalues,
    entropy_of_walk,
    fidelity,
    position_distribution,
    position_mean_variance,
    reduced_coin_density,
    similarity,
    trace_distance,
    von_neumann_entropy,
)
from qwalk.oracle import crw_distribution
from qwalk.walk import balanced_initial_state, evolve

IQW_ENTROPY = {
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
HQW_ENTROPY = {
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

ZERO = CoinDensity(1.0, 0.0, 0.0)
ONE = CoinDensity(0.0, 1.0, 0.0)
MIXED = CoinDensity(0.5, 0.5, 0.0)


@pytest.mark.parametrize('t,expected', sorted(IQW_ENTROPY.items()))
def test_iqw_entropy_table(t, expected):
    tol = 1e-6 if t % 2 else 1e-5
    assert entropy_of_walk(math.pi / 2, math.pi / 4, t) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize('t,expected', sorted(HQW_ENTROPY.items()))
def test_hqw_entropy_table(t, expected):
    assert entropy_of_walk(math.pi / 2, 0.0, t) == pytest.approx(expected, abs=1e-3)


def test_iqw_odd_steps_are_maximal():
    state = balanced_initial_state(math.pi / 2)
    coins = iqw_coin_map(math.pi / 4)
    for t in range(1, 100):
        state = evolve(state, coins, 1)
        if t % 2:
            assert von_neumann_entropy(reduced_coin_density(state)) >= 1 - 1e-6, t


def test_iqw_even_steps_approach_maximum():
    state = evolve(balanced_initial_state(math.pi / 2), iqw_coin_map(math.pi / 4), 3)
    coins = iqw_coin_map(math.pi / 4)
    for t in range(4, 201):
        state = evolve(state, coins, 1)
        if t % 2 == 0:
            assert von_neumann_entropy(reduced_coin_density(state)) >= 0.999, t


def test_initial_state_has_zero_entropy():
    assert entropy_of_walk(0.7, 1.3, 0) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        entropy_of_walk(0.0, 0.0, -1)


def test_density_at_t0():
    rho = reduced_coin_density(balanced_initial_state(math.pi / 2))
    assert rho.A == pytest.approx(0.5)
    assert rho.B == pytest.approx(0.5)
    assert rho.C == pytest.approx(-0.5j)
    assert rho.determinant == pytest.approx(0.0, abs=1e-15)
    assert rho.is_valid()


def test_balanced_populations_stay_half():
    for coins in (hqw_coin_map(), iqw_coin_map(math.pi / 4)):
        rho = reduced_coin_density(evolve(balanced_initial_state(math.pi / 2), coins, 40))
        assert rho.A == pytest.approx(0.5, abs=1e-9)


def test_eigenvalues_largest_first():
    lam1, lam2 = coin_eigenvalues(CoinDensity(0.8, 0.2, 0.1))
    assert lam1 >= lam2
    assert lam1 + lam2 == pytest.approx(1.0)
    assert lam1 * lam2 == pytest.approx(0.8 * 0.2 - 0.01)


def test_entropy_extremes():
    assert von_neumann_entropy(ZERO) == 0.0
    assert von_neumann_entropy(MIXED) == pytest.approx(1.0)
    # |C| a hair above 1/2 still clips into range
    assert von_neumann_entropy(CoinDensity(0.5, 0.5, 0.5 + 1e-16)) == pytest.approx(0.0, abs=1e-12)


def test_bloch_round_trip():
    rho = CoinDensity.from_bloch(0.3, -0.4, 0.5)
    assert np.allclose(rho.bloch_vector, [0.3, -0.4, 0.5])
    assert np.allclose(CoinDensity.from_matrix(rho.matrix).matrix, rho.matrix)


def test_trace_distance_values():
    assert trace_distance(ZERO, ZERO) == 0.0
    assert trace_distance(ZERO, ONE) == pytest.approx(1.0)
    assert trace_distance(ZERO, MIXED) == pytest.approx(0.5)
    assert trace_distance(MIXED, ZERO) == trace_distance(ZERO, MIXED)


def test_fidelity_values():
    assert fidelity(ZERO, ZERO) == pytest.approx(1.0)
    assert fidelity(ZERO, ONE) == pytest.approx(0.0)
    assert fidelity(ZERO, MIXED) == pytest.approx(0.5)
    assert fidelity(MIXED, MIXED) == pytest.approx(1.0)


def test_position_distribution_uses_parity_positions():
    state = evolve(balanced_initial_state(math.pi / 2), iqw_coin_map(math.pi / 4), 11)
    dist = position_distribution(state)
    assert list(dist.positions) == list(range(-11, 12, 2))
    assert dist.probs.sum() == pytest.approx(1.0)


def test_hqw_distribution_is_symmetric_at_balanced_phase():
    dist = position_distribution(evolve(balanced_initial_state(math.pi / 2), hqw_coin_map(), 20))
    assert np.allclose(dist.probs, dist.probs[::-1], atol=1e-12)
    assert position_mean_variance(dist)[0] == pytest.approx(0.0, abs=1e-12)


def test_mean_variance_of_classical_walk():
    mu, nu = position_mean_variance(crw_distribution(10))
    assert mu == pytest.approx(0.0, abs=1e-12)
    assert nu == pytest.approx(10.0)


def test_iqw_spreads_faster_than_hqw_at_t11():
    iqw = evolve(balanced_initial_state(math.pi / 2), iqw_coin_map(math.pi / 4), 11)
    hqw = evolve(balanced_initial_state(math.pi / 2), hqw_coin_map(), 11)
    nu_iqw = position_mean_variance(position_distribution(iqw))[1]
    nu_hqw = position_mean_variance(position_distribution(hqw))[1]
    assert nu_iqw > nu_hqw


def test_similarity():
    p = ProbVector([-1, 1], [0.25, 0.75])
    q = ProbVector([1, 3], [0.5, 0.5])
    assert similarity(p, p) == pytest.approx(1.0)
    assert similarity(p, q) == pytest.approx(math.sqrt(0.75 * 0.5))
    assert similarity(p, ProbVector([5], [1.0])) == 0.0


def test_prob_vector_shape_checked():
    with pytest.raises(ValueError):
        ProbVector([0, 2], [1.0])
