import math

import numpy as np
import pytest

from qwalk.coin import CoinMap, identity_coin, iqw_coin_map, random_coin_map
from qwalk.errors import TruncationViolation
from qwalk.oracle import (
    DenseVector,
    build_step_unitary,
    crw_distribution,
    dense_from_state,
    interior_unitarity_error,
    oracle_evolve,
    state_from_dense,
)
from qwalk.observables import position_mean_variance
from qwalk.util import TWO_PI
from qwalk.walk import balanced_initial_state, evolve


def test_identity_coin_routing_at_t_max_1():
    unitary = build_step_unitary(1, CoinMap(identity_coin()))
    assert unitary.dim == 6
    # columns/rows: (0, -1), (0, 0), (0, 1), (1, -1), (1, 0), (1, 1)
    expected = np.zeros((6, 6))
    expected[0, 1] = 1.0  # (0, 0) -> (0, -1)
    expected[1, 2] = 1.0  # (0, 1) -> (0, 0)
    expected[4, 3] = 1.0  # (1, -1) -> (1, 0)
    expected[5, 4] = 1.0  # (1, 0) -> (1, 1)
    assert np.array_equal(unitary.matrix, expected)


def test_build_rejects_empty_lattice():
    with pytest.raises(ValueError):
        build_step_unitary(0, iqw_coin_map(0.0))


def test_interior_block_is_unitary():
    unitary = build_step_unitary(8, random_coin_map(np.random.default_rng(3), 8))
    assert interior_unitarity_error(unitary, 7) < 1e-10


def test_oracle_matches_recursion_for_iqw():
    coins = iqw_coin_map(math.pi / 4)
    initial = balanced_initial_state(math.pi / 2)
    unitary = build_step_unitary(11, coins)
    dense = oracle_evolve(dense_from_state(initial, 11), unitary, 11)
    fast = evolve(initial, coins, 11)
    slow = state_from_dense(dense, 11)
    assert np.allclose(fast.amp0, slow.amp0, atol=1e-12)
    assert np.allclose(fast.amp1, slow.amp1, atol=1e-12)


def test_oracle_matches_recursion_for_random_coins():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        t = int(rng.integers(1, 13))
        coins = random_coin_map(rng, t)
        initial = balanced_initial_state(rng.uniform(0.0, TWO_PI))
        slow = state_from_dense(
            oracle_evolve(dense_from_state(initial, t), build_step_unitary(t, coins), t), t
        )
        fast = evolve(initial, coins, t)
        assert np.max(np.abs(fast.amp0 - slow.amp0)) < 1e-12
        assert np.max(np.abs(fast.amp1 - slow.amp1)) < 1e-12


def test_truncation_violation():
    unitary = build_step_unitary(3, iqw_coin_map(0.0))
    with pytest.raises(TruncationViolation):
        oracle_evolve(dense_from_state(balanced_initial_state(0.0), 3), unitary, 4)
    later = evolve(balanced_initial_state(0.0), iqw_coin_map(0.0), 2)
    with pytest.raises(TruncationViolation):
        oracle_evolve(dense_from_state(later, 3), unitary, 2)
    with pytest.raises(TruncationViolation):
        dense_from_state(later, 1)


def test_dense_vector_layout():
    vector = dense_from_state(balanced_initial_state(math.pi / 2), 2)
    assert vector.dim == 10
    assert vector.support_radius() == 0
    assert vector.coin_block(0)[2] == pytest.approx(1 / math.sqrt(2))
    assert vector.coin_block(1)[2] == pytest.approx(1j / math.sqrt(2))
    with pytest.raises(ValueError):
        DenseVector(2, np.zeros(9))


def test_crw_distribution():
    dist = crw_distribution(4)
    assert list(dist.positions) == [-4, -2, 0, 2, 4]
    assert np.allclose(dist.probs, [1 / 16, 4 / 16, 6 / 16, 4 / 16, 1 / 16])
    assert list(crw_distribution(0).positions) == [0]
    with pytest.raises(ValueError):
        crw_distribution(-1)


@pytest.mark.parametrize('t', [1, 7, 500, 1000, 1500])
def test_crw_variance_equals_t(t):
    dist = crw_distribution(t)
    assert dist.probs.sum() == pytest.approx(1.0, abs=1e-9)
    assert position_mean_variance(dist)[1] == pytest.approx(t, rel=1e-9)


def test_oracle_preserves_norm():
    rng = np.random.default_rng(99)
    for _ in range(50):
        t = int(rng.integers(1, 16))
        coins = random_coin_map(rng, t)
        initial = dense_from_state(balanced_initial_state(rng.uniform(0.0, TWO_PI)), t)
        final = oracle_evolve(initial, build_step_unitary(t, coins), t)
        assert abs(np.linalg.norm(final.data) - 1.0) < 1e-10
