"""
Simulated photon-counting measurement of the walk and coin-state tomography.

Every position is projected onto four polarization bases (H, V, D, L). Counts
are independent Poisson draws whose mean decays with the per-round-trip loss.
The reduced coin state is rebuilt from the position-summed counts by linear
inversion, with an eigenvalue-clipping repair when noise makes it non-physical.
"""

import logging
import math

import numpy as np

from qwalk.coin import iqw_coin_map
from qwalk.errors import EmptyCounts
from qwalk.observables import (
    CoinDensity,
    ProbVector,
    fidelity,
    position_distribution,
    position_mean_variance,
    reduced_coin_density,
    similarity,
    von_neumann_entropy,
)
from qwalk.walk import balanced_initial_state, evolve, evolve_iter

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class MeasBasis:
    def __init__(self, label, c0, c1):
        norm = abs(c0) ** 2 + abs(c1) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f'projector state for basis {label} is not normalized ({norm!r})')
        self.label = label
        self.projector_state = (complex(c0), complex(c1))

    def amplitude(self, a, b):
        c0, c1 = self.projector_state
        return c0.conjugate() * a + c1.conjugate() * b

    def __repr__(self):
        return f'MeasBasis({self.label!r})'


H = MeasBasis('H', 1.0, 0.0)
V = MeasBasis('V', 0.0, 1.0)
D = MeasBasis('D', _SQRT_HALF, _SQRT_HALF)
L = MeasBasis('L', _SQRT_HALF, -1j * _SQRT_HALF)
BASES = (H, V, D, L)
BASIS_BY_LABEL = {basis.label: basis for basis in BASES}


class CountsTable:
    def __init__(self, t, positions, counts, n0, loss_db_per_step):
        self.t = t
        self.positions = np.asarray(positions, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)
        if self.counts.shape != (len(self.positions), len(BASES)):
            raise ValueError(f'counts must have shape ({len(self.positions)}, {len(BASES)})')
        if np.any(self.counts < 0):
            raise ValueError('counts must be non-negative')
        if np.any((self.positions + t) % 2 != 0):
            raise ValueError(f'positions must share the parity of t={t}')
        self.n0 = n0
        self.loss_db_per_step = loss_db_per_step

    @property
    def rows(self):
        for i, x in enumerate(self.positions):
            for j, basis in enumerate(BASES):
                yield int(x), basis.label, int(self.counts[i, j])

    def totals(self):
        return {basis.label: int(self.counts[:, j].sum()) for j, basis in enumerate(BASES)}

    def __eq__(self, other):
        if not isinstance(other, CountsTable):
            return NotImplemented
        return (
            self.t == other.t
            and np.array_equal(self.positions, other.positions)
            and np.array_equal(self.counts, other.counts)
            and self.n0 == other.n0
            and self.loss_db_per_step == other.loss_db_per_step
        )

    def __repr__(self):
        return f'CountsTable(t={self.t}, totals={self.totals()!r})'


def projection_probability(state, x, basis):
    if abs(x) > state.t:
        return 0.0
    i = x + state.t
    return float(abs(basis.amplitude(state.amp0[i], state.amp1[i])) ** 2)


def _projection_matrix(state):
    # rows: parity-valid positions, columns: BASES
    a = state.amp0[::2]
    b = state.amp1[::2]
    return np.stack([np.abs(basis.amplitude(a, b)) ** 2 for basis in BASES], axis=1)


def transmission(loss_db_per_step, t):
    return 10.0 ** (-loss_db_per_step * t / 10.0)


def expected_counts(state, n0, loss_db_per_step):
    return n0 * transmission(loss_db_per_step, state.t) * _projection_matrix(state)


def simulate_counts(state, n0, loss_db_per_step, seed):
    if n0 <= 0:
        raise ValueError(f'n0 must be positive, got {n0}')
    if loss_db_per_step < 0:
        raise ValueError(f'loss must be non-negative, got {loss_db_per_step}')
    rng = np.random.default_rng(seed)
    means = expected_counts(state, n0, loss_db_per_step)
    counts = rng.poisson(means)
    return CountsTable(state.t, state.positions[::2], counts, n0, loss_db_per_step)


def _clip_to_physical(matrix):
    eigvals, eigvecs = np.linalg.eigh(matrix)
    if eigvals.min() >= 0.0:
        return matrix
    eigvals = np.clip(eigvals, 0.0, None)
    eigvals /= eigvals.sum()
    return (eigvecs * eigvals) @ eigvecs.conj().T


def density_from_frequencies(n_h, n_v, n_d, n_l):
    """Linear inversion; D and L are normalised by the H+V total of the same run."""
    total = n_h + n_v
    if total <= 0:
        raise EmptyCounts('no H/V counts to normalise the tomography by')
    p_h = n_h / total
    p_v = 1.0 - p_h
    p_d = n_d / total
    p_l = n_l / total
    rho = CoinDensity.from_bloch(2.0 * p_d - 1.0, 1.0 - 2.0 * p_l, p_h - p_v)
    return CoinDensity.from_matrix(_clip_to_physical(rho.matrix))


def reconstruct_density(counts):
    n_h, n_v, n_d, n_l = (float(n) for n in counts.counts.sum(axis=0))
    return density_from_frequencies(n_h, n_v, n_d, n_l)


def experimental_entropy(theta, phi, t, n0, loss, seed):
    state = evolve(balanced_initial_state(theta), iqw_coin_map(phi), t)
    counts = simulate_counts(state, n0, loss, seed)
    return von_neumann_entropy(reconstruct_density(counts))


def measured_distribution(counts):
    per_position = counts.counts[:, 0] + counts.counts[:, 1]
    total = per_position.sum()
    if total <= 0:
        raise EmptyCounts(f'no H/V counts at t={counts.t}')
    return ProbVector(counts.positions, per_position / total)


class StepStatistics:
    """Seed-aggregated tomography and distribution results for one step."""

    def __init__(self, t, entropy_theory, variance_theory):
        self.t = t
        self.entropy_theory = entropy_theory
        self.variance_theory = variance_theory
        self.entropies = []
        self.fidelities = []
        self.similarities = []
        self.variances = []
        self.empty_runs = 0

    @staticmethod
    def _mean(values):
        return float(np.mean(values)) if values else math.nan

    @staticmethod
    def _std(values):
        return float(np.std(values, ddof=1)) if len(values) > 1 else math.nan

    @property
    def entropy_mean(self):
        return self._mean(self.entropies)

    @property
    def entropy_std(self):
        return self._std(self.entropies)

    @property
    def fidelity_mean(self):
        return self._mean(self.fidelities)

    @property
    def similarity_mean(self):
        return self._mean(self.similarities)

    @property
    def similarity_std(self):
        return self._std(self.similarities)

    @property
    def variance_mean(self):
        return self._mean(self.variances)

    @property
    def variance_std(self):
        return self._std(self.variances)


def measure_step(state, n0, loss, seeds):
    """Run the counting + tomography pipeline on one state for every seed."""
    exact_rho = reduced_coin_density(state)
    exact_dist = position_distribution(state)
    stats = StepStatistics(
        state.t, von_neumann_entropy(exact_rho), position_mean_variance(exact_dist)[1]
    )
    for seed in seeds:
        counts = simulate_counts(state, n0, loss, seed)
        try:
            rho = reconstruct_density(counts)
            dist = measured_distribution(counts)
        except EmptyCounts:
            stats.empty_runs += 1
            continue
        stats.entropies.append(von_neumann_entropy(rho))
        stats.fidelities.append(fidelity(rho, exact_rho))
        stats.similarities.append(similarity(dist, exact_dist))
        stats.variances.append(position_mean_variance(dist)[1])
    if stats.empty_runs:
        logging.warning(
            '[t=%s] %s of %s simulated runs recorded no counts',
            state.t,
            stats.empty_runs,
            len(seeds),
        )
    return stats


def tomography_series(theta, phi, t_max, n0, loss, seeds):
    seeds = list(seeds)
    return [
        measure_step(state, n0, loss, seeds)
        for state in evolve_iter(balanced_initial_state(theta), iqw_coin_map(phi), t_max)
    ]
