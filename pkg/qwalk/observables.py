"""
Quantities derived from a walk state: the reduced coin density matrix and its
entropy, distances between coin states, and position statistics.
"""

import math

import numpy as np

from qwalk.coin import iqw_coin_map
from qwalk.walk import balanced_initial_state, evolve

DENSITY_TOL = 1e-10


class CoinDensity:
    """Reduced coin state [[A, C], [C*, B]]."""

    def __init__(self, A, B, C):
        self.A = float(A)
        self.B = float(B)
        self.C = complex(C)

    @classmethod
    def from_matrix(cls, matrix):
        return cls(matrix[0, 0].real, matrix[1, 1].real, matrix[0, 1])

    @classmethod
    def from_bloch(cls, x, y, z):
        return cls((1.0 + z) / 2.0, (1.0 - z) / 2.0, complex(x, -y) / 2.0)

    @property
    def matrix(self):
        return np.array([[self.A, self.C], [self.C.conjugate(), self.B]], dtype=np.complex128)

    @property
    def bloch_vector(self):
        return np.array([2.0 * self.C.real, -2.0 * self.C.imag, self.A - self.B])

    @property
    def determinant(self):
        return self.A * self.B - abs(self.C) ** 2

    def is_valid(self, tol=DENSITY_TOL):
        return abs(self.A + self.B - 1.0) <= tol and self.determinant >= -tol

    def __repr__(self):
        return f'CoinDensity(A={self.A:.12g}, B={self.B:.12g}, C={self.C:.12g})'


class ProbVector:
    def __init__(self, positions, probs):
        self.positions = np.asarray(positions, dtype=np.int64)
        self.probs = np.asarray(probs, dtype=np.float64)
        if self.positions.shape != self.probs.shape:
            raise ValueError('positions and probs must have the same length')

    def as_dict(self):
        return {int(x): float(p) for x, p in zip(self.positions, self.probs)}

    def __len__(self):
        return len(self.positions)

    def __repr__(self):
        return f'ProbVector({self.as_dict()!r})'


def reduced_coin_density(state):
    a, b = state.amp0, state.amp1
    A = float(np.sum(np.abs(a) ** 2))
    B = float(np.sum(np.abs(b) ** 2))
    C = complex(np.sum(a * b.conj()))
    return CoinDensity(A, B, C)


def coin_eigenvalues(rho):
    """Eigenvalues (largest first) of a 2x2 Hermitian [[A, C], [C*, B]]."""
    trace = rho.A + rho.B
    disc = max((rho.A - rho.B) ** 2 + 4.0 * abs(rho.C) ** 2, 0.0)
    root = math.sqrt(disc)
    return (trace + root) / 2.0, (trace - root) / 2.0


def _binary_entropy_term(lam):
    lam = min(max(lam, 0.0), 1.0)
    if lam == 0.0:
        return 0.0
    return -lam * math.log2(lam)


def von_neumann_entropy(rho):
    lam1, lam2 = coin_eigenvalues(rho)
    entropy = _binary_entropy_term(lam1) + _binary_entropy_term(lam2)
    return min(max(entropy, 0.0), 1.0)


def entropy_of_walk(theta, phi, t):
    if t < 0:
        raise ValueError(f't must be non-negative, got {t}')
    state = evolve(balanced_initial_state(theta), iqw_coin_map(phi), t)
    return von_neumann_entropy(reduced_coin_density(state))


def trace_distance(rho1, rho2):
    # rho1 - rho2 is traceless, so both eigenvalues are +-sqrt(d^2 + |c|^2)
    d = ((rho1.A - rho2.A) - (rho1.B - rho2.B)) / 2.0
    c = rho1.C - rho2.C
    return min(math.sqrt(d * d + abs(c) ** 2), 1.0)


def fidelity(rho1, rho2):
    # for qubits (Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2 = Tr(r1 r2) + 2 sqrt(det r1 det r2)
    overlap = rho1.A * rho2.A + rho1.B * rho2.B + 2.0 * (rho1.C * rho2.C.conjugate()).real
    dets = max(rho1.determinant, 0.0) * max(rho2.determinant, 0.0)
    return min(max(overlap + 2.0 * math.sqrt(dets), 0.0), 1.0)


def position_distribution(state):
    # parity-valid positions x = -t, -t+2, ..., t sit at even array indices
    return ProbVector(state.positions[::2], state.probabilities[::2])


def position_mean_variance(p):
    mu = float(np.dot(p.probs, p.positions))
    nu = float(np.dot(p.probs, (p.positions - mu) ** 2))
    return mu, nu


def similarity(p_a, p_b):
    a = p_a.as_dict()
    b = p_b.as_dict()
    shared = sorted(a.keys() & b.keys())
    total = sum(math.sqrt(max(a[x], 0.0) * max(b[x], 0.0)) for x in shared)
    return min(total, 1.0)
