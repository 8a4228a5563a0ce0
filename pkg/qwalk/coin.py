"""
Coin operators and position-dependent coin maps.

A coin is a 2x2 unitary acting on the coin register (|0> moves left, |1> moves
right). A ``CoinMap`` assigns a coin to every lattice position: one default coin
plus a finite set of per-position overrides.
"""

import numpy as np

from qwalk.errors import NotUnitary
from qwalk.util import default_repr

UNITARITY_TOL = 1e-12


def _as_unitary(matrix, tol=UNITARITY_TOL):
    matrix = np.array(matrix, dtype=np.complex128)
    if matrix.shape != (2, 2):
        raise NotUnitary(f'coin must be 2x2, got shape {matrix.shape}')
    if not np.all(np.isfinite(matrix)):
        raise NotUnitary('coin has non-finite entries')
    error = np.max(np.abs(matrix.conj().T @ matrix - np.eye(2)))
    if error > tol:
        raise NotUnitary(f'coin is not unitary (max |U^H U - I| = {error:.3e})')
    matrix.setflags(write=False)
    return matrix


class CoinOperator:
    def __init__(self, matrix, tol=UNITARITY_TOL):
        self.matrix = _as_unitary(matrix, tol=tol)

    @property
    def u00(self):
        return complex(self.matrix[0, 0])

    @property
    def u01(self):
        return complex(self.matrix[0, 1])

    @property
    def u10(self):
        return complex(self.matrix[1, 0])

    @property
    def u11(self):
        return complex(self.matrix[1, 1])

    def apply(self, a, b):
        return (
            self.matrix[0, 0] * a + self.matrix[0, 1] * b,
            self.matrix[1, 0] * a + self.matrix[1, 1] * b,
        )

    def __eq__(self, other):
        if not isinstance(other, CoinOperator):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        rows = ', '.join(
            '[' + ', '.join(f'{z.real:+.6f}{z.imag:+.6f}j' for z in row) + ']'
            for row in self.matrix
        )
        return f'CoinOperator([{rows}])'


def hadamard_coin():
    return CoinOperator(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))


def identity_coin():
    return CoinOperator(np.eye(2))


def phase_defect_coin(phi):
    return CoinOperator(np.exp(1j * phi) * hadamard_coin().matrix)


def random_coin(rng):
    """
    Haar-random 2x2 unitary: QR of a complex Ginibre matrix with the phases of
    diag(R) folded back into Q.
    """
    ginibre = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return CoinOperator(q * phases, tol=1e-10)


@default_repr
class CoinMap:
    def __init__(self, default_coin, overrides=None):
        if not isinstance(default_coin, CoinOperator):
            default_coin = CoinOperator(default_coin)
        self.default_coin = default_coin
        self.overrides = {}
        for position, coin in (overrides or {}).items():
            if not isinstance(coin, CoinOperator):
                coin = CoinOperator(coin)
            self.overrides[int(position)] = coin

    def coin_at(self, x):
        return self.overrides.get(x, self.default_coin)

    def coin_stack(self, lo, hi):
        """Return a (hi - lo + 1, 2, 2) array with the coin of every position lo..hi."""
        stack = np.broadcast_to(self.default_coin.matrix, (hi - lo + 1, 2, 2)).copy()
        for x, coin in self.overrides.items():
            if lo <= x <= hi:
                stack[x - lo] = coin.matrix
        return stack

    def __eq__(self, other):
        if not isinstance(other, CoinMap):
            return NotImplemented
        return self.default_coin == other.default_coin and self.overrides == other.overrides


def hqw_coin_map():
    return CoinMap(hadamard_coin())


def iqw_coin_map(phi):
    return CoinMap(hadamard_coin(), {0: phase_defect_coin(phi)})


def random_coin_map(rng, radius):
    """Random default coin plus an independent random coin at every |x| <= radius."""
    return CoinMap(random_coin(rng), {x: random_coin(rng) for x in range(-radius, radius + 1)})
