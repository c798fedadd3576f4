"""Shared random-state generators and oracle helpers."""

import numpy as np
import pytest

from entcrit.states import DensityMatrix

PAULI_MATRICES = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def random_pure_vector(rng, n):
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return v / np.linalg.norm(v)


def random_pure_state(rng, n):
    v = random_pure_vector(rng, n)
    return DensityMatrix(n, np.outer(v, v.conj()))


def random_density_matrix(rng, n, terms=4):
    """Random mixture of random pure states."""
    dim = 2**n
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        v = random_pure_vector(rng, n)
        rho += w * np.outer(v, v.conj())
    return DensityMatrix(n, rho)


def random_bloch_vector(rng):
    b = rng.standard_normal(3)
    return b / np.linalg.norm(b)


def random_product_state(rng, n):
    """Pure product state from random unit Bloch vectors."""
    rho = np.array([[1.0]], dtype=complex)
    for _ in range(n):
        b = random_bloch_vector(rng)
        local = 0.5 * (PAULI_MATRICES[0] + sum(b[i] * PAULI_MATRICES[i + 1] for i in range(3)))
        rho = np.kron(rho, local)
    return DensityMatrix(n, rho)


def random_separable_state(rng, n, terms=8):
    """Convex mixture of random product states."""
    k = int(rng.integers(2, terms + 1))
    weights = rng.dirichlet(np.ones(k))
    rho = sum(w * random_product_state(rng, n).matrix for w in weights)
    return DensityMatrix(n, rho)


def random_unit_vectors(rng, count):
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def pauli_product(indices):
    op = PAULI_MATRICES[indices[0]]
    for x in indices[1:]:
        op = np.kron(op, PAULI_MATRICES[x])
    return op


def brute_force_tensor(dm):
    """Tensor entries by explicit operator construction and trace."""
    n = dm.n_qubits
    out = np.empty((4,) * n)
    for idx in np.ndindex(*(4,) * n):
        val = np.trace(dm.matrix @ pauli_product(idx))
        assert abs(val.imag) < 1e-10
        out[idx] = val.real
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
