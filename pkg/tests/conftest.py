import itertools

import numpy as np
import pytest


def ghz_ket(n):
    """(|0...0> + |1...1>)/sqrt(2) built from explicit tensor products."""
    zero, one = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    a, b = zero, one
    for _ in range(n - 1):
        a, b = np.kron(a, zero), np.kron(b, one)
    return (a + b) / np.sqrt(2)


def werner_from_ket(n, p):
    """Werner state as a literal mixture of the GHZ projector and I / 2^n."""
    psi = ghz_ket(n)
    return p * np.outer(psi, psi.conj()) + (1 - p) * np.eye(2**n) / 2**n


def brute_partial_trace_last(m):
    """Sum over the last qubit index with explicit loops."""
    half = m.shape[0] // 2
    out = np.zeros((half, half), dtype=complex)
    for a, c in itertools.product(range(half), repeat=2):
        for k in range(2):
            out[a, c] += m[2 * a + k, 2 * c + k]
    return out


def entropy_bits(eigenvalues):
    w = np.asarray(eigenvalues, dtype=float)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
