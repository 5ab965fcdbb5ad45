"""Rank-1 projective measurements on the last qubit (subsystem B)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .statespace import DensityMatrix, MatrixLike, check_dense_dim, kron
from .werner import WernerParams, build_werner_dense


@dataclass(frozen=True)
class MeasurementBasis:
    """Qubit basis |u> = cos t|0> + e^{i f} sin t|1>, |v> = sin t|0> - e^{i f} cos t|1>.

    ``theta`` is restricted to [0, pi/2] and ``phi`` to [0, 2 pi].
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not (0.0 <= self.phi <= 2 * math.pi):
            raise ValueError(f"phi must lie in [0, 2 pi], got {self.phi}")

    @cached_property
    def u(self) -> np.ndarray:
        return np.array([math.cos(self.theta), np.exp(1j * self.phi) * math.sin(self.theta)])

    @cached_property
    def v(self) -> np.ndarray:
        return np.array([math.sin(self.theta), -np.exp(1j * self.phi) * math.cos(self.theta)])

    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        return self.u, self.v

    def local_projectors(self) -> tuple[np.ndarray, np.ndarray]:
        """|u><u| and |v><v| on the single measured qubit."""
        return np.outer(self.u, self.u.conj()), np.outer(self.v, self.v.conj())


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    conditional_state: DensityMatrix


def projectors(basis: MeasurementBasis, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Pi_1 = I_A (x) |u><u| and Pi_2 = I_A (x) |v><v| on n qubits."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    check_dense_dim(2**n)
    eye_a = np.eye(2 ** (n - 1))
    pu, pv = basis.local_projectors()
    return kron(eye_a, pu), kron(eye_a, pv)


def _as_density(state: MatrixLike) -> DensityMatrix:
    return state if isinstance(state, DensityMatrix) else DensityMatrix(state)


def _split_b(m: np.ndarray) -> np.ndarray:
    dim = m.shape[0]
    if dim % 2:
        raise ValueError(f"dimension {dim} is odd; the last factor must be a qubit")
    half = dim // 2
    return m.reshape(half, 2, half, 2)


def _trace_b(m: np.ndarray) -> np.ndarray:
    return np.einsum("aybz,yz->ab", _split_b(m), np.eye(2))


def partial_trace_b(state: MatrixLike) -> DensityMatrix:
    """Trace out the last qubit."""
    rho = _as_density(state)
    return DensityMatrix(_trace_b(rho.matrix), validate=False)


def apply_measurement(state: MatrixLike, basis: MeasurementBasis) -> DensityMatrix:
    """Return sum_k Pi_k rho Pi_k for the two projectors of ``basis``."""
    rho = _as_density(state)
    t = _split_b(rho.matrix)
    out = np.zeros_like(t)
    for proj in basis.local_projectors():
        out += np.einsum("xy,aybz,zw->axbw", proj, t, proj)
    return DensityMatrix(out.reshape(rho.dim, rho.dim), validate=False)


def measure_ensemble(state: MatrixLike, basis: MeasurementBasis) -> list[MeasurementOutcome]:
    """Outcome probabilities and normalised states of A for a measurement on B.

    Raises ValueError if an outcome has zero probability, since its
    conditional state is then undefined.
    """
    rho = _as_density(state)
    t = _split_b(rho.matrix)
    outcomes = []
    for ket in basis.kets():
        # <k|_B rho |k>_B == tr_B[(I (x) |k><k|) rho (I (x) |k><k|)]
        block = np.einsum("y,aybz,z->ab", ket.conj(), t, ket)
        prob = float(np.trace(block).real)
        if prob <= 1e-15:
            raise ValueError(f"measurement outcome has zero probability for {basis}")
        block = block / prob
        block = 0.5 * (block + block.conj().T)
        outcomes.append(MeasurementOutcome(prob, DensityMatrix(block, validate=False)))
    return outcomes


def outcome_ensemble(params: WernerParams, basis: MeasurementBasis) -> list[MeasurementOutcome]:
    return measure_ensemble(build_werner_dense(params), basis)


def invariance_grid(density: int = 8, eps: float = 1e-6) -> list[MeasurementBasis]:
    """Uniform density x density grid on [0, pi/2] x [0, 2 pi) plus boundary corners."""
    thetas = np.linspace(0.0, math.pi / 2, density)
    phis = np.linspace(0.0, 2 * math.pi, density, endpoint=False)
    points = [(float(t), float(f)) for t in thetas for f in phis]
    for t in (0.0, math.pi / 2):
        for f in (0.0, 2 * math.pi - eps):
            if (t, f) not in points:
                points.append((t, f))
    return [MeasurementBasis(t, f) for t, f in points]
