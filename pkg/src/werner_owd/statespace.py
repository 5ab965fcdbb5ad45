"""Dense density matrices, Hermitian spectra and von Neumann entropy (bits)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

MAX_DENSE_DIM = 2**14

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
GROUPING_TOL = 1e-9
# Eigenvalues at or below this contribute exactly zero entropy.
ZERO_EIGENVALUE = 1e-15


class DenseSizeError(ValueError):
    """A dense matrix would exceed MAX_DENSE_DIM."""


class NotHermitianError(ValueError):
    pass


class PositivityError(ValueError):
    pass


def check_dense_dim(dim: int) -> None:
    if dim > MAX_DENSE_DIM:
        raise DenseSizeError(
            f"dense dimension {dim} exceeds {MAX_DENSE_DIM}; "
            "use the closed-form routines in werner_owd.werner instead"
        )


class DensityMatrix:
    """Immutable Hermitian, unit-trace, positive semidefinite matrix.

    The invariants are checked on construction unless ``validate=False``,
    which is meant for internal callers that already guarantee them.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix, *, validate: bool = True):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if validate:
            _validate_density(m)
        m.setflags(write=False)
        self._matrix = m

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._matrix
        return self._matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def _validate_density(m: np.ndarray) -> None:
    herm_err = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if herm_err > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {herm_err:.3e})")
    trace = np.trace(m)
    if abs(trace - 1) > TRACE_TOL:
        raise ValueError(f"trace must be 1, got {trace}")
    smallest = np.linalg.eigvalsh(m)[0]
    if smallest < -PSD_TOL:
        raise PositivityError(f"matrix has negative eigenvalue {smallest:.3e}")


MatrixLike = Union[DensityMatrix, np.ndarray, Sequence[Sequence[complex]]]


def _as_square(m: MatrixLike, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m.matrix if isinstance(m, DensityMatrix) else m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, each with its multiplicity."""

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.multiplicities):
            raise ValueError("values and multiplicities must have equal length")
        if any(int(k) < 1 for k in self.multiplicities):
            raise ValueError("multiplicities must be positive integers")
        if any(v < -PSD_TOL for v in self.values):
            raise PositivityError(f"spectrum has negative values: {self.values}")

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Iterable[float], tol: float = GROUPING_TOL) -> Spectrum:
        """Group a flat list of eigenvalues into (value, multiplicity) pairs.

        Consecutive sorted values within ``tol`` of the first member of a
        group are merged; the group's value is the mean of its members.
        """
        ordered = sorted((float(x) for x in eigenvalues), reverse=True)
        groups: list[list[float]] = []
        for x in ordered:
            if groups and groups[-1][0] - x <= tol:
                groups[-1].append(x)
            else:
                groups.append([x])
        return cls(
            values=tuple(float(np.mean(g)) for g in groups),
            multiplicities=tuple(len(g) for g in groups),
        )

    @property
    def dim(self) -> int:
        return int(sum(self.multiplicities))

    def total(self) -> float:
        return float(sum(v * k for v, k in zip(self.values, self.multiplicities)))

    def expanded(self) -> np.ndarray:
        """All eigenvalues, repeated by multiplicity, descending."""
        return np.repeat(np.array(self.values, dtype=float), self.multiplicities)


def kron(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """Kronecker product with entry (i*db + k, j*db + l) = a[i, j] * b[k, l]."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    check_dense_dim(a.shape[0] * b.shape[0])
    return np.kron(a, b)


def eig_hermitian(m: MatrixLike) -> Spectrum:
    arr = _as_square(m)
    if arr.size and np.max(np.abs(arr - arr.conj().T)) > PSD_TOL:
        raise NotHermitianError("eig_hermitian requires a Hermitian matrix")
    return Spectrum.from_eigenvalues(np.linalg.eigvalsh(arr))


def von_neumann_entropy(s: Spectrum) -> float:
    """Return -sum(lambda * log2(lambda)) over the spectrum, in bits."""
    total = 0.0
    mass = 0.0
    for value, mult in zip(s.values, s.multiplicities):
        if value < -PSD_TOL:
            raise PositivityError(f"eigenvalue {value:.3e} is negative")
        mass += mult * max(value, 0.0)
        if value <= ZERO_EIGENVALUE:
            continue
        total -= mult * value * np.log2(value)
    if abs(mass - 1.0) > 1e-8:
        raise ValueError(f"spectrum must sum to 1, got {mass}")
    return float(max(total, 0.0))


def entropy(m: MatrixLike) -> float:
    """Von Neumann entropy of a dense matrix via its Hermitian spectrum."""
    return von_neumann_entropy(eig_hermitian(m))
