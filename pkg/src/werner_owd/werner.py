"""The generalized n-qubit Werner state p|GHZ><GHZ| + (1 - p) I / 2^n.

Basis ordering is lexicographic |q_{n-1} ... q_0> with the measured qubit B
as the last (least significant) factor, so the GHZ coherences sit in the
corners of the dense matrix.

Closed-form routines never form 2^n-sized arrays.  They carry each
eigenvalue group as (total mass, log2 of value) so that (1 - p) / 2^n is
never materialised and n can go far beyond double-precision range of 2^-n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .statespace import DensityMatrix, Spectrum, check_dense_dim

if TYPE_CHECKING:
    from .measurement import MeasurementBasis


@dataclass(frozen=True)
class WernerParams:
    n: int
    p: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))

    @property
    def dim(self) -> int:
        """N = 2^n."""
        return 2**self.n

    @property
    def half_dim(self) -> int:
        """L = 2^(n-1), the dimension of subsystem A."""
        return 2 ** (self.n - 1)


def _log2(x: float) -> float:
    return -math.inf if x == 0 else math.log2(x)


def _log2_sum(a: float, b: float) -> float:
    """log2(2^a + 2^b) for a, b possibly -inf."""
    return float(np.logaddexp2(a, b))


def _entropy_term(mass: float, log2_value: float) -> float:
    """-mass * log2(value), with 0 * log 0 = 0."""
    if mass == 0.0:
        return 0.0
    return -mass * log2_value


def build_werner_dense(params: WernerParams) -> DensityMatrix:
    N = params.dim
    check_dense_dim(N)
    p = params.p
    m = np.zeros((N, N), dtype=complex)
    np.fill_diagonal(m, (1 - p) / N)
    m[0, 0] += p / 2
    m[-1, -1] += p / 2
    m[0, -1] = p / 2
    m[-1, 0] = p / 2
    return DensityMatrix(m, validate=False)


def werner_spectrum(params: WernerParams) -> Spectrum:
    N = params.dim
    p = params.p
    low = (1 - p) / N
    top = p + low
    if p == 0.0:
        return Spectrum((low,), (N,))
    return Spectrum((top, low), (1, N - 1))


def werner_entropy(params: WernerParams) -> float:
    """S of the Werner state in bits, evaluated without forming 2^-n."""
    n, p = params.n, params.p
    log_low = _log2(1 - p) - n
    low_mass = (1 - p) * (1 - 2.0**-n)
    top_mass = p + (1 - p) * 2.0**-n
    log_top = _log2_sum(_log2(p), log_low)
    return _entropy_term(low_mass, log_low) + _entropy_term(top_mass, log_top)


def conditional_state_dense(
    params: WernerParams, basis: MeasurementBasis, outcome: int = 1
) -> DensityMatrix:
    """State of subsystem A after B is found in |u> (outcome 1) or |v> (outcome 2).

    Outcome 1 gives the L x L matrix with corners p cos^2, p sin^2 and
    coherence p e^{i phi} cos sin on top of (1 - p)/L * I.  Outcome 2 swaps
    cos and sin and flips the sign of the coherence, so the two conditional
    states share a spectrum but are different matrices whenever p > 0.
    """
    if outcome not in (1, 2):
        raise ValueError(f"outcome must be 1 or 2, got {outcome}")
    L = params.half_dim
    check_dense_dim(2 * L)
    p = params.p
    c, s = math.cos(basis.theta), math.sin(basis.theta)
    phase = np.exp(1j * basis.phi)
    if outcome == 2:
        c, s = s, -c
    m = np.zeros((L, L), dtype=complex)
    np.fill_diagonal(m, (1 - p) / L)
    m[0, 0] += p * c * c
    m[-1, -1] += p * s * s
    m[0, -1] += p * phase * c * s
    m[-1, 0] += p * np.conj(phase) * c * s
    return DensityMatrix(m, validate=False)


def conditional_spectrum(params: WernerParams) -> Spectrum:
    """Spectrum of either conditional state; independent of the basis."""
    L = params.half_dim
    p = params.p
    low = (1 - p) / L
    if p == 0.0:
        return Spectrum((low,), (L,))
    return Spectrum((p + low, low), (1, L - 1))


def measured_state_spectrum(params: WernerParams) -> Spectrum:
    """Spectrum of sum_k Pi_k rho_W Pi_k: the conditional spectrum halved, twice."""
    N = params.dim
    L = params.half_dim
    p = params.p
    low = (1 - p) / N
    if p == 0.0:
        return Spectrum((low,), (N,))
    return Spectrum(((1 + (L - 1) * p) / N, low), (2, N - 2))


def measured_entropy(params: WernerParams) -> float:
    """Entropy of the dephased state sum_k Pi_k rho_W Pi_k, in bits."""
    n, p = params.n, params.p
    log_low = _log2(1 - p) - n
    low_mass = (1 - p) * (1 - 2.0 ** -(n - 1))
    top_mass = p + (1 - p) * 2.0 ** -(n - 1)
    log_top = _log2_sum(_log2(p) - 1, log_low)
    return _entropy_term(low_mass, log_low) + _entropy_term(top_mass, log_top)
