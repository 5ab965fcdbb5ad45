"""One-way deficit, Holevo quantity and the large-n behaviour of the deficit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .measurement import MeasurementBasis, MeasurementOutcome, apply_measurement, outcome_ensemble
from .statespace import MAX_DENSE_DIM, DenseSizeError, entropy
from .werner import (
    WernerParams,
    _entropy_term,
    _log2,
    _log2_sum,
    build_werner_dense,
    measured_entropy,
    werner_entropy,
)

NUMERIC_MAX_QUBITS = 12
GOLDEN_ITERATIONS = 30
GOLDEN_TOL = 1e-10
# Grid values closer than this are ties, resolved towards smaller (theta, phi).
TIE_TOL = 1e-12

_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class CorrelationReport:
    params: WernerParams
    basis: MeasurementBasis
    state_entropy: float
    measured_entropy: float
    owd_closed: float
    holevo: Optional[float] = None
    owd_numeric: Optional[float] = None
    basis_at_min: Optional[MeasurementBasis] = None


def owd_closed_form(params: WernerParams) -> float:
    """One-way deficit of the Werner state from its two closed-form spectra.

    Four terms: the two eigenvalue groups of the dephased state minus the
    two eigenvalue groups of the Werner state.  log2((1-p)/2^n) is carried
    as log2(1-p) - n so the expression stays finite for very large n.
    """
    n, p = params.n, params.p
    log_low = _log2(1 - p) - n
    dephased_low = _entropy_term((1 - p) * (1 - 2.0 ** -(n - 1)), log_low)
    dephased_top = _entropy_term(p + (1 - p) * 2.0 ** -(n - 1), _log2_sum(_log2(p) - 1, log_low))
    state_low = _entropy_term((1 - p) * (1 - 2.0**-n), log_low)
    state_top = _entropy_term(p + (1 - p) * 2.0**-n, _log2_sum(_log2(p), log_low))
    return dephased_low + dephased_top - state_low - state_top


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    iterations: int = GOLDEN_ITERATIONS,
    tol: float = GOLDEN_TOL,
) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def owd_numeric(params: WernerParams, grid_density: int = 8) -> tuple[float, MeasurementBasis]:
    """Brute-force one-way deficit: minimise S(sum_k Pi_k rho Pi_k) - S(rho) over (theta, phi).

    Both entropies come from dense eigensolves.  The search is a
    grid_density x grid_density grid followed by one golden-section pass
    along theta and then along phi around the best grid point.  The
    objective is never assumed flat.
    """
    if grid_density < 4:
        raise ValueError(f"grid_density must be at least 4, got {grid_density}")
    if params.n > NUMERIC_MAX_QUBITS:
        raise DenseSizeError(
            f"numeric one-way deficit is limited to n <= {NUMERIC_MAX_QUBITS}, got n={params.n}"
        )
    rho = build_werner_dense(params)
    state_entropy = entropy(rho)

    def objective(theta: float, phi: float) -> float:
        return entropy(apply_measurement(rho, MeasurementBasis(theta, phi)))

    thetas = np.linspace(0.0, math.pi / 2, grid_density)
    phis = np.linspace(0.0, 2 * math.pi, grid_density, endpoint=False)
    best = (math.inf, 0, 0)
    for i, theta in enumerate(thetas):
        for j, phi in enumerate(phis):
            val = objective(theta, phi)
            if val < best[0] - TIE_TOL:
                best = (val, i, j)
    best_val, i, j = best
    best_theta, best_phi = float(thetas[i]), float(phis[j])

    lo, hi = thetas[max(i - 1, 0)], thetas[min(i + 1, grid_density - 1)]
    theta_r, val_r = golden_section(lambda t: objective(t, best_phi), lo, hi)
    if val_r < best_val - TIE_TOL:
        best_val, best_theta = val_r, theta_r

    step = phis[1] - phis[0]
    lo, hi = max(best_phi - step, 0.0), min(best_phi + step, 2 * math.pi)
    phi_r, val_r = golden_section(lambda f: objective(best_theta, f), lo, hi)
    if val_r < best_val - TIE_TOL:
        best_val, best_phi = val_r, phi_r

    return best_val - state_entropy, MeasurementBasis(best_theta, best_phi)


def holevo_from_ensemble(outcomes: Sequence[MeasurementOutcome]) -> float:
    """chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i)."""
    average = sum(o.probability * o.conditional_state.matrix for o in outcomes)
    return entropy(average) - sum(o.probability * entropy(o.conditional_state) for o in outcomes)


def holevo_quantity(params: WernerParams, basis: MeasurementBasis) -> float:
    return holevo_from_ensemble(outcome_ensemble(params, basis))


def owd_thermodynamic_limit(p: float) -> float:
    """Limit of the one-way deficit as 2^n grows: the deficit tends to p itself."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return float(p)


def limit_deviation(n: int, p: float) -> float:
    return abs(owd_closed_form(WernerParams(n, p)) - owd_thermodynamic_limit(p))


def default_p_grid(steps: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, steps)


def saturation_error(n: int, ps: Optional[Iterable[float]] = None) -> float:
    """sup over the p grid of |deficit(n, p) - p|."""
    ps = default_p_grid() if ps is None else ps
    return max(limit_deviation(n, float(p)) for p in ps)


def correlation_report(
    params: WernerParams,
    basis: MeasurementBasis,
    grid_density: int = 8,
    numeric: bool = True,
) -> CorrelationReport:
    s_state = werner_entropy(params)
    s_meas = measured_entropy(params)
    owd_num = basis_min = holevo = None
    if params.dim <= MAX_DENSE_DIM:
        holevo = holevo_quantity(params, basis)
    if numeric and params.n <= NUMERIC_MAX_QUBITS:
        owd_num, basis_min = owd_numeric(params, grid_density)
    return CorrelationReport(
        params=params,
        basis=basis,
        state_entropy=s_state,
        measured_entropy=s_meas,
        owd_closed=owd_closed_form(params),
        holevo=holevo,
        owd_numeric=owd_num,
        basis_at_min=basis_min,
    )
