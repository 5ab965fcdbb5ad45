"""One-way deficit and Holevo quantity of the generalized n-qubit Werner state."""

from .correlations import (
    CorrelationReport,
    correlation_report,
    holevo_from_ensemble,
    holevo_quantity,
    limit_deviation,
    owd_closed_form,
    owd_numeric,
    owd_thermodynamic_limit,
    saturation_error,
)
from .measurement import (
    MeasurementBasis,
    MeasurementOutcome,
    apply_measurement,
    measure_ensemble,
    outcome_ensemble,
    partial_trace_b,
    projectors,
)
from .statespace import (
    DenseSizeError,
    DensityMatrix,
    NotHermitianError,
    PositivityError,
    Spectrum,
    eig_hermitian,
    entropy,
    kron,
    von_neumann_entropy,
)
from .werner import (
    WernerParams,
    build_werner_dense,
    conditional_spectrum,
    conditional_state_dense,
    measured_entropy,
    measured_state_spectrum,
    werner_entropy,
    werner_spectrum,
)

__version__ = "0.1.0"
