"""Information gain of finite-strength Gaussian-pointer quantum measurements.

The package computes how much classical information a measuring device of
coupling strength g and pointer spread delta extracts from a quantum
ensemble, together with the Holevo ceiling, the disturbance to the states,
the receiver's complementary-basis information, and numerical certificates
for the monotonicity and convexity facts those curves rest on.
"""

from qig.errors import (
    DomainError,
    NotAStateError,
    NumericalError,
    QigError,
    UsageError,
    ValidationError,
)
from qig.numerics import (
    binary_entropy,
    hermitian_eigenvalues,
    shannon_entropy,
    von_neumann_entropy,
)
from qig.states import (
    PAULI_Z_OBSERVABLE,
    BlochVector,
    DensityMatrix,
    Ensemble,
    EnsembleMember,
    Observable,
    Violation,
    bloch_to_density,
    ensemble_average,
    holevo_bound,
    projective_information,
    validate_ensemble,
)
from qig.pointer import (
    PointerModel,
    damping_factor,
    gaussian_overlap_quadrature,
    information_gain,
    mirror_state,
    post_measurement_ensemble,
    post_measurement_state,
)
from qig.qubit import (
    G_function,
    K_function,
    QubitEnsembleView,
    complementarity_rhs,
    entropic_uncertainty_margin,
    f_function,
    h_function,
    info_gain_x_after_z,
    lambda_parameter,
    qubit_info_gain_closed,
)
from qig.scenarios import (
    ScanResult,
    SweepResult,
    SweepSpec,
    VerificationReport,
    bb84_closed_forms,
    bb84_ensemble,
    bb84_view,
    conjecture_scan,
    sweep,
    theorem_grid,
    verify_random,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "DensityMatrix",
    "DomainError",
    "Ensemble",
    "EnsembleMember",
    "G_function",
    "K_function",
    "NotAStateError",
    "NumericalError",
    "Observable",
    "PAULI_Z_OBSERVABLE",
    "PointerModel",
    "QigError",
    "QubitEnsembleView",
    "ScanResult",
    "SweepResult",
    "SweepSpec",
    "UsageError",
    "ValidationError",
    "VerificationReport",
    "Violation",
    "bb84_closed_forms",
    "bb84_ensemble",
    "bb84_view",
    "binary_entropy",
    "bloch_to_density",
    "complementarity_rhs",
    "conjecture_scan",
    "damping_factor",
    "ensemble_average",
    "entropic_uncertainty_margin",
    "f_function",
    "gaussian_overlap_quadrature",
    "h_function",
    "hermitian_eigenvalues",
    "holevo_bound",
    "info_gain_x_after_z",
    "information_gain",
    "lambda_parameter",
    "mirror_state",
    "post_measurement_ensemble",
    "post_measurement_state",
    "projective_information",
    "qubit_info_gain_closed",
    "shannon_entropy",
    "sweep",
    "theorem_grid",
    "validate_ensemble",
    "verify_random",
    "von_neumann_entropy",
]
