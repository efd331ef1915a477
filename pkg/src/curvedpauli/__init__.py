"""Closed-form Pauli modes on expanding and oscillating backgrounds.

The package constructs the exact separated solutions (Wigner-function
angular parts times hypergeometric radial parts), and verifies every
step of the construction numerically: angular recurrences and parity,
the radial eigenvalue problem against an independent finite-difference
oracle, residuals of the radial ODEs, the separated PDEs and first-order
systems, the nonrelativistic-limit scaling, orthogonality, and the
time-independence of the density.
"""
from .errors import (
    ConvergenceError,
    CurvedPauliError,
    DomainError,
    GridError,
    NotQuantizedError,
    PoleError,
    QuadratureError,
    SingularityError,
)
from .quantum import HalfInt, QuantumNumbers
from .model import (
    Model,
    ModelKind,
    ParitySector,
    effective_potential,
    radial_argument,
    radial_weight,
    scale_factor,
    time_profile,
)
from .specfun import HypParams, Regime, hyp2f1, hyp2f1_deriv
from .angular import (
    parity_check,
    parity_eigenvalue,
    recurrence_residual,
    sigma_action_residual,
    wigner_D,
    wigner_small_d,
)
from .radial import (
    PauliSample,
    RadialMode,
    ads_mode,
    ads_polynomial_mode,
    ds_mode,
    normalize_ds,
    normalized_ds_mode,
    pauli_wavefunction,
    radial_big,
    radial_big_deriv,
    radial_small,
    spectrum,
)
from .verify import (
    EquationId,
    Grid,
    ResidualReport,
    default_grid,
    density_stationarity,
    eigenvalue_oracle,
    first_order_residual,
    orthogonality_gram,
    pauli_pde_residual,
    radial_ode_residual,
    relativistic_limit_scaling,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CurvedPauliError",
    "DomainError",
    "GridError",
    "NotQuantizedError",
    "PoleError",
    "QuadratureError",
    "SingularityError",
    "HalfInt",
    "QuantumNumbers",
    "Model",
    "ModelKind",
    "ParitySector",
    "effective_potential",
    "radial_argument",
    "radial_weight",
    "scale_factor",
    "time_profile",
    "HypParams",
    "Regime",
    "hyp2f1",
    "hyp2f1_deriv",
    "parity_check",
    "parity_eigenvalue",
    "recurrence_residual",
    "sigma_action_residual",
    "wigner_D",
    "wigner_small_d",
    "PauliSample",
    "RadialMode",
    "ads_mode",
    "ads_polynomial_mode",
    "ds_mode",
    "normalize_ds",
    "normalized_ds_mode",
    "pauli_wavefunction",
    "radial_big",
    "radial_big_deriv",
    "radial_small",
    "spectrum",
    "EquationId",
    "Grid",
    "ResidualReport",
    "default_grid",
    "density_stationarity",
    "eigenvalue_oracle",
    "first_order_residual",
    "orthogonality_gram",
    "pauli_pde_residual",
    "radial_ode_residual",
    "relativistic_limit_scaling",
    "__version__",
]
