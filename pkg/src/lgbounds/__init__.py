"""Generalized quantum temporal correlations and the bounds they obey.

The package is layered bottom-up: ``operators`` (states, observables,
Heisenberg-picture evolution), ``correlations`` (the normalized symmetric
and complex correlation plus PSD machinery), ``inequalities`` (margin
reports for every bound), ``spinmodel`` (the closed-form qubit
demonstration), ``search`` (seeded Monte-Carlo verification, sweeps,
compass search, independent oracle) and ``cli`` (the ``lgbounds`` command).
"""

from .errors import (
    DegenerateObservable,
    DimensionMismatch,
    InvalidConfig,
    IoError,
    LgboundsError,
    NotDensityMatrix,
    NotHermitian,
    NumericalFailure,
    OutOfRange,
    ZeroVector,
)
from .operators import (
    DensityMatrix,
    Hamiltonian,
    HermitianOperator,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    evolve,
    evolve_many,
    expectation,
    hermitian_eigendecomposition,
    make_hermitian,
    make_state,
    maximally_mixed,
    pure_state,
    std_dev,
    symmetrized_product_expectation,
    tensor_lift,
)
from .correlations import (
    CorrelationMatrix,
    build_correlation_matrix,
    complex_correlation,
    generalized_correlation,
    psd_check,
    schur_complement_check,
)
from .inequalities import (
    BlgCorrelations,
    BoundReport,
    ComplexLgiCorrelations,
    LgiCorrelations,
    TWO_SQRT_TWO,
    blg_parameter,
    complementarity_check,
    complex_lgi_bounds,
    evaluate_bipartite_schedule,
    evaluate_schedule,
    intermediate_bounds,
    lgi_parameter,
    theorem1_bound,
    theorem1_check,
    theorem4_bound,
    theorem4_check,
    tlm_check,
    tlm_single_check,
)
from .schedule import MeasurementSchedule
from .spinmodel import (
    FigureRow,
    SweepGrid,
    figure_data,
    matrix_path_crosscheck,
    spin_correlation,
    spin_d1,
    spin_d2,
    spin_hamiltonian,
    spin_observable,
)
from .search import (
    BlgVerification,
    OracleCorrelations,
    RandomInstanceConfig,
    SweepResult,
    VerificationReport,
    blg_monte_carlo,
    brute_force_oracle,
    grid_sweep,
    maximize_violation,
    monte_carlo_verify,
    random_bipartite_instance,
    random_instance,
)

__version__ = "0.1.0"
