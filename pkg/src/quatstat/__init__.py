"""Quaternionic matrix algebra and canonical-ensemble thermodynamics.

The package is organized bottom-up:

* :mod:`quatstat.quaternion` exact quaternion arithmetic;
* :mod:`quatstat.linalg` quaternionic matrices, the faithful complex
  representation, matrix exponential and right-eigenvalue spectra;
* :mod:`quatstat.metric` metric operators and adjoint-symmetry checks;
* :mod:`quatstat.thermo` partition functions (spectral, formal and
  second-order perturbative) and thermodynamic reports;
* :mod:`quatstat.models` two-level gases, negative temperature, and the
  spin and qubit example models;
* :mod:`quatstat.cli` the ``quatstat`` command-line front end.
"""

from .errors import (
    ConstraintViolation,
    DegenerateLevels,
    DimensionMismatch,
    DomainError,
    EnergyOutOfRange,
    InfiniteTemperature,
    NotDensity,
    NotNormal,
    NotPositive,
    NotSymplectic,
    QuadratureUnconverged,
    QuatstatError,
    SingularTheta,
    UnphysicalZ,
    ZeroMeanEnergy,
)
from .linalg import (
    ComplexEmbedding,
    QMatrix,
    dagger,
    embed,
    energies_by_continuity,
    fro_norm,
    inverse,
    mat_exp,
    mat_mul,
    mat_vec,
    re_trace,
    standard_spectrum,
    unembed,
    vec_inner,
    vec_outer,
    vec_scale_right,
)
from .metric import (
    MetricOperator,
    build_metric,
    classification_report,
    eta_adjoint,
    expectation,
    generalized_density,
    is_pseudo_anti_hermitian,
    is_pseudo_hermitian,
    is_quasi_anti_hermitian,
)
from .models import (
    QubitModelParams,
    SpinModelParams,
    TwoLevelGas,
    build_qubit_model,
    build_spin_model,
    entropy_stirling,
    inverse_temperature,
    log_multiplicity,
    occupation_numbers,
    printed_spin_entropy,
    printed_spin_entropy_combinatorial,
    printed_spin_internal_energy,
    printed_spin_inverse_temperature,
    printed_spin_log_multiplicity,
    spin_eigenvectors,
    spin_entropy_per_particle,
    spin_mean_energy,
    spin_negative_temperature,
    spin_toy_params,
    temperature,
)
from .quaternion import (
    DEFAULT_TOL,
    I,
    J,
    K,
    ONE,
    Quaternion,
    is_imaginary,
    qconj,
    qinv,
    qmul,
)
from .thermo import (
    DiscrepancyRecord,
    EnergySliceParams,
    SpectralEnsemble,
    ThermoReport,
    ToyModelParams,
    VolumeModel,
    bloch_propagator,
    build_toy_hamiltonian,
    dyson_convergence_slope,
    dyson_second_order,
    energy_variance,
    log_z_spectral,
    log_z_total,
    pressure,
    printed_entropy,
    printed_internal_energy,
    printed_pressure,
    printed_specific_heat,
    relative_rms,
    thermo_closed_form,
    thermo_spectral,
    toy_metric,
    z1_formula,
    z_spectral,
)

__version__ = "0.1.0"
