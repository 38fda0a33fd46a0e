"""Adiabatic-evolution simulator for the constant-vs-balanced promise problem.

Builds promise oracles, the uniform start state and both target-state
constructions, analyzes the interpolating projector Hamiltonian's spectrum
(closed form and dense eigensolver), integrates the time-dependent dynamics
in the full space or the invariant 2D subspace, and classifies sampled
measurement outcomes. See the CLI (`adiabatic-dj`) for ready-made
experiments.
"""

from .errors import (
    AdiabaticDJError,
    BracketError,
    DegenerateInterpolationError,
    DimensionMismatchError,
    EigensolverError,
    MajorityTieError,
    NumericalError,
    PromiseViolationError,
    ScheduleError,
    StepSizeError,
    ValidationError,
)
from .oracle import (
    MAX_QUBITS,
    AmplitudePair,
    BooleanOracle,
    OracleKind,
    from_string,
    from_truth_table,
    make_balanced,
    make_constant,
    mu_nu,
    to_string,
)
from .states import (
    StateVector,
    Variant,
    alpha_state,
    beta_modified,
    beta_original,
    beta_state,
    overlap,
)
from .hamiltonian import (
    DENSE_MAX_DIM,
    ProjectorInterpolation,
    SpectrumPoint,
    TwoLevelReduction,
    apply,
    coupled_eigenvectors,
    coupling_element,
    dense,
    dmax_linear,
    driver_norm,
    from_states,
    g_min,
    gap_analytic,
    gap_numeric,
    gap_values,
    variant_interpolation,
)
from .evolution import (
    DEFAULT_STEPS_PER_UNIT,
    Engine,
    EvolutionResult,
    Schedule,
    ScheduleKind,
    TraceSample,
    build_local_schedule,
    evolve,
    evolve_effective,
    evolve_full,
    linear_schedule,
    minimal_time,
    rescale_schedule,
)
from .measurement import (
    Classification,
    MeasurementRecord,
    classify,
    classify_modified,
    classify_original,
    measure,
    sample,
)
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
