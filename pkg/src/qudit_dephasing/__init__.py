"""Pure dephasing of two entangled qudits in the Cartan sector of SU(d).

Modules: ``cartan`` (basis, weights, roots, Weyl reflections), ``state``
(diagonal two-qudit states and invariants), ``dephasing`` (master equation,
closed forms and RK4), ``spectral`` (eigenvalue tracking, effective state,
kinks), ``geometry`` (geometric phase, regions, Weyl transport) and
``scenario``/``cli`` (configuration and CSV output).
"""

from .cartan import CartanBasis, RootVector, build_cartan_basis, structure_tensor, weyl_map_weights, weyl_reflect
from .dephasing import (
    CouplingSpec,
    ReducedDensity,
    build_R_matrix,
    closed_trajectory,
    decay_rates,
    evolve_closed_su2,
    evolve_closed_su3,
    evolve_ode,
)
from .errors import (
    ConfigError,
    DegeneracyWarning,
    IndeterminatePatternError,
    InsufficientHorizonError,
    InvalidDimensionError,
    InvalidRootError,
    InvalidStateError,
    NumericalContractError,
    StepSizeError,
    UndefinedPhaseError,
)
from .geometry import (
    OperationSpec,
    RegionLabel,
    classify_region,
    geometric_phase_mixed,
    geometric_phase_pure,
    geometric_phase_series,
    pattern_type,
    weyl_transport_scenario,
)
from .scenario import ResultTable, Scenario, run_scenario, run_sweep, verify_weyl
from .spectral import SpectralTrack, asymptotic_effective_state, detect_kink, effective_concurrence_series, track_spectrum
from .state import DiagonalState, concurrence, invariant_Ip

__version__ = "0.1.0"
