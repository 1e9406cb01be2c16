"""Mode-by-mode Klein-Gordon quantization structures on boundary regions.

Classical structures (complex structures, symplectic form, g-product,
boundary decompositions) and quantum ones (vacua, coherent states, free
amplitudes in the Schroedinger-Feynman and holomorphic schemes) evaluated
on finite quadrature grids of modes.
"""

from .amplitudes import (
    AmplitudeResult,
    amplitude_hq_interval,
    amplitude_hq_rod,
    amplitude_sfq_interval,
    amplitude_sfq_rod,
    characterizing_function,
    characterizing_solution,
    coherent_inner_product_holomorphic,
    coherent_inner_product_schrodinger,
    correspondence_kernel_log,
    kd_eig,
    omega_vacuum_form,
    schrodinger_coherent_log,
    schrodinger_vacuum_log,
    vacuum_form_direct,
    vacuum_normalization_log_density,
    vacuum_operator_eig,
)
from .boundary import (
    IntervalBoundaryField,
    RodBoundaryField,
    asymptotic_field_interval,
    asymptotic_field_rod,
    decompose_interval,
    decompose_rod,
    xi_matrices,
)
from .coefficients import (
    InitialData,
    evaluate_solution,
    freq_to_real,
    real_to_freq,
    reconstruct_spatial,
    recover_from_initial_data,
    restrict_to_leaf,
)
from .complex_structure import (
    FreqCoeffs,
    RealCoeffs,
    VacuumSpec,
    apply_j_freq,
    apply_j_real,
    apply_projector,
    j_sigma_map,
    jab_matrix,
    projectors_mn,
    projectors_pm,
    upsilon,
    vacuum_invariants,
)
from .errors import (
    ConfigError,
    DegenerateModeError,
    DegenerateVacuumError,
    DomainError,
    GridMismatchError,
    KGBFError,
    PositivityError,
    UnknownCheckError,
    ZeroUpsilonError,
)
from .modes import (
    ClosureFamily,
    IntervalMode,
    MinkowskiInterval,
    MinkowskiRadial,
    ModeGrid,
    ModeSample,
    RodMode,
    interval_grid,
    rod_grid,
    sample_mode,
    wronskian,
    weighted_wronskian_residual,
)
from .phase_space import AbdcEigs, PhasePoint, abdc_operators, conjugation_residual, f_matrix, phase_subspace_relations
from .symplectic import (
    PairingContext,
    complex_inner_product,
    g_product,
    symplectic_form,
    symplectic_form_real,
    symplectic_potential,
)

__version__ = "0.1.0"
