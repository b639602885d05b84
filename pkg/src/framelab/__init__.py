"""framelab: a numerical laboratory for weighted point-set frames.

Discretizes frame families indexed by a finite weighted point set, computes
their diagnostics (bounds, totality, independence, classification, duals),
builds multiplier operators from analysis/symbol/synthesis factorizations,
and re-verifies every identity through independent brute-force oracles.
"""

from .errors import (
    ConfigError,
    DegenerateBasisError,
    EmptySpaceError,
    FrameLabError,
    GridMismatchError,
    InconsistencyError,
    NotAFrameError,
    PreconditionError,
    ScheduleError,
    ShapeMismatchError,
    SingularOperatorError,
    UnsupportedSpaceError,
)
from .measure import (
    RefinementFamily,
    SampledMeasureSpace,
    SpaceKind,
    atomic,
    counting,
    counting_family,
    ess_sup,
    fourier_grid,
    l2_inner,
    l2_norm,
    periodic_unit_grid,
    refine,
    same_grid,
    sample,
    symmetric_grid,
    symmetric_grid_family,
    unit_grid_family,
)
from .model import (
    DualElement,
    GaussianBumps,
    ModelSpace,
    RawSamples,
    TestFunction,
    Trigonometric,
    dft,
    dual_grid,
    from_samples,
    h_inner,
    h_norm,
    idft,
    make_model,
    orthonormalize,
    random_test_function,
    to_samples,
    transform_matrix,
)
from .maps import (
    Classification,
    DistributionMap,
    FrameDiagnostics,
    OrthogonalityReport,
    TransitionReport,
    band_limited_family,
    bump_family,
    canonical_dual,
    check_hyper_orthogonal,
    check_pseudo_orthogonal,
    delta_frame,
    diagnose,
    discrete_sequence_map,
    exponential_frame,
    riesz_transition,
    scaled_bump_family,
    translated_window_frame,
    weighted_delta_frame,
)
from .multiplier import (
    ClosabilityReport,
    ClosureProfile,
    CompositionReport,
    DensityReport,
    DomainVerdict,
    InverseReport,
    MultiplierOperator,
    Side,
    Symbol,
    adjoint,
    build,
    closability_check,
    closure_domain_profile,
    compose,
    conj_symbol,
    density_certificate,
    invert,
    is_dual_pair,
    make_symbol,
    norm_bound,
    operator_norm,
    product_symbol,
    reciprocal_symbol,
    reconstruction_pair,
    split_symbol,
)
from .lab import (
    GrowthVerdict,
    QuartetReport,
    ReductionComparison,
    SweepResult,
    brute_force_pairing,
    coordinate_multiplier,
    discrete_reduction_oracle,
    duality_residual,
    fourier_quartet_check,
    unboundedness_sweep,
    weighted_delta_sweep,
)

__version__ = "0.1.0"
