"""Partial-identification intervals via penalized discrete optimal transport.

Couples the two treatment-arm empirical measures under a cost that adds a
penalty on covariate mismatch to the outcome cost of interest; as the
penalty weight grows the resulting bounds tighten from the unconditional
transport bounds toward the covariate-conditional ones.  Closed-form
Gaussian oracles, synthetic generators, and two design-analysis
applications round out the toolkit.
"""

from .applications import CorrelationReport, NeymanReport, correlation_bound, neyman_bound
from .cost_model import (
    EtaGrid,
    OpaqueCost,
    QuadraticCost,
    build_mirror_matrix,
    cost_matrix,
    eval_cost,
    negate,
    penalty_matrix,
    product,
    sq_diff,
    sq_sum,
    standardize_pooled,
)
from .errors import (
    ConvergenceWarning,
    DimensionMismatch,
    EmptyGroup,
    EtaNegative,
    GroupTooSmall,
    IndefiniteInput,
    MissingColumn,
    NonBinaryTreatment,
    NonFiniteCost,
    NonFiniteInput,
    NonNumericCell,
    NonScalarOutcome,
    NonScalarSpec,
    NotSymmetric,
    OTBoundsError,
    SingularSigma0,
    SizeOverflow,
    ZeroVariance,
)
from .gaussian_oracle import (
    GaussianLinearSpec,
    LocationScaleSpec,
    McEstimate,
    PolyMap,
    bures_term,
    gaussian_ot_map,
    location_vc_exact,
    sqrt_spd,
    v_c_closed,
    v_c_location_scale,
    v_ip_closed,
    v_ip_general,
    v_u_closed,
    v_u_general,
)
from .ot_core import (
    DiscreteOtProblem,
    TransportPlan,
    evaluate_plan,
    solve_exact,
    solve_sinkhorn,
)
from .pi_estimator import (
    BoundResult,
    ObservedSample,
    PIBound,
    RateDiagnostic,
    estimate_bound,
    rate_diagnostic,
    split_groups,
    sweep,
)
from .synthetic import PRESET_NAMES, SynthConfig, generate, preset

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "ConvergenceWarning",
    "CorrelationReport",
    "DimensionMismatch",
    "DiscreteOtProblem",
    "EmptyGroup",
    "EtaGrid",
    "EtaNegative",
    "GaussianLinearSpec",
    "GroupTooSmall",
    "IndefiniteInput",
    "LocationScaleSpec",
    "McEstimate",
    "MissingColumn",
    "NeymanReport",
    "NonBinaryTreatment",
    "NonFiniteCost",
    "NonFiniteInput",
    "NonNumericCell",
    "NonScalarOutcome",
    "NonScalarSpec",
    "NotSymmetric",
    "OTBoundsError",
    "ObservedSample",
    "OpaqueCost",
    "PIBound",
    "PRESET_NAMES",
    "PolyMap",
    "QuadraticCost",
    "RateDiagnostic",
    "SingularSigma0",
    "SizeOverflow",
    "SynthConfig",
    "TransportPlan",
    "ZeroVariance",
    "build_mirror_matrix",
    "bures_term",
    "correlation_bound",
    "cost_matrix",
    "estimate_bound",
    "eval_cost",
    "evaluate_plan",
    "gaussian_ot_map",
    "generate",
    "location_vc_exact",
    "negate",
    "neyman_bound",
    "penalty_matrix",
    "preset",
    "product",
    "rate_diagnostic",
    "solve_exact",
    "solve_sinkhorn",
    "split_groups",
    "sq_diff",
    "sq_sum",
    "sqrt_spd",
    "standardize_pooled",
    "sweep",
    "v_c_closed",
    "v_c_location_scale",
    "v_ip_closed",
    "v_ip_general",
    "v_u_closed",
    "v_u_general",
]
