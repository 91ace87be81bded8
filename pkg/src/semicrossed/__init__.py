"""Semicrossed products of one-sided dynamical systems.

The package models a compact system (circle multiplication, shifts of finite
type, finite permutations) together with its minimal invertible extension,
builds finitely supported operator elements over it, realizes them in
concrete matrix families, and certifies operator norm brackets that are tight
enough to compare the one-sided algebra with the two-sided one.
"""

from .corpus import (
    Budgets,
    canonical_ext_samples,
    cosine_element,
    default_samples,
    doubling_map,
    golden_mean_shift,
    orbit_representatives,
    periodic_points,
    periodic_rationals,
    random_crossed_element,
    random_semicrossed_element,
    seeded_aperiodic_rationals,
    seeded_lifts,
)
from .checks import ALL_CHECKS, CheckReport, CheckRow, run_checks
from .elements import (
    Element,
    RightFormElement,
    add,
    adjoint,
    compose_shift_element,
    constant_element,
    element,
    from_base,
    from_right_form,
    is_semicrossed,
    l1_upper_bound,
    multiply,
    require_semicrossed,
    scale,
    shift_element,
    times_shift_power,
    to_right_form,
)
from .errors import (
    BadLambda,
    ConfigError,
    DepthTooLarge,
    InvalidMatrix,
    KindMismatch,
    NonFinite,
    NotPeriodic,
    NotSemicrossed,
    OrbitCollision,
    SemicrossedError,
    SeparationImpossible,
    WindowTooSmall,
    WrongForm,
)
from .extension import (
    AlwaysMin,
    ExplicitTail,
    LazyLift,
    PeriodicLift,
    SeededRandom,
    classify_lift,
    ext_points_equal,
    lift_point,
    periodic_lift,
    project,
    shift,
    shift_inverse,
    shift_power,
    two_sided_sft_properties,
    verify_transfer,
)
from .functions import (
    CylinderFunction,
    ExtFunction,
    NormBracket,
    TabularFunction,
    TrigPoly,
    base_add,
    base_conj,
    base_mul,
    base_scale,
    compose_map,
    compose_shift,
    compose_shift_inverse,
    compose_shift_power,
    constant_base,
    constant_ext,
    evaluate,
    evaluate_base,
    ext,
    ext_add,
    ext_conj,
    ext_equal,
    ext_mul,
    ext_scale,
    ext_sup_norm,
    lift_to_depth,
    sup_norm,
    validate_base,
)
from .norms import (
    NormEstimate,
    bilateral_orbit_check,
    embed_periodic_vector,
    embedding_check,
    orbit_norm_estimate,
    periodic_norm_estimate,
    periodic_vector_check,
    semicrossed_norm,
    spectral_norm,
    twisted_periodic_matrix,
)
from .reps import (
    BackwardOrbitRep,
    BilateralWindowRep,
    OrbitTruncation,
    PeriodicOrbitRep,
    backward_matrix,
    bilateral_matrix,
    covariance_defect,
    invariant_subspaces_are_tails,
    orbit_matrix,
    periodic_ext_matrix,
    periodic_matrix,
    rep_matrix,
)
from .systems import (
    CircleTimesK,
    Classification,
    PermutationSystem,
    RationalPoint,
    ShiftOfFiniteType,
    StatePoint,
    System,
    WordPoint,
    admissible_words,
    apply_map,
    classify,
    forward_orbit,
    point_key,
    preimages,
    rational,
    separating_function,
    sft_properties,
    validate_transition,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_CHECKS",
    "AlwaysMin",
    "BackwardOrbitRep",
    "BadLambda",
    "BilateralWindowRep",
    "Budgets",
    "CheckReport",
    "CheckRow",
    "CircleTimesK",
    "Classification",
    "ConfigError",
    "CylinderFunction",
    "DepthTooLarge",
    "Element",
    "ExplicitTail",
    "ExtFunction",
    "InvalidMatrix",
    "KindMismatch",
    "LazyLift",
    "NonFinite",
    "NormBracket",
    "NormEstimate",
    "NotPeriodic",
    "NotSemicrossed",
    "OrbitCollision",
    "OrbitTruncation",
    "PeriodicLift",
    "PeriodicOrbitRep",
    "PermutationSystem",
    "RationalPoint",
    "RightFormElement",
    "SeededRandom",
    "SemicrossedError",
    "SeparationImpossible",
    "ShiftOfFiniteType",
    "StatePoint",
    "System",
    "TabularFunction",
    "TrigPoly",
    "WindowTooSmall",
    "WordPoint",
    "WrongForm",
    "add",
    "adjoint",
    "admissible_words",
    "apply_map",
    "backward_matrix",
    "base_add",
    "base_conj",
    "base_mul",
    "base_scale",
    "bilateral_matrix",
    "bilateral_orbit_check",
    "canonical_ext_samples",
    "classify",
    "classify_lift",
    "compose_map",
    "compose_shift",
    "compose_shift_element",
    "compose_shift_inverse",
    "compose_shift_power",
    "constant_base",
    "constant_element",
    "constant_ext",
    "cosine_element",
    "covariance_defect",
    "default_samples",
    "doubling_map",
    "element",
    "embed_periodic_vector",
    "embedding_check",
    "evaluate",
    "evaluate_base",
    "ext",
    "ext_add",
    "ext_conj",
    "ext_equal",
    "ext_mul",
    "ext_points_equal",
    "ext_scale",
    "ext_sup_norm",
    "forward_orbit",
    "from_base",
    "from_right_form",
    "golden_mean_shift",
    "invariant_subspaces_are_tails",
    "is_semicrossed",
    "l1_upper_bound",
    "lift_point",
    "lift_to_depth",
    "multiply",
    "orbit_matrix",
    "orbit_norm_estimate",
    "orbit_representatives",
    "periodic_ext_matrix",
    "periodic_lift",
    "periodic_matrix",
    "periodic_norm_estimate",
    "periodic_points",
    "periodic_rationals",
    "periodic_vector_check",
    "point_key",
    "preimages",
    "project",
    "random_crossed_element",
    "random_semicrossed_element",
    "rational",
    "rep_matrix",
    "require_semicrossed",
    "run_checks",
    "scale",
    "seeded_aperiodic_rationals",
    "seeded_lifts",
    "semicrossed_norm",
    "separating_function",
    "sft_properties",
    "shift",
    "shift_element",
    "shift_inverse",
    "shift_power",
    "spectral_norm",
    "sup_norm",
    "times_shift_power",
    "to_right_form",
    "twisted_periodic_matrix",
    "two_sided_sft_properties",
    "validate_base",
    "validate_transition",
    "verify_transfer",
]
