"""Exact splitting types of restricted tangent and normal bundles of rational
normal curves on projective hypersurfaces."""

from .binform import BinaryForm, bf_gcd, format_binary_form, parse_binary_form
from .constructor import (
    ExtensionStep,
    build_chain,
    extend_dimension,
    extension_schedule,
    generate_example,
    lift_psi_targets,
    seed_example,
)
from .fields import DEFAULT_PRIME, RATIONALS, FieldSpec, parse_field
from .multipoly import (
    CurveContext,
    IdealCombination,
    MultiPoly,
    build_quadric,
    decompose_into_ideal,
    format_hypersurface,
    format_poly,
    gradient_on_curve,
    lift_binary_form,
    parse_hypersurface,
    parse_poly,
    restrict_to_curve,
)
from .sheafmap import (
    GradedSheafMap,
    build_beta,
    build_delta,
    build_df,
    build_psi,
    check_smooth_along_curve,
    cokernel_matrix,
    compose,
    dual,
    full_rank_everywhere,
    h0_euler_crosscheck,
    kernel_matrix,
    section_kernel_dim,
    splitting_of_kernel,
)
from .splitting import (
    Prediction,
    SplittingType,
    balanced_of,
    expected_max,
    format_splitting,
    glue_bound,
    interpolation_count,
    parse_splitting,
    predicted_splitting,
    specializes_to,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
