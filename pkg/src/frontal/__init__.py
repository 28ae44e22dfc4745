"""
Frontal surfaces and their relative-curvature invariants
"""
from .extendability import extendability_test, extended_curvatures, extension_matrix, ray_quotients
from .invariants import (
    FrameArrays,
    adj,
    classical_frame,
    det2,
    frame_arrays,
    invariant_frame,
    lambda_grid,
    lambda_jet,
    normal_curvature_classical,
    principal_directions,
    relative_normal_curvature,
)
from .singularities import (
    check_proper,
    classify_singularity,
    parallelly_smoothable_test,
    singular_points,
    singular_set,
)
from .surface import (
    FrontalSurface,
    normal_jets,
    parallel_surface,
    rebased,
    surface_from_expressions,
    with_basis,
)

__all__ = [
    "FrameArrays",
    "FrontalSurface",
    "adj",
    "check_proper",
    "classical_frame",
    "classify_singularity",
    "det2",
    "extendability_test",
    "extended_curvatures",
    "extension_matrix",
    "frame_arrays",
    "invariant_frame",
    "lambda_grid",
    "lambda_jet",
    "normal_curvature_classical",
    "normal_jets",
    "parallel_surface",
    "parallelly_smoothable_test",
    "principal_directions",
    "ray_quotients",
    "rebased",
    "relative_normal_curvature",
    "singular_points",
    "singular_set",
    "surface_from_expressions",
    "with_basis",
]
