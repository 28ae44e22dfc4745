"""
G-asymptotic curves and Gaussian lines of curvature
"""
from .fields import (
    P,
    DirectionField,
    asymptotic_fields,
    asymptotic_fields_front_K,
    curvature_line_fields,
    kernel_direction,
    null_vectors,
)
from .residuals import (
    g_asymptotic_residual,
    g_asymptotic_residuals,
    gaussian_line_residual,
    gaussian_line_residuals,
    line_of_curvature_residual,
    line_of_curvature_residuals,
    velocity_determinant,
)
from .tracing import trace_flow

__all__ = [
    "P",
    "DirectionField",
    "asymptotic_fields",
    "asymptotic_fields_front_K",
    "curvature_line_fields",
    "g_asymptotic_residual",
    "g_asymptotic_residuals",
    "gaussian_line_residual",
    "gaussian_line_residuals",
    "kernel_direction",
    "line_of_curvature_residual",
    "line_of_curvature_residuals",
    "null_vectors",
    "trace_flow",
    "velocity_determinant",
]
