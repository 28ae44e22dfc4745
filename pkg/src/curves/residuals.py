"""
Residuals of the identities that define the traced curve families.

Velocities come from the field values stored on the curve, never from
differences of vertices.
"""
from typing import Callable, Sequence

import numpy as np

from src.frontal.invariants import frame_arrays
from src.frontal.surface import FrontalSurface
from src.models import Point, TracedCurve

from .fields import P, DirectionField


def _frames(s: FrontalSurface, curve: TracedCurve):
    pts = curve.points
    return frame_arrays(s, pts[:, 0], pts[:, 1])


def _quadratic(M: np.ndarray, g: np.ndarray) -> np.ndarray:
    """g_k^T M_k g_k for each vertex k"""
    return np.einsum("ki,kij,kj->k", g, M, g)


def g_asymptotic_residuals(s: FrontalSurface, curve: TracedCurve) -> np.ndarray:
    """|gamma'^T II gamma'| at each vertex"""
    return np.abs(_quadratic(_frames(s, curve).II, curve.velocities))


def g_asymptotic_residual(s: FrontalSurface, curve: TracedCurve) -> float:
    return float(np.max(g_asymptotic_residuals(s, curve)))


def line_of_curvature_residuals(s: FrontalSurface, curve: TracedCurve) -> np.ndarray:
    """|lambda gamma'^T P alpha^T gamma'| at each vertex"""
    a = _frames(s, curve)
    M = P @ np.swapaxes(a.alpha, -1, -2)
    return np.abs(a.lam * _quadratic(M, curve.velocities))


def line_of_curvature_residual(s: FrontalSurface, curve: TracedCurve) -> float:
    return float(np.max(line_of_curvature_residuals(s, curve)))


def gaussian_line_residuals(s: FrontalSurface, curve: TracedCurve, rho: Callable[[float, float], float]) -> np.ndarray:
    """||(n o gamma)' - rho (x o gamma)'|| at each vertex"""
    a = _frames(s, curve)
    g = curve.velocities[..., None]
    rhos = np.array([rho(u, v) for u, v in curve.points])
    diff = (a.Dn @ g)[..., 0] - rhos[:, None] * (a.Dx @ g)[..., 0]
    return np.linalg.norm(diff, axis=-1)


def gaussian_line_residual(s: FrontalSurface, curve: TracedCurve, rho: Callable[[float, float], float]) -> float:
    return float(np.max(gaussian_line_residuals(s, curve, rho)))


def velocity_determinant(first: DirectionField, second: DirectionField, points: Sequence[Point]) -> np.ndarray:
    """det[first(q) | second(q)] at each point"""
    out = []
    for u, v in points:
        a, b = first(u, v), second(u, v)
        out.append(a[0] * b[1] - a[1] * b[0])
    return np.array(out)
