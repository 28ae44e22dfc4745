"""
Extendability of the normal curvature across the singular set.

The normal curvature extends smoothly exactly when II_Omega adj(Lambda^T)
is divisible by lambda_Omega. With an analytic B field (II_Omega = C Lambda^T)
this is checked as an identity on a grid; otherwise the quotient
R = II_Omega adj(Lambda^T) / lambda_Omega is sampled along rays that approach
singular points and its limit is tested for stability. When R extends, it
is C and the extended Weingarten-type matrix is W = -C^T I_Omega^{-1}
(mu = Lambda W), so K = det W and H = -tr(W) / 2.
"""
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.errors import NotExtendable
from src.models import ExtendabilityVerdict, ExtendedCurvatures, Point
from src.utils.config import config
from src.utils.logger import setup_logger

from .invariants import det2, frame_arrays, invariant_frame
from .singularities import check_proper, singular_points, singular_set
from .surface import FrontalSurface

logger = setup_logger("frontal-lab.extendability")


def _T(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2)


def extension_matrix(C: np.ndarray, I_omega: np.ndarray) -> np.ndarray:
    """W = -C^T I_Omega^{-1}"""
    return -_T(C) @ np.linalg.inv(I_omega)


def _matrix(m) -> List[List[float]]:
    return [[float(x) for x in row] for row in np.asarray(m)]


def ray_quotients(s: FrontalSurface, points: List[Point]) -> Tuple[np.ndarray, np.ndarray]:
    """R = II_Omega adj(Lambda^T) / lambda_Omega approaching each point

    Rays leave each point at angles 2 pi k / RAY_COUNT; the j-th sample sits
    at distance r0 RAY_RATIO^j with r0 = RAY_START * min_extent / 2.

    Returns:
        (R, valid): R has shape (points, rays, scales, 2, 2); samples
        outside the domain or with |lambda_Omega| <= TAU_SING are invalid
    """
    P = len(points)
    rays = config.RAY_COUNT
    scales = config.RAY_SCALES
    r0 = config.RAY_START * s.domain.min_extent / 2.0
    angles = 2.0 * np.pi * np.arange(rays) / rays
    radii = r0 * config.RAY_RATIO ** np.arange(scales)
    q = np.asarray(points, dtype=float).reshape(P, 1, 1, 2)
    offsets = radii[None, None, :, None] * np.stack([np.cos(angles), np.sin(angles)], axis=-1)[None, :, None, :]
    samples = q + offsets

    d = s.domain
    inside = (
        (samples[..., 0] >= d.u0) & (samples[..., 0] <= d.u1)
        & (samples[..., 1] >= d.v0) & (samples[..., 1] <= d.v1)
    )
    R = np.full((P, rays, scales, 2, 2), np.nan)
    valid = np.zeros((P, rays, scales), dtype=bool)
    if not np.any(inside):
        return R, valid
    pts = samples[inside]
    a = frame_arrays(s, pts[:, 0], pts[:, 1])
    lam = a.lam
    ok = np.abs(lam) > config.TAU_SING
    quotient = np.full((len(pts), 2, 2), np.nan)
    quotient[ok] = a.relative_shape[ok] / lam[ok][:, None, None]
    R[inside] = quotient
    valid[inside] = ok
    skipped = int(np.sum(inside) - np.sum(ok))
    if skipped:
        logger.debug(f"{skipped} ray samples skipped on the singular set")
    return R, valid


def _ray_verdict(values: np.ndarray) -> Dict:
    """Stability of one ray's quotient sequence (coarse to fine)"""
    finest = values[-1]
    diffs = np.maximum(np.abs(values[-1] - values[-2]), np.abs(values[-2] - values[-3]))
    worst = np.unravel_index(int(np.argmax(np.abs(finest) + diffs)), (2, 2))
    return {
        "stable": bool(np.all(diffs < config.RAY_STABILITY)),
        "bounded": bool(np.max(np.abs(values)) <= config.RAY_BOUND),
        "entry": [int(worst[0]), int(worst[1])],
        "finest_ratio": float(finest[worst]),
        "difference": float(diffs[worst]),
        "max_finest_ratio": float(np.max(np.abs(finest))),
    }


def _limit_at(R: np.ndarray, valid: np.ndarray, point: Point):
    """(limit estimate or None, failures, max finest ratio) for one point"""
    failures = []
    finest = []
    max_ratio = 0.0
    for k in range(R.shape[0]):
        values = R[k][valid[k]]
        if len(values) < 3:
            logger.warning(f"ray {k} at {point} has {len(values)} usable samples, skipped")
            continue
        verdict = _ray_verdict(values)
        max_ratio = max(max_ratio, verdict["max_finest_ratio"])
        if verdict["stable"] and verdict["bounded"]:
            finest.append(values[-1])
        else:
            failures.append({"point": list(point), "ray": k, **verdict})
    limit = np.mean(finest, axis=0) if finest and not failures else None
    return limit, failures, max_ratio


def extendability_test(s: FrontalSurface, mode: str = "numeric", grid: Optional[int] = None) -> ExtendabilityVerdict:
    """Whether the normal curvature of s extends smoothly

    Args:
        s: Proper frontal
        mode: "analytic" (B field identity on a grid) or "numeric" (ray limits)
        grid: Grid size for the identity check or singular-set search

    Returns:
        ExtendabilityVerdict labelled with its mode

    Raises:
        NotProperFrontal: singular set with interior
        NotExtendable: analytic mode without a B field
    """
    if mode not in ("analytic", "numeric"):
        raise ValueError(f"unknown extendability mode {mode!r}")
    check_proper(s)
    if mode == "analytic":
        return _analytic_test(s, grid or config.DEFAULT_GRID)
    return _numeric_test(s, grid or config.DEFAULT_GRID)


def _analytic_test(s: FrontalSurface, grid: int) -> ExtendabilityVerdict:
    if s.b_field is None:
        raise NotExtendable(f"{s.provenance.kind} surface carries no analytic B field")
    us, vs = s.domain.grid(grid, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    a = frame_arrays(s, U, V)
    C = s.b_field(U, V)
    residual = float(np.max(np.abs(a.II_omega - C @ _T(a.Lambda))))
    extendable = residual <= config.B_FIELD_TOL

    points = singular_points(singular_set(s, config.PROPER_GRID, config.PROPER_GRID), config.RAY_MAX_POINTS)
    points = points or [s.domain.center]
    pts = np.asarray(points, dtype=float)
    sample = frame_arrays(s, pts[:, 0], pts[:, 1])
    C_pts = s.b_field(pts[:, 0], pts[:, 1])
    W = extension_matrix(C_pts, sample.I_omega)
    estimates = [
        {"point": list(p), "C": _matrix(C_pts[k]), "W": _matrix(W[k]),
         "K": float(det2(W[k])), "H": float(-0.5 * np.trace(W[k]))}
        for k, p in enumerate(points)
    ]
    evidence = {"residual": residual, "tolerance": config.B_FIELD_TOL, "grid": [grid, grid]}
    logger.debug(f"analytic extendability of {s.provenance.kind}: residual {residual:.3e}")
    return ExtendabilityVerdict(extendable, "analytic", estimates, evidence)


def _numeric_test(s: FrontalSurface, grid: int) -> ExtendabilityVerdict:
    points = singular_points(singular_set(s, grid, grid), config.RAY_MAX_POINTS)
    if not points:
        return ExtendabilityVerdict(True, "numeric", [], {"singular_points": 0})
    R, valid = ray_quotients(s, points)
    pts = np.asarray(points, dtype=float)
    frames = frame_arrays(s, pts[:, 0], pts[:, 1])

    estimates = []
    failures = []
    max_ratio = 0.0
    for k, p in enumerate(points):
        limit, bad, ratio = _limit_at(R[k], valid[k], p)
        failures.extend(bad)
        max_ratio = max(max_ratio, ratio)
        if limit is not None:
            W = extension_matrix(limit, frames.I_omega[k])
            estimates.append({"point": list(p), "C": _matrix(limit), "W": _matrix(W),
                              "K": float(det2(W)), "H": float(-0.5 * np.trace(W))})

    evidence = {
        "singular_points": len(points),
        "max_finest_ratio": max_ratio,
        "stability": config.RAY_STABILITY,
        "bound": config.RAY_BOUND,
        "diverging": failures[:8],
    }
    logger.debug(f"numeric extendability of {s.provenance.kind}: {len(failures)} diverging rays, "
                 f"max finest ratio {max_ratio:.3e}")
    return ExtendabilityVerdict(not failures, "numeric", estimates, evidence)


def extended_curvatures(s: FrontalSurface, p: Point, mode: Optional[str] = None) -> ExtendedCurvatures:
    """Extended Gaussian and mean curvature at p

    Analytic mode uses the B field; numeric mode uses K_Omega / lambda_Omega
    at regular points and the ray limit of R at singular points. When that
    limit diverges but the generator carries an extended Gaussian curvature,
    K comes from the generator and H is left as None (mode "generator").

    Raises:
        NotExtendable: no B field (analytic) or unstable ray limit (numeric)
    """
    mode = mode or ("analytic" if s.b_field is not None else "numeric")
    p = (float(p[0]), float(p[1]))
    f = invariant_frame(s, p)
    if mode == "analytic":
        if s.b_field is None:
            raise NotExtendable(f"{s.provenance.kind} surface carries no analytic B field")
        W = extension_matrix(s.b_field(p[0], p[1]), f.first_form_omega)
    elif abs(f.lam) > config.TAU_SING:
        W = np.linalg.solve(f.Lambda, f.mu)
    else:
        R, valid = ray_quotients(s, [p])
        limit, failures, ratio = _limit_at(R[0], valid[0], p)
        if limit is None:
            if s.extended_gaussian is not None:
                logger.info(f"mean curvature does not extend at {p}; K from the {s.provenance.kind} generator")
                return ExtendedCurvatures(point=p, K=float(s.extended_gaussian(*p)), H=None,
                                          mode="generator", W=None)
            raise NotExtendable(f"normal curvature quotient diverges at {p} (finest ratio {ratio:.3e})")
        W = extension_matrix(limit, f.first_form_omega)
    return ExtendedCurvatures(
        point=p,
        K=float(det2(W)),
        H=float(-0.5 * np.trace(W)),
        mode=mode,
        W=W,
    )
