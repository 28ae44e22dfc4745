"""
Direction fields for G-asymptotic curves and Gaussian lines of curvature.

Both constructions work with the B field C (II_Omega = C Lambda^T) and push
a vector rho through adj(Lambda)^T, so that Lambda^T gamma' = lambda rho.
Asymptotic directions are null vectors of the quadratic form of C; curvature
directions are eigenvectors of W^T with W = -C^T I_Omega^{-1}.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from src.errors import (
    ChartSelectionFailed,
    NonNegativeCurvature,
    NotExtendable,
    UmbilicChart,
    WrongGeneratorKind,
)
from src.frontal.extendability import extension_matrix
from src.frontal.invariants import adj, det2, frame_arrays
from src.frontal.surface import FrontalSurface
from src.models import Domain, FieldKind, Point
from src.utils.config import config
from src.utils.logger import setup_logger

logger = setup_logger("frontal-lab.curves")

P = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass
class DirectionField:
    """Parameter-space velocity field"""
    kind: FieldKind
    evaluator: Callable[[float, float], np.ndarray]
    provenance: Dict = field(default_factory=dict)
    eigenvalue: Optional[Callable[[float, float], float]] = None  # rho for curvature lines
    chart: Optional[Domain] = None

    def __call__(self, u: float, v: float) -> np.ndarray:
        return np.asarray(self.evaluator(float(u), float(v)), dtype=float)


def _chart(s: FrontalSurface, p: Point, half: float) -> Domain:
    return Domain.square(half, (float(p[0]), float(p[1]))).intersect(s.domain)


def _chart_samples(chart: Domain) -> Tuple[np.ndarray, np.ndarray]:
    us, vs = chart.grid(config.CHART_SAMPLES, config.CHART_SAMPLES)
    U, V = np.meshgrid(us, vs, indexing="ij")
    return U.ravel(), V.ravel()


def _require_b_field(s: FrontalSurface) -> None:
    if s.b_field is None:
        raise NotExtendable(f"{s.provenance.kind} surface carries no analytic B field")


def _push(Lambda: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """adj(Lambda)^T rho"""
    return adj(Lambda).T @ rho


# --- asymptotic directions ------------------------------------------------

def _entries(C: np.ndarray):
    return C[..., 0, 0], 0.5 * (C[..., 0, 1] + C[..., 1, 0]), C[..., 1, 1]


def null_vectors(C: np.ndarray, case: int, sign: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """Two independent null vectors of rho^T C rho (det C < 0)

    Case 1 (c12 bounded away from 0, fixed sign): with s = c12 + sign sqrt(D),
    (-s, c11) and (c22, -s). Case 2 (c11 bounded away from 0): the factors
    (a1, a2, a3) = (c11, c12 + sqrt(D), c12 - sqrt(D)) give (-a2, a1), (-a3, a1).
    """
    c11, c12, c22 = _entries(C)
    root = np.sqrt(np.maximum(c12 * c12 - c11 * c22, 0.0))
    if case == 1:
        s = c12 + sign * root
        return np.stack([-s, c11], axis=-1), np.stack([c22, -s], axis=-1)
    return np.stack([-(c12 + root), c11], axis=-1), np.stack([-(c12 - root), c11], axis=-1)


def _select_case(s: FrontalSurface, p: Point):
    """Shrink the chart about p until one factorization case holds on all of it"""
    half = config.CHART_HALF_WIDTH
    for _ in range(config.CHART_MAX_HALVINGS + 1):
        chart = _chart(s, p, half)
        U, V = _chart_samples(chart)
        c11, c12, _ = _entries(s.b_field(U, V))
        if np.min(np.abs(c12)) > config.TAU_BRANCH:
            return chart, U, V, 1, float(np.sign(np.mean(c12)))
        if np.min(np.abs(c11)) > config.TAU_BRANCH:
            return chart, U, V, 2, 1.0
        half /= 2.0
        logger.debug(f"asymptotic chart at {tuple(p)} halved to half-width {half:.4g}")
    raise ChartSelectionFailed(
        f"neither factorization case holds on a chart of half-width {half * 2:.4g} at {tuple(p)}"
    )


def asymptotic_fields(s: FrontalSurface, p: Point) -> Tuple[DirectionField, DirectionField]:
    """G-asymptotic direction fields on a chart about p

    Raises:
        NotExtendable: no analytic B field
        NonNegativeCurvature: extended K >= -CURVATURE_SIGN_TOL on the chart
        ChartSelectionFailed: no case holds even on the smallest chart
    """
    _require_b_field(s)
    chart, U, V, case, sign = _select_case(s, p)
    a = frame_arrays(s, U, V)
    K = det2(extension_matrix(s.b_field(U, V), a.I_omega))
    if np.max(K) >= -config.CURVATURE_SIGN_TOL:
        worst = int(np.argmax(K))
        raise NonNegativeCurvature(
            f"extended Gaussian curvature {K[worst]:.3e} at ({U[worst]:.6g}, {V[worst]:.6g}) is not negative"
        )

    def make(index: int) -> Callable:
        def evaluate(u, v):
            Lambda = frame_arrays(s, u, v).Lambda
            rho = null_vectors(s.b_field(u, v), case, sign)[index]
            return _push(Lambda, rho)
        return evaluate

    provenance = {"construction": "factorization", "case": case, "chart": chart.to_dict()}
    logger.debug(f"asymptotic fields at {tuple(p)}: case {case} on {chart.to_dict()}")
    return (
        DirectionField(FieldKind.ASYMPTOTIC_1, make(0), {**provenance, "branch": 1}, chart=chart),
        DirectionField(FieldKind.ASYMPTOTIC_2, make(1), {**provenance, "branch": 2}, chart=chart),
    )


def asymptotic_fields_front_K(s: FrontalSurface) -> Tuple[DirectionField, DirectionField]:
    """Constant fields (-1, sqrt(-c)) and (1, sqrt(-c)) of a wave-mode extendable-K surface"""
    if s.provenance.kind != "extendable-K-wave":
        raise WrongGeneratorKind(f"constant asymptotic fields need an extendable-K-wave surface, got {s.provenance.kind}")
    k = float(np.sqrt(-s.provenance.constants["c"]))
    first = np.array([-1.0, k])
    second = np.array([1.0, k])
    provenance = {"construction": "wave", "c": s.provenance.constants["c"]}
    return (
        DirectionField(FieldKind.ASYMPTOTIC_1, lambda u, v: first, {**provenance, "branch": 1}),
        DirectionField(FieldKind.ASYMPTOTIC_2, lambda u, v: second, {**provenance, "branch": 2}),
    )


# --- curvature lines ------------------------------------------------------

def _extension(s: FrontalSurface, u, v) -> Tuple[np.ndarray, np.ndarray]:
    """(W, Lambda) at the given points"""
    a = frame_arrays(s, u, v)
    return extension_matrix(s.b_field(u, v), a.I_omega), a.Lambda


def _eigenvalue(W: np.ndarray, branch: float) -> float:
    half_trace = 0.5 * (W[0, 0] + W[1, 1])
    disc = half_trace * half_trace - det2(W)
    return float(half_trace + branch * np.sqrt(max(disc, 0.0)))


def kernel_direction(M: np.ndarray) -> np.ndarray:
    """Kernel of a singular 2x2 matrix: its larger-norm row rotated by P"""
    row = M[0] if np.linalg.norm(M[0]) >= np.linalg.norm(M[1]) else M[1]
    return P @ row


def curvature_line_fields(s: FrontalSurface, p: Point) -> Tuple[DirectionField, DirectionField]:
    """Gaussian line-of-curvature fields on a chart about p

    Field 1 follows rho_+, field 2 rho_-. Each eta is oriented against its
    value at p, which fixes the sign on an umbilic-free chart.

    Raises:
        NotExtendable: no analytic B field
        UmbilicChart: (tr W / 2)^2 - det W <= TAU_DISC on the chart
    """
    _require_b_field(s)
    chart = _chart(s, p, config.CHART_HALF_WIDTH)
    U, V = _chart_samples(chart)
    W, _ = _extension(s, U, V)
    half_trace = 0.5 * np.trace(W, axis1=-2, axis2=-1)
    disc = half_trace * half_trace - det2(W)
    if np.min(disc) <= config.TAU_DISC:
        worst = int(np.argmin(disc))
        raise UmbilicChart(
            f"extended principal curvatures coincide near ({U[worst]:.6g}, {V[worst]:.6g}): "
            f"discriminant {disc[worst]:.3e}"
        )

    def eta(W_point: np.ndarray, branch: float) -> np.ndarray:
        rho = _eigenvalue(W_point, branch)
        return kernel_direction(W_point.T - rho * np.eye(2))

    W0, _ = _extension(s, float(p[0]), float(p[1]))
    references = {1.0: eta(W0, 1.0), -1.0: eta(W0, -1.0)}

    def make(branch: float):
        reference = references[branch]

        def evaluate(u, v):
            W_point, Lambda = _extension(s, u, v)
            e = eta(W_point, branch)
            if e @ reference < 0:
                e = -e
            return _push(Lambda, e)

        def eigenvalue(u, v):
            W_point, _ = _extension(s, u, v)
            return _eigenvalue(W_point, branch)

        return evaluate, eigenvalue

    (ev1, rho1), (ev2, rho2) = make(1.0), make(-1.0)
    provenance = {"construction": "eigen", "chart": chart.to_dict()}
    return (
        DirectionField(FieldKind.CURVATURE_LINE_1, ev1, {**provenance, "branch": "rho+"}, rho1, chart),
        DirectionField(FieldKind.CURVATURE_LINE_2, ev2, {**provenance, "branch": "rho-"}, rho2, chart),
    )
