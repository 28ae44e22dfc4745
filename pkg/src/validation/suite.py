"""
Invariant suite: named identities checked numerically on one surface.

Each entry reports the largest residual it found and the tolerance it is
held to. Generic entries apply to every surface; the rest depend on the
generator that built it.
"""
from typing import Callable, List, Optional

import numpy as np

from src.errors import ComplexEigen, UmbilicLike
from src.exprlang import eval_jet, parse
from src.frontal.invariants import (
    FrameArrays,
    adj,
    classical_frame,
    frame_arrays,
    invariant_frame,
    normal_curvature_classical,
    principal_directions,
    relative_normal_curvature,
)
from src.frontal.surface import FrontalSurface, rebased
from src.jets import seed_pair
from src.models import IdentityCheck
from src.utils.config import config
from src.utils.logger import setup_logger

logger = setup_logger("frontal-lab.validation")

DECOMPOSITION_X_TOL = 1e-9
DECOMPOSITION_N_TOL = 1e-8
SYMMETRY_TOL = 1e-9
SCALING_TOL = 1e-8
BASIS_CHANGE_TOL = 1e-9
EIGEN_TOL = 1e-9
DIRECTION_TOL = 1e-7
PDE_TOL = 1e-10
EXTENDED_K_TOL = 1e-6
FLAT_TOL = 1e-8

# constant basis change used by the change-of-basis entry
BASIS_CHANGE = np.array([[2.0, 1.0], [0.5, 1.0]])


def _T(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2)


def _max(values) -> float:
    values = np.asarray(values, dtype=float)
    return float(np.max(values)) if values.size else 0.0


def _grid_frames(s: FrontalSurface, grid: int):
    us, vs = s.domain.grid(grid, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    return U, V, frame_arrays(s, U, V)


def regular_points(s: FrontalSurface, count: int, rng: np.random.Generator) -> np.ndarray:
    """Up to count random points with |lambda_Omega| > REGULAR_LAMBDA"""
    d = s.domain
    candidates = np.column_stack([
        rng.uniform(d.u0, d.u1, 8 * count),
        rng.uniform(d.v0, d.v1, 8 * count),
    ])
    lam = frame_arrays(s, candidates[:, 0], candidates[:, 1]).lam
    points = candidates[np.abs(lam) > config.REGULAR_LAMBDA][:count]
    if len(points) < count:
        logger.warning(f"only {len(points)} of {count} sample points are regular")
    return points


# --- generic identities ---------------------------------------------------

def _decomposition(a: FrameArrays, samples: int) -> List[IdentityCheck]:
    dx = np.abs(a.Dx - a.omega @ _T(a.Lambda))
    dn = np.abs(a.Dn - a.omega @ _T(a.mu))
    return [
        IdentityCheck("decomposition-x", _max(dx), DECOMPOSITION_X_TOL, samples, "max |Dx - Omega Lambda^T|"),
        IdentityCheck("decomposition-n", _max(dn), DECOMPOSITION_N_TOL, samples, "max |Dn - Omega mu^T|"),
    ]


def _symmetry(a: FrameArrays, samples: int) -> IdentityCheck:
    S = a.relative_shape
    return IdentityCheck("symmetry", _max(np.abs(S - _T(S))), SYMMETRY_TOL, samples,
                         "max |II_Omega adj(Lambda^T) - transpose|")


def _scaling(s: FrontalSurface, points: np.ndarray) -> List[IdentityCheck]:
    k_res, h_res = [], []
    for u, v in points:
        a = frame_arrays(s, u, v)
        c = classical_frame(s, (u, v))
        scale = 1.0 + abs(float(a.K_omega))
        k_res.append(abs(float(a.K_omega) - float(a.lam) * c.K) / scale)
        h_res.append(abs(float(a.H_omega) - float(a.lam) * c.H) / scale)
    n = len(points)
    return [
        IdentityCheck("scaling-K", _max(k_res), SCALING_TOL, n, "|K_Omega - lambda K| / (1 + |K_Omega|)"),
        IdentityCheck("scaling-H", _max(h_res), SCALING_TOL, n, "|H_Omega - lambda H| / (1 + |K_Omega|)"),
    ]


def _normal_curvature_scaling(s: FrontalSurface, points: np.ndarray, rng: np.random.Generator) -> IdentityCheck:
    res = []
    for u, v in points:
        f = invariant_frame(s, (u, v))
        c = classical_frame(s, (u, v))
        zeta = rng.standard_normal(2)
        relative = relative_normal_curvature(f, f.Lambda.T @ zeta)
        classical = normal_curvature_classical(c, zeta)
        res.append(abs(relative - f.lam * classical) / (1.0 + abs(relative)))
    return IdentityCheck("normal-curvature-scaling", _max(res), SCALING_TOL, len(points),
                         "|k^Omega(Lambda^T zeta) - lambda k(zeta)|")


def _basis_change(s: FrontalSurface, a: FrameArrays, U, V) -> IdentityCheck:
    det = float(np.linalg.det(BASIS_CHANGE))
    b = frame_arrays(rebased(s, BASIS_CHANGE), U, V)
    res = [
        np.abs(b.lam * det - a.lam) / (1.0 + np.abs(a.lam)),
        np.abs(b.K_omega * det - a.K_omega) / (1.0 + np.abs(a.K_omega)),
        np.abs(b.H_omega * det - a.H_omega) / (1.0 + np.abs(a.H_omega)),
    ]
    return IdentityCheck("change-of-basis", _max(np.concatenate([r.ravel() for r in res])), BASIS_CHANGE_TOL,
                         U.size, "lambda, K_Omega, H_Omega scale by 1/det B under Omega B")


def _direction_change(s: FrontalSurface, points: np.ndarray) -> IdentityCheck:
    """Under Omega B the direction of the larger relative curvature becomes B^-1 w (det B > 0)"""
    rebased_s = rebased(s, BASIS_CHANGE)
    B_inv = np.linalg.inv(BASIS_CHANGE)
    res = []
    for u, v in points:
        try:
            _, w, _, _ = principal_directions(invariant_frame(s, (u, v)))
            _, w_hat, _, _ = principal_directions(invariant_frame(rebased_s, (u, v)))
        except (ComplexEigen, UmbilicLike):
            continue
        expected = B_inv @ w
        sine = abs(w_hat[0] * expected[1] - w_hat[1] * expected[0])
        res.append(sine / (np.linalg.norm(w_hat) * np.linalg.norm(expected)))
    return IdentityCheck("change-of-basis-direction", _max(res), DIRECTION_TOL, len(res),
                         "|sin angle(w_hat, B^-1 w)| for the larger relative curvature")


def _principal_directions(s: FrontalSurface, points: np.ndarray) -> IdentityCheck:
    res = []
    for u, v in points:
        f = invariant_frame(s, (u, v))
        try:
            w1, w2, k1, k2 = principal_directions(f)
        except (ComplexEigen, UmbilicLike):
            continue
        S = f.second_form_omega @ adj(f.Lambda.T)
        for w, k in ((w1, k1), (w2, k2)):
            r = np.linalg.norm(S @ w - k * f.first_form_omega @ w)
            res.append(r / (1.0 + abs(k)))
    return IdentityCheck("principal-directions", _max(res), EIGEN_TOL, len(res) // 2,
                         "|II_Omega adj(Lambda^T) w - k I_Omega w|")


# --- generator-specific identities -----------------------------------------

def _b_field_checks(s: FrontalSurface, a: FrameArrays, U, V) -> List[IdentityCheck]:
    LII = a.Lambda @ a.II_omega
    C = s.b_field(U, V)
    return [
        IdentityCheck("compatibility", _max(np.abs(LII - _T(LII))), SYMMETRY_TOL, U.size,
                      "max |Lambda II_Omega - transpose|"),
        IdentityCheck("b-field", _max(np.abs(a.II_omega - C @ _T(a.Lambda))), config.B_FIELD_TOL, U.size,
                      "max |II_Omega - C Lambda^T|"),
    ]


def _pde_residual(s: FrontalSurface, U, V) -> IdentityCheck:
    h = parse(s.provenance.parameters["h"])
    c = s.provenance.constants["c"]
    ju, jv = seed_pair(U, V, 2)
    jet = eval_jet(h, {"u": ju, "v": jv})
    residual = _max(np.abs(jet.duu + c * jet.dvv))
    return IdentityCheck("pde", residual, PDE_TOL, U.size, "max |h_uu + c h_vv|")


def _classical_agreement(
    s: FrontalSurface,
    points: np.ndarray,
    name: str,
    target: Callable[[float, float], float],
    tol: float,
    detail: str,
) -> IdentityCheck:
    res = []
    for u, v in points:
        K = classical_frame(s, (u, v)).K
        res.append(abs(K - float(target(u, v))) / (1.0 + abs(K)))
    return IdentityCheck(name, _max(res), tol, len(points), detail)


def run_invariant_suite(
    s: FrontalSurface,
    grid: Optional[int] = None,
    samples: int = 100,
    seed: int = 0,
) -> List[IdentityCheck]:
    """Run every identity that applies to s

    Args:
        s: Surface under test
        grid: Grid size per axis for the grid identities (default DEFAULT_GRID)
        samples: Number of random regular points for the pointwise identities
        seed: Seed of the point and direction samples

    Returns:
        IdentityCheck list, generic entries first
    """
    grid = grid or config.DEFAULT_GRID
    rng = np.random.default_rng(seed)
    U, V, a = _grid_frames(s, grid)
    points = regular_points(s, samples, rng)

    checks = _decomposition(a, U.size)
    checks.append(_symmetry(a, U.size))
    checks.extend(_scaling(s, points))
    checks.append(_normal_curvature_scaling(s, points, rng))
    checks.append(_basis_change(s, a, U, V))
    checks.append(_direction_change(s, points))
    checks.append(_principal_directions(s, points))

    kind = s.provenance.kind
    if s.b_field is not None:
        checks.extend(_b_field_checks(s, a, U, V))
    if kind.startswith("extendable-K"):
        checks.append(_pde_residual(s, U, V))
        checks.append(_classical_agreement(
            s, points, "extended-K", s.extended_gaussian, EXTENDED_K_TOL, "|K - c (1 + h_u^2 + v^2)^-2|"
        ))
    if kind == "vanishing-K":
        checks.append(_classical_agreement(s, points, "flat", lambda u, v: 0.0, FLAT_TOL, "|K|"))

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"{kind} surface failed {len(failed)} identities: {', '.join(failed)}")
    else:
        logger.debug(f"{kind} surface passed all {len(checks)} identities")
    return checks
