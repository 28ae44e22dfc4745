"""
Singular set extraction, singularity classification and the
parallel-smoothability test
"""
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from src.errors import NotProperFrontal, PreconditionFailed
from src.models import FrontType, Point, SingularityReport, SmoothabilityVerdict
from src.utils.config import config
from src.utils.logger import setup_logger

from .invariants import det2, frame_arrays, invariant_frame, lambda_grid, lambda_jet
from .surface import FrontalSurface

logger = setup_logger("frontal-lab.singularities")

# Corners of a cell: 0 (i, j), 1 (i+1, j), 2 (i+1, j+1), 3 (i, j+1).
# Index bits are corner 0 (high) .. corner 3 (low), set where the field is > 0.
# Ambiguous saddle cases carry both resolutions, picked by the center sample.
MARCHING_SQUARES_TABLE = [
    (False, []),  # 0000
    (False, [((0, 3), (2, 3))]),  # 0001
    (False, [((1, 2), (2, 3))]),  # 0010
    (False, [((0, 3), (1, 2))]),  # 0011
    (False, [((0, 1), (1, 2))]),  # 0100
    (True, ([((0, 1), (1, 2)), ((0, 3), (2, 3))], [((0, 1), (0, 3)), ((1, 2), (2, 3))])),  # 0101
    (False, [((0, 1), (2, 3))]),  # 0110
    (False, [((0, 1), (0, 3))]),  # 0111
    (False, [((0, 1), (0, 3))]),  # 1000
    (False, [((0, 1), (2, 3))]),  # 1001
    (True, ([((0, 1), (0, 3)), ((1, 2), (2, 3))], [((0, 1), (1, 2)), ((0, 3), (2, 3))])),  # 1010
    (False, [((0, 1), (1, 2))]),  # 1011
    (False, [((0, 3), (1, 2))]),  # 1100
    (False, [((1, 2), (2, 3))]),  # 1101
    (False, [((0, 3), (2, 3))]),  # 1110
    (False, []),  # 1111
]

_CORNERS = ((0, 0), (1, 0), (1, 1), (0, 1))

Polyline = np.ndarray  # rows (u, v)
FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _contour_segments(
    us: np.ndarray,
    vs: np.ndarray,
    F: np.ndarray,
    center: FieldFn,
    keep: Optional[np.ndarray] = None,
) -> List[Tuple[Tuple, Tuple]]:
    """Marching squares on grid values F; segments as pairs of grid edges

    An edge is ((i0, j0), (i1, j1)) with the nonpositive endpoint first.
    ``keep`` masks the cells that may contribute.
    """
    n, m = F.shape
    positive = F > 0
    codes = (
        positive[:-1, :-1].astype(int) * 8
        + positive[1:, :-1].astype(int) * 4
        + positive[1:, 1:].astype(int) * 2
        + positive[:-1, 1:].astype(int)
    )
    active = (codes != 0) & (codes != 15)
    if keep is not None:
        active &= keep
    cells = np.argwhere(active)
    ambiguous = [(i, j) for i, j in cells if codes[i, j] in (5, 10)]
    center_positive = {}
    if ambiguous:
        cu = np.array([0.5 * (us[i] + us[i + 1]) for i, _ in ambiguous])
        cv = np.array([0.5 * (vs[j] + vs[j + 1]) for _, j in ambiguous])
        values = center(cu, cv)
        center_positive = {cell: bool(val > 0) for cell, val in zip(ambiguous, values)}

    segments = []
    for i, j in cells:
        i, j = int(i), int(j)
        sample_center, edges = MARCHING_SQUARES_TABLE[codes[i, j]]
        if sample_center:
            edges = edges[int(center_positive[(i, j)])]
        for a, b in edges:
            segments.append((_grid_edge(i, j, a, positive), _grid_edge(i, j, b, positive)))
    return segments


def _grid_edge(i: int, j: int, corners: Tuple[int, int], positive: np.ndarray) -> Tuple:
    p = (i + _CORNERS[corners[0]][0], j + _CORNERS[corners[0]][1])
    q = (i + _CORNERS[corners[1]][0], j + _CORNERS[corners[1]][1])
    return (q, p) if positive[p] else (p, q)


def _refine_zeros(
    field: FieldFn,
    lo: np.ndarray,
    hi: np.ndarray,
    tol: float,
) -> np.ndarray:
    """Vectorized bisection; lo[k] has field <= 0 and hi[k] field > 0"""
    lo = lo.copy()
    hi = hi.copy()
    result = 0.5 * (lo + hi)
    f_lo = field(lo[:, 0], lo[:, 1])
    f_hi = field(hi[:, 0], hi[:, 1])
    done_hi = np.abs(f_hi) < tol
    result[done_hi] = hi[done_hi]
    done = np.abs(f_lo) < tol
    result[done] = lo[done]
    done |= done_hi
    active = ~done
    for _ in range(config.SINGULAR_REFINE_STEPS):
        if not np.any(active):
            break
        idx = np.flatnonzero(active)
        mid = 0.5 * (lo[idx] + hi[idx])
        fm = field(mid[:, 0], mid[:, 1])
        hit = np.abs(fm) < tol
        result[idx] = mid
        active[idx[hit]] = False
        below = ~hit & (fm <= 0)
        above = ~hit & (fm > 0)
        lo[idx[below]] = mid[below]
        hi[idx[above]] = mid[above]
    if np.any(active):
        logger.debug(f"{int(np.sum(active))} singular-set crossings stopped at the bisection limit")
    return result


def _chain(segments: List[Tuple[Tuple[float, float], Tuple[float, float]]]) -> List[Polyline]:
    """Join segments sharing endpoints into polylines"""
    def key(p):
        return (round(p[0], 12), round(p[1], 12))

    points = {}
    adjacency: Dict[Tuple, List[Tuple]] = {}
    edges = set()
    for a, b in segments:
        ka, kb = key(a), key(b)
        if ka == kb or (ka, kb) in edges or (kb, ka) in edges:
            continue
        edges.add((ka, kb))
        points[ka] = a
        points[kb] = b
        adjacency.setdefault(ka, []).append(kb)
        adjacency.setdefault(kb, []).append(ka)

    used = set()

    def walk(start, nxt):
        path = [start]
        prev, cur = start, nxt
        while True:
            used.add(frozenset((prev, cur)))
            path.append(cur)
            if len(adjacency[cur]) != 2:
                return path
            following = [k for k in adjacency[cur] if frozenset((cur, k)) not in used]
            if not following:
                return path
            prev, cur = cur, following[0]

    polylines = []
    for start in sorted(adjacency):
        if len(adjacency[start]) == 2:
            continue
        for nxt in sorted(adjacency[start]):
            if frozenset((start, nxt)) not in used:
                polylines.append(walk(start, nxt))
    for start in sorted(adjacency):
        for nxt in sorted(adjacency[start]):
            if frozenset((start, nxt)) not in used:
                polylines.append(walk(start, nxt))
    return [np.array([points[k] for k in path], dtype=float) for path in polylines]


def _edge_points(edges: List[Tuple], us: np.ndarray, vs: np.ndarray):
    lo = np.array([(us[p[0]], vs[p[1]]) for p, _ in edges], dtype=float)
    hi = np.array([(us[q[0]], vs[q[1]]) for _, q in edges], dtype=float)
    return lo, hi


def singular_set(s: FrontalSurface, n: int = None, m: int = None) -> List[Polyline]:
    """Zero set of lambda_Omega as polylines in parameter space

    Sign changes of lambda_Omega are found by marching squares and refined
    by bisection. Singular curves along which lambda_Omega keeps its sign
    are found as zero lines of d(lambda)/du or d(lambda)/dv, kept only in
    cells without a sign change and only where |lambda_Omega| is below
    TOUCH_LAMBDA at both ends.

    Args:
        s: Frontal surface
        n: Grid samples along u (>= 16, default config.DEFAULT_GRID)
        m: Grid samples along v (>= 16, default config.DEFAULT_GRID)

    Returns:
        List of polylines, each an array of (u, v) rows
    """
    n = n or config.DEFAULT_GRID
    m = m or config.DEFAULT_GRID
    if n < 16 or m < 16:
        raise ValueError(f"singular-set grid must be at least 16x16, got {n}x{m}")
    us, vs, lam = lambda_grid(s, n, m, order=1)
    L = np.broadcast_to(lam.value, (n, m))

    def lam_values(u, v):
        return np.broadcast_to(lambda_jet(s, u, v, 0).value, np.shape(u))

    segments = []
    pairs = _contour_segments(us, vs, L, lam_values)
    if pairs:
        unique = sorted({e for pair in pairs for e in pair})
        lo, hi = _edge_points(unique, us, vs)
        refined = _refine_zeros(lam_values, lo, hi, config.TAU_SING)
        crossing = {e: tuple(p) for e, p in zip(unique, refined)}
        segments = [(crossing[a], crossing[b]) for a, b in pairs]

    positive = L > 0
    no_change = (
        (positive[:-1, :-1] == positive[1:, :-1])
        & (positive[:-1, :-1] == positive[1:, 1:])
        & (positive[:-1, :-1] == positive[:-1, 1:])
    )
    for name in ("u", "v"):
        G = np.broadcast_to(lam.du if name == "u" else lam.dv, (n, m))

        def grad_values(u, v, name=name):
            jet = lambda_jet(s, u, v, 1)
            return np.broadcast_to(jet.du if name == "u" else jet.dv, np.shape(u))

        pairs = _contour_segments(us, vs, G, grad_values, keep=no_change)
        if not pairs:
            continue
        unique = sorted({e for pair in pairs for e in pair})
        lo, hi = _edge_points(unique, us, vs)
        refined = _refine_zeros(grad_values, lo, hi, config.TAU_SING)
        touch = dict(zip(unique, refined))
        ends = np.array([touch[e] for pair in pairs for e in pair])
        small = np.abs(lam_values(ends[:, 0], ends[:, 1])) <= config.TOUCH_LAMBDA
        for k, (a, b) in enumerate(pairs):
            if small[2 * k] and small[2 * k + 1]:
                segments.append((tuple(touch[a]), tuple(touch[b])))

    polylines = _chain(segments)
    logger.debug(f"singular set on {n}x{m} grid: {len(polylines)} polylines")
    return polylines


def singular_points(polylines: List[Polyline], count: int) -> List[Point]:
    """Up to ``count`` vertices spread evenly over all polylines"""
    if not polylines:
        return []
    vertices = np.concatenate(polylines, axis=0)
    picks = np.unique(np.linspace(0, len(vertices) - 1, min(count, len(vertices))).round().astype(int))
    return [(float(vertices[k, 0]), float(vertices[k, 1])) for k in picks]


def check_proper(s: FrontalSurface, grid: int = None) -> None:
    """Reject a frontal whose singular set has interior

    Raises:
        NotProperFrontal: some grid cell has all four corners and its
            center singular
    """
    grid = grid or config.PROPER_GRID
    us, vs, lam = lambda_grid(s, grid, grid)
    singular = np.abs(np.broadcast_to(lam.value, (grid, grid))) <= config.TAU_SING
    corners = singular[:-1, :-1] & singular[1:, :-1] & singular[1:, 1:] & singular[:-1, 1:]
    cells = np.argwhere(corners)
    if len(cells) == 0:
        return
    cu = 0.5 * (us[cells[:, 0]] + us[cells[:, 0] + 1])
    cv = 0.5 * (vs[cells[:, 1]] + vs[cells[:, 1] + 1])
    centers = np.abs(np.broadcast_to(lambda_jet(s, cu, cv, 0).value, cu.shape)) <= config.TAU_SING
    if np.any(centers):
        k = int(np.flatnonzero(centers)[0])
        cell = (float(cu[k]), float(cv[k]))
        raise NotProperFrontal(f"singular set has interior: grid cell centered at {cell} is singular", cell)


def classify_singularity(s: FrontalSurface, p: Point) -> SingularityReport:
    """Regular point, front singularity of rank 1 or 0, or non-front singularity"""
    f = invariant_frame(s, p)
    sigma = np.linalg.svd(f.Dx, compute_uv=False)
    rank = int(np.sum(sigma > config.TAU_SING))
    singular = abs(f.lam) <= config.TAU_SING
    if not singular:
        front_type = FrontType.REGULAR
    elif rank == 1 and abs(f.H_omega) > config.TAU_FRONT:
        front_type = FrontType.FRONT_RANK1
    elif rank == 0 and abs(f.H_omega) <= config.TAU_FRONT and abs(f.K_omega) > config.TAU_FRONT:
        front_type = FrontType.FRONT_RANK0
    else:
        front_type = FrontType.NON_FRONT
    return SingularityReport(
        point=f.point,
        rank=rank,
        is_singular=singular,
        front_type=front_type,
        H_omega=f.H_omega,
        K_omega=f.K_omega,
        lam=f.lam,
    )


def parallelly_smoothable_test(
    s: FrontalSurface,
    p: Point,
    epsilon: float,
    grid: int = 9,
    radius: Optional[float] = None,
) -> SmoothabilityVerdict:
    """Whether all parallels x + l n on one side of l = 0 are immersions near p

    Offsets l = +-epsilon 2^-k (k < SMOOTHABLE_SCALES) are checked on a
    grid x grid neighbourhood of p (half-width ``radius``, default
    2 epsilon). A side fails when the smallest singular value of
    Dx + l Dn drops to RANK_TOL, or when det(Lambda^T + l mu^T) changes
    sign or vanishes over the neighbourhood.

    Raises:
        PreconditionFailed: p is not a singular point
    """
    lam_p = float(lambda_jet(s, float(p[0]), float(p[1]), 0).value)
    if abs(lam_p) > config.TAU_SING:
        raise PreconditionFailed(f"parallel smoothability needs a singular point; lambda{tuple(p)} = {lam_p:.3e}")
    radius = 2.0 * epsilon if radius is None else radius
    u = np.linspace(max(p[0] - radius, s.domain.u0), min(p[0] + radius, s.domain.u1), grid)
    v = np.linspace(max(p[1] - radius, s.domain.v0), min(p[1] + radius, s.domain.v1), grid)
    U, V = np.meshgrid(u, v, indexing="ij")
    a = frame_arrays(s, U.ravel(), V.ravel())

    min_sigma = {}
    sign_change = {}
    for side, sign in (("positive", 1.0), ("negative", -1.0)):
        worst = np.inf
        changed = False
        for k in range(config.SMOOTHABLE_SCALES):
            l = sign * epsilon * 2.0 ** (-k)
            sigma = np.linalg.svd(a.Dx + l * a.Dn, compute_uv=False)[..., -1]
            worst = min(worst, float(sigma.min()))
            d = det2(np.swapaxes(a.Lambda, -1, -2) + l * np.swapaxes(a.mu, -1, -2))
            if not (np.all(d > 0) or np.all(d < 0)):
                changed = True
        min_sigma[side] = worst
        sign_change[side] = changed

    passing = [side for side in ("positive", "negative")
               if min_sigma[side] > config.RANK_TOL and not sign_change[side]]
    side = passing[0] if passing else None
    logger.debug(f"smoothability at {tuple(p)}: min sigma {min_sigma}, sign change {sign_change}")
    return SmoothabilityVerdict(
        point=(float(p[0]), float(p[1])),
        epsilon=float(epsilon),
        smoothable=side is not None,
        side=side,
        min_singular_value=min_sigma,
        sign_change=sign_change,
    )
