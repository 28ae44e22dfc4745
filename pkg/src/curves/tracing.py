"""
Fixed-step RK4 integration of direction fields in parameter space
"""
from typing import Optional

import numpy as np

from src.errors import NumericalError
from src.models import Domain, Point, TerminationReason, TracedCurve
from src.utils.config import config
from src.utils.logger import setup_logger

from .fields import DirectionField

logger = setup_logger("frontal-lab.curves")


def trace_flow(
    f: DirectionField,
    q: Point,
    h: Optional[float] = None,
    n_steps: int = 1000,
    domain: Optional[Domain] = None,
) -> TracedCurve:
    """Integrate gamma' = f(gamma) from q with classic RK4

    The first vertex is exactly q. Tracing stops when the field norm drops
    below FIELD_DEGENERACY, when a stage or step would leave the domain
    (that point is not recorded), when the field fails to evaluate
    (numerical-failure), or after n_steps steps.

    Args:
        f: Direction field
        q: Start point
        h: Step size (default RK4_STEP)
        n_steps: Maximum number of steps
        domain: Rectangle to stay in (default: the field's chart)

    Returns:
        TracedCurve with per-vertex field values as velocities
    """
    h = config.RK4_STEP if h is None else float(h)
    domain = domain or f.chart
    y = np.array([float(q[0]), float(q[1])])
    if domain is not None and not domain.contains(tuple(y)):
        raise ValueError(f"trace start {tuple(y)} lies outside {domain.to_dict()}")

    def inside(p: np.ndarray) -> bool:
        return domain is None or domain.contains(tuple(p))

    vertices = [(0.0, y[0], y[1])]
    velocities = []
    reason = TerminationReason.STEPS_EXHAUSTED
    k1 = f(*y)
    for step in range(n_steps):
        velocities.append(k1)
        if np.linalg.norm(k1) < config.FIELD_DEGENERACY:
            reason = TerminationReason.FIELD_DEGENERATE
            break
        try:
            stage = y + 0.5 * h * k1
            if not inside(stage):
                reason = TerminationReason.LEFT_DOMAIN
                break
            k2 = f(*stage)
            stage = y + 0.5 * h * k2
            if not inside(stage):
                reason = TerminationReason.LEFT_DOMAIN
                break
            k3 = f(*stage)
            stage = y + h * k3
            if not inside(stage):
                reason = TerminationReason.LEFT_DOMAIN
                break
            k4 = f(*stage)
            nxt = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            if not inside(nxt):
                reason = TerminationReason.LEFT_DOMAIN
                break
            k_next = f(*nxt)
        except NumericalError as e:
            logger.warning(f"{f.kind.value} trace stopped near {tuple(y)}: {e}")
            reason = TerminationReason.NUMERICAL_FAILURE
            break
        y = nxt
        vertices.append(((step + 1) * h, y[0], y[1]))
        k1 = k_next
    else:
        velocities.append(k1)

    logger.debug(f"{f.kind.value} trace from {tuple(q)}: {len(vertices)} vertices, {reason.value}")
    return _curve(f, vertices, velocities, reason)


def _curve(f: DirectionField, vertices, velocities, reason: TerminationReason) -> TracedCurve:
    return TracedCurve(
        kind=f.kind,
        vertices=np.array(vertices, dtype=float),
        velocities=np.array(velocities[:len(vertices)], dtype=float),
        termination=reason,
    )
