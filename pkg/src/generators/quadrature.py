"""
Adaptive Gauss-Kronrod (7/15) quadrature for array-valued integrands.

The integrand receives all 15 nodes of a subinterval at once and returns an
array whose first axis runs over the nodes; trailing axes (jet coefficients,
batches of points) are integrated simultaneously and share one error
estimate (the maximum over components).
"""
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from src.errors import ToleranceNotMet
from src.utils.config import config
from src.utils.logger import setup_logger

logger = setup_logger("frontal-lab.quadrature")

# Kronrod nodes on [-1, 1] (positive half, descending) and weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-node layout: -x_0 .. -x_6, 0, x_6 .. x_0
NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
GAUSS_WEIGHTS = np.zeros(15)
for _k, _w in zip((1, 3, 5), _WG[:3]):
    GAUSS_WEIGHTS[_k] = _w
    GAUSS_WEIGHTS[14 - _k] = _w
GAUSS_WEIGHTS[7] = _WG[3]

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass
class QuadratureResult:
    """Value, absolute error estimate and number of accepted subintervals"""
    value: Union[float, np.ndarray]
    error: float
    subintervals: int

    def to_dict(self) -> dict:
        return {
            "value": np.asarray(self.value).tolist(),
            "error": self.error,
            "subintervals": self.subintervals,
        }


def _contract(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.tensordot(weights, values, axes=(0, 0))


def gauss_kronrod_15(f: Integrand, a: float, b: float):
    """One panel: (Kronrod estimate, |K15 - G7| as error estimate)"""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    values = np.asarray(f(mid + half * NODES), dtype=float)
    if values.shape[:1] != (15,):
        raise ValueError(f"integrand must return an array with 15 rows, got shape {values.shape}")
    kronrod = half * _contract(KRONROD_WEIGHTS, values)
    gauss = half * _contract(GAUSS_WEIGHTS, values)
    if not np.all(np.isfinite(kronrod)):
        raise ToleranceNotMet((a, b), float("inf"), 0.0)
    return kronrod, float(np.max(np.abs(kronrod - gauss), initial=0.0))


def integrate_1d(
    f: Integrand,
    a: float,
    b: float,
    tol: float = None,
    max_depth: int = None,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of f over [a, b]

    Intervals are bisected until each panel's error is below its share of
    ``tol`` (proportional to its length).

    Args:
        f: Vectorized integrand, nodes (15,) -> values (15, ...)
        a: Lower limit
        b: Upper limit, b >= a
        tol: Absolute tolerance (default config.QUAD_TOL)
        max_depth: Bisection depth limit (default config.QUAD_MAX_DEPTH)

    Returns:
        QuadratureResult

    Raises:
        ToleranceNotMet: a panel still fails at the depth limit
    """
    tol = config.QUAD_TOL if tol is None else tol
    max_depth = config.QUAD_MAX_DEPTH if max_depth is None else max_depth
    if b < a:
        raise ValueError(f"integration limits reversed: [{a}, {b}]")
    if b == a:
        probe = np.asarray(f(np.full(15, float(a))), dtype=float)
        return QuadratureResult(np.zeros(probe.shape[1:]) if probe.ndim > 1 else 0.0, 0.0, 0)

    length = b - a
    total = None
    total_error = 0.0
    accepted = 0
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        value, error = gauss_kronrod_15(f, lo, hi)
        share = tol * (hi - lo) / length
        if error <= share or error <= 1e-15 * np.max(np.abs(value), initial=0.0):
            total = value if total is None else total + value
            total_error += error
            accepted += 1
            continue
        if depth >= max_depth:
            raise ToleranceNotMet((lo, hi), error, share)
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))

    if accepted > 8:
        logger.debug(f"quadrature on [{a:.4g}, {b:.4g}] used {accepted} panels")
    if np.ndim(total) == 0:
        total = float(total)
    return QuadratureResult(total, total_error, accepted)
