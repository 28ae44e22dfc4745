"""
Jets of integral-defined coordinates.

For J(u, v) = int_0^v F(u, t) dt the pure u-derivatives are integrals of the
integrand's u-derivatives (taken from jet-valued quadrature), and every
derivative involving v is read off the integrand itself. The same holds with
the roles of u and v swapped. Coordinates whose gradient is known in closed
form are assembled with ``from_gradient`` so that only the value slot carries
quadrature error.
"""
from typing import Callable, Optional

import numpy as np

from src.exprlang import Expr, eval_jet
from src.jets import Jet2, seed_pair

from .quadrature import integrate_1d

# (u, t, order) -> jet of the integrand, seeded in both arguments
JetIntegrand = Callable[[np.ndarray, np.ndarray, int], Jet2]


def expr_jet(e: Expr, u, v, order: int) -> Jet2:
    ju, jv = seed_pair(u, v, order)
    return eval_jet(e, {"u": ju, "v": jv})


def _broadcast(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    shape = np.broadcast_shapes(u.shape, v.shape)
    return np.broadcast_to(u, shape), np.broadcast_to(v, shape), shape


def antiderivative_v(F: JetIntegrand, u, v, order: int, tol: Optional[float] = None) -> Jet2:
    """Jet of J(u, v) = int_0^v F(u, t) dt"""
    u, v, shape = _broadcast(u, v)
    pad = (1,) * len(shape)

    def integrand(sigma: np.ndarray) -> np.ndarray:
        t = sigma.reshape((-1,) + pad) * v
        jet = F(np.broadcast_to(u, t.shape), t, order)
        column = np.broadcast_to(jet.taylor[:, 0], (order + 1,) + t.shape)
        return np.moveaxis(column, 1, 0) * v

    result = integrate_1d(integrand, 0.0, 1.0, tol)
    c = np.zeros((order + 1, order + 1) + shape)
    c[:, 0] = result.value
    if order >= 1:
        top = F(u, v, order - 1).taylor
        for i in range(order):
            for j in range(1, order + 1 - i):
                c[i, j] = top[i, j - 1] / j
    return Jet2(c, order)


def antiderivative_u(F: JetIntegrand, u, v, order: int, tol: Optional[float] = None) -> Jet2:
    """Jet of J(u, v) = int_0^u F(t, v) dt"""
    u, v, shape = _broadcast(u, v)
    pad = (1,) * len(shape)

    def integrand(sigma: np.ndarray) -> np.ndarray:
        t = sigma.reshape((-1,) + pad) * u
        jet = F(t, np.broadcast_to(v, t.shape), order)
        row = np.broadcast_to(jet.taylor[0, :], (order + 1,) + t.shape)
        return np.moveaxis(row, 1, 0) * u

    result = integrate_1d(integrand, 0.0, 1.0, tol)
    c = np.zeros((order + 1, order + 1) + shape)
    c[0, :] = result.value
    if order >= 1:
        top = F(u, v, order - 1).taylor
        for j in range(order):
            for i in range(1, order + 1 - j):
                c[i, j] = top[i - 1, j] / i
    return Jet2(c, order)


def integral_value_v(F: JetIntegrand, u, v, tol: Optional[float] = None) -> np.ndarray:
    return antiderivative_v(F, u, v, 0, tol).value


def integral_value_u(F: JetIntegrand, u, v, tol: Optional[float] = None) -> np.ndarray:
    return antiderivative_u(F, u, v, 0, tol).value


def from_gradient(value, cu: Jet2, cv: Jet2, order: int) -> Jet2:
    """Jet of a function from its value and the jets of its two partials"""
    if order >= 1:
        cu = cu.truncate(order - 1)
        cv = cv.truncate(order - 1)
        shape = np.broadcast_shapes(np.shape(value), cu.shape, cv.shape)
    else:
        shape = np.shape(value)
    c = np.zeros((order + 1, order + 1) + shape)
    c[0, 0] = value
    if order >= 1:
        for i in range(1, order + 1):
            for j in range(order + 1 - i):
                c[i, j] = cu.taylor[i - 1, j] / i
        for j in range(1, order + 1):
            c[0, j] = cv.taylor[0, j - 1] / j
    return Jet2(c, order)


def lift(value, order: int, shape=()) -> Jet2:
    """Constant jet broadcast to a batch shape"""
    return Jet2.constant(np.broadcast_to(np.asarray(value, dtype=float), shape), order)
