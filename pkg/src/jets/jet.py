"""
Two-variable truncated Taylor arithmetic.

A Jet2 of order K stores the Taylor coefficients c[i, j] (i + j <= K) of a
function of (u, v) around a point, i.e. the partial derivative
d^(i+j) f / du^i dv^j divided by i! j!. Coefficients may carry trailing
batch dimensions, so one Jet2 can describe the same function at many
points at once (quadrature nodes, grid rows).

Products are truncated bivariate polynomial products; smooth unary
functions are applied by composing their one-variable Taylor series with
the nilpotent part of the argument. Both are exact to the stored order.
"""
from functools import lru_cache
from math import factorial
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from src.errors import DomainError

MAX_ORDER = 3

Scalar = Union[float, int, np.ndarray]

ARITH_OPS = ("add", "sub", "mul", "div", "pow", "compose-unary")
UNARY_FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "neg")


def coefficient_count(order: int) -> int:
    return (order + 1) * (order + 2) // 2


@lru_cache(maxsize=None)
def _index_set(order: int) -> Tuple[Tuple[int, int], ...]:
    """Multi-indices (i, j) with i + j <= order, graded then by decreasing i"""
    return tuple((d - j, j) for d in range(order + 1) for j in range(d + 1))


@lru_cache(maxsize=None)
def _product_terms(order: int):
    terms = []
    for i, j in _index_set(order):
        pairs = [(p, q, i - p, j - q) for p in range(i + 1) for q in range(j + 1)]
        terms.append((i, j, pairs))
    return tuple(terms)


def _truncated_product(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    batch = np.broadcast_shapes(a.shape[2:], b.shape[2:])
    out = np.zeros((order + 1, order + 1) + batch)
    for i, j, pairs in _product_terms(order):
        acc = 0.0
        for p, q, r, s in pairs:
            acc = acc + a[p, q] * b[r, s]
        out[i, j] = acc
    return out


def _as_array(value: Scalar) -> np.ndarray:
    return np.asarray(value, dtype=float)


def _pad_batch(c: np.ndarray, rank: int) -> np.ndarray:
    """Insert unit batch axes after the coefficient axes up to ``rank`` batch dimensions"""
    missing = rank - (c.ndim - 2)
    if missing <= 0:
        return c
    return c.reshape(c.shape[:2] + (1,) * missing + c.shape[2:])


class Jet2:
    """Truncated Taylor expansion in two variables (u, v)"""

    __slots__ = ("order", "_c")

    # numpy defers to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, coefficients: np.ndarray, order: int, check: bool = True):
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"jet order must be in 0..{MAX_ORDER}, got {order}")
        c = np.asarray(coefficients, dtype=float)
        if c.shape[:2] != (order + 1, order + 1):
            raise ValueError(f"coefficient array shape {c.shape} does not match order {order}")
        if check and not np.all(np.isfinite(c)):
            raise DomainError("non-finite jet coefficient")
        self.order = order
        self._c = c

    # --- construction ---------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, order: int = 2) -> "Jet2":
        value = _as_array(value)
        c = np.zeros((order + 1, order + 1) + value.shape)
        c[0, 0] = value
        return cls(c, order)

    @classmethod
    def variable(cls, value: Scalar, name: str, order: int = 2) -> "Jet2":
        value = _as_array(value)
        c = np.zeros((order + 1, order + 1) + value.shape)
        c[0, 0] = value
        if order >= 1:
            if name == "u":
                c[1, 0] = 1.0
            elif name == "v":
                c[0, 1] = 1.0
            else:
                raise ValueError(f"unknown seed variable {name!r}")
        return cls(c, order)

    @classmethod
    def from_derivatives(cls, derivatives: dict, order: int) -> "Jet2":
        """Build from a {(i, j): partial derivative} mapping; missing entries are 0"""
        batch = np.broadcast_shapes(*(np.shape(d) for d in derivatives.values())) if derivatives else ()
        c = np.zeros((order + 1, order + 1) + batch)
        for (i, j), d in derivatives.items():
            if i + j <= order:
                c[i, j] = _as_array(d) / (factorial(i) * factorial(j))
        return cls(c, order)

    # --- accessors ------------------------------------------------------

    @property
    def taylor(self) -> np.ndarray:
        """Raw Taylor coefficient array, shape (order+1, order+1, *batch)"""
        return self._c

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._c.shape[2:]

    @property
    def value(self):
        return self._c[0, 0]

    @property
    def du(self):
        return self.derivative(1, 0)

    @property
    def dv(self):
        return self.derivative(0, 1)

    @property
    def duu(self):
        return self.derivative(2, 0)

    @property
    def duv(self):
        return self.derivative(1, 1)

    @property
    def dvv(self):
        return self.derivative(0, 2)

    def derivative(self, i: int, j: int):
        if i + j > self.order:
            raise ValueError(f"derivative ({i}, {j}) exceeds jet order {self.order}")
        return self._c[i, j] * (factorial(i) * factorial(j))

    @property
    def coeffs(self) -> Tuple:
        """Partial derivatives: value, d_u, d_v, d_uu, d_uv, d_vv, ... by total degree"""
        out = []
        for d in range(self.order + 1):
            for i in range(d, -1, -1):
                out.append(self.derivative(i, d - i))
        return tuple(out)

    def gradient(self) -> np.ndarray:
        return np.array([self.du, self.dv])

    def hessian(self) -> np.ndarray:
        return np.array([[self.duu, self.duv], [self.duv, self.dvv]])

    def __repr__(self) -> str:
        return f"Jet2(order={self.order}, coeffs={self.coeffs})"

    # --- structural operations -----------------------------------------

    def partial(self, name: str) -> "Jet2":
        """Jet of the partial derivative; one order lower"""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = self.order - 1
        c = np.zeros((k + 1, k + 1) + self.shape)
        for i, j in _index_set(k):
            if name == "u":
                c[i, j] = (i + 1) * self._c[i + 1, j]
            elif name == "v":
                c[i, j] = (j + 1) * self._c[i, j + 1]
            else:
                raise ValueError(f"unknown variable {name!r}")
        return Jet2(c, k, check=False)

    def truncate(self, order: int) -> "Jet2":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        if order == self.order:
            return self
        c = np.zeros((order + 1, order + 1) + self.shape)
        for i, j in _index_set(order):
            c[i, j] = self._c[i, j]
        return Jet2(c, order, check=False)

    def compose(self, inner_u: "Jet2", inner_v: "Jet2") -> "Jet2":
        """Evaluate this Taylor polynomial at the jets of a planar map.

        The expansion point of ``self`` must be the value of (inner_u, inner_v).
        The result has the order of the inner jets.
        """
        order = inner_u.order
        if inner_v.order != order:
            raise ValueError("inner jets must have equal orders")
        if self.order < order:
            raise ValueError(f"outer jet order {self.order} below inner order {order}")
        du = inner_u._c.copy()
        du[0, 0] = 0.0
        dv = inner_v._c.copy()
        dv[0, 0] = 0.0
        powers_u = _powers(du, order)
        powers_v = _powers(dv, order)
        batch = np.broadcast_shapes(self.shape, inner_u.shape, inner_v.shape)
        out = np.zeros((order + 1, order + 1) + batch)
        for i, j in _index_set(order):
            term = _truncated_product(powers_u[i], powers_v[j], order)
            out = out + self._c[i, j] * term
        return Jet2(out, order)

    # --- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            if other.order != self.order:
                raise ValueError(f"jet orders differ: {self.order} vs {other.order}")
            return other
        return Jet2.constant(other, self.order)

    def __add__(self, other) -> "Jet2":
        other = self._coerce(other)
        return Jet2(self._broadcast_pair(other, np.add), self.order)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet2":
        other = self._coerce(other)
        return Jet2(self._broadcast_pair(other, np.subtract), self.order)

    def __rsub__(self, other) -> "Jet2":
        return self._coerce(other) - self

    def __neg__(self) -> "Jet2":
        return Jet2(-self._c, self.order, check=False)

    def __pos__(self) -> "Jet2":
        return self

    def __mul__(self, other) -> "Jet2":
        if not isinstance(other, Jet2):
            other = _as_array(other)
            return Jet2(_pad_batch(self._c, other.ndim) * other, self.order)
        other = self._coerce(other)
        return Jet2(_truncated_product(self._c, other._c, self.order), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet2":
        if not isinstance(other, Jet2):
            other = _as_array(other)
            if np.any(other == 0):
                raise DomainError("division by zero")
            return Jet2(_pad_batch(self._c, other.ndim) / other, self.order)
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "Jet2":
        return self.reciprocal() * other

    def __pow__(self, exponent) -> "Jet2":
        if isinstance(exponent, Jet2):
            return (self._coerce(exponent) * self.log()).exp()
        p = float(exponent)
        if p.is_integer():
            return self.integer_power(int(p))
        x = self.value
        if np.any(x <= 0):
            raise DomainError(f"non-integer power {p} of a nonpositive value")
        derivs = [np.power(x, p)]
        coef = 1.0
        for k in range(1, self.order + 1):
            coef *= p - (k - 1)
            derivs.append(coef * np.power(x, p - k))
        return self._compose_series(derivs)

    def __rpow__(self, base) -> "Jet2":
        base = _as_array(base)
        if np.any(base <= 0):
            raise DomainError("power with nonpositive base and jet exponent")
        return (self * np.log(base)).exp()

    def integer_power(self, n: int) -> "Jet2":
        if n < 0:
            return self.reciprocal().integer_power(-n)
        result = Jet2.constant(np.ones(self.shape), self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def reciprocal(self) -> "Jet2":
        x = self.value
        if np.any(x == 0):
            raise DomainError("division by a jet with zero value")
        inv = 1.0 / x
        derivs = [inv, -inv ** 2, 2.0 * inv ** 3, -6.0 * inv ** 4]
        return self._compose_series(derivs)

    # --- unary library --------------------------------------------------

    def sin(self) -> "Jet2":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose_series([s, c, -s, -c])

    def cos(self) -> "Jet2":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose_series([c, -s, -c, s])

    def exp(self) -> "Jet2":
        e = np.exp(self.value)
        return self._compose_series([e, e, e, e])

    def log(self) -> "Jet2":
        x = self.value
        if np.any(x <= 0):
            raise DomainError("log of a nonpositive value")
        inv = 1.0 / x
        return self._compose_series([np.log(x), inv, -inv ** 2, 2.0 * inv ** 3])

    def sqrt(self) -> "Jet2":
        x = self.value
        if np.any(x <= 0):
            raise DomainError("sqrt of a nonpositive value")
        r = np.sqrt(x)
        return self._compose_series([r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)])

    def apply(self, name: str) -> "Jet2":
        if name == "neg":
            return -self
        if name not in UNARY_FUNCTIONS:
            raise ValueError(f"unknown unary function {name!r}")
        return getattr(self, name)()

    # --- internals ------------------------------------------------------

    def _broadcast_pair(self, other: "Jet2", ufunc) -> np.ndarray:
        rank = max(len(self.shape), len(other.shape))
        return ufunc(_pad_batch(self._c, rank), _pad_batch(other._c, rank))

    def _compose_series(self, derivs: Sequence) -> "Jet2":
        """f(a) from f's derivatives at a's value: sum_k f^(k)/k! * delta^k"""
        order = self.order
        delta = self._c.copy()
        delta[0, 0] = 0.0
        batch = self.shape
        out = np.zeros((order + 1, order + 1) + batch)
        out[0, 0] = derivs[0]
        power = delta
        for k in range(1, order + 1):
            out = out + (_as_array(derivs[k]) / factorial(k)) * power
            if k < order:
                power = _truncated_product(power, delta, order)
        return Jet2(out, order)


def _powers(delta: np.ndarray, order: int) -> List[np.ndarray]:
    one = np.zeros((order + 1, order + 1) + delta.shape[2:])
    one[0, 0] = 1.0
    powers = [one]
    for _ in range(order):
        powers.append(_truncated_product(powers[-1], delta, order))
    return powers


def jet_seed(point: Tuple[Scalar, Scalar], variable: Union[str, float], order: int = 2) -> Jet2:
    """Seed jet at ``point``: a coordinate ('u' / 'v') or a constant"""
    u, v = point
    if isinstance(variable, str):
        if variable == "u":
            return Jet2.variable(u, "u", order)
        if variable == "v":
            return Jet2.variable(v, "v", order)
        raise ValueError(f"unknown seed variable {variable!r}")
    value = _as_array(variable) * np.ones(np.broadcast_shapes(np.shape(u), np.shape(v)))
    return Jet2.constant(value, order)


def seed_pair(u: Scalar, v: Scalar, order: int = 2) -> Tuple[Jet2, Jet2]:
    """Coordinate jets (u, v) broadcast to a common batch shape"""
    shape = np.broadcast_shapes(np.shape(u), np.shape(v))
    u = np.broadcast_to(_as_array(u), shape)
    v = np.broadcast_to(_as_array(v), shape)
    return Jet2.variable(u, "u", order), Jet2.variable(v, "v", order)


def jet_arith(a: Jet2, b, op: str) -> Jet2:
    """Binary jet arithmetic by name; for 'compose-unary', ``b`` names the function"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    if op == "compose-unary":
        return a.apply(b)
    raise ValueError(f"unknown jet operation {op!r}")


# --- 3-vectors of jets --------------------------------------------------

JetVector = Tuple[Jet2, Jet2, Jet2]


def dot(a: Sequence[Jet2], b: Sequence[Jet2]) -> Jet2:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Sequence[Jet2], b: Sequence[Jet2]) -> JetVector:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a: Sequence[Jet2]) -> Jet2:
    return dot(a, a).sqrt()


def scale(a: Sequence[Jet2], s) -> JetVector:
    return (a[0] * s, a[1] * s, a[2] * s)


def combine(a: Sequence[Jet2], b: Sequence[Jet2], fn: Callable[[Jet2, Jet2], Jet2]) -> JetVector:
    return (fn(a[0], b[0]), fn(a[1], b[1]), fn(a[2], b[2]))
