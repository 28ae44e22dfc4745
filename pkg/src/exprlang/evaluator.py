"""
Tree-walking evaluation of expressions over jets or plain numbers
"""
from typing import Mapping, Union

import numpy as np

from src.errors import DomainError
from src.jets import Jet2

from .ast import BinOp, Call, Expr, IntPow, Neg, Num, Var

Value = Union[float, np.ndarray, Jet2]

_SCALAR_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
}


def _call(name: str, x: Value) -> Value:
    if isinstance(x, Jet2):
        return x.apply(name)
    x = np.asarray(x, dtype=float)
    if name == "log" and np.any(x <= 0):
        raise DomainError("log of a nonpositive value")
    if name == "sqrt" and np.any(x < 0):
        raise DomainError("sqrt of a negative value")
    return _SCALAR_FUNCTIONS[name](x)


def _divide(a: Value, b: Value) -> Value:
    if isinstance(b, Jet2) or isinstance(a, Jet2):
        return a / b
    if np.any(np.asarray(b) == 0):
        raise DomainError("division by zero")
    return np.asarray(a, dtype=float) / b


def _int_power(x: Value, n: int) -> Value:
    if isinstance(x, Jet2):
        return x.integer_power(n)
    x = np.asarray(x, dtype=float)
    if n < 0 and np.any(x == 0):
        raise DomainError("negative power of zero")
    return x ** float(n) if n >= 0 else 1.0 / x ** float(-n)


def _power(x: Value, y: Value) -> Value:
    if isinstance(x, Jet2) or isinstance(y, Jet2):
        if not isinstance(y, Jet2) and np.ndim(y) == 0:
            return x ** float(y)
        if not isinstance(x, Jet2) and np.any(np.asarray(x) <= 0):
            raise DomainError("power with nonpositive base and variable exponent")
        return x ** y
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any((x < 0) & (y != np.round(y))):
        raise DomainError("non-integer power of a negative base")
    if np.any((x == 0) & (y < 0)):
        raise DomainError("negative power of zero")
    return np.power(x, y)


def _walk(e: Expr, env: Mapping[str, Value]) -> Value:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise ValueError(f"variable {e.name!r} is not bound") from None
    if isinstance(e, Neg):
        return -_walk(e.operand, env)
    if isinstance(e, Call):
        return _call(e.func, _walk(e.arg, env))
    if isinstance(e, IntPow):
        return _int_power(_walk(e.base, env), e.exponent)
    if isinstance(e, BinOp):
        a = _walk(e.left, env)
        b = _walk(e.right, env)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            return _divide(a, b)
        if e.op == "^":
            return _power(a, b)
        raise ValueError(f"unknown operator {e.op!r}")
    raise TypeError(f"not an expression node: {e!r}")


def eval_jet(e: Expr, bindings: Mapping[str, Jet2]) -> Jet2:
    """Evaluate ``e`` with jet-valued variables; constants become constant jets"""
    orders = {j.order for j in bindings.values()}
    if len(orders) != 1:
        raise ValueError("bindings must be jets of a single order")
    order = orders.pop()
    result = _walk(e, bindings)
    if isinstance(result, Jet2):
        return result
    shape = np.broadcast_shapes(*(j.shape for j in bindings.values()))
    return Jet2.constant(np.broadcast_to(np.asarray(result, dtype=float), shape), order)


def evaluate(e: Expr, u=0.0, v=0.0) -> np.ndarray:
    """Plain numeric evaluation (scalars or numpy arrays)"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    shape = np.broadcast_shapes(u.shape, v.shape)
    result = _walk(e, {"u": u, "v": v})
    return np.broadcast_to(np.asarray(result, dtype=float), shape)
