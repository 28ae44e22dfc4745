"""
Expression trees for scalar functions of (u, v)
"""
from dataclasses import dataclass
from typing import FrozenSet, Mapping, Union

VARIABLES = ("u", "v")
FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")
BINARY_OPS = ("+", "-", "*", "/", "^")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


@dataclass(frozen=True)
class IntPow:
    """Power with a literal integer exponent (valid for negative bases)"""
    base: "Expr"
    exponent: int


Expr = Union[Var, Num, BinOp, Neg, Call, IntPow]


def to_text(e: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree"""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    if isinstance(e, IntPow):
        return f"({to_text(e.base)} ^ {e.exponent})"
    raise TypeError(f"not an expression node: {e!r}")


def free_variables(e: Expr) -> FrozenSet[str]:
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, BinOp):
        return free_variables(e.left) | free_variables(e.right)
    if isinstance(e, (Neg,)):
        return free_variables(e.operand)
    if isinstance(e, Call):
        return free_variables(e.arg)
    if isinstance(e, IntPow):
        return free_variables(e.base)
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace variables by expressions (simultaneously)"""
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Num):
        return e
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, mapping), substitute(e.right, mapping))
    if isinstance(e, Neg):
        return Neg(substitute(e.operand, mapping))
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, mapping))
    if isinstance(e, IntPow):
        return IntPow(substitute(e.base, mapping), e.exponent)
    raise TypeError(f"not an expression node: {e!r}")


def add(a: Expr, b: Expr) -> Expr:
    return BinOp("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    return BinOp("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    return BinOp("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    return BinOp("/", a, b)


def num(value: float) -> Expr:
    """Literal; negative values become Neg(Num) so printed text round-trips"""
    value = float(value)
    return Neg(Num(-value)) if value < 0 else Num(value)
