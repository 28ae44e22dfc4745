"""
Expression language for generator parameters
"""
from .ast import (
    FUNCTIONS,
    VARIABLES,
    BinOp,
    Call,
    Expr,
    IntPow,
    Neg,
    Num,
    Var,
    add,
    div,
    free_variables,
    mul,
    num,
    sub,
    substitute,
    to_text,
)
from .evaluator import eval_jet, evaluate
from .parser import DEFAULT_ALIASES, parse, tokenize

__all__ = [
    "FUNCTIONS",
    "VARIABLES",
    "BinOp",
    "Call",
    "Expr",
    "IntPow",
    "Neg",
    "Num",
    "Var",
    "add",
    "div",
    "free_variables",
    "mul",
    "num",
    "sub",
    "substitute",
    "to_text",
    "eval_jet",
    "evaluate",
    "DEFAULT_ALIASES",
    "parse",
    "tokenize",
]
