"""
Precedence-climbing parser for the expression language.

Grammar, loosest to tightest:  + -  <  * /  <  unary -  <  ^ (right assoc)
Atoms are numbers, variables, parenthesized expressions and calls of the
library functions sin, cos, exp, log, sqrt.
"""
import re
from dataclasses import dataclass
from typing import List, Mapping, Optional, Union

from src.errors import ExprSyntaxError, UnknownIdentifier

from .ast import FUNCTIONS, VARIABLES, BinOp, Call, Expr, IntPow, Neg, Num, Var

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\S)"
    r")"
)

# binding powers
_LBP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_UNARY_MINUS_BP = 25

_OPERAND_START = ("number", "identifier", "(", "-")
_OPERATORS = ("+", "-", "*", "/", "^")

# one-letter aliases accepted for generator coordinates
DEFAULT_ALIASES = {"w": "u", "z": "v", "s": "u", "t": "v"}


@dataclass
class Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int  # byte offset into the UTF-8 source


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        for kind in ("number", "ident", "op"):
            value = m.group(kind)
            if value is not None:
                start = m.start(kind)
                tokens.append(Token(kind, value, len(text[:start].encode("utf-8"))))
                break
        pos = m.end()
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str, aliases: Mapping[str, str]):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.aliases = aliases

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> None:
        tok = self.token
        raise ExprSyntaxError(self.text, tok.offset, expected, tok.text)

    def after_operand(self) -> tuple:
        expected = _OPERATORS + (("end of input",) if self.depth == 0 else (")",))
        return expected

    def lbp(self, tok: Token) -> int:
        if tok.kind == "op" and tok.text in _LBP:
            return _LBP[tok.text]
        return 0

    def expression(self, rbp: int = 0) -> Expr:
        left = self.nud(self.advance())
        while rbp < self.lbp(self.token):
            left = self.led(self.advance(), left)
        return left

    def nud(self, tok: Token) -> Expr:
        if tok.kind == "number":
            return Num(float(tok.text))
        if tok.kind == "ident":
            return self.identifier(tok)
        if tok.kind == "op" and tok.text == "-":
            return Neg(self.expression(_UNARY_MINUS_BP))
        if tok.kind == "op" and tok.text == "(":
            self.depth += 1
            inner = self.expression()
            self.expect(")")
            self.depth -= 1
            return inner
        self.pos -= 1
        self.fail(_OPERAND_START)

    def led(self, tok: Token, left: Expr) -> Expr:
        op = tok.text
        if op == "^":
            right = self.expression(_LBP["^"] - 1)
            exponent = _integer_literal(right)
            if exponent is not None:
                return IntPow(left, exponent)
            return BinOp("^", left, right)
        right = self.expression(_LBP[op])
        return BinOp(op, left, right)

    def identifier(self, tok: Token) -> Expr:
        name = tok.text
        if name in FUNCTIONS:
            if not (self.token.kind == "op" and self.token.text == "("):
                self.fail(("(",))
            self.advance()
            self.depth += 1
            arg = self.expression()
            self.expect(")")
            self.depth -= 1
            return Call(name, arg)
        if name in VARIABLES:
            return Var(name)
        if name in self.aliases:
            return Var(self.aliases[name])
        raise UnknownIdentifier(name, tok.offset)

    def expect(self, text: str) -> None:
        if self.token.kind == "op" and self.token.text == text:
            self.advance()
            return
        self.fail(_OPERATORS + (text,))

    def parse(self) -> Expr:
        expr = self.expression()
        if self.token.kind != "end":
            self.fail(self.after_operand())
        return expr


def _integer_literal(e: Expr) -> Optional[int]:
    if isinstance(e, Num) and float(e.value).is_integer():
        return int(e.value)
    if isinstance(e, Neg) and isinstance(e.operand, Num) and float(e.operand.value).is_integer():
        return -int(e.operand.value)
    return None


def parse(text: Union[str, bytes], aliases: Optional[Mapping[str, str]] = None) -> Expr:
    """Parse expression text into an Expr tree

    Args:
        text: Expression source (str or UTF-8 bytes)
        aliases: Extra identifier names mapped onto 'u' / 'v'; defaults to
            w, z (rank-1 coordinates) and s, t (one-variable functions)

    Returns:
        Parsed expression

    Raises:
        ExprSyntaxError: malformed text (byte offset + expected tokens)
        UnknownIdentifier: name that is not a variable, alias or function
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text, DEFAULT_ALIASES if aliases is None else aliases).parse()
