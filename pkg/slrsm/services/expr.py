"""Potential expressions: a small Pratt parser and a tree-walking evaluator.

Grammar, loosest binding first::

    expr   := expr ('+' | '-') expr
            | expr ('*' | '/') expr
            | '-' expr
            | expr '^' expr          (right associative)
            | NAME '(' expr ')' | 'x' | NUMBER | '(' expr ')'
"""

import math
import operator
import re
from collections.abc import Callable, Iterator
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from slrsm.core.errors import DomainError, PotentialSyntaxError, UnknownIdentifierError

VARIABLE = "x"

FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}

ARITHMETIC: dict[str, Callable[[float, float], float]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}

# Binding powers
_BP_ADD = 10
_BP_MUL = 20
_BP_UNARY = 25
_BP_POW = 30

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True, slots=True)
class Num:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    pass


@dataclass(frozen=True, slots=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True, slots=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True, slots=True)
class Call:
    func: str
    arg: "Node"


type Node = Num | Var | Neg | BinOp | Call


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # number, name, op, end
    text: str
    position: int


def _tokenize(source: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(source):
        if source[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(source, pos)
        if match is None or match.end() == pos:
            bad = len(source) - len(source[pos:].lstrip())
            raise PotentialSyntaxError(bad, f"Unexpected character {source[bad]!r}")
        kind = match.lastgroup or "op"
        text = match.group(kind)
        yield _Token(kind, text, match.start(kind))
        pos = match.end()
    yield _Token("end", "", len(source))


class _Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = _tokenize(source)
        self.token = next(self.tokens)

    def advance(self) -> _Token:
        current = self.token
        self.token = next(self.tokens)
        return current

    def expect(self, text: str) -> None:
        if self.token.text != text:
            found = self.token.text or "end of input"
            raise PotentialSyntaxError(self.token.position, f"Expected {text!r}, found {found!r}")
        self.advance()

    def parse(self) -> "Node":
        if self.token.kind == "end":
            raise PotentialSyntaxError(0, "Empty expression")
        node = self.expression(0)
        if self.token.kind != "end":
            raise PotentialSyntaxError(
                self.token.position, f"Unexpected token {self.token.text!r}"
            )
        return node

    def expression(self, rbp: int) -> "Node":
        left = self.prefix(self.advance())
        while rbp < self.infix_bp(self.token):
            token = self.advance()
            if token.text == "^":
                # right associative
                right = self.expression(_BP_POW - 1)
            else:
                right = self.expression(self.infix_bp(token))
            left = BinOp(token.text, left, right)
        return left

    def infix_bp(self, token: _Token) -> int:
        if token.kind != "op":
            return 0
        return {"+": _BP_ADD, "-": _BP_ADD, "*": _BP_MUL, "/": _BP_MUL, "^": _BP_POW}.get(
            token.text, 0
        )

    def prefix(self, token: _Token) -> "Node":
        match token.kind:
            case "number":
                value = float(token.text)
                if not math.isfinite(value):
                    raise PotentialSyntaxError(token.position, "Literal is not finite")
                return Num(value)
            case "name":
                if token.text == VARIABLE:
                    return Var()
                if token.text in FUNCTIONS:
                    self.expect("(")
                    arg = self.expression(0)
                    self.expect(")")
                    return Call(token.text, arg)
                raise UnknownIdentifierError(token.position, token.text)
            case "op" if token.text == "-":
                return Neg(self.expression(_BP_UNARY))
            case "op" if token.text == "(":
                inner = self.expression(0)
                self.expect(")")
                return inner
            case "end":
                raise PotentialSyntaxError(token.position, "Unexpected end of input")
            case _:
                raise PotentialSyntaxError(token.position, f"Unexpected token {token.text!r}")


def _evaluate(node: "Node", x: float) -> float:
    match node:
        case Num(value):
            return value
        case Var():
            return x
        case Neg(operand):
            return -_evaluate(operand, x)
        case BinOp(op, left, right):
            lhs = _evaluate(left, x)
            rhs = _evaluate(right, x)
            if op == "^":
                return _power(lhs, rhs, x)
            if op == "/" and rhs == 0.0:
                msg = f"Division by zero at x={x!r}"
                raise DomainError(msg)
            result = ARITHMETIC[op](lhs, rhs)
            if not math.isfinite(result):
                msg = f"Overflow in {lhs!r} {op} {rhs!r} at x={x!r}"
                raise DomainError(msg)
            return result
        case Call(func, arg):
            value = _evaluate(arg, x)
            if func in {"log", "sqrt"} and value < 0.0:
                msg = f"{func} of negative number {value!r} at x={x!r}"
                raise DomainError(msg)
            try:
                return FUNCTIONS[func](value)
            except (ValueError, OverflowError) as exc:
                msg = f"{func}({value!r}) is undefined at x={x!r}"
                raise DomainError(msg) from exc


def _power(base: float, exponent: float, x: float) -> float:
    try:
        result = base**exponent
    except ZeroDivisionError as exc:
        msg = f"Division by zero at x={x!r}"
        raise DomainError(msg) from exc
    except OverflowError as exc:
        msg = f"Overflow in power at x={x!r}"
        raise DomainError(msg) from exc
    if isinstance(result, complex):
        msg = f"Negative base {base!r} with fractional exponent at x={x!r}"
        raise DomainError(msg)
    return result


def _render(node: "Node") -> str:
    match node:
        case Num(value):
            return repr(value)
        case Var():
            return VARIABLE
        case Neg(operand):
            return f"(-{_render(operand)})"
        case BinOp(op, left, right):
            return f"({_render(left)} {op} {_render(right)})"
        case Call(func, arg):
            return f"{func}({_render(arg)})"


@dataclass(frozen=True, slots=True)
class PotentialExpr:
    """Parsed potential q(x). Immutable, so safe to share between workers."""

    source: str
    tree: "Node"

    def __call__(self, x: float) -> float:
        return _evaluate(self.tree, x)

    def evaluate(self, x: float) -> float:
        return _evaluate(self.tree, x)

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        return np.array([_evaluate(self.tree, float(x)) for x in xs], dtype=float)

    def render(self) -> str:
        return _render(self.tree)


def parse_potential(source: str) -> PotentialExpr:
    """Parse a potential expression in the single variable x."""
    return PotentialExpr(source=source, tree=_Parser(source).parse())


def eval_potential(p: PotentialExpr, x: float) -> float:
    return _evaluate(p.tree, x)


def abs_integral(p: PotentialExpr, lo: float = 0.0, hi: float = math.pi) -> float:
    """Integral of |q| over [lo, hi]."""
    value, _ = quad(lambda t: abs(_evaluate(p.tree, t)), lo, hi, limit=200)
    return float(value)
