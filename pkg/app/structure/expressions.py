"""
Varel - İfade Dili
==================

Yapı katsayıları ve kesit bileşenleri için küçük bir ifade dili:
ayrıştırıcı, numpy ile değerlendirme ve sembolik türev.

Gramer:
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

    NAME: x, y, parametre adları veya pi sabiti.
    Fonksiyonlar: sqrt, exp, log, sin, cos.

Kullanım:
    from app.structure.expressions import parse_expression

    tree = parse_expression("1/(1-eps*x)")
    tree.evaluate({"x": 0.0, "y": 0.0, "eps": 0.1})          # 1.0
    tree.diff("x").evaluate({"x": 0.0, "y": 0.0, "eps": 0.1})  # 0.1
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Mapping, Tuple

import numpy as np

from app.core.exceptions import ConfigError, ExpressionParseError
from app.core.types import RealLike

logger = logging.getLogger(__name__)

Env = Mapping[str, RealLike]

CONSTANTS: Dict[str, float] = {"pi": float(np.pi)}

FUNCTIONS: Dict[str, Callable[[RealLike], RealLike]] = {
    "sqrt": np.sqrt,
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
}


# =============================================================================
# İFADE AĞACI
# =============================================================================

class Expression:
    """İfade ağacı düğümü için temel sınıf."""

    precedence = 100
    operands: Tuple["Expression", ...] = ()

    def evaluate(self, env: Env) -> RealLike:
        raise NotImplementedError

    def diff(self, var: str) -> "Expression":
        raise NotImplementedError

    def symbols(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for op in self.operands:
            out = out | op.symbols()
        return out

    def depends_on(self, var: str) -> bool:
        return var in self.symbols()

    def _wrap(self, operand: "Expression") -> str:
        if operand.precedence < self.precedence:
            return f"({operand})"
        return str(operand)

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.operands!r}"


class Number(Expression):
    def __init__(self, value: float):
        self.value = float(value)

    def evaluate(self, env: Env) -> RealLike:
        return self.value

    def diff(self, var: str) -> Expression:
        return ZERO

    def __str__(self) -> str:
        return repr(self.value) if self.value >= 0 else f"({self.value!r})"

    def __repr__(self) -> str:
        return f"Number({self.value!r})"


class Symbol(Expression):
    def __init__(self, name: str):
        self.name = name

    def evaluate(self, env: Env) -> RealLike:
        if self.name in env:
            return env[self.name]
        if self.name in CONSTANTS:
            return CONSTANTS[self.name]
        raise ConfigError(
            message=f"unbound symbol '{self.name}'",
            user_message=f"Tanımsız parametre: {self.name}",
        )

    def diff(self, var: str) -> Expression:
        return ONE if self.name == var else ZERO

    def symbols(self) -> FrozenSet[str]:
        return frozenset() if self.name in CONSTANTS else frozenset({self.name})

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"


class Neg(Expression):
    precedence = 3

    def __init__(self, operand: Expression):
        self.operands = (operand,)

    def evaluate(self, env: Env) -> RealLike:
        return -self.operands[0].evaluate(env)

    def diff(self, var: str) -> Expression:
        return neg(self.operands[0].diff(var))

    def __str__(self) -> str:
        return f"-{self._wrap(self.operands[0])}"


class BinaryOperator(Expression):
    symbol = "?"

    def __init__(self, left: Expression, right: Expression):
        self.operands = (left, right)

    def __str__(self) -> str:
        left, right = self.operands
        return f"{self._wrap(left)} {self.symbol} {self._wrap(right)}"


class Add(BinaryOperator):
    precedence = 1
    symbol = "+"

    def evaluate(self, env: Env) -> RealLike:
        return self.operands[0].evaluate(env) + self.operands[1].evaluate(env)

    def diff(self, var: str) -> Expression:
        return add(self.operands[0].diff(var), self.operands[1].diff(var))


class Sub(BinaryOperator):
    precedence = 1
    symbol = "-"

    def evaluate(self, env: Env) -> RealLike:
        return self.operands[0].evaluate(env) - self.operands[1].evaluate(env)

    def diff(self, var: str) -> Expression:
        return sub(self.operands[0].diff(var), self.operands[1].diff(var))

    def _wrap(self, operand: Expression) -> str:
        # a - (b + c)
        if operand is self.operands[1] and operand.precedence <= self.precedence:
            return f"({operand})"
        return super()._wrap(operand)


class Mul(BinaryOperator):
    precedence = 2
    symbol = "*"

    def evaluate(self, env: Env) -> RealLike:
        return self.operands[0].evaluate(env) * self.operands[1].evaluate(env)

    def diff(self, var: str) -> Expression:
        f, g = self.operands
        return add(mul(f.diff(var), g), mul(f, g.diff(var)))


class Div(BinaryOperator):
    precedence = 2
    symbol = "/"

    def evaluate(self, env: Env) -> RealLike:
        return self.operands[0].evaluate(env) / self.operands[1].evaluate(env)

    def diff(self, var: str) -> Expression:
        f, g = self.operands
        if not g.depends_on(var):
            return div(f.diff(var), g)
        # (f'g - fg') / g^2
        return div(sub(mul(f.diff(var), g), mul(f, g.diff(var))), power(g, Number(2.0)))

    def _wrap(self, operand: Expression) -> str:
        if operand is self.operands[1] and operand.precedence <= self.precedence:
            return f"({operand})"
        return super()._wrap(operand)


class Pow(BinaryOperator):
    precedence = 4
    symbol = "^"

    def evaluate(self, env: Env) -> RealLike:
        base = np.asarray(self.operands[0].evaluate(env), dtype=float)
        exponent = self.operands[1].evaluate(env)
        out = np.power(base, exponent)
        return float(out) if np.ndim(out) == 0 else out

    def diff(self, var: str) -> Expression:
        base, exponent = self.operands
        if not exponent.depends_on(var):
            if isinstance(exponent, Number):
                reduced: Expression = Number(exponent.value - 1.0)
            else:
                reduced = sub(exponent, ONE)
            return mul(mul(exponent, power(base, reduced)), base.diff(var))
        # b^e (e' log b + e b'/b)
        return mul(
            self,
            add(mul(exponent.diff(var), Call("log", base)), div(mul(exponent, base.diff(var)), base)),
        )

    def _wrap(self, operand: Expression) -> str:
        if operand.precedence <= self.precedence:
            return f"({operand})"
        return str(operand)


class Call(Expression):
    def __init__(self, name: str, argument: Expression):
        if name not in FUNCTIONS:
            raise ExpressionParseError(f"unknown function '{name}'", text=name, position=0)
        self.name = name
        self.operands = (argument,)

    def evaluate(self, env: Env) -> RealLike:
        return FUNCTIONS[self.name](self.operands[0].evaluate(env))

    def diff(self, var: str) -> Expression:
        arg = self.operands[0]
        inner = arg.diff(var)
        if isinstance(inner, Number) and inner.value == 0.0:
            return ZERO
        if self.name == "sqrt":
            outer: Expression = div(ONE, mul(Number(2.0), self))
        elif self.name == "exp":
            outer = self
        elif self.name == "log":
            outer = div(ONE, arg)
        elif self.name == "sin":
            outer = Call("cos", arg)
        else:  # cos
            outer = neg(Call("sin", arg))
        return mul(outer, inner)

    def __str__(self) -> str:
        return f"{self.name}({self.operands[0]})"


ZERO = Number(0.0)
ONE = Number(1.0)


# =============================================================================
# SADELEŞTİREN KURUCULAR
# =============================================================================

def _is(expr: Expression, value: float) -> bool:
    return isinstance(expr, Number) and expr.value == value


def neg(a: Expression) -> Expression:
    if isinstance(a, Number):
        return Number(-a.value)
    if isinstance(a, Neg):
        return a.operands[0]
    return Neg(a)


def add(a: Expression, b: Expression) -> Expression:
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value + b.value)
    return Add(a, b)


def sub(a: Expression, b: Expression) -> Expression:
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value - b.value)
    return Sub(a, b)


def mul(a: Expression, b: Expression) -> Expression:
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value * b.value)
    return Mul(a, b)


def div(a: Expression, b: Expression) -> Expression:
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return Div(a, b)


def power(a: Expression, b: Expression) -> Expression:
    if _is(b, 0.0):
        return ONE
    if _is(b, 1.0):
        return a
    return Pow(a, b)


# =============================================================================
# TOKENIZER / PARSER
# =============================================================================

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionParseError(f"unexpected character {text[bad]!r}", text=text, position=bad)
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Özyinelemeli iniş ayrıştırıcı."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _error(self, message: str, tok: Token) -> ExpressionParseError:
        return ExpressionParseError(message, text=self.text, position=tok.pos)

    def _expect(self, text: str) -> None:
        tok = self.current
        if tok.text != text:
            found = tok.text or "end of input"
            raise self._error(f"expected '{text}', found '{found}'", tok)
        self._advance()

    def parse(self) -> Expression:
        if self.current.kind == "end":
            raise self._error("empty expression", self.current)
        tree = self.parse_expr()
        if self.current.kind != "end":
            raise self._error(f"unexpected token '{self.current.text}'", self.current)
        return tree

    def parse_expr(self) -> Expression:
        left = self.parse_term()
        while self.current.text in ("+", "-"):
            op = self._advance().text
            right = self.parse_term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def parse_term(self) -> Expression:
        left = self.parse_unary()
        while self.current.text in ("*", "/"):
            op = self._advance().text
            right = self.parse_unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def parse_unary(self) -> Expression:
        if self.current.text == "-":
            self._advance()
            return Neg(self.parse_unary())
        if self.current.text == "+":
            self._advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Expression:
        base = self.parse_atom()
        if self.current.text in ("^", "**"):
            self._advance()
            return Pow(base, self.parse_unary())
        return base

    def parse_atom(self) -> Expression:
        tok = self.current
        if tok.kind == "num":
            self._advance()
            return Number(float(tok.text))
        if tok.kind == "name":
            self._advance()
            if self.current.text == "(":
                if tok.text not in FUNCTIONS:
                    raise self._error(f"unknown function '{tok.text}'", tok)
                self._advance()
                argument = self.parse_expr()
                self._expect(")")
                return Call(tok.text, argument)
            return Symbol(tok.text)
        if tok.text == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect(")")
            return inner
        found = tok.text or "end of input"
        raise self._error(f"unexpected token '{found}'", tok)


def parse_expression(text: str) -> Expression:
    """
    Metni ifade ağacına çevirir.

    Raises:
        ExpressionParseError: Gramer dışı girdi (konum bilgisiyle)
    """
    tree = _Parser(text).parse()
    logger.debug(f"[EXPR] parsed {text!r} -> {tree}")
    return tree


def check_bound(tree: Expression, bound: Mapping[str, float], text: str = "") -> None:
    """x, y dışındaki tüm sembollerin parametre olarak bağlı olduğunu doğrular."""
    missing = sorted(tree.symbols() - {"x", "y"} - set(bound))
    if missing:
        raise ConfigError(
            message=f"unbound parameters {missing} in {text or tree}",
            user_message=f"Tanımsız parametre: {', '.join(missing)}",
        )
