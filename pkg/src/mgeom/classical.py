"""
Classical expressions in one variable ``u``.

These are the log-form curve components (x_i(s) = e^(g(log s))), the
curvature/torsion laws fed to curve synthesis, and the target of the
bridge translation of multiplicative expressions.  Evaluation accepts a
float or a ``Jet``, so every expression differentiates exactly.

Grammar::

    expr  := term { ("+" | "-") term }
    term  := unary { ("*" | "/") unary }
    unary := ("-" | "+") unary | power
    power := atom [ ("^" | "**") unary ]
    atom  := number | "u" | "pi" | "e" | func "(" expr ")" | "(" expr ")"
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, NumericalDomainError, ParseError, UnknownIdentifierError
from .jet import POLE_EPS, Jet
from .mnum import format_real

__all__ = [
    "Num", "VarU", "Neg", "BinOp", "Call", "CExpr", "FUNCTIONS",
    "parse_classical", "render_classical", "evaluate_classical", "classical_jet",
]

FUNCTIONS = ("sin", "cos", "tan", "cot", "exp", "log", "sqrt", "abs")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class VarU:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "CExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "CExpr"
    right: "CExpr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "CExpr"


CExpr = Union[Num, VarU, Neg, BinOp, Call]


# --- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<id>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _lex(text: str):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", _byte_offset(text, bad),
                             {"number", "u", "function", "(", "operator"})
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "op":
            kind = "^" if value == "**" else value
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"unexpected {what}", _byte_offset(self.text, tok[2]), expected)

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail({kind})
        return self.take()

    def parse(self) -> CExpr:
        node = self.expr()
        if self.peek()[0] != "eof":
            self.fail({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            arg = self.unary()
            return Num(-arg.value) if isinstance(arg, Num) else Neg(arg)
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            node = BinOp("^", node, self.unary())
        return node

    def atom(self):
        kind, value, start = self.peek()
        if kind == "num":
            self.take()
            return Num(float(value))
        if kind == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "id":
            self.take()
            if value == "u":
                return VarU()
            if value == "pi":
                return Num(math.pi)
            if value == "e":
                return Num(math.e)
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            raise UnknownIdentifierError(f"unknown identifier {value!r}", _byte_offset(self.text, start),
                                         {"u", "pi", "e", *FUNCTIONS})
        self.fail({"number", "u", "pi", "e", "function", "("})


def parse_classical(text: str) -> CExpr:
    return _Parser(text).parse()


# --- rendering ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Num) and node.value < 0:
        return 3
    return 5


def render_classical(node: CExpr) -> str:
    if isinstance(node, Num):
        return format_real(node.value)
    if isinstance(node, VarU):
        return "u"
    if isinstance(node, Call):
        return f"{node.fn}({render_classical(node.arg)})"
    if isinstance(node, Neg):
        inner = render_classical(node.arg)
        return f"-({inner})" if _prec(node.arg) < 4 else f"-{inner}"
    p = _PREC[node.op]
    left, right = render_classical(node.left), render_classical(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
    else:
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
    return f"{left} {node.op} {right}" if p < 4 else f"{left}^{right}"


# --- evaluation --------------------------------------------------------------

def _call(fn: str, x):
    if isinstance(x, Jet):
        return abs(x) if fn == "abs" else getattr(x, fn)()
    if fn == "sin":
        return math.sin(x)
    if fn == "cos":
        return math.cos(x)
    if fn == "tan":
        if abs(math.cos(x)) < POLE_EPS:
            raise DomainError("tan has a pole here")
        return math.tan(x)
    if fn == "cot":
        if abs(math.sin(x)) < POLE_EPS:
            raise DomainError("cot has a pole here")
        return math.cos(x) / math.sin(x)
    if fn == "exp":
        try:
            return math.exp(x)
        except OverflowError as exc:
            raise NumericalDomainError(f"exp overflow at {x}") from exc
    if fn == "log":
        if x <= 0:
            raise DomainError(f"log of non-positive value {x}")
        return math.log(x)
    if fn == "sqrt":
        if x < 0:
            raise DomainError(f"sqrt of negative value {x}")
        return math.sqrt(x)
    if fn == "abs":
        return abs(x)
    raise UnknownIdentifierError(f"unknown function {fn!r}")


def _power(base, k):
    if isinstance(base, Jet) or isinstance(k, Jet):
        return base ** k
    if base < 0 and not float(k).is_integer():
        raise DomainError(f"non-integer power {k} of negative value {base}")
    if base == 0 and k < 0:
        raise NumericalDomainError("zero raised to a negative power")
    return base ** int(k) if float(k).is_integer() else base ** k


def evaluate_classical(node: CExpr, u):
    """Evaluate at ``u`` (a float or a Jet)."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, VarU):
        return u
    if isinstance(node, Neg):
        return -evaluate_classical(node.arg, u)
    if isinstance(node, Call):
        return _call(node.fn, evaluate_classical(node.arg, u))
    a = evaluate_classical(node.left, u)
    b = evaluate_classical(node.right, u)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if not isinstance(b, Jet) and b == 0:
            raise NumericalDomainError("division by zero")
        return a / b
    return _power(a, b)


def classical_jet(node: CExpr, U: float, order: int):
    """Derivative values [g(U), g'(U), ..., g^(order)(U)]."""
    out = evaluate_classical(node, Jet.variable(U, order))
    if not isinstance(out, Jet):
        out = Jet.constant(out, order)
    return out.derivatives()
