"""
A small language for multiplicative scalar functions of the parameter ``s``.

Grammar (whitespace is insignificant, operators are left associative)::

    expr    := term { ("+*" | "-*") term }
    term    := factor { (".*" | "/*") factor }
    factor  := base [ "^*" real ]
    base    := "(" expr ")" | func "(" expr ")" | literal | "s"
    func    := "msin" | "mcos" | "mtan" | "mcot" | "msqrt" | "mneg" | "mabs"
    literal := "e^" real | positive-decimal

Every expression translates to a classical expression in U = log s (its
bridge) by replacing each multiplicative operation with its classical
counterpart on logs.  Derivatives of the bridge give exact multiplicative
derivatives of the expression.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import classical as C
from . import mnum
from .errors import DomainError, ParseError, UnknownIdentifierError
from .mcalc import ScalarMapJet
from .mnum import MNum, format_real

__all__ = [
    "Lit", "Var", "Unary", "Binary", "Power", "MExpr", "FUNCS",
    "parse", "render", "evaluate", "to_bridge", "bridge_eval", "bridge_diff",
    "BridgeDerivative", "component_map", "CurveSpec", "load_curve_spec",
    "curve_spec_from_json", "range_value",
]

FUNCS = ("msin", "mcos", "mtan", "mcot", "msqrt", "mneg", "mabs")
BINARY_OPS = ("+*", "-*", ".*", "/*")


@dataclass(frozen=True)
class Lit:
    value: MNum


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str
    arg: "MExpr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "MExpr"
    right: "MExpr"


@dataclass(frozen=True)
class Power:
    base: "MExpr"
    exponent: float


MExpr = Union[Lit, Var, Unary, Binary, Power]


# --- lexer -------------------------------------------------------------------

_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    r"\s*(?:"
    rf"(?P<loglit>e\^\s*(?:\{{\s*{_REAL}\s*\}}|{_REAL}))"
    r"|(?P<op>\+\*|-\*|\.\*|/\*|\^\*|[()])"
    rf"|(?P<num>{_REAL})"
    r"|(?P<id>[A-Za-z_][A-Za-z_0-9]*)"
    r")"
)


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


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
                             {"literal", "s", "function", "(", "operator"})
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "op":
            kind = value
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


_BASE_START = frozenset({"(", "function", "literal", "s"})


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

    def fail(self, expected):
        kind, value, start = self.peek()
        what = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {what}", _byte_offset(self.text, start), expected)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "eof":
            self.fail({*BINARY_OPS, "^*", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+*", "-*"):
            op = self.take()[0]
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in (".*", "/*"):
            op = self.take()[0]
            node = Binary(op, node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^*":
            self.take()
            if self.peek()[0] != "num":
                self.fail({"real"})
            node = Power(node, float(self.take()[1]))
        return node

    def base(self):
        kind, value, start = self.peek()
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail({")", *BINARY_OPS, "^*"})
            self.take()
            return node
        if kind == "loglit":
            self.take()
            return Lit(mnum.parse_mnum(value.replace(" ", "")))
        if kind == "num":
            v = float(value)
            if not v > 0:
                raise ParseError(f"decimal literal must be positive, got {value}",
                                 _byte_offset(self.text, start), {"positive-decimal"})
            self.take()
            return Lit(mnum.from_value(v))
        if kind == "id":
            if value == "s":
                self.take()
                return Var()
            if value in FUNCS:
                self.take()
                if self.peek()[0] != "(":
                    self.fail({"("})
                self.take()
                arg = self.expr()
                if self.peek()[0] != ")":
                    self.fail({")", *BINARY_OPS, "^*"})
                self.take()
                return Unary(value, arg)
            raise UnknownIdentifierError(f"unknown identifier {value!r}",
                                         _byte_offset(self.text, start), {"s", *FUNCS})
        self.fail(_BASE_START)


def parse(text: str) -> MExpr:
    """Parse a multiplicative expression into its AST."""
    return _Parser(text).parse()


# --- rendering ---------------------------------------------------------------

_PREC = {"+*": 1, "-*": 1, ".*": 2, "/*": 2}


def _prec(node) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Power):
        return 3
    return 4


def render(node: MExpr) -> str:
    """Text that parses back to an identical AST."""
    if isinstance(node, Lit):
        return mnum.render(node.value, "log")
    if isinstance(node, Var):
        return "s"
    if isinstance(node, Unary):
        return f"{node.op}({render(node.arg)})"
    if isinstance(node, Power):
        base = render(node.base)
        if _prec(node.base) < 4:
            base = f"({base})"
        return f"{base}^*{format_real(node.exponent)}"
    p = _PREC[node.op]
    left, right = render(node.left), render(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# --- evaluation --------------------------------------------------------------

_UNARY = {
    "msin": mnum.msin, "mcos": mnum.mcos, "mtan": mnum.mtan, "mcot": mnum.mcot,
    "msqrt": mnum.msqrt, "mneg": mnum.mneg, "mabs": mnum.mabs,
}
_BINARY = {"+*": mnum.madd, "-*": mnum.msub, ".*": mnum.mmul, "/*": mnum.mdiv}


def evaluate(node: MExpr, s: MNum) -> MNum:
    """Evaluate with multiplicative arithmetic at parameter ``s``."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Var):
        return s
    if isinstance(node, Unary):
        return _UNARY[node.op](evaluate(node.arg, s))
    if isinstance(node, Power):
        return mnum.mpow(evaluate(node.base, s), node.exponent)
    return _BINARY[node.op](evaluate(node.left, s), evaluate(node.right, s))


_BRIDGE_BINARY = {"+*": "+", "-*": "-", ".*": "*", "/*": "/"}
_BRIDGE_UNARY = {"msin": "sin", "mcos": "cos", "mtan": "tan", "mcot": "cot",
                 "msqrt": "sqrt", "mabs": "abs"}


def to_bridge(node: MExpr) -> C.CExpr:
    """The classical expression B in U = log s with log(expr(s)) = B(log s)."""
    if isinstance(node, Lit):
        return C.Num(node.value.logval)
    if isinstance(node, Var):
        return C.VarU()
    if isinstance(node, Unary):
        arg = to_bridge(node.arg)
        if node.op == "mneg":
            return C.Neg(arg)
        return C.Call(_BRIDGE_UNARY[node.op], arg)
    if isinstance(node, Power):
        return C.BinOp("^", to_bridge(node.base), C.Num(node.exponent))
    return C.BinOp(_BRIDGE_BINARY[node.op], to_bridge(node.left), to_bridge(node.right))


def bridge_eval(node: MExpr, U: float) -> float:
    return C.evaluate_classical(to_bridge(node), U)


@dataclass(frozen=True)
class BridgeDerivative:
    """d^order B / dU^order for the bridge B of a multiplicative expression."""

    expr: C.CExpr
    order: int

    def __call__(self, U: float) -> float:
        return float(C.classical_jet(self.expr, U, self.order)[self.order])

    def __str__(self):
        return f"d^{self.order}/du^{self.order} [{C.render_classical(self.expr)}]"


def bridge_diff(node: MExpr, order: int) -> BridgeDerivative:
    if not 0 <= order <= 3:
        raise ValueError("bridge_diff supports orders 0..3")
    return BridgeDerivative(to_bridge(node), order)


def component_map(text: str, form: str = "mult") -> ScalarMapJet:
    """A curve component from text.

    ``form='mult'`` reads a multiplicative expression in ``s``;
    ``form='log'`` reads a classical expression g in ``u`` with
    x(s) = e^(g(log s)).
    """
    if form == "mult":
        ast = parse(text)
        expr = to_bridge(ast)
        return ScalarMapJet(lambda s: evaluate(ast, s), lambda U, k: C.classical_jet(expr, U, k))
    if form == "log":
        expr = C.parse_classical(text)
        return ScalarMapJet(lambda s: MNum(C.evaluate_classical(expr, s.logval)),
                            lambda U, k: C.classical_jet(expr, U, k))
    raise ValueError(f"unknown component form {form!r}; use 'mult' or 'log'")


@dataclass(frozen=True)
class CurveSpec:
    """Three component expressions, their forms, and an optional s-range."""

    components: tuple[str, str, str]
    forms: tuple[str, str, str] = ("mult", "mult", "mult")
    range: Optional[tuple[MNum, MNum]] = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.components) != 3 or len(self.forms) != 3:
            raise ValueError("a curve spec needs exactly 3 components")
        for f in self.forms:
            if f not in ("mult", "log"):
                raise ValueError(f"unknown component form {f!r}")
        if self.range is not None and not self.range[0] < self.range[1]:
            raise DomainError("curve range needs s_min < s_max")

    def to_json(self) -> dict:
        doc = {"components": list(self.components), "form": list(self.forms)}
        if self.range is not None:
            doc["range"] = [mnum.render(r, "log") for r in self.range]
        return doc


def range_value(v) -> MNum:
    """A range end given as a literal string or a positive number."""
    if isinstance(v, str):
        return mnum.parse_mnum(v)
    return mnum.from_value(v)


def curve_spec_from_json(doc: dict) -> CurveSpec:
    comps = doc.get("components")
    if not isinstance(comps, list) or len(comps) != 3:
        raise ValueError("'components' must be a list of 3 strings")
    form = doc.get("form", "mult")
    forms = (form,) * 3 if isinstance(form, str) else tuple(form)
    rng = doc.get("range")
    rng = None if rng is None else (range_value(rng[0]), range_value(rng[1]))
    return CurveSpec(tuple(comps), forms, rng)


def load_curve_spec(source: Union[str, Path, dict]) -> CurveSpec:
    """Read a CurveSpec from a JSON file path or an already decoded document."""
    if isinstance(source, dict):
        return curve_spec_from_json(source)
    with open(source) as fh:
        return curve_spec_from_json(json.load(fh))
