"""
The multiplicative real line R* = (0, inf).

Every multiplicative number is stored by its natural logarithm, so the
generator exp carries classical arithmetic on logs to multiplicative
arithmetic on positive reals:

    a +* b = e^(log a + log b)      a ·* b = e^(log a · log b)
    a -* b = e^(log a - log b)      a /* b = e^(log a / log b)

Working on logs keeps values such as e^(±500) representable and makes
+* and -* exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError, MultiplicativeZeroDivisionError, NumericalDomainError, ParseError

__all__ = [
    "MNum", "ZERO", "ONE", "E2",
    "from_value", "to_value", "from_log", "to_log",
    "madd", "msub", "mmul", "mdiv", "mneg", "minv", "mabs",
    "mpow", "msqrt", "square_of_sum", "diff_of_squares",
    "msin", "mcos", "mtan", "mcot", "marccos",
    "isclose", "log_distance", "render", "parse_mnum", "format_real",
    "DEFAULT_ATOL", "DEFAULT_RTOL",
]

DEFAULT_ATOL = 1e-12
DEFAULT_RTOL = 1e-9

_DISPLAY_LOG_BOUND = math.log(1e6)

# |cos| or |sin| below this is treated as a pole of tan*/cot*
_POLE_EPS = 4 * 2.220446049250313e-16


@dataclass(frozen=True, order=True)
class MNum:
    """A multiplicative real number, represented by ``logval = log a``.

    Ordering follows the multiplicative order: ``a <* b`` iff
    ``log a < log b``.
    """

    logval: float

    def __post_init__(self):
        u = float(self.logval)
        if not math.isfinite(u):
            raise DomainError(f"multiplicative number needs a finite log, got {self.logval!r}")
        object.__setattr__(self, "logval", u)

    @property
    def value(self) -> float:
        """The represented positive real (may overflow to inf for huge logs)."""
        return math.exp(self.logval)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MNum({render(self, 'log')})"


ZERO = MNum(0.0)  # 0* = 1
ONE = MNum(1.0)   # 1* = e
E2 = MNum(2.0)


def from_value(v: float) -> MNum:
    """Wrap a positive real ``v`` as a multiplicative number."""
    v = float(v)
    if not (v > 0 and math.isfinite(v)):
        raise DomainError(f"multiplicative numbers are positive and finite, got {v!r}")
    return MNum(math.log(v))


def to_value(x: MNum) -> float:
    return x.value


def from_log(u: float) -> MNum:
    return MNum(u)


def to_log(x: MNum) -> float:
    return x.logval


def madd(a: MNum, b: MNum) -> MNum:
    return MNum(a.logval + b.logval)


def msub(a: MNum, b: MNum) -> MNum:
    return MNum(a.logval - b.logval)


def mmul(a: MNum, b: MNum) -> MNum:
    return MNum(a.logval * b.logval)


def mdiv(a: MNum, b: MNum) -> MNum:
    if b.logval == 0.0:
        raise MultiplicativeZeroDivisionError("division by 0* (the number 1)")
    return MNum(a.logval / b.logval)


def mneg(a: MNum) -> MNum:
    """Additive inverse: -*a = 1/a."""
    return MNum(-a.logval)


def minv(a: MNum) -> MNum:
    """Multiplicative inverse: a^(-1*) = e^(1/log a)."""
    if a.logval == 0.0:
        raise MultiplicativeZeroDivisionError("0* has no multiplicative inverse")
    return MNum(1.0 / a.logval)


def mabs(a: MNum) -> MNum:
    """|a|* is a for a >= 0* (a >= 1) and -*a = 1/a for a in (0, 1)."""
    return a if a.logval >= 0.0 else MNum(-a.logval)


def mpow(a: MNum, k: float) -> MNum:
    """a^(k*) = e^((log a)^k).

    Integer ``k`` is allowed on multiplicative-negative ``a``; a non-integer
    ``k`` there is a domain error.
    """
    u = a.logval
    k = float(k)
    integral = k.is_integer()
    if u < 0.0 and not integral:
        raise DomainError(f"non-integer power {k} of a multiplicative-negative number")
    if u == 0.0 and k < 0.0:
        raise MultiplicativeZeroDivisionError(f"0* raised to negative power {k}")
    try:
        return MNum(u ** int(k) if integral else u ** k)
    except OverflowError:
        raise NumericalDomainError(f"(log a)^{k} overflows for log a = {u!r}") from None


def msqrt(a: MNum) -> MNum:
    if a.logval < 0.0:
        raise DomainError("multiplicative square root of a number below 0*")
    return MNum(math.sqrt(a.logval))


def square_of_sum(a: MNum, b: MNum) -> MNum:
    """a^(2*) +* e^2 ·* a ·* b +* b^(2*), which equals (a +* b)^(2*)."""
    return madd(madd(mpow(a, 2), mmul(mmul(E2, a), b)), mpow(b, 2))


def diff_of_squares(a: MNum, b: MNum) -> MNum:
    """(a +* b) ·* (a -* b), which equals a^(2*) -* b^(2*)."""
    return mmul(madd(a, b), msub(a, b))


def msin(theta: MNum) -> MNum:
    return MNum(math.sin(theta.logval))


def mcos(theta: MNum) -> MNum:
    return MNum(math.cos(theta.logval))


def mtan(theta: MNum) -> MNum:
    c = math.cos(theta.logval)
    if abs(c) < _POLE_EPS:
        raise DomainError(f"tan* has a pole at e^{theta.logval}")
    return MNum(math.sin(theta.logval) / c)


def mcot(theta: MNum) -> MNum:
    s = math.sin(theta.logval)
    if abs(s) < _POLE_EPS:
        raise DomainError(f"cot* has a pole at e^{theta.logval}")
    return MNum(math.cos(theta.logval) / s)


def marccos(x: MNum) -> MNum:
    """Inverse of cos*; the log of the result lies in [0, pi]."""
    if not -1.0 <= x.logval <= 1.0:
        raise DomainError(f"arccos* needs log x in [-1, 1], got {x.logval}")
    return MNum(math.acos(x.logval))


def log_distance(a: MNum, b: MNum) -> float:
    """|log a - log b|, the multiplicative metric read through the generator."""
    return abs(a.logval - b.logval)


def isclose(a: MNum, b: MNum, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> bool:
    return abs(a.logval - b.logval) <= atol + rtol * abs(b.logval)


# ---------------------------------------------------------------------------
# text form

_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_LOG_LITERAL = re.compile(rf"e\^(?:\{{\s*({_REAL})\s*\}}|({_REAL}))")
_VALUE_LITERAL = re.compile(rf"{_REAL}")


def format_real(u: float) -> str:
    """Shortest round-tripping text for a float, without a trailing '.0'."""
    text = repr(float(u))
    if text.endswith(".0"):
        text = text[:-2]
    if text == "-0":
        text = "0"
    return text


def render(x: MNum, form: str | None = None) -> str:
    """Render ``x`` as ``e^<log>`` (form='log') or a decimal (form='value').

    With ``form=None`` the decimal is used for values in [1e-6, 1e6] and
    the log form otherwise.
    """
    if form is None:
        form = "value" if abs(x.logval) <= _DISPLAY_LOG_BOUND else "log"
    if form == "log":
        return "e^" + format_real(x.logval)
    if form == "value":
        return repr(math.exp(x.logval))
    raise ValueError(f"unknown rendering {form!r}")


def parse_mnum(text: str) -> MNum:
    """Parse ``e^<real>`` (or ``e^{<real>}``) or a positive decimal."""
    s = text.strip()
    m = _LOG_LITERAL.fullmatch(s)
    if m:
        return MNum(float(m.group(1) or m.group(2)))
    if _VALUE_LITERAL.fullmatch(s):
        v = float(s)
        if v <= 0:
            raise DomainError(f"decimal multiplicative literal must be positive: {text!r}")
        return from_value(v)
    raise ParseError(f"not a multiplicative literal: {text!r}", 0, {"e^<real>", "positive decimal"})
