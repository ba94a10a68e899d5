"""
Truncated Taylor arithmetic (forward-mode AD of arbitrary order).

A ``Jet`` of order K about a point x0 holds the Taylor coefficients
c_0..c_K of a function, so ``c_k = f^(k)(x0) / k!``.  Arithmetic and the
elementary functions use the usual coefficient recurrences, so derivatives
come out exact up to rounding.  Mixing jets of different orders truncates
to the shorter one.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .errors import DomainError, NonDifferentiableError, NumericalDomainError

__all__ = ["Jet", "vdot", "vcross", "vnorm", "vscale", "compose", "revert"]

# matches the pole threshold of mnum.mtan / mnum.mcot
POLE_EPS = 4 * 2.220446049250313e-16

_FACT = [float(math.factorial(k)) for k in range(32)]


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.array(coeffs, dtype=float)

    # --- construction -----------------------------------------------------

    @classmethod
    def variable(cls, x0: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, x: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = x
        return cls(c)

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        d = np.asarray(derivs, dtype=float)
        return cls(d / np.array(_FACT[: len(d)]))

    def derivatives(self) -> np.ndarray:
        return self.c * np.array(_FACT[: len(self.c)])

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self) -> float:
        return float(self.c[0])

    def derivative(self) -> "Jet":
        """The jet of f' (one order shorter)."""
        k = np.arange(1, len(self.c))
        return Jet(self.c[1:] * k)

    def truncate(self, order: int) -> "Jet":
        return Jet(self.c[: order + 1])

    def is_constant(self) -> bool:
        return not np.any(self.c[1:])

    def __repr__(self):
        return f"Jet({self.c.tolist()})"

    # --- arithmetic -------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Jet):
            n = min(len(self.c), len(other.c))
            return self.c[:n], other.c[:n]
        if isinstance(other, Real):
            o = np.zeros_like(self.c)
            o[0] = other
            return self.c, o
        return NotImplemented

    def __add__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return Jet(p[0] + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return Jet(p[0] - p[1])

    def __rsub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return Jet(p[1] - p[0])

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Real):
            return Jet(self.c * other)
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return Jet(np.convolve(a, b)[: len(a)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real):
            if other == 0:
                raise NumericalDomainError("jet division by zero")
            return Jet(self.c / other)
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return _div(*p)

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return _div(p[1], p[0])

    def __pow__(self, k):
        if isinstance(k, Jet):
            if k.is_constant():
                return self ** k.value
            return (k * self.log()).exp()
        if not isinstance(k, Real):
            return NotImplemented
        return _pow(self, float(k))

    def __rpow__(self, base):
        if not isinstance(base, Real):
            return NotImplemented
        if base <= 0:
            raise DomainError(f"non-positive base {base} raised to a jet power")
        return (self * math.log(base)).exp()

    def __abs__(self):
        x0 = self.c[0]
        if x0 > 0:
            return self
        if x0 < 0:
            return -self
        if np.any(self.c[1:]):
            raise NonDifferentiableError("abs is not differentiable at 0")
        return Jet(np.zeros_like(self.c))

    # --- elementary functions ---------------------------------------------

    def exp(self) -> "Jet":
        x = self.c
        y = np.zeros_like(x)
        y[0] = math.exp(x[0])
        for n in range(1, len(x)):
            j = np.arange(1, n + 1)
            y[n] = np.dot(j * x[1 : n + 1], y[n - 1 :: -1][: n]) / n
        return Jet(y)

    def log(self) -> "Jet":
        x = self.c
        if x[0] <= 0:
            raise DomainError(f"log of non-positive value {x[0]}")
        y = np.zeros_like(x)
        y[0] = math.log(x[0])
        for n in range(1, len(x)):
            acc = 0.0
            for j in range(1, n):
                acc += j * y[j] * x[n - j]
            y[n] = (x[n] - acc / n) / x[0]
        return Jet(y)

    def sincos(self) -> tuple["Jet", "Jet"]:
        x = self.c
        s = np.zeros_like(x)
        c = np.zeros_like(x)
        s[0], c[0] = math.sin(x[0]), math.cos(x[0])
        for n in range(1, len(x)):
            js, jc = 0.0, 0.0
            for j in range(1, n + 1):
                js += j * x[j] * c[n - j]
                jc += j * x[j] * s[n - j]
            s[n], c[n] = js / n, -jc / n
        return Jet(s), Jet(c)

    def sin(self) -> "Jet":
        return self.sincos()[0]

    def cos(self) -> "Jet":
        return self.sincos()[1]

    def tan(self) -> "Jet":
        s, c = self.sincos()
        if abs(c.c[0]) < POLE_EPS:
            raise DomainError("tan has a pole here")
        return s / c

    def cot(self) -> "Jet":
        s, c = self.sincos()
        if abs(s.c[0]) < POLE_EPS:
            raise DomainError("cot has a pole here")
        return c / s

    def sqrt(self) -> "Jet":
        return _pow(self, 0.5)


def _div(a: np.ndarray, b: np.ndarray) -> Jet:
    if b[0] == 0:
        raise NumericalDomainError("jet division by zero")
    q = np.zeros_like(a)
    for n in range(len(a)):
        q[n] = (a[n] - np.dot(b[1 : n + 1], q[n - 1 :: -1][:n] if n else q[:0])) / b[0]
    return Jet(q)


def _pow(x: Jet, k: float) -> Jet:
    if k == 0:
        return Jet.constant(1.0, x.order)
    if k.is_integer() and abs(k) <= 64:
        n = int(abs(k))
        result = Jet.constant(1.0, x.order)
        base = x
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return 1.0 / result if k < 0 else result
    x0 = x.c[0]
    if x0 < 0:
        raise DomainError(f"non-integer power {k} of negative value {x0}")
    if x0 == 0:
        if np.any(x.c[1:]) or k < 0:
            raise NonDifferentiableError(f"power {k} is not differentiable at 0")
        return Jet(np.zeros_like(x.c))
    c = x.c
    y = np.zeros_like(c)
    y[0] = x0 ** k
    for n in range(1, len(c)):
        acc = 0.0
        for j in range(1, n + 1):
            acc += ((k + 1.0) * j - n) * c[j] * y[n - j]
        y[n] = acc / (n * x0)
    return Jet(y)


# --- small vector helpers (vectors are sequences of Jets) -----------------

def vdot(a, b) -> Jet:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a, b) -> list:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def vnorm(a) -> Jet:
    return vdot(a, a).sqrt()


def vscale(a, s) -> list:
    return [ai * s for ai in a]


def compose(outer: Jet, inner: Jet) -> Jet:
    """Series of outer(x0 + inner(w) - inner_0) in powers of w.

    ``outer`` holds coefficients about x0; only the non-constant part of
    ``inner`` is used.
    """
    delta = Jet(np.concatenate([[0.0], inner.c[1:]]))
    n = min(len(outer.c), len(inner.c))
    result = Jet.constant(outer.c[n - 1], n - 1)
    for k in range(n - 2, -1, -1):
        result = result * delta.truncate(n - 1) + outer.c[k]
    return result


def revert(series: Jet) -> Jet:
    """Inverse series: for s(h) = s_1 h + s_2 h^2 + ... return h(w) with s(h(w)) = w."""
    s1 = series.c[1]
    if s1 == 0:
        raise NumericalDomainError("series with zero linear term cannot be reverted")
    n = len(series.c)
    u = np.zeros(n)
    u[1] = 1.0 / s1
    for k in range(2, n):
        r = compose(series, Jet(u))
        u[k] = -r.c[k] / s1
    return Jet(u)
