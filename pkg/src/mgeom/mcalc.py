"""
Multiplicative derivative and integral, computed in bridge coordinates.

For a positive function f put F(U) = log f(e^U).  The multiplicative
derivative satisfies  log f*(s) = F'(log s)  and the multiplicative
integral  log ∫* f ·* d*s = ∫ F(U) dU,  so both operators reduce to
classical calculus on F.  A multiplicative step h -> 0* is a classical
step in U, which avoids cancellation in ratios f(sh)/f(s) near 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AccuracyError, DomainError, NumericalDomainError
from .jet import Jet
from .mnum import MNum

__all__ = [
    "ScalarMapJet", "star_derivative", "star_integral_definite",
    "star_antiderivative", "star_arclength", "fd_derivative", "fd_derivatives",
    "adaptive_simpson", "default_step",
]

_EPS = np.finfo(float).eps
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class ScalarMapJet:
    """A positive scalar map s -> f(s) on R*, optionally with exact bridge jets.

    ``bridge_derivs(U, k)`` returns [F(U), F'(U), ..., F^(k)(U)] for
    F(U) = log f(e^U).  Without it, derivatives fall back to finite
    differences (orders up to 3).
    """

    eval: Callable[[MNum], MNum]
    bridge_derivs: Optional[Callable[[float, int], Sequence[float]]] = None

    @classmethod
    def from_log_function(cls, g: Callable) -> "ScalarMapJet":
        """Build from F given as a jet-aware callable (operators and Jet methods only)."""

        def jet(U, order):
            out = g(Jet.variable(U, order))
            if isinstance(out, Jet):
                return out.derivatives()
            return Jet.constant(float(out), order).derivatives()

        def value(s):
            out = g(s.logval)
            return MNum(out.value if isinstance(out, Jet) else out)

        return cls(value, jet)

    @classmethod
    def constant(cls, c: MNum) -> "ScalarMapJet":
        return cls(lambda s: c, lambda U, k: [c.logval] + [0.0] * k)

    def __call__(self, s: MNum) -> MNum:
        return self.eval(s)

    def bridge(self, U: float) -> float:
        """F(U) = log f(e^U)."""
        return self.eval(MNum(U)).logval

    def jet(self, U: float, order: int) -> np.ndarray:
        """Derivative values F(U), F'(U), ..., F^(order)(U)."""
        if self.bridge_derivs is not None:
            d = np.asarray(self.bridge_derivs(U, order), dtype=float)[: order + 1]
            if len(d) < order + 1:
                raise NumericalDomainError(f"jet provides fewer than {order} derivatives")
            return d
        return fd_derivatives(self.bridge, U, order)


def default_step(U: float, order: int) -> float:
    """eps^(1/(order+2)) scaled by max(1, |U|); eps^(1/3) for order 1."""
    return _EPS ** (1.0 / (order + 2)) * max(1.0, abs(U))


def _safe(F, U):
    try:
        v = F(U)
    except DomainError as exc:
        raise NumericalDomainError(f"function undefined near U={U}: {exc}") from exc
    if not math.isfinite(v):
        raise NumericalDomainError(f"non-finite value near U={U}")
    return v


def _central(F, U, order, h):
    if order == 1:
        return (_safe(F, U + h) - _safe(F, U - h)) / (2 * h)
    if order == 2:
        return (_safe(F, U + h) - 2 * _safe(F, U) + _safe(F, U - h)) / (h * h)
    if order == 3:
        return (_safe(F, U + 2 * h) - 2 * _safe(F, U + h)
                + 2 * _safe(F, U - h) - _safe(F, U - 2 * h)) / (2 * h ** 3)
    raise ValueError(f"finite differences support orders 1..3, got {order}")


def fd_derivative(F: Callable[[float], float], U: float, order: int, h: float | None = None) -> float:
    """Central difference of order 1..3 with one Richardson level."""
    if h is None:
        h = default_step(U, order)
    coarse = _central(F, U, order, h)
    fine = _central(F, U, order, h / 2)
    return (4.0 * fine - coarse) / 3.0


def fd_derivatives(F: Callable[[float], float], U: float, order: int) -> np.ndarray:
    out = [_safe(F, U)]
    out += [fd_derivative(F, U, k) for k in range(1, order + 1)]
    return np.array(out)


def star_derivative(f: ScalarMapJet, s: MNum, order: int = 1) -> MNum:
    """k-th multiplicative derivative f^(k*)(s); its log is F^(k)(log s)."""
    if order not in (1, 2, 3):
        raise ValueError("star_derivative supports orders 1, 2 and 3")
    U = s.logval
    if f.bridge_derivs is not None:
        d = float(np.asarray(f.bridge_derivs(U, order), dtype=float)[order])
    else:
        d = fd_derivative(f.bridge, U, order)
    if not math.isfinite(d):
        raise NumericalDomainError(f"non-finite derivative at s=e^{U}")
    return MNum(d)


def adaptive_simpson(fn: Callable[[float], float], a: float, b: float,
                     tol: float = QUAD_TOL, max_depth: int = 50) -> float:
    """Adaptive Simpson quadrature of ``fn`` over [a, b] (either orientation)."""
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(fn, b, a, tol, max_depth)

    def simpson(x0, f0, x2, f2):
        x1 = 0.5 * (x0 + x2)
        f1 = fn(x1)
        return x1, f1, (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    fa, fb = fn(a), fn(b)
    m, fm, whole = simpson(a, fa, b, fb)
    total = 0.0
    failed = False
    # explicit stack: (x0, f0, x1, f1, x2, f2, whole, tol, depth)
    stack = [(a, fa, m, fm, b, fb, whole, tol, 0)]
    while stack:
        x0, f0, x1, f1, x2, f2, est, eps, depth = stack.pop()
        lm, flm, left = simpson(x0, f0, x1, f1)
        rm, frm, right = simpson(x1, f1, x2, f2)
        delta = left + right - est
        if not math.isfinite(delta):
            raise NumericalDomainError("non-finite integrand")
        if abs(delta) <= 15.0 * eps or depth >= max_depth:
            if abs(delta) > 15.0 * eps:
                failed = True
            total += left + right + delta / 15.0
        else:
            stack.append((x0, f0, lm, flm, x1, f1, left, eps / 2.0, depth + 1))
            stack.append((x1, f1, rm, frm, x2, f2, right, eps / 2.0, depth + 1))
    if failed:
        raise AccuracyError(f"adaptive Simpson did not reach tol={tol}", estimate=total)
    return total


def star_integral_definite(f: ScalarMapJet, a: MNum, b: MNum, tol: float = QUAD_TOL) -> MNum:
    """Definite multiplicative integral of f from a to b; log result = ∫ F dU."""
    return MNum(adaptive_simpson(lambda U: _safe(f.bridge, U), a.logval, b.logval, tol))


def star_antiderivative(f: ScalarMapJet, a: MNum, tol: float = QUAD_TOL) -> ScalarMapJet:
    """s -> ∫*_a^s f ·* d*s, carrying exact bridge jets (G' = F)."""

    def value(s):
        return star_integral_definite(f, a, s, tol)

    def jet(U, order):
        g0 = value(MNum(U)).logval
        if order == 0:
            return [g0]
        return [g0, *f.jet(U, order - 1)]

    return ScalarMapJet(value, jet)


def star_arclength(curve, a: MNum, b: MNum, tol: float = QUAD_TOL) -> MNum:
    """Multiplicative arc length of ``curve`` between parameters a and b.

    Its log is the classical length of the bridge curve over [log a, log b].
    """

    def speed(U):
        d = curve.jet(U, 1)
        return float(np.linalg.norm(d[1]))

    return MNum(adaptive_simpson(speed, a.logval, b.logval, tol))

