"""
Curves with prescribed curvature and torsion.

The bridge Frenet system F' = T, T' = kN, N' = -kT + tB, B' = -tN is
integrated with classical RK4 on a fixed grid, re-orthonormalizing the
frame after every step.  Higher derivatives at a point come from the frame
there: writing F^(j) = a T + b N + c B, one more derivative maps
(a, b, c) to (a' - k b, b' + k a - t c, c' + t b), with k and t as jets.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import AccuracyError, DomainError, NumericalDomainError
from ..jet import Jet
from ..mcalc import fd_derivatives
from .core import CurveJet

__all__ = ["curve_from_curvatures", "DEFAULT_STEP"]

DEFAULT_STEP = 1e-3
ORTHO_TOL = 1e-6


def _frame_rhs(k, t, y):
    T, N, B = y[1], y[2], y[3]
    return np.array([T, k * N, -k * T + t * B, -t * N])


def _orthonormalize(y):
    T = y[1] / np.linalg.norm(y[1])
    N = y[2] - np.dot(y[2], T) * T
    N /= np.linalg.norm(N)
    B = np.cross(T, N)
    return np.array([y[0], T, N, B])


def _scalar_jets(fn: Callable, U: float, order: int) -> Jet:
    """Jet of fn about U, exact when fn accepts Jets, else finite differences."""
    try:
        out = fn(Jet.variable(U, order))
    except (TypeError, AttributeError):
        out = None
    if isinstance(out, Jet):
        return out
    if out is not None:
        return Jet.constant(float(out), order)
    if order > 3:
        raise NumericalDomainError("curvature laws without jet support allow derivative order <= 3")
    return Jet.from_derivatives(fd_derivatives(lambda x: float(fn(x)), U, order))


def curve_from_curvatures(kappa_log: Callable, tau_log: Callable, U_range,
                          step: float = DEFAULT_STEP, name: str = "synthesized") -> CurveJet:
    """Natural curve whose bridge has curvature kappa_log(U) and torsion tau_log(U).

    The curve starts at the multiplicative origin with frame equal to the
    standard basis at U_range[0].
    """
    U0, U1 = map(float, U_range)
    if not U0 < U1:
        raise DomainError("U_range needs U0 < U1")
    k_of = lambda U: float(kappa_log(U))  # noqa: E731
    t_of = lambda U: float(tau_log(U))  # noqa: E731

    def rk4(U, y, h):
        k1 = _frame_rhs(k_of(U), t_of(U), y)
        km, tm = k_of(U + h / 2), t_of(U + h / 2)
        k2 = _frame_rhs(km, tm, y + h / 2 * k1)
        k3 = _frame_rhs(km, tm, y + h / 2 * k2)
        k4 = _frame_rhs(k_of(U + h), t_of(U + h), y + h * k3)
        return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    steps = max(1, math.ceil((U1 - U0) / step))
    grid = np.linspace(U0, U1, steps + 1)
    h = grid[1] - grid[0]
    states = np.empty((steps + 1, 4, 3))
    states[0] = np.array([np.zeros(3), np.eye(3)[0], np.eye(3)[1], np.eye(3)[2]])
    for i in range(steps):
        if k_of(grid[i]) <= 0:
            raise DomainError(f"kappa_log must be positive, got {k_of(grid[i])} at U={grid[i]}")
        raw = rk4(grid[i], states[i], h)
        drift = np.abs(raw[1:] @ raw[1:].T - np.eye(3)).max()
        if not np.isfinite(drift) or drift > ORTHO_TOL:
            raise AccuracyError(f"frame drift {drift:.2e} exceeds {ORTHO_TOL} at U={grid[i]}; "
                                "use a smaller step", estimate=drift)
        states[i + 1] = _orthonormalize(raw)

    def state_at(U):
        if not (U0 - 1e-12 <= U <= U1 + 1e-12):
            raise DomainError(f"U={U} outside synthesized range [{U0}, {U1}]")
        i = int(np.clip(round((U - U0) / h), 0, steps))
        if U == grid[i]:
            return states[i]
        return _orthonormalize(rk4(grid[i], states[i], U - grid[i]))

    def jetfn(U, order):
        y = state_at(U)
        out = np.empty((order + 1, 3))
        out[0] = y[0]
        if order == 0:
            return out
        frame = y[1:]
        kj = _scalar_jets(kappa_log, U, order - 1)
        tj = _scalar_jets(tau_log, U, order - 1)
        a = Jet.constant(1.0, order - 1)
        b = Jet.constant(0.0, order - 1)
        c = Jet.constant(0.0, order - 1)
        for j in range(1, order + 1):
            out[j] = a.value * frame[0] + b.value * frame[1] + c.value * frame[2]
            if j == order:
                break
            a, b, c = (a.derivative() - kj * b, b.derivative() + kj * a - tj * c,
                       c.derivative() + tj * b)
        return out

    return CurveJet(jetfn, (U0, U1), "synthesized", name)
