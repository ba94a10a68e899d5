"""
Curves in multiplicative Euclidean 3-space and their Frenet apparatus.

A curve s -> x(s) is held through its bridge F(U) = log x(e^U): the
multiplicative velocity x*(s) has log-image F'(U), x**(s) has F''(U), and
every multiplicative frame quantity is exp of the classical one of F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..errors import (
    AccuracyError, DomainError, FrameUndefinedError, NotNaturalError,
    NumericalDomainError, SingularCurveError,
)
from ..jet import Jet, compose, revert, vcross, vdot, vnorm
from ..mcalc import QUAD_TOL, ScalarMapJet, adaptive_simpson
from ..mnum import MNum, format_real
from ..mvec import MVec

__all__ = [
    "CurveJet", "FrenetApparatus", "NaturalReport", "Apparatus",
    "speed_star", "is_natural", "frenet", "frenet_residuals", "apparatus",
    "curvature_jets", "reparametrize_natural", "sample_params",
    "NATURAL_TOL", "KAPPA_EPS",
]

NATURAL_TOL = 1e-6
# below this log-curvature the principal normal is treated as undefined
KAPPA_EPS = 1e-10
SPEED_EPS = 1e-12


def _as_jet(x, order):
    return x if isinstance(x, Jet) else Jet.constant(float(x), order)


@dataclass(frozen=True, eq=False)
class CurveJet:
    """A curve given by derivative values of its bridge.

    ``jetfn(U, k)`` returns a (k+1, 3) array whose row j is F^(j)(U).
    ``domain`` is the parameter interval in bridge coordinates, so the
    multiplicative parameter runs over [e^U0, e^U1].
    """

    jetfn: Callable[[float, int], np.ndarray]
    domain: tuple[float, float]
    provenance: str = "dsl"
    name: str = ""
    # set on reparametrized curves: parameter maps to and from the source curve
    to_parent: Optional[Callable[[float], float]] = field(default=None, repr=False)
    from_parent: Optional[Callable[[float], float]] = field(default=None, repr=False)
    parent: Optional["CurveJet"] = field(default=None, repr=False)

    def __post_init__(self):
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise DomainError(f"curve domain needs finite U0 < U1, got {self.domain}")

    @classmethod
    def from_bridge(cls, fn: Callable, domain, provenance="catalog", name=""):
        """Build from a jet-aware map U -> (F1, F2, F3)."""

        def jetfn(U, order):
            comps = fn(Jet.variable(U, order))
            return np.column_stack([_as_jet(c, order).derivatives() for c in comps])

        return cls(jetfn, tuple(domain), provenance, name)

    @classmethod
    def from_components(cls, comps: Sequence[ScalarMapJet], domain, provenance="dsl", name=""):
        if len(comps) != 3:
            raise ValueError("a space curve needs 3 components")

        def jetfn(U, order):
            cols = []
            for c in comps:
                if order <= 3 or c.bridge_derivs is not None:
                    cols.append(c.jet(U, order))
                else:
                    raise NumericalDomainError("finite-difference components support order <= 3")
            return np.column_stack(cols)

        return cls(jetfn, tuple(domain), provenance, name)

    def jet(self, U: float, order: int) -> np.ndarray:
        out = np.asarray(self.jetfn(U, order), dtype=float)
        if not np.all(np.isfinite(out)):
            raise NumericalDomainError(f"non-finite curve derivatives at U={U}")
        return out

    def jets(self, U: float, order: int) -> list[Jet]:
        """Taylor jets of the three bridge components about U."""
        d = self.jet(U, order)
        return [Jet.from_derivatives(d[:, i]) for i in range(3)]

    def point(self, s: MNum) -> MVec:
        return MVec(tuple(self.jet(s.logval, 0)[0]))

    def bridge_point(self, U: float) -> np.ndarray:
        return self.jet(U, 0)[0]

    @property
    def components(self) -> tuple[ScalarMapJet, ...]:
        def comp(i):
            return ScalarMapJet(lambda s: MNum(self.jet(s.logval, 0)[0, i]),
                                lambda U, k: self.jet(U, k)[:, i])

        return tuple(comp(i) for i in range(3))

    @property
    def s_range(self) -> tuple[MNum, MNum]:
        return MNum(self.domain[0]), MNum(self.domain[1])

    def with_domain(self, domain) -> "CurveJet":
        return CurveJet(self.jetfn, tuple(domain), self.provenance, self.name,
                        self.to_parent, self.from_parent, self.parent)

    def __repr__(self):
        a, b = self.domain
        return f"CurveJet({self.name or self.provenance}, U in [{format_real(a)}, {format_real(b)}])"


def sample_params(curve: CurveJet, n: int = 64, margin: float = 0.0) -> np.ndarray:
    """n bridge parameters spread uniformly over the domain (log-uniform in s)."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    a, b = curve.domain
    pad = margin * (b - a)
    return np.linspace(a + pad, b - pad, n)


# --- speed and naturalness ---------------------------------------------------

def speed_star(curve: CurveJet, s: MNum) -> MNum:
    """||x*(s)||*, whose log is the bridge speed |F'(log s)|."""
    v = float(np.linalg.norm(curve.jet(s.logval, 1)[1]))
    if v < SPEED_EPS:
        raise SingularCurveError(f"curve is singular at s = e^{format_real(s.logval)}", s)
    return MNum(v)


@dataclass(frozen=True)
class NaturalReport:
    natural: bool
    max_deviation: float  # max |log speed - 1| (unit speed read as 1* = e)
    zero_star_deviation: float  # max |log speed - 0| (the literal "= 1" reading)
    samples: int

    def __bool__(self):
        return self.natural


def is_natural(curve: CurveJet, n: int = 64, tol: float = NATURAL_TOL) -> NaturalReport:
    speeds = np.array([np.linalg.norm(curve.jet(U, 1)[1]) for U in sample_params(curve, n)])
    dev = float(np.max(np.abs(speeds - 1.0)))
    return NaturalReport(dev <= tol, dev, float(np.max(np.abs(speeds))), n)


def _require_natural(d1: np.ndarray, U: float, tol: float):
    v = float(np.linalg.norm(d1))
    if abs(v - 1.0) > tol:
        raise NotNaturalError(
            f"curve is not naturally parametrized at s = e^{format_real(U)} "
            f"(log-speed {v:.6g}); reparametrize first")


# --- Frenet apparatus --------------------------------------------------------

@dataclass(frozen=True)
class FrenetApparatus:
    t: MVec
    n: MVec
    b: MVec
    kappa: MNum
    tau: MNum
    at_s: MNum

    def as_logs(self) -> dict:
        return {"t": np.array(self.t.logs), "n": np.array(self.n.logs), "b": np.array(self.b.logs),
                "kappa": self.kappa.logval, "tau": self.tau.logval}


def frenet(curve: CurveJet, s: MNum, tol: float = NATURAL_TOL) -> FrenetApparatus:
    """Frenet trihedron, curvature and torsion of a naturally parametrized curve.

    t = x*, n = x** /* ||x**||*, b = t x* n, kappa = ||x**||*, tau = <n*, b>*.
    """
    U = s.logval
    d = curve.jet(U, 3)
    _require_natural(d[1], U, tol)
    t, f2, f3 = d[1], d[2], d[3]
    k = float(np.linalg.norm(f2))
    if k < KAPPA_EPS:
        raise FrameUndefinedError(f"curvature vanishes at s = e^{format_real(U)}", s)
    n = f2 / k
    b = np.cross(t, n)
    dn = f3 / k - f2 * float(np.dot(f2, f3)) / k ** 3
    tau = float(np.dot(dn, b))
    return FrenetApparatus(MVec(tuple(t)), MVec(tuple(n)), MVec(tuple(b)), MNum(k), MNum(tau), s)


def frenet_residuals(curve: CurveJet, s: MNum, tol: float = NATURAL_TOL) -> dict:
    """Log-space residuals of the three Frenet formulae at s."""
    U = s.logval
    F = curve.jets(U, 4)
    _require_natural(np.array([f.c[1] for f in F]), U, tol)
    d1 = [f.derivative().truncate(1) for f in F]
    d2 = [f.derivative().derivative().truncate(1) for f in F]
    kj = vnorm(d2)
    if kj.value < KAPPA_EPS:
        raise FrameUndefinedError(f"curvature vanishes at s = e^{format_real(U)}", s)
    t = d1
    n = [c / kj for c in d2]
    b = vcross(t, n)
    kappa = kj.value
    tau = vdot([c.derivative() for c in n], [c.truncate(0) for c in b]).value
    val = lambda v: np.array([c.c[0] for c in v])  # noqa: E731
    der = lambda v: np.array([c.c[1] for c in v])  # noqa: E731
    return {
        "t": float(np.linalg.norm(der(t) - kappa * val(n))),
        "n": float(np.linalg.norm(der(n) + kappa * val(t) - tau * val(b))),
        "b": float(np.linalg.norm(der(b) + tau * val(n))),
    }


@dataclass(frozen=True)
class Apparatus:
    """Frenet data of any regular parametrization (bridge/log space values).

    kappa and tau are measured against arc length; ``speed`` is |F'(U)|.
    """

    U: float
    point: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float
    speed: float


def apparatus(curve: CurveJet, U: float) -> Apparatus:
    d = curve.jet(U, 3)
    f1, f2, f3 = d[1], d[2], d[3]
    v = float(np.linalg.norm(f1))
    if v < SPEED_EPS:
        raise SingularCurveError(f"curve is singular at s = e^{format_real(U)}", MNum(U))
    c = np.cross(f1, f2)
    cn = float(np.linalg.norm(c))
    if cn / v ** 3 < KAPPA_EPS:
        raise FrameUndefinedError(f"curvature vanishes at s = e^{format_real(U)}", MNum(U))
    t = f1 / v
    b = c / cn
    n = np.cross(b, t)
    return Apparatus(U, d[0], t, n, b, cn / v ** 3, float(np.dot(c, f3)) / cn ** 2, v)


def curvature_jets(curve: CurveJet, U: float, order: int) -> tuple[Jet, Jet, Jet]:
    """Jets in U of (kappa, tau, speed) for any regular parametrization.

    Derivatives are with respect to U; divide by speed for arc-length rates.
    """
    F = curve.jets(U, order + 3)
    f1 = [f.derivative() for f in F]
    f2 = [f.derivative() for f in f1]
    f3 = [f.derivative() for f in f2]
    f1 = [f.truncate(order) for f in f1]
    f2 = [f.truncate(order) for f in f2]
    c = vcross(f1, f2)
    cn2 = vdot(c, c)
    sp = vnorm(f1)
    if sp.value < SPEED_EPS:
        raise SingularCurveError(f"curve is singular at s = e^{format_real(U)}", MNum(U))
    if math.sqrt(cn2.value) / sp.value ** 3 < KAPPA_EPS:
        raise FrameUndefinedError(f"curvature vanishes at s = e^{format_real(U)}", MNum(U))
    kappa = cn2.sqrt() / sp ** 3
    tau = vdot(c, f3) / cn2
    return kappa, tau, sp


# --- natural reparametrization -------------------------------------------------

_GRID = 128


def reparametrize_natural(curve: CurveJet, tol: float = QUAD_TOL) -> CurveJet:
    """The same curve in multiplicative arc length.

    The new bridge parameter is V = sigma(U), the classical arc length of
    the bridge measured from the start of the domain.
    """
    a, b = curve.domain
    speed = lambda U: float(np.linalg.norm(curve.jet(U, 1)[1]))  # noqa: E731
    grid = np.linspace(a, b, _GRID + 1)
    for U in grid:
        if speed(U) < SPEED_EPS:
            raise SingularCurveError(f"curve is singular at s = e^{format_real(U)}", MNum(U))
    pieces = [adaptive_simpson(speed, grid[i], grid[i + 1], tol / _GRID) for i in range(_GRID)]
    cum = np.concatenate([[0.0], np.cumsum(pieces)])
    length = float(cum[-1])

    def sigma(U):
        i = int(np.clip(np.searchsorted(grid, U) - 1, 0, _GRID - 1))
        return cum[i] + adaptive_simpson(speed, grid[i], U, tol / _GRID)

    def inverse(V):
        i = int(np.clip(np.searchsorted(cum, V) - 1, 0, _GRID - 1))
        lo, hi = grid[i], grid[i + 1]
        U = lo + (hi - lo) * (V - cum[i]) / (cum[i + 1] - cum[i])
        for _ in range(50):
            step = (sigma(U) - V) / speed(U)
            U -= step
            if abs(step) <= 1e-15 * max(1.0, abs(U)):
                break
        else:
            if abs(step) > 1e-10:
                raise AccuracyError(f"arc-length inversion did not converge at V={V}", estimate=U)
        return U

    def jetfn(V, order):
        U0 = inverse(V)
        F = curve.jets(U0, order)
        if order == 0:
            return np.array([[f.value for f in F]])
        sig = vnorm([f.derivative() for f in F])  # sigma'(U) about U0, order-1
        series = Jet(np.concatenate([[0.0], sig.c / np.arange(1, order + 1)]))
        h = revert(series)  # U - U0 as a series in V - V0
        return np.column_stack([compose(f, h).derivatives() for f in F])

    return CurveJet(jetfn, (0.0, length), curve.provenance, curve.name,
                    to_parent=inverse, from_parent=sigma, parent=curve)
