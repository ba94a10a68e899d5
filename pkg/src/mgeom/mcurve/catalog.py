"""Built-in curves, addressed as ``name`` or ``name:key=value,...``."""

from __future__ import annotations

import math

from ..errors import DomainError, ParseError
from ..jet import Jet
from .core import CurveJet, reparametrize_natural
from .synth import curve_from_curvatures

__all__ = ["circle", "helix", "sphcurve", "rectifying", "slant_helix", "mannheim_test_curve",
           "catalog_curve", "CATALOG"]


def _sin(x):
    return x.sin() if isinstance(x, Jet) else math.sin(x)


def _cos(x):
    return x.cos() if isinstance(x, Jet) else math.cos(x)


def _sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else math.sqrt(x)


def circle(r: float = 1.0, domain=(-math.pi, math.pi)) -> CurveJet:
    """x(s) = (e^(r cos(log s / r)), e^(r sin(log s / r)), 1), in arc length.

    With r = 1 this is the set (log x)^2 + (log y)^2 = 1: centre (1, 1, 1),
    multiplicative radius e.
    """
    if r <= 0:
        raise DomainError("circle radius must be positive")
    return CurveJet.from_bridge(lambda U: (r * _cos(U / r), r * _sin(U / r), 0.0),
                                domain, name=f"circle:r={r:g}")


def helix(a: float = 1 / math.sqrt(2), b: float = 1 / math.sqrt(2),
          domain=(-math.pi, math.pi)) -> CurveJet:
    """Circular helix with bridge (-a sin(U/w), a cos(U/w), b U/w), w = sqrt(a^2 + b^2).

    For a^2 + b^2 = 1 the components are -* e^a .* msin(s), e^a .* mcos(s)
    and s^*b.  Curvature has log a/w^2 and torsion b/w^2.
    """
    if a <= 0:
        raise DomainError("helix radius a must be positive")
    w = math.hypot(a, b)
    return CurveJet.from_bridge(lambda U: (-a * _sin(U / w), a * _cos(U / w), b * U / w),
                                domain, name=f"helix:a={a:g},b={b:g}")


def sphcurve(r: float = 1.0, domain=(-2.5, 2.5)) -> CurveJet:
    """A Viviani-type curve on the multiplicative sphere of radius e^r about (1,1,1).

    The bridge (r(1+cos t)/2, r sin t / 2, r sin(t/2)) lies on the sphere
    |X| = r; it is reparametrized by arc length.  Torsion vanishes at
    t = pi, outside the default range.
    """
    if r <= 0:
        raise DomainError("sphere radius must be positive")
    raw = CurveJet.from_bridge(
        lambda t: (r * (1 + _cos(t)) / 2, r * _sin(t) / 2, r * _sin(t / 2)), domain)
    out = reparametrize_natural(raw)
    return CurveJet(out.jetfn, out.domain, "catalog", f"sphcurve:r={r:g}")


def rectifying(domain=(0.5, 2.0)) -> CurveJet:
    """Synthesized curve with log kappa = 1 and log tau = U."""
    return curve_from_curvatures(lambda U: 1.0, lambda U: U, domain, name="rectifying")


def slant_helix(m: float = 0.5, domain=(-1.5, 1.5)) -> CurveJet:
    """Synthesized slant helix: log kappa = 1, log tau = mU / sqrt(1 - m^2 U^2)."""
    if abs(m) * max(abs(domain[0]), abs(domain[1])) >= 1:
        raise DomainError("slant helix needs |m U| < 1 on the domain")
    return curve_from_curvatures(lambda U: 1.0, lambda U: m * U / _sqrt(1 - m * m * U * U),
                                 domain, name=f"slanthelix:m={m:g}")


def mannheim_test_curve(lam: float = 1.0, domain=(0.0, 3.0)) -> CurveJet:
    """Non-helical curve satisfying log kappa = log lambda ((log kappa)^2 + (log tau)^2).

    log kappa = (0.5 + 0.2 sin U) / log lambda and log tau follows from the relation.
    """
    if lam <= 0:
        raise DomainError("lambda (log) must be positive")

    def kappa(U):
        return (0.5 + 0.2 * _sin(U)) / lam

    def tau(U):
        k = kappa(U)
        return _sqrt(k / lam - k * k)

    return curve_from_curvatures(kappa, tau, domain, name=f"mannheimtest:lam={lam:g}")


CATALOG = {
    "circle": (circle, {"r"}),
    "helix": (helix, {"a", "b"}),
    "sphcurve": (sphcurve, {"r"}),
    "rectifying": (rectifying, set()),
    "slanthelix": (slant_helix, {"m"}),
    "mannheimtest": (mannheim_test_curve, {"lam"}),
}


def catalog_curve(text: str) -> CurveJet:
    """Parse ``helix:a=0.7071,b=0.7071``, ``circle`` and friends."""
    name, _, params = text.strip().partition(":")
    if name not in CATALOG:
        raise ParseError(f"unknown catalog curve {name!r}", 0, set(CATALOG))
    fn, allowed = CATALOG[name]
    kwargs = {}
    offset = len(name) + 1
    for item in filter(None, params.split(",")):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or key not in allowed:
            raise ParseError(f"bad parameter {item!r} for {name}", offset, allowed or {"no parameters"})
        try:
            kwargs[key] = float(value)
        except ValueError:
            raise ParseError(f"parameter {key} needs a real value, got {value!r}",
                             offset + len(key) + 1, {"real"}) from None
        offset += len(item) + 1
    return fn(**kwargs)
