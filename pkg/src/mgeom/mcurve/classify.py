"""
Classification of natural curves by their curvature and torsion.

All tests run on log-images: with k = log kappa and t = log tau as
functions of the natural bridge parameter U,

* general helix      t / k is constant (that constant is log c);
* slant helix        k^2 / (k^2 + t^2)^(3/2) * (t / k)' is constant;
* spherical curve    (p' q)' + p / q = 0 with p = 1/k, q = 1/t;
* rectifying curve   t / k is affine in U.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import MGeomError, MultiplicativeZeroDivisionError, NotNaturalError
from ..mnum import MNum
from ..mvec import MVec
from .core import CurveJet, curvature_jets, is_natural, sample_params

__all__ = [
    "ClassificationReport", "classify_helix", "slant_helix_sigma", "classify_slant_helix",
    "spherical_check", "rectifying_fit", "classify", "DEFAULT_SAMPLES", "DEFAULT_TOL",
]

DEFAULT_SAMPLES = 64
DEFAULT_TOL = 1e-6
# torsion logs smaller than this are excluded from the spherical test
TAU_EPS = 1e-9


@dataclass
class ClassificationReport:
    kind: str  # helix | slant_helix | spherical | rectifying | none
    test: str
    constants: dict = field(default_factory=dict)
    residual: float = 0.0
    samples: int = 0
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return self.kind != "none"

    def to_json(self) -> dict:
        def enc(v):
            return f"e^{v.logval!r}" if isinstance(v, MNum) else v

        return {"test": self.test, "kind": self.kind, "positive": self.positive,
                "constants": {k: enc(v) for k, v in self.constants.items()},
                "residual": self.residual, "samples": self.samples,
                "skipped_samples": self.skipped, "notes": self.notes}


def _require_natural(curve: CurveJet, n: int):
    rep = is_natural(curve, n)
    if not rep.natural:
        raise NotNaturalError(f"curve is not naturally parametrized (log-speed deviation "
                              f"{rep.max_deviation:.3g}); reparametrize first")


def _kt(curve: CurveJet, n: int, order: int):
    """Samples of (U, kappa jet, tau jet), skipping points where the frame fails."""
    rows, skipped = [], []
    for U in sample_params(curve, n):
        try:
            k, t, _ = curvature_jets(curve, U, order)
        except MGeomError:
            skipped.append(float(U))
            continue
        rows.append((float(U), k, t))
    return rows, skipped


def classify_helix(curve: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """tau /* kappa = c constant."""
    _require_natural(curve, n)
    rows, skipped = _kt(curve, n, 0)
    ratio = np.array([t.value / k.value for _, k, t in rows])
    c = float(np.median(ratio))
    res = float(np.max(np.abs(ratio - c)))
    kind = "helix" if res <= tol else "none"
    return ClassificationReport(kind, "helix", {"c": MNum(c)}, res, len(rows), skipped)


def slant_helix_sigma(curve: CurveJet, s: MNum) -> MNum:
    """sigma = (kappa^2* /* (kappa^2* +* tau^2*)^(3/2)*) .* (tau /* kappa)*."""
    k, t, sp = curvature_jets(curve, s.logval, 1)
    kv, tv = k.value, t.value
    denom = kv * kv + tv * tv
    if denom == 0.0:
        raise MultiplicativeZeroDivisionError("kappa^2* +* tau^2* is 0*")
    ratio_rate = (t / k).c[1] / sp.value
    return MNum(kv * kv / denom ** 1.5 * ratio_rate)


def classify_slant_helix(curve: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> ClassificationReport:
    _require_natural(curve, n)
    vals, skipped = [], []
    for U in sample_params(curve, n):
        try:
            vals.append(slant_helix_sigma(curve, MNum(U)).logval)
        except MGeomError:
            skipped.append(float(U))
    vals = np.array(vals)
    sigma = float(np.median(vals))
    res = float(np.max(np.abs(vals - sigma)))
    kind = "slant_helix" if res <= tol else "none"
    notes = []
    if kind == "slant_helix" and abs(sigma) <= tol:
        notes.append("sigma is 0*: the curve is a general helix")
    return ClassificationReport(kind, "slant_helix", {"sigma": MNum(sigma)}, res, len(vals), skipped, notes)


def spherical_check(curve: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                    center: Optional[MVec] = None, radius: Optional[MNum] = None) -> ClassificationReport:
    """(p* .* q)* +* p /* q = 0* with p = e /* kappa, q = e /* tau.

    With a radius, also r^2* = p^2* +* (p* .* q)^2*; with a centre, the
    multiplicative distance of each sample to it.
    """
    _require_natural(curve, n)
    rows, skipped = _kt(curve, n, 2)
    res6, res5, resd = [], [], []
    notes = []
    for U, k, t in rows:
        if abs(t.value) < TAU_EPS:
            skipped.append(U)
            continue
        p = 1.0 / k
        q = 1.0 / t
        pq = p.derivative() * q.truncate(1)
        res6.append(abs(pq.c[1] + p.value / q.value))
        if radius is not None:
            res5.append(abs(radius.logval ** 2 - (p.value ** 2 + pq.value ** 2)))
        if center is not None:
            d = np.linalg.norm(curve.bridge_point(U) - np.array(center.logs))
            resd.append(abs(d - (radius.logval if radius is not None else d)))
    if skipped:
        notes.append(f"{len(skipped)} samples with tau = 0* or undefined frame excluded")
    constants = {}
    res = float(max(res6)) if res6 else float("inf")
    if res5:
        constants["radius_residual"] = float(max(res5))
        res = max(res, constants["radius_residual"])
    if resd:
        constants["center_distance_residual"] = float(max(resd))
        res = max(res, constants["center_distance_residual"])
    kind = "spherical" if res <= tol else "none"
    return ClassificationReport(kind, "spherical", constants, res, len(res6), skipped, notes)


def rectifying_fit(curve: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """Least-squares fit log(tau /* kappa) = log a * log s + log b."""
    _require_natural(curve, n)
    rows, skipped = _kt(curve, n, 0)
    U = np.array([r[0] for r in rows])
    ratio = np.array([t.value / k.value for _, k, t in rows])
    slope, intercept = np.polyfit(U, ratio, 1)
    res = float(np.max(np.abs(slope * U + intercept - ratio)))
    notes = []
    if res <= tol and abs(slope) <= tol:
        notes.append("slope is 0: ratio constant, a general helix rather than rectifying")
    kind = "rectifying" if res <= tol and abs(slope) > tol else "none"
    return ClassificationReport(kind, "rectifying", {"a": MNum(float(slope)), "b": MNum(float(intercept))},
                                res, len(rows), skipped, notes)


def classify(curve: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> list[ClassificationReport]:
    """Run every test; a general helix is not also reported as slant helix."""
    reports = [classify_helix(curve, n, tol), classify_slant_helix(curve, n, tol),
               spherical_check(curve, n, tol), rectifying_fit(curve, n, tol)]
    if reports[0].positive and reports[1].positive:
        reports[1].kind = "none"
    return reports

