"""
Bertrand and Mannheim partner curves: construction and verification.

Both partners are offsets y = x +* lambda .* n along the principal normal
of x.  On log-images that is Y = X + c N with c = log lambda, and every
check below is a classical identity between the Frenet data of X and Y at
corresponding parameters.  The curves may carry any regular
parametrization; curvature and torsion are always measured against
arc length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    CorrespondenceError, FrameUndefinedError, InadmissibleCurveError, MGeomError,
    SingularCurveError,
)
from .jet import vcross, vnorm
from .mcurve.core import (
    SPEED_EPS, Apparatus, CurveJet, apparatus, curvature_jets, reparametrize_natural, sample_params,
)
from .mnum import MNum, format_real

__all__ = [
    "IdentityCheck", "PartnerReport", "MannheimLambda",
    "offset_curve", "bertrand_partner", "bertrand_verify",
    "mannheim_lambda", "mannheim_partner", "mannheim_verify",
    "DEFAULT_SAMPLES", "DEFAULT_TOL",
]

DEFAULT_SAMPLES = 64
DEFAULT_TOL = 1e-6
# denominators smaller than this exclude a sample from a formula check
POLE_TOL = 1e-9
# curvature rates below this make the Mannheim cotangent test indeterminate
RATE_TOL = 1e-8


# --- construction ------------------------------------------------------------

def _normal_jets(F, order):
    """Principal normal of any regular parametrization, as jets of given order."""
    d1 = [f.derivative() for f in F]
    d2 = [f.derivative().truncate(order) for f in d1]
    d1 = [f.truncate(order) for f in d1]
    bvec = vcross(d1, d2)
    nvec = vcross(bvec, d1)
    norm = vnorm(nvec)
    if norm.value < SPEED_EPS or vnorm(bvec).value / vnorm(d1).value ** 3 < 1e-10:
        raise FrameUndefinedError("principal normal undefined (curvature vanishes)")
    return [c / norm for c in nvec]


def offset_curve(x: CurveJet, lam: MNum, name: str = "") -> CurveJet:
    """y(s) = x(s) +* lambda .* n(s) in the parameter of x."""
    c = lam.logval

    def jetfn(U, order):
        F = x.jets(U, order + 2)
        n = _normal_jets(F, order)
        return np.column_stack([(F[i].truncate(order) + n[i] * c).derivatives() for i in range(3)])

    return CurveJet(jetfn, x.domain, "partner", name or f"offset({x.name}, e^{format_real(c)})")


def _check_regular(y: CurveJet, n: int = 16):
    for U in sample_params(y, n):
        v = float(np.linalg.norm(y.jet(U, 1)[1]))
        if v < SPEED_EPS:
            raise SingularCurveError(f"partner is singular at s = e^{format_real(U)}", MNum(U))


def bertrand_partner(x: CurveJet, lam: MNum) -> CurveJet:
    """y = x +* lambda .* n, sharing the parameter of x."""
    y = offset_curve(x, lam, f"bertrand({x.name}, e^{format_real(lam.logval)})")
    _check_regular(y)
    return y


@dataclass(frozen=True)
class MannheimLambda:
    lam: MNum
    deviation: float
    admissible: bool
    samples: int


def mannheim_lambda(x: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> MannheimLambda:
    """lambda from kappa = e^(log lambda ((log kappa)^2 + (log tau)^2)), with constancy."""
    vals = []
    for U in sample_params(x, n):
        k, t, _ = curvature_jets(x, U, 0)
        denom = k.value ** 2 + t.value ** 2
        if denom < POLE_TOL:
            raise FrameUndefinedError(f"(log kappa)^2 + (log tau)^2 vanishes at s = e^{format_real(U)}",
                                      MNum(U))
        vals.append(k.value / denom)
    vals = np.array(vals)
    c = float(np.median(vals))
    dev = float(np.max(np.abs(vals - c)))
    return MannheimLambda(MNum(c), dev, dev <= tol, len(vals))


def mannheim_partner(x: CurveJet, tol: float = DEFAULT_TOL, natural: bool = True) -> CurveJet:
    """Offset by the Mannheim lambda, reparametrized by arc length unless natural=False.

    The reparametrized curve keeps maps to the parameter of x, so verifiers
    still pair points correctly.
    """
    ml = mannheim_lambda(x, tol=tol)
    if not ml.admissible:
        raise InadmissibleCurveError(
            f"curve is not Mannheim-admissible: log lambda varies by {ml.deviation:.3g}")
    y = offset_curve(x, ml.lam, f"mannheim({x.name})")
    _check_regular(y)
    return reparametrize_natural(y) if natural else y


# --- reports -----------------------------------------------------------------

@dataclass
class IdentityCheck:
    key: str
    name: str
    residuals: list = field(default_factory=list)
    tol: float = DEFAULT_TOL
    skipped: list = field(default_factory=list)
    status: Optional[str] = None  # forced status: indeterminate | degenerate | undefined
    detail: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return float(max(self.residuals)) if self.residuals else float("nan")

    @property
    def mean_residual(self) -> float:
        return float(np.mean(self.residuals)) if self.residuals else float("nan")

    @property
    def state(self) -> str:
        if self.status:
            return self.status
        if not self.residuals:
            return "undefined"
        return "pass" if self.max_residual <= self.tol else "fail"

    @property
    def verdict(self) -> bool:
        return self.state in ("pass", "indeterminate", "degenerate")

    def to_json(self) -> dict:
        def num(v):
            return None if isinstance(v, float) and math.isnan(v) else v

        return {"key": self.key, "name": self.name, "max_residual": num(self.max_residual),
                "mean_residual": num(self.mean_residual), "verdict": self.verdict,
                "status": self.state, "skipped_samples": len(self.skipped), "detail": self.detail}


@dataclass
class PartnerReport:
    kind: str
    lam: MNum
    mu: MNum
    theta: MNum
    constancy: dict
    checks: list
    samples: int
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.verdict for c in self.checks)

    def check(self, key: str) -> list:
        return [c for c in self.checks if c.key == key]

    def group_verdict(self, key: str) -> bool:
        found = self.check(key)
        return bool(found) and all(c.verdict for c in found)

    def to_json(self) -> dict:
        def enc(m):
            return f"e^{m.logval!r}"

        return {"kind": self.kind, "lambda": enc(self.lam), "mu": enc(self.mu), "theta": enc(self.theta),
                "constancy": self.constancy, "verdict": self.verdict, "samples": self.samples,
                "skipped_samples": len(self.skipped), "identities": [c.to_json() for c in self.checks],
                "notes": self.notes}


# --- correspondence ----------------------------------------------------------

def _param_map(x: CurveJet, y: CurveJet) -> tuple[Callable, Callable]:
    """Map from the parameter of x to that of y, and the speed of y in x's parameter."""
    if y.from_parent is not None and x.to_parent is None:
        par = y.parent
        return y.from_parent, lambda U: float(np.linalg.norm(par.jet(U, 1)[1]))
    if x.to_parent is not None and y.from_parent is None:
        par = x.parent

        def speed(V):
            Uy = x.to_parent(V)
            return float(np.linalg.norm(y.jet(Uy, 1)[1]) / np.linalg.norm(par.jet(Uy, 1)[1]))

        return x.to_parent, speed
    return (lambda U: U), (lambda U: float(np.linalg.norm(y.jet(U, 1)[1])))


@dataclass
class _Sample:
    U: float
    X: Apparatus
    Y: Optional[Apparatus]  # None where y has no frame
    Yp: np.ndarray  # bridge point of y
    v: float  # |dY/dU| / |dX/dU|: speed ratio at corresponding points


def _samples(x: CurveJet, y: CurveJet, n: int, param_map: Optional[Callable]):
    fwd, yspeed = _param_map(x, y)
    if param_map is not None:
        fwd = param_map
        yspeed = None
    lo, hi = y.domain
    rows, skipped, undefined = [], [], []
    for U in sample_params(x, n):
        Uy = fwd(U)
        if not (lo - 1e-9 <= Uy <= hi + 1e-9):
            raise CorrespondenceError(f"no corresponding parameter on y for s = e^{format_real(U)}")
        try:
            A = apparatus(x, U)
        except MGeomError:
            skipped.append(float(U))
            continue
        try:
            B = apparatus(y, Uy)
        except FrameUndefinedError:
            undefined.append(float(U))
            rows.append(_Sample(float(U), A, None, y.bridge_point(Uy), float("nan")))
            continue
        except MGeomError:
            skipped.append(float(U))
            continue
        if yspeed is None:
            h = 1e-6 * max(1.0, abs(U))
            v = B.speed * (fwd(U + h) - fwd(U - h)) / (2 * h) / A.speed
        else:
            v = yspeed(U) / A.speed
        rows.append(_Sample(float(U), A, B, B.point, v))
    if not rows:
        raise SingularCurveError("no sample where both curves are regular; nothing to verify",
                                 MNum(float(skipped[0])) if skipped else None)
    return rows, skipped, undefined


def _constancy(vals):
    vals = np.asarray(vals, dtype=float)
    if len(vals) == 0:
        return float("nan"), float("nan")
    med = float(np.median(vals))
    return med, float(np.max(np.abs(vals - med)))


def _signed_theta(A: Apparatus, B: Apparatus) -> float:
    """Angle from t to t-bar, signed so that t-bar = cos .* t -* sin .* b."""
    return math.atan2(-float(np.dot(B.t, A.b)), float(np.dot(B.t, A.t)))


def _best_sign(fn):
    """Evaluate residual lists for theta and -theta; keep the smaller worst case."""
    plus, minus = fn(1.0), fn(-1.0)
    mp = max(plus) if plus else 0.0
    mm = max(minus) if minus else 0.0
    return (plus, 1) if mp <= mm else (minus, -1)


def _undefined(key, name, tol, undefined):
    return IdentityCheck(key, name, [], tol, undefined, "undefined",
                         {"reason": "frame of y undefined (curvature 0*) at every sample"})


# --- Bertrand ----------------------------------------------------------------

def bertrand_verify(x: CurveJet, y: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                    param_map: Optional[Callable] = None) -> PartnerReport:
    """Check the Bertrand identities between x and y at corresponding parameters."""
    rows, skipped, undefined = _samples(x, y, n, param_map)
    full = [r for r in rows if r.Y is not None]
    checks, notes = [], []
    if undefined:
        notes.append(f"{len(undefined)} samples where y has no principal normal")

    # (b) offset lambda, needs only points and the normal of x
    offs = [float(np.dot(r.Yp - r.X.point, r.X.n)) for r in rows]
    c, c_dev = _constancy(offs)
    perp = [float(np.linalg.norm(r.Yp - r.X.point - o * r.X.n)) for r, o in zip(rows, offs)]
    checks.append(IdentityCheck("b", "lambda constant (y -* x = lambda .* n)",
                                [max(c_dev, p) for p in perp], tol, skipped,
                                detail={"lambda_deviation": c_dev, "off_normal": max(perp) if perp else None}))

    if not full:
        for key, name in (("a", "normal collinearity n = ±n-bar"), ("c", "theta constant"),
                          ("d", "frame relations"), ("e", "cos/sin relations"),
                          ("f", "curvature relations"), ("g", "lambda .* kappa +* mu .* tau = e")):
            checks.append(_undefined(key, name, tol, undefined))
        return PartnerReport("bertrand", MNum(c), MNum(0.0), MNum(0.0),
                             {"lambda": c_dev}, checks, len(rows), skipped, notes)

    # (a) normal collinearity, orientation fixed per sample
    sn = [1.0 if np.dot(r.X.n, r.Y.n) >= 0 else -1.0 for r in full]
    checks.append(IdentityCheck("a", "normal collinearity n = ±n-bar",
                                [float(np.linalg.norm(r.X.n - s * r.Y.n)) for r, s in zip(full, sn)], tol,
                                detail={"normal_sign": int(np.sign(np.sum(sn)))}))

    # (c) theta constant
    th = [_signed_theta(r.X, r.Y) for r in full]
    theta, th_dev = _constancy(th)
    checks.append(IdentityCheck("c", "theta constant", [abs(t - theta) for t in th], tol,
                                detail={"theta_log": theta}))

    # (d) frame relations of t-bar and b-bar
    def frame_res(sg):
        out = []
        t = sg * theta
        for r, s in zip(full, sn):
            tb = math.cos(t) * r.X.t - math.sin(t) * r.X.b
            bb = math.sin(t) * r.X.t + math.cos(t) * r.X.b
            out.append(max(np.linalg.norm(r.Y.t - tb), np.linalg.norm(s * r.Y.b - bb)))
        return out

    res, sg_d = _best_sign(frame_res)
    checks.append(IdentityCheck("d", "t-bar = cos*θ·*t −* sin*θ·*b, b-bar = sin*θ·*t +* cos*θ·*b",
                                [float(v) for v in res], tol, detail={"theta_sign": sg_d}))

    # (e) e -* lambda .* kappa = cos* theta and -* lambda .* tau = sin* theta, per unit of partner speed
    def cos_sin_res(sg):
        t = sg * theta
        return [max(abs((1 - c * r.X.kappa) / r.v - math.cos(t)), abs(-c * r.X.tau / r.v - math.sin(t)))
                for r in full]

    res, sg_e = _best_sign(cos_sin_res)
    literal = max(max(abs(1 - c * r.X.kappa - math.cos(sg_e * theta)),
                      abs(-c * r.X.tau - math.sin(sg_e * theta))) for r in full)
    checks.append(IdentityCheck("e", "e −* λ·*κ = cos*θ, −*λ·*τ = sin*θ (speed-normalized)", res, tol,
                                detail={"theta_sign": sg_e, "literal_max_residual": literal,
                                        "speed_ratio_range": [min(r.v for r in full), max(r.v for r in full)]}))

    # (f) curvature relations and the cos² theta identity
    sin2 = math.sin(theta) ** 2
    fres, fskip = [], []
    cos2 = []
    for r in full:
        den_k = c - c * c * r.X.kappa
        den_t = c * c * r.X.tau
        cos2.append(abs(math.cos(theta) ** 2 - (1 - c * r.X.kappa) * (1 + c * r.Y.kappa)))
        if abs(den_k) < POLE_TOL or abs(den_t) < POLE_TOL:
            fskip.append(r.U)
            continue
        kb = (c * r.X.kappa - sin2) / den_k
        tb = sin2 / den_t
        fres.append(max(abs(kb - r.Y.kappa), abs(tb - r.Y.tau)))
    fcheck = IdentityCheck("f", "κ-bar, τ-bar from λ, θ", fres, tol, fskip)
    if not fres:
        fcheck.status = "degenerate" if abs(c) < POLE_TOL else "indeterminate"
        fcheck.detail["reason"] = "every sample sits on a pole of the curvature formulas"
    elif fskip:
        notes.append(f"(f): {len(fskip)} samples on a pole of the curvature formulas excluded")
    checks.append(fcheck)
    checks.append(IdentityCheck("cos2", "cos*²θ = (e −* λ·*κ)·*(e +* λ·*κ-bar)", cos2, tol))

    # (g) lambda .* kappa +* mu .* tau = e with mu = lambda .* cot* theta
    if abs(c) < POLE_TOL or abs(math.sin(theta)) < POLE_TOL:
        g = IdentityCheck("g", "λ·*κ +* μ·*τ = e", [], tol, status="degenerate",
                          detail={"reason": "lambda = 0* or theta = 0*: mu is undefined"})
        mu, sg_g = 0.0, 1
    else:
        def thm_res(sg):
            m = c / math.tan(sg * theta)
            return [abs(c * r.X.kappa + m * r.X.tau - 1.0) for r in full]

        res, sg_g = _best_sign(thm_res)
        mu = c / math.tan(sg_g * theta)
        g = IdentityCheck("g", "λ·*κ +* μ·*τ = e", res, tol, detail={"theta_sign": sg_g})
    checks.append(g)
    if len({sg_d, sg_e, sg_g}) > 1:
        notes.append("identity groups prefer different signs of theta; see theta_sign per identity")

    return PartnerReport("bertrand", MNum(c), MNum(mu), MNum(sg_d * theta),
                         {"lambda": c_dev, "theta": th_dev}, checks, len(rows), skipped, notes)


# --- Mannheim ----------------------------------------------------------------

def mannheim_verify(x: CurveJet, y: CurveJet, n: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                    param_map: Optional[Callable] = None) -> PartnerReport:
    """Check the Mannheim identities between x and y at corresponding parameters."""
    rows, skipped, undefined = _samples(x, y, n, param_map)
    full = [r for r in rows if r.Y is not None]
    checks, notes = [], []
    if undefined:
        notes.append(f"{len(undefined)} samples where y has no principal normal "
                     "(y is a straight line there); frame checks are undefined")

    # (b) offsets lambda along n and mu along b-bar
    offs = [float(np.dot(r.Yp - r.X.point, r.X.n)) for r in rows]
    c, c_dev = _constancy(offs)
    perp = [float(np.linalg.norm(r.Yp - r.X.point - o * r.X.n)) for r, o in zip(rows, offs)]
    # b-bar may flip orientation along y (where kappa* changes sign), so align it with n
    sn = [1.0 if np.dot(r.X.n, r.Y.b) >= 0 else -1.0 for r in full]
    mus = [float(np.dot(r.X.point - r.Y.point, s * r.Y.b)) for r, s in zip(full, sn)]
    mu, mu_dev = _constancy(mus)
    bres = [max(c_dev, p) for p in perp]
    if full:
        bres = [max(b, mu_dev) for b in bres]
    bcheck = IdentityCheck("b", "lambda and mu constant", bres, tol, skipped,
                           detail={"lambda_deviation": c_dev, "mu_deviation": mu_dev,
                                   "off_normal": max(perp) if perp else None})
    if not full:
        bcheck.detail["mu"] = "undefined: y has no binormal"
    checks.append(bcheck)

    # (f) kappa = lambda ((log kappa)^2 + (log tau)^2), needs only x
    fres = [abs(r.X.kappa - c * (r.X.kappa ** 2 + r.X.tau ** 2)) for r in rows]
    f_check = IdentityCheck("f", "κ = e^(log λ [(log κ)² + (log τ)²])", fres, tol)

    if not full:
        for key, name in (("a", "n = ±b-bar"), ("c", "theta constant and frame relations"),
                          ("d", "κ-bar, τ-bar from θ")):
            checks.append(_undefined(key, name, tol, undefined))
        checks.append(_mannheim_e(x, rows, [], tol))
        checks.append(f_check)
        checks.sort(key=lambda ch: ch.key)
        return PartnerReport("mannheim", MNum(c), MNum(mu if full else 0.0), MNum(0.0),
                             {"lambda": c_dev}, checks, len(rows), skipped, notes)

    # (a) n = ±b-bar
    checks.append(IdentityCheck("a", "n = ±b-bar",
                                [float(np.linalg.norm(r.X.n - s * r.Y.b)) for r, s in zip(full, sn)], tol,
                                detail={"normal_sign": int(np.sign(np.sum(sn)))}))

    # (c) theta constant; frame relations with the per-sample angle
    th = [_signed_theta(r.X, r.Y) for r in full]
    theta, th_dev = _constancy(th)
    checks.append(IdentityCheck("c", "theta constant", [abs(t - theta) for t in th], tol,
                                detail={"theta_log": theta}))

    def frame_res(sg):
        out = []
        for r, t, s in zip(full, th, sn):
            tb = math.cos(t) * r.X.t - math.sin(t) * r.X.b
            nb = math.sin(t) * r.X.t + math.cos(t) * r.X.b
            out.append(float(max(np.linalg.norm(r.Y.t - tb), np.linalg.norm(sg * s * r.Y.n - nb))))
        return out

    res, sg_c = _best_sign(frame_res)
    checks.append(IdentityCheck("c", "t-bar = cos*θ·*t −* sin*θ·*b, n-bar = sin*θ·*t +* cos*θ·*b",
                                res, tol, detail={"normal_sign": sg_c}))

    # (d) curvature relations of the partner
    def curv_res(sg):
        out = []
        for r, t in zip(full, th):
            t = sg * t
            kb = math.sqrt(r.X.kappa ** 2 * math.cos(t) ** 2 + r.X.tau ** 2 * math.sin(t) ** 2)
            tb = r.X.kappa * math.sin(t) - r.X.tau * math.cos(t)
            out.append(max(abs(kb - r.Y.kappa), abs(tb - r.Y.tau)))
        return out

    res, sg_d = _best_sign(curv_res)
    checks.append(IdentityCheck("d", "κ-bar, τ-bar from θ", res, tol, detail={"theta_sign": sg_d}))

    checks.append(_mannheim_e(x, full, th, tol))
    checks.append(f_check)
    checks.sort(key=lambda ch: ch.key)
    return PartnerReport("mannheim", MNum(c), MNum(mu), MNum(theta),
                         {"lambda": c_dev, "mu": mu_dev, "theta": th_dev}, checks, len(rows), skipped, notes)


def _mannheim_e(x: CurveJet, rows, th, tol) -> IdentityCheck:
    """tau* /* kappa* = -* cot* theta where both rates are non-zero."""
    name = "τ* /* κ* = −* cot*θ"
    ratios, angles, skipped = [], [], []
    for i, r in enumerate(rows):
        k, t, sp = curvature_jets(x, r.U, 1)
        dk, dt = k.c[1] / sp.value, t.c[1] / sp.value
        if not th or abs(dk) < RATE_TOL or abs(dt) < RATE_TOL or abs(math.sin(th[i])) < POLE_TOL:
            skipped.append(r.U)
            continue
        ratios.append(dt / dk)
        angles.append(th[i])
    if not ratios:
        return IdentityCheck("e", name, [], tol, skipped, "indeterminate",
                             {"reason": "kappa* and tau* are 0* (or y has no frame): a 0* /* 0* form"})

    def res(sg):
        return [abs(q + 1.0 / math.tan(sg * a)) for q, a in zip(ratios, angles)]

    out, sg = _best_sign(res)
    return IdentityCheck("e", name, out, tol, skipped, detail={"theta_sign": sg, "samples_evaluated": len(out)})
