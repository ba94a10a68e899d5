import math

import numpy as np
import pytest
import sympy as sp

from mgeom.errors import InadmissibleCurveError
from mgeom.mcurve import CurveJet, apparatus, circle, helix, mannheim_test_curve, rectifying
from mgeom.mnum import MNum
from mgeom.mpartner import (bertrand_partner, bertrand_verify, mannheim_lambda, mannheim_partner,
                            mannheim_verify, offset_curve)
from mgeom.mvec import mdistance

R2 = 1 / math.sqrt(2)


# --- independent classical oracle (sympy, symbolic in U) ---------------------

U = sp.symbols("U", real=True)


def _sym_helix(a, b):
    w = sp.sqrt(a * a + b * b)
    return sp.Matrix([-a * sp.sin(U / w), a * sp.cos(U / w), b * U / w])


def _sym_apparatus(X):
    d1, d2 = X.diff(U), X.diff(U, 2)
    d3 = X.diff(U, 3)
    c = d1.cross(d2)
    v = sp.sqrt(d1.dot(d1))
    kappa = sp.sqrt(c.dot(c)) / v ** 3
    tau = c.dot(d3) / c.dot(c)
    b = c / sp.sqrt(c.dot(c))
    n = b.cross(d1 / v)
    return n, kappa, tau


def _sym_offset(X, lam):
    n, _, _ = _sym_apparatus(X)
    return X + lam * n


ORACLE_CASES = [
    ("helix-r2", lambda: helix(R2, R2), lambda: _sym_helix(sp.sqrt(2) / 2, sp.sqrt(2) / 2), 0.5),
    ("helix-16-08", lambda: helix(1.6, 0.8), lambda: _sym_helix(sp.Rational(8, 5), sp.Rational(4, 5)), 1.0),
    ("cubic", lambda: CurveJet.from_bridge(lambda u: (u, u * u / 2, u * u * u / 6), (-1.0, 1.0)),
     lambda: sp.Matrix([U, U ** 2 / 2, U ** 3 / 6]), 0.3),
]


@pytest.mark.parametrize("name,make,sym,lam", ORACLE_CASES, ids=[c[0] for c in ORACLE_CASES])
def test_offset_partner_against_sympy(name, make, sym, lam):
    x = make()
    y = offset_curve(x, MNum(lam))
    Y = _sym_offset(sym(), lam)
    _, kb, tb = _sym_apparatus(Y)
    f = sp.lambdify(U, [*Y, kb, tb], "mpmath")
    for u in np.linspace(x.domain[0] + 0.1, x.domain[1] - 0.1, 5):
        *Yv, kv, tv = f(float(u))
        A = apparatus(y, float(u))
        assert np.allclose(A.point, np.array(Yv, dtype=float), atol=1e-12)
        assert A.kappa == pytest.approx(float(kv), rel=1e-9, abs=1e-12)
        assert A.tau == pytest.approx(float(tv), rel=1e-9, abs=1e-12)


def test_sympy_mannheim_offset_of_helix():
    _, k, t = _sym_apparatus(_sym_helix(sp.Rational(8, 5), sp.Rational(4, 5)))
    lam = k / (k ** 2 + t ** 2)
    for u in (-1, 0.5, 2):
        assert abs(lam.subs(U, u).evalf(30) - sp.Rational(8, 5)) < 1e-25
    assert mannheim_lambda(helix(1.6, 0.8)).lam.logval == pytest.approx(1.6, abs=1e-12)


# --- Bertrand ----------------------------------------------------------------

@pytest.fixture(scope="module")
def bertrand_pair():
    x = helix(R2, R2)
    return x, bertrand_partner(x, MNum(0.5))


def test_bertrand_pair_passes(bertrand_pair):
    rep = bertrand_verify(*bertrand_pair)
    assert rep.verdict, [c.to_json() for c in rep.checks]
    assert rep.lam.logval == pytest.approx(0.5, abs=1e-9)
    assert rep.constancy["lambda"] <= 1e-9
    assert rep.check("g")[0].max_residual <= 1e-8
    for key in "abcdefg":
        assert rep.group_verdict(key), key


def test_bertrand_zero_offset_is_degenerate():
    x = helix(R2, R2)
    rep = bertrand_verify(x, bertrand_partner(x, MNum(0.0)))
    assert rep.verdict
    assert rep.check("g")[0].state == "degenerate"
    assert rep.theta.logval == pytest.approx(0.0, abs=1e-12)


def test_bertrand_distance():
    x = helix(1.6, 0.8)
    y = bertrand_partner(x, MNum(1.0))
    for u in (-1.0, 0.0, 2.0):
        assert mdistance(x.point(MNum(u)), y.point(MNum(u))).logval == pytest.approx(1.0, abs=1e-12)


def test_bertrand_negative_control():
    x = helix(R2, R2)
    rep = bertrand_verify(x, circle(domain=x.domain))
    assert not rep.verdict
    assert rep.check("a")[0].max_residual > 1e-2


# --- Mannheim ----------------------------------------------------------------

def test_mannheim_lambda_examples():
    assert mannheim_lambda(helix(R2, R2)).lam.logval == pytest.approx(R2, abs=1e-12)
    ml = mannheim_lambda(rectifying())
    assert not ml.admissible
    with pytest.raises(InadmissibleCurveError):
        mannheim_partner(rectifying())


def test_mannheim_helix_partner_is_axis():
    # the offset lands on the helix axis, a line with no principal normal
    x = helix(1.6, 0.8)
    y = offset_curve(x, mannheim_lambda(x).lam)
    pts = np.array([y.bridge_point(u) for u in np.linspace(-3, 3, 7)])
    assert np.allclose(pts[:, :2], 0.0, atol=1e-12)
    rep = mannheim_verify(x, mannheim_partner(x))
    assert rep.check("b")[0].state == "pass"
    assert rep.check("f")[0].state == "pass"
    assert rep.check("e")[0].state == "indeterminate"
    assert rep.check("a")[0].state == "undefined"


def test_mannheim_nonhelical_pair():
    x = mannheim_test_curve()
    y = mannheim_partner(x)
    rep = mannheim_verify(x, y)
    assert rep.lam.logval == pytest.approx(1.0, abs=1e-6)
    for key in ("a", "b", "f"):
        assert rep.group_verdict(key), key


def test_mannheim_negative_control_bertrand_pair(bertrand_pair):
    rep = mannheim_verify(*bertrand_pair)
    assert not rep.verdict
    assert rep.check("a")[0].state == "fail"


def test_mannheim_perturbed_lambda_breaks_f():
    x = helix(1.6, 0.8)
    lam = mannheim_lambda(x).lam.logval
    y = offset_curve(x, MNum(lam + 0.1))
    rep = mannheim_verify(x, y)
    f = rep.check("f")[0]
    assert f.state == "fail"
    assert f.max_residual == pytest.approx(0.1 * (0.5 ** 2 + 0.25 ** 2), rel=1e-6)


def test_report_json_roundtrip(bertrand_pair):
    import json
    doc = json.loads(json.dumps(bertrand_verify(*bertrand_pair).to_json()))
    assert doc["kind"] == "bertrand" and doc["verdict"] is True
    assert {i["key"] for i in doc["identities"]} >= set("abcdefg")


def test_mannheim_verify_rejects_planar_candidate():
    # y1 = -y2 puts the log-image in a plane through the axis, so no Mannheim pair
    from mgeom.mexpr import component_map

    def curve(texts):
        return CurveJet.from_components([component_map(t, "log") for t in texts], (0.1, 2.0))

    x = curve(["-1.6*cos(u)", "1.6*sin(u)", "0.8*u"])
    y = curve(["-1.6*(sin(u) + cos(u))", "1.6*(sin(u) + cos(u))", "0.8*u"])
    pts = np.array([y.bridge_point(u) for u in np.linspace(0.1, 2.0, 9)])
    assert np.allclose(pts[:, 0], -pts[:, 1])
    rep = mannheim_verify(x, y)
    assert not rep.verdict
    assert rep.check("b")[0].state == "fail"
