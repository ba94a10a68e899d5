import json
import math

import pytest

from mgeom.errors import NotNaturalError
from mgeom.mcurve import (CurveJet, circle, classify, classify_helix, classify_slant_helix,
                          curve_from_curvatures, helix, rectifying, rectifying_fit, slant_helix,
                          slant_helix_sigma, sphcurve, spherical_check)
from mgeom.mexpr import component_map
from mgeom.mnum import MNum
from mgeom.mvec import MVec


@pytest.fixture(scope="module")
def rect():
    return rectifying()


@pytest.mark.parametrize("a,b", [(1 / math.sqrt(2), 1 / math.sqrt(2)), (1.6, 0.8), (0.5, 1.5)])
def test_helix_constant(a, b):
    rep = classify_helix(helix(a, b))
    assert rep.kind == "helix"
    assert rep.constants["c"].logval == pytest.approx(b / a, abs=1e-9)


def test_affine_ratio_is_not_helix(rect):
    assert classify_helix(rect).kind == "none"


def test_slant_sigma_vanishes_on_helices():
    h = helix(1.6, 0.8)
    for U in (-2.0, 0.0, 1.5):
        assert slant_helix_sigma(h, MNum(U)).logval == pytest.approx(0.0, abs=1e-12)
    reports = {r.test: r for r in classify(h)}
    assert reports["helix"].positive and not reports["slant_helix"].positive


def test_slant_sigma_on_rectifying_curve(rect):
    for U in (0.6, 1.0, 1.8):
        expected = 1 / (1 + U * U) ** 1.5
        assert slant_helix_sigma(rect, MNum(U)).logval == pytest.approx(expected, abs=1e-6)
    assert classify_slant_helix(rect).kind == "none"


def test_slant_helix_detected():
    rep = classify_slant_helix(slant_helix(0.5))
    assert rep.kind == "slant_helix"
    assert rep.constants["sigma"].logval == pytest.approx(0.5, abs=1e-6)


def test_spherical_curve():
    rep = spherical_check(sphcurve())
    assert rep.kind == "spherical"
    assert rep.residual <= 1e-6
    rep = spherical_check(sphcurve(), center=MVec((0.0, 0.0, 0.0)), radius=MNum(1.0))
    assert rep.kind == "spherical"
    assert rep.constants["radius_residual"] <= 1e-6
    assert rep.constants["center_distance_residual"] <= 1e-9


def test_helix_not_spherical():
    assert spherical_check(helix(1.6, 0.8)).kind == "none"


def test_circle_distance_from_centre():
    # radius e about (1,1,1): the planar circle has undefined torsion ratio, only distance is checked
    c = circle()
    for U in (-3.0, -1.0, 0.5, 2.9):
        p = c.bridge_point(U)
        assert math.dist(p, (0, 0, 0)) == pytest.approx(1.0, abs=1e-12)


def test_rectifying_fit(rect):
    rep = rectifying_fit(rect)
    assert rep.kind == "rectifying"
    assert rep.constants["a"].logval == pytest.approx(1.0, abs=1e-3)
    assert rep.constants["b"].logval == pytest.approx(0.0, abs=1e-3)


def test_rectifying_intercept():
    x = curve_from_curvatures(lambda U: 1.0, lambda U: U + 2.0, (0.0, 1.0))
    rep = rectifying_fit(x)
    assert rep.constants["b"].logval == pytest.approx(2.0, abs=1e-3)


def test_helix_not_rectifying():
    rep = rectifying_fit(helix(1.6, 0.8))
    assert rep.kind == "none"
    assert rep.constants["a"].logval == pytest.approx(0.0, abs=1e-9)


def test_requires_natural():
    x = CurveJet.from_components([component_map(t) for t in ("e^2 .* s", "msin(s)", "e^0")], (0.0, 1.0))
    with pytest.raises(NotNaturalError):
        classify_helix(x)


def test_report_json():
    doc = classify_helix(helix(1.6, 0.8)).to_json()
    assert json.loads(json.dumps(doc))["constants"]["c"].startswith("e^0.5")
