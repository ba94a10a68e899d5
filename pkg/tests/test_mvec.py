import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mgeom import mvec as V
from mgeom.errors import DimensionError, DomainError, ParseError
from mgeom.mnum import MNum
from mgeom.mvec import MVec

coord = st.floats(-30, 30, allow_nan=False)
vec3 = st.tuples(coord, coord, coord).map(MVec)


def test_fig1_cross_product():
    u, v = MVec((5, 3, -2)), MVec((4, 2, 13))
    assert V.mcross(u, v).logs == (43, -73, -2)
    assert V.minner(u, v).logval == 0


def test_examples():
    assert V.vadd(MVec((1, 2)), MVec((3, 1))).logs == (4, 3)
    assert V.mnorm(MVec((3, 4, 0))).logval == 5
    assert V.mnorm(MVec((0, 0, 0))).logval == 0
    assert V.minner(MVec((1, 0, 0)), MVec((0, 1, 0))).logval == 0
    assert V.mcross(MVec((1, 0, 0)), MVec((0, 1, 0))).logs == (0, 0, 1)
    assert V.mangle(MVec((1, 0, 0)), MVec((1, 1, 0))).logval == pytest.approx(math.pi / 4, abs=1e-15)
    assert V.mangle(MVec((1, 0, 0)), MVec((0, 1, 0))).logval == pytest.approx(math.pi / 2, abs=1e-15)
    u = MVec((2, -1, 5))
    assert V.smul(MNum(1), u) == u
    assert V.smul(MNum(0), u).logs == (0, 0, 0)


def test_example_plane():
    P = V.example_plane()
    assert V.plane_contains(P, MVec((1, 1, 0)))
    assert V.plane_eval(P, MVec((1, 1, 0))).logval == 0
    assert not V.plane_contains(V.MPlane(P.normal, MNum(6)), MVec((1, 1, 0)))


def test_errors():
    with pytest.raises(DimensionError):
        V.vadd(MVec((1, 2)), MVec((1, 2, 3)))
    with pytest.raises(DomainError):
        V.munit(MVec((0, 0, 0)))
    with pytest.raises(ParseError):
        V.parse_mvec("e^1, e^2")


def test_parse_and_render():
    u = V.parse_mvec("(e^5, e^3, e^-2)")
    assert u.logs == (5, 3, -2)
    assert V.parse_mvec(V.render_mvec(u)) == u
    assert V.parse_mvec("(1, 2.5, 7)").logs == pytest.approx((0, math.log(2.5), math.log(7)))


@settings(max_examples=500)
@given(vec3, vec3)
def test_cross_orthogonal(u, v):
    w = V.mcross(u, v)
    scale = max(1.0, V.mnorm(u).logval * V.mnorm(v).logval) ** 2
    assert abs(V.minner(w, u).logval) <= 1e-12 * scale
    assert abs(V.minner(w, v).logval) <= 1e-12 * scale


@settings(max_examples=500)
@given(vec3, st.floats(-5, 5, allow_nan=False))
def test_collinear_cross_vanishes(u, k):
    w = V.mcross(u, V.smul(MNum(k), u))
    scale = max(1.0, V.mnorm(u).logval) ** 2 * max(1.0, abs(k))
    assert max(abs(c) for c in w.logs) <= 1e-12 * scale


@settings(max_examples=500)
@given(vec3, vec3)
def test_norm_and_angle_bridge(u, v):
    a, b = np.array(u.logs), np.array(v.logs)
    assert V.mnorm(u).logval == pytest.approx(np.linalg.norm(a), rel=1e-12, abs=1e-12)
    assert V.mdistance(u, v).logval == pytest.approx(np.linalg.norm(a - b), rel=1e-12, abs=1e-12)
    if np.linalg.norm(a) > 1e-3 and np.linalg.norm(b) > 1e-3:
        assert V.mangle(u, v).logval == pytest.approx(_angle_oracle(a, b), abs=1e-12)


def _angle_oracle(a, b):
    mp.mp.dps = 40
    A, B = [mp.mpf(x) for x in a], [mp.mpf(x) for x in b]
    dot = sum(x * y for x, y in zip(A, B))
    cross = [A[1] * B[2] - A[2] * B[1], A[2] * B[0] - A[0] * B[2], A[0] * B[1] - A[1] * B[0]]
    return float(mp.atan2(mp.sqrt(sum(c * c for c in cross)), dot))
