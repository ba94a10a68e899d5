import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mgeom import classical as C
from mgeom.jet import Jet
from mgeom.mcalc import (ScalarMapJet, fd_derivative, star_antiderivative, star_arclength,
                         star_derivative, star_integral_definite)
from mgeom.mcurve import circle, helix
from mgeom.mexpr import component_map
from mgeom.mnum import MNum

ORACLE = json.loads(Path(__file__).with_name("oracles").joinpath("calculus_oracle.json").read_text())
IDS = [f"{r['f']}@{r['s']}" for r in ORACLE]


def exact_map(text):
    return component_map(text, "log")


def plain_map(text):
    # eval only: derivatives come from finite differences
    expr = C.parse_classical(text)
    return ScalarMapJet(lambda s: MNum(C.evaluate_classical(expr, s.logval)))


@pytest.mark.parametrize("row", ORACLE, ids=IDS)
def test_closed_form_derivative(row):
    f = exact_map(row["log_form"])
    s = MNum(math.log(float(row["s"])))
    assert f(s).logval == pytest.approx(row["log_f"], abs=1e-12)
    assert star_derivative(f, s, 1).logval == pytest.approx(row["log_d1"], rel=1e-8, abs=1e-8)
    assert star_derivative(f, s, 2).logval == pytest.approx(row["log_d2"], rel=1e-8, abs=1e-8)


@pytest.mark.parametrize("row", ORACLE, ids=IDS)
def test_finite_differences_agree(row):
    s = MNum(math.log(float(row["s"])))
    exact, fd = exact_map(row["log_form"]), plain_map(row["log_form"])
    for k in (1, 2):
        a, b = star_derivative(exact, s, k).logval, star_derivative(fd, s, k).logval
        assert abs(a - b) <= 1e-5 * max(1.0, abs(a))


@pytest.mark.parametrize("text", sorted({r["log_form"] for r in ORACLE}))
def test_fundamental_theorem(text):
    f = exact_map(text)
    a, b = MNum(-0.7), MNum(0.9)
    fstar = ScalarMapJet(lambda s: star_derivative(f, s, 1), lambda U, k: f.jet(U, k + 1)[1:])
    lhs = star_integral_definite(fstar, a, b).logval
    assert lhs == pytest.approx(f(b).logval - f(a).logval, abs=1e-8)
    F = star_antiderivative(f, a)
    for U in (-0.3, 0.4):
        assert star_derivative(F, MNum(U), 1).logval == pytest.approx(f(MNum(U)).logval, abs=1e-12)


def test_examples():
    const = ScalarMapJet.constant(MNum(3.0))
    ident = exact_map("u")
    square = exact_map("u^2")
    for U in (-1.0, 0.0, 2.0):
        s = MNum(U)
        assert star_derivative(const, s).logval == 0
        assert star_derivative(ident, s).logval == 1
        assert star_derivative(square, s).logval == pytest.approx(2 * U)
    one = ScalarMapJet.constant(MNum(1.0))
    assert star_integral_definite(one, MNum(0.0), MNum(2.5)).logval == pytest.approx(2.5)
    assert star_integral_definite(ScalarMapJet.constant(MNum(0.0)), MNum(-1), MNum(4)).logval == 0
    assert star_integral_definite(square, MNum(1.2), MNum(1.2)).logval == 0


def test_arclength():
    L = 1.3
    assert star_arclength(circle(), MNum(0.0), MNum(L)).logval == pytest.approx(L, abs=1e-10)
    assert star_arclength(helix(), MNum(0.0), MNum(1.0)).logval == pytest.approx(1.0, abs=1e-10)
    assert star_arclength(helix(), MNum(0.4), MNum(0.4)).logval == 0


def test_from_log_function_matches_fd():
    f = ScalarMapJet.from_log_function(lambda U: (U * U + 1.0).sqrt() if isinstance(U, Jet) else math.sqrt(U * U + 1))
    for U in (-1.2, 0.3, 2.0):
        for k in (1, 2, 3):
            exact = star_derivative(f, MNum(U), k).logval
            assert exact == pytest.approx(fd_derivative(f.bridge, U, k), rel=1e-5, abs=1e-5)


@settings(max_examples=200)
@given(st.floats(-2, 2), st.floats(0.1, 3))
def test_power_law_bridge(U, p):
    # f(s) = e^((log s)^p) for s > 1 has f* with log p U^(p-1)
    U = abs(U) + 0.1
    f = exact_map(f"u^{p!r}")
    assert star_derivative(f, MNum(U)).logval == pytest.approx(p * U ** (p - 1), rel=1e-12)


def test_jet_orders_consistent():
    f = exact_map("sin(u)*exp(u/3)")
    d = f.jet(0.7, 3)
    assert np.allclose(d[:3], f.jet(0.7, 2))
