import csv
import io
import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from mgeom.cli import FRAME_HEADER, main
from mgeom.mcurve import frenet, helix
from mgeom.mnum import format_real, parse_mnum

FIX = Path(__file__).with_name("fixtures")
HELIX = "helix:a=0.7071,b=0.7071"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    assert run(capsys, "eval", "e^2 .* s", "--at", "e^3") == (0, "e^6 = 403.4287934927351\n", "")
    code, out, _ = run(capsys, "eval", "s -* s", "--at", "5")
    assert code == 0 and out.strip().endswith("1 (= 0*)")
    code, out, _ = run(capsys, "eval", "e^1", "--at", "2", "--log-form")
    assert out == "e^1\n"


@pytest.mark.parametrize("argv", [
    ["eval", "s +*", "--at", "2"],
    ["eval", "s", "--at", "e^"],
    ["frame"],
    ["frame", "--curve", "nosuch"],
    ["frame", "--curve", HELIX, "-n", "1"],
    ["frame", "--curve", HELIX, "--tol", "0"],
    ["frame", "--curve", HELIX, "--range", "e^1:e^0"],
    ["bogus"],
    ["plot", "--out", "x.svg"],
    ["partner", "bertrand", "--curve", HELIX],
    ["verify", "bertrand", "--curve", HELIX, "--partner", "@does-not-exist.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_domain_error_exits_1(capsys):
    assert run(capsys, "eval", "e^1 /* (s -* s)", "--at", "2")[0] == 1


def test_frame_csv(capsys):
    code, out, _ = run(capsys, "frame", "--curve", HELIX, "-n", "16")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == FRAME_HEADER
    assert len(rows) == 17
    for row in rows[1:]:
        assert parse_mnum(row[13]).logval == pytest.approx(0.7071, abs=1e-4)
        assert abs(parse_mnum(row[13]).logval - parse_mnum(rows[1][13]).logval) <= 1e-6


def test_frame_minimal(capsys):
    code, out, _ = run(capsys, "frame", "--curve", HELIX, "-n", "2")
    assert code == 0 and len(out.splitlines()) == 3


def test_frame_csv_roundtrip_is_lossless(capsys, tmp_path):
    path = tmp_path / "f.csv"
    assert run(capsys, "frame", "--curve", "helix:a=1.6,b=0.8", "-n", "5", "--out", str(path))[0] == 0
    rows = list(csv.reader(path.open()))
    x = helix(1.6, 0.8)
    for row in rows[1:]:
        vals = [parse_mnum(c) for c in row]
        assert [f"e^{format_real(v.logval)}" for v in vals] == row
        s = vals[0]
        F = frenet(x, s)
        expected = [*x.bridge_point(s.logval), *F.t.logs, *F.n.logs, *F.b.logs, F.kappa.logval, F.tau.logval]
        for got, want in zip(vals[1:], expected):
            assert got.logval == want or math.isclose(got.logval, want, rel_tol=0, abs_tol=math.ulp(want))


def test_frame_reparametrizes_with_notice(capsys):
    code, out, err = run(capsys, "frame", "--curve", f"@{FIX / 'circle_c1.json'}", "-n", "4")
    assert code == 0
    assert "not naturally parametrized" not in err  # the set C is already natural
    code, out, err = run(capsys, "frame", "--spec", str(FIX / "stretched.json"), "-n", "4")
    assert code == 0
    assert "not naturally parametrized" in err
    rows = list(csv.reader(io.StringIO(out)))
    assert parse_mnum(rows[1][0]).logval == 0.0


def test_frame_singular_curve(capsys):
    code, _, err = run(capsys, "frame", "--spec", str(FIX / "cusp.json"), "-n", "3")
    assert code == 1
    assert "row 1" in err


def test_classify(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "classify", "--curve", "helix:a=1.6,b=0.8", "--json", str(path))
    assert code == 0
    assert "helix" in out and "c = e^0.5" in out
    doc = json.loads(path.read_text())
    helix_rep = [r for r in doc["reports"] if r["test"] == "helix"][0]
    assert parse_mnum(helix_rep["constants"]["c"]).logval == pytest.approx(0.5, abs=1e-9)


def test_partner_then_verify(capsys, tmp_path):
    spec, report, table = tmp_path / "y.json", tmp_path / "r.json", tmp_path / "y.csv"
    code, _, _ = run(capsys, "partner", "bertrand", "--curve", HELIX, "--lambda", "e^0.5",
                     "--spec-out", str(spec), "--json", str(report), "--out", str(table))
    assert code == 0
    assert json.loads(report.read_text())["verdict"] is True
    rows = list(csv.reader(table.open()))
    assert rows[0] == ["s", "x1", "x2", "x3", "y1", "y2", "y3"] and len(rows) == 65
    code, out, _ = run(capsys, "verify", "bertrand", "--curve", HELIX, "--partner", f"@{spec}")
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_verify_mannheim_on_bertrand_pair_fails(capsys):
    code, out, _ = run(capsys, "verify", "mannheim", "--curve", HELIX,
                       "--partner", f"@{FIX / 'bertrand_y.json'}")
    assert code == 1
    a = [i for i in json.loads(out)["identities"] if i["key"] == "a"][0]
    assert a["status"] == "fail"


def test_partner_mannheim_inadmissible(capsys):
    assert run(capsys, "partner", "mannheim", "--curve", "rectifying")[0] == 1


def test_synthesize_roundtrip(capsys, tmp_path):
    path = tmp_path / "rect.json"
    code, _, _ = run(capsys, "synthesize", "--kappa", "1", "--tau", "u", "--range", "e^0.5:e^2",
                     "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "classify", "--curve", f"@{path}")
    rect = [r for r in json.loads(out)["reports"] if r["test"] == "rectifying"][0]
    assert rect["kind"] == "rectifying"
    assert run(capsys, "synthesize", "--kappa", "1 +", "--tau", "u", "--range", "e^0:e^1")[0] == 2


PLOTS = {
    "circle": ["--curve", f"@{FIX / 'circle_c1.json'}", "--projection", "xy"],
    "bertrand": ["--curve", HELIX, "--curve", f"@{FIX / 'bertrand_y.json'}"],
    "plane": ["--plane", "--vector", "(e^1, e^1, e^0)", "--raw-axes"],
}


@pytest.mark.parametrize("name", sorted(PLOTS))
def test_plot_wellformed_and_deterministic(capsys, tmp_path, name):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, "plot", *PLOTS[name], "--out", str(a))[0] == 0
    assert run(capsys, "plot", *PLOTS[name], "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    root = ET.parse(a).getroot()
    assert root.tag.endswith("svg")
    assert root.findall(".//{http://www.w3.org/2000/svg}polyline")


def test_circle_plot_is_unit_circle_on_log_axes(capsys, tmp_path):
    from mgeom.plot import PlotObject, render_svg
    import numpy as np
    U = np.linspace(-math.pi, math.pi, 50)
    svg = render_svg([PlotObject("c", [np.column_stack([np.cos(U), np.sin(U), 0 * U])])], "xy")
    assert "e^-1" in svg and "e^1" in svg


def test_eval_overflow_value(capsys):
    code, out, _ = run(capsys, "eval", "e^800", "--at", "1")
    assert code == 0 and "overflow" in out
