"""
Command-line front end.

    mgeom eval "e^2 .* s" --at e^3
    mgeom frame --curve helix:a=0.7071,b=0.7071 -n 16
    mgeom classify --curve helix:a=1.6,b=0.8
    mgeom partner bertrand --curve helix --lambda e^0.5 --spec-out y.json
    mgeom verify bertrand --curve helix --partner @y.json
    mgeom synthesize --kappa 1 --tau u --range e^0.5:e^2 --out rect.json
    mgeom plot --curve circle --out circle.svg

Exit status: 0 success, 1 verification failure or numerical/domain error,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import classical as C
from . import mexpr
from .errors import InadmissibleCurveError, MGeomError, ParseError, SingularCurveError
from .mcurve import (CurveJet, classify, frenet, is_natural, reparametrize_natural,
                     sample_params)
from .mcurve.core import SPEED_EPS
from .mnum import MNum, format_real, parse_mnum, render
from .mpartner import (bertrand_verify, mannheim_lambda, mannheim_verify, offset_curve)
from .mvec import example_plane, parse_mvec, render_mvec
from .plot import PROJECTIONS, PlotObject, render_svg
from .sources import load_curve, parse_range

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FRAME_HEADER = ["s", "x1", "x2", "x3", "t1", "t2", "t3", "n1", "n2", "n3",
                "b1", "b2", "b3", "kappa", "tau"]


class UsageError(Exception):
    pass


def _lit(u: float) -> str:
    # CSV and JSON always carry the lossless log form
    return "e^" + format_real(u)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _summary(args, line: str):
    """Human summary: stdout when the machine output went to a file."""
    stream = sys.stdout if getattr(args, "json", None) or getattr(args, "out", None) else sys.stderr
    print(line, file=stream)


def _curve(args, which: str = "curve") -> CurveJet:
    src = getattr(args, which, None)
    spec = getattr(args, "spec", None) if which == "curve" else None
    if isinstance(src, list):
        src = src[0] if src else None
    if src and spec:
        raise UsageError("give either --curve or --spec, not both")
    if spec:
        src = "@" + spec
    if not src:
        raise UsageError(f"missing --{which}")
    curve = load_curve(src)
    rng = getattr(args, "range", None)
    if rng and which == "curve":
        curve = curve.with_domain(parse_range(rng))
    return curve


def _natural(curve: CurveJet, args) -> CurveJet:
    if is_natural(curve, args.n).natural:
        return curve
    print("notice: curve is not naturally parametrized; reparametrizing by arc length",
          file=sys.stderr)
    return reparametrize_natural(curve)


def _first_singular_row(curve: CurveJet, params) -> Optional[int]:
    for i, U in enumerate(params):
        if float(np.linalg.norm(curve.jet(U, 1)[1])) < SPEED_EPS:
            return i
    return None


# --- subcommands -------------------------------------------------------------

def cmd_eval(args) -> int:
    node = mexpr.parse(args.expr)
    x = mexpr.evaluate(node, parse_mnum(args.at))
    text = render(x, "log")
    if not args.log_form:
        value = math.exp(x.logval) if x.logval < 709 else math.inf
        text += f" = {format_real(value) if math.isfinite(value) else 'overflow'}"
        if x.logval == 0.0:
            text += " (= 0*)"
        elif x.logval == 1.0:
            text += " (= 1*)"
    print(text)
    return EXIT_OK


def frame_rows(curve: CurveJet, n: int, tol: float) -> list[list[str]]:
    rows = []
    for U in sample_params(curve, n):
        F = frenet(curve, MNum(U), tol)
        x = curve.bridge_point(U)
        logs = F.as_logs()
        rows.append([_lit(U), *map(_lit, x), *map(_lit, logs["t"]), *map(_lit, logs["n"]),
                     *map(_lit, logs["b"]), _lit(logs["kappa"]), _lit(logs["tau"])])
    return rows


def cmd_frame(args) -> int:
    curve = _curve(args)
    bad = _first_singular_row(curve, sample_params(curve, args.n))
    if bad is not None:
        U = sample_params(curve, args.n)[bad]
        print(f"error: curve is singular at row {bad} (s = {_lit(U)})", file=sys.stderr)
        return EXIT_FAIL
    curve = _natural(curve, args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FRAME_HEADER)
    w.writerows(frame_rows(curve, args.n, args.tol))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    curve = _natural(_curve(args), args)
    reports = classify(curve, args.n, args.tol)
    doc = {"curve": curve.name or curve.provenance, "reports": [r.to_json() for r in reports]}
    _emit(json.dumps(doc, indent=2) + "\n", args.json)
    kinds = [r.kind for r in reports if r.positive] or ["none"]
    const = {k: v for r in reports if r.positive for k, v in r.to_json()["constants"].items()}
    extra = ", ".join(f"{k} = {v}" for k, v in const.items())
    _summary(args, f"classification: {', '.join(kinds)}" + (f" ({extra})" if extra else ""))
    return EXIT_OK


def _verify(kind: str, x: CurveJet, y: CurveJet, args):
    fn = bertrand_verify if kind == "bertrand" else mannheim_verify
    return fn(x, y, args.n, args.tol)


def _report_summary(report) -> str:
    parts = [f"{c.key}:{c.state}" for c in report.checks]
    head = "PASS" if report.verdict else "FAIL"
    return (f"{report.kind} {head}  lambda={_lit(report.lam.logval)}  "
            f"theta={_lit(report.theta.logval)}  " + " ".join(parts))


def cmd_partner(args) -> int:
    x = _curve(args)
    if args.kind == "bertrand":
        if args.lam is None:
            raise UsageError("partner bertrand needs --lambda")
        lam = parse_mnum(args.lam)
    else:
        ml = mannheim_lambda(x, args.n, args.tol)
        if not ml.admissible:
            raise InadmissibleCurveError(
                f"kappa/(kappa^2 + tau^2) is not constant (deviation {ml.deviation:.3g})")
        lam = ml.lam
    # the partner shares the parameter of x, so rows correspond one to one
    y = offset_curve(x, lam, f"{args.kind}({x.name})")
    report = _verify(args.kind, x, y, args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "x1", "x2", "x3", "y1", "y2", "y3"])
    for U in sample_params(x, args.n):
        w.writerow([_lit(U), *map(_lit, x.bridge_point(U)), *map(_lit, y.bridge_point(U))])
    _emit(buf.getvalue(), args.out)

    base = args.spec and str(Path(args.spec).resolve())
    doc = {"partner": args.kind, "base": ("@" + base) if base else args.curve[0]}
    if args.range:
        doc["range"] = [_lit(v) for v in parse_range(args.range)]
    if args.kind == "bertrand":
        doc["lambda"] = _lit(lam.logval)
    if args.spec_out:
        Path(args.spec_out).write_text(json.dumps(doc, indent=2) + "\n")

    out = report.to_json()
    out["partner_spec"] = doc
    if args.json:
        Path(args.json).write_text(json.dumps(out, indent=2) + "\n")
    print(_report_summary(report), file=sys.stderr if not (args.json or args.out) else sys.stdout)
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_verify(args) -> int:
    x = _curve(args)
    y = load_curve(args.partner)
    report = _verify(args.kind, x, y, args)
    _emit(json.dumps(report.to_json(), indent=2) + "\n", args.json)
    _summary(args, _report_summary(report))
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_synthesize(args) -> int:
    if not args.range:
        raise UsageError("synthesize needs --range s0:s1")
    lo, hi = parse_range(args.range)
    for text in (args.kappa, args.tau):
        C.parse_classical(text)  # fail early with a parse error
    doc = {"synthesized": {"kappa": args.kappa, "tau": args.tau},
           "range": [_lit(lo), _lit(hi)]}
    curve = load_curve(doc)  # integrates once so accuracy problems surface here
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    _summary(args, f"synthesized natural curve on s in [{_lit(lo)}, {_lit(hi)}], "
                   f"end point {render_mvec(curve.point(MNum(hi)))}")
    return EXIT_OK


def _plane_lines(span=(-2.0, 2.0), k: int = 9):
    P = example_plane()
    a, b, c = P.normal.logs
    grid = np.linspace(span[0], span[1], k)

    def z(X, Y):
        return (P.offset.logval - a * X - b * Y) / c

    lines = [np.array([[X, Y, z(X, Y)] for Y in grid]) for X in grid]
    lines += [np.array([[X, Y, z(X, Y)] for X in grid]) for Y in grid]
    return lines


def cmd_plot(args) -> int:
    objects = []
    for src in args.curve or []:
        curve = load_curve(src)
        if args.range:
            curve = curve.with_domain(parse_range(args.range))
        pts = np.array([curve.bridge_point(U) for U in sample_params(curve, max(args.n, 2))])
        objects.append(PlotObject(src, [pts]))
    if args.spec:
        curve = load_curve("@" + args.spec)
        pts = np.array([curve.bridge_point(U) for U in sample_params(curve, max(args.n, 2))])
        objects.append(PlotObject(Path(args.spec).name, [pts]))
    for text in args.vector or []:
        v = parse_mvec(text)
        objects.append(PlotObject(render_mvec(v), [np.array([[0.0, 0.0, 0.0], v.logs])], "vector"))
    if args.plane:
        objects.append(PlotObject("plane e^3.*x +* e^2.*y +* z = e^5", _plane_lines(), "plane"))
    if not objects:
        raise UsageError("plot needs at least one --curve, --spec, --vector or --plane")
    svg = render_svg(objects, args.projection, args.raw_axes, args.title or "")
    if not args.out:
        raise UsageError("plot needs --out file.svg")
    Path(args.out).write_text(svg)
    print(f"wrote {args.out} ({len(objects)} objects)")
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def _positive_int(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("sample count must be at least 2")
    return n


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgeom", description="Multiplicative differential geometry of curves.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n=64, tol=1e-6):
        sp.add_argument("--curve", action="append", help="catalog id or @curve.json")
        sp.add_argument("--spec", help="CurveSpec JSON file")
        sp.add_argument("--range", help="parameter range s0:s1 (multiplicative literals)")
        sp.add_argument("-n", type=_positive_int, default=n, help="sample count")
        sp.add_argument("--tol", type=_positive_float, default=tol)
        sp.add_argument("--out")

    sp = sub.add_parser("eval", help="evaluate a multiplicative expression")
    sp.add_argument("expr")
    sp.add_argument("--at", required=True, help="value of s")
    sp.add_argument("--log-form", action="store_true", help="print only the e^<log> form")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("frame", help="CSV of Frenet apparatus samples")
    common(sp)
    sp.set_defaults(func=cmd_frame)

    sp = sub.add_parser("classify", help="helix / slant helix / spherical / rectifying tests")
    common(sp)
    sp.add_argument("--json", help="write the JSON report here")
    sp.set_defaults(func=cmd_classify)

    for name, fn, hlp in (("partner", cmd_partner, "construct a Bertrand or Mannheim partner curve"),
                          ("verify", cmd_verify, "check a curve pair against the partner identities")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("kind", choices=("bertrand", "mannheim"))
        common(sp)
        sp.add_argument("--json", help="write the JSON report here")
        if name == "partner":
            sp.add_argument("--lambda", dest="lam", help="Bertrand offset lambda")
            sp.add_argument("--spec-out", help="write a partner curve document here")
        else:
            sp.add_argument("--partner", required=True, help="partner curve: catalog id or @doc.json")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("synthesize", help="curve document from curvature and torsion laws")
    sp.add_argument("--kappa", required=True, help="log-curvature as a classical expression in u")
    sp.add_argument("--tau", required=True, help="log-torsion as a classical expression in u")
    sp.add_argument("--range")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_synthesize)

    sp = sub.add_parser("plot", help="SVG of curves, vectors and the example plane")
    common(sp, n=200)
    sp.add_argument("--vector", action="append", help="vector literal such as '(e^1, e^2, e^0)'")
    sp.add_argument("--plane", action="store_true", help="draw the example plane as a wireframe")
    sp.add_argument("--projection", choices=PROJECTIONS, default="iso")
    sp.add_argument("--raw-axes", action="store_true", help="draw actual values instead of logs")
    sp.add_argument("--title")
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MGeomError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
