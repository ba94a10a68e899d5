"""
Resolve curve sources given on the command line or in JSON documents.

A source is either a catalog id (``helix:a=1.6,b=0.8``), ``@path.json``
or a decoded JSON object of one of these shapes::

    {"components": [...], "form": ..., "range": [s0, s1]}      expression curve
    {"catalog": "helix:a=1,b=1", "range": [s0, s1]}              catalog curve
    {"synthesized": {"kappa": "1", "tau": "u"}, "range": [...]}  from curvatures
    {"partner": "bertrand", "base": <source>, "lambda": "e^0.5"} offset partner
    {"partner": "mannheim", "base": <source>}

Ranges are multiplicative parameters (``"e^-1"`` or a positive decimal).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from . import classical as C
from .errors import ParseError
from .mcurve import CurveJet, catalog_curve, curve_from_curvatures
from .mexpr import component_map, curve_spec_from_json, range_value
from .mnum import parse_mnum
from .mpartner import bertrand_partner, mannheim_partner

__all__ = ["load_curve", "curve_from_doc", "parse_range", "DEFAULT_DOMAIN"]

DEFAULT_DOMAIN = (-1.0, 1.0)


def parse_range(text: str) -> tuple[float, float]:
    """``s0:s1`` with multiplicative literals, returned as bridge parameters."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ParseError(f"range must look like s0:s1, got {text!r}", len(text), {":"})
    a, b = parse_mnum(lo.strip()).logval, parse_mnum(hi.strip()).logval
    if not a < b:
        raise ParseError(f"range needs s0 < s1, got {text!r}", 0, {"s0 < s1"})
    return a, b


def _doc_range(doc) -> Optional[tuple[float, float]]:
    rng = doc.get("range")
    if rng is None:
        return None
    a, b = (range_value(v).logval for v in rng)
    if not a < b:
        raise ParseError("range needs s0 < s1", 0, {"s0 < s1"})
    return a, b


def curve_from_doc(doc: dict, base_dir: Path = Path(".")) -> CurveJet:
    rng = _doc_range(doc)
    if "components" in doc:
        spec = curve_spec_from_json(doc)
        comps = [component_map(t, f) for t, f in zip(spec.components, spec.forms)]
        return CurveJet.from_components(comps, rng or DEFAULT_DOMAIN, "dsl", "spec")
    if "catalog" in doc:
        curve = catalog_curve(doc["catalog"])
        return curve.with_domain(rng) if rng else curve
    if "synthesized" in doc:
        law = doc["synthesized"]
        if rng is None:
            raise ParseError("a synthesized curve needs a range", 0, {"range"})
        k = C.parse_classical(str(law["kappa"]))
        t = C.parse_classical(str(law["tau"]))
        return curve_from_curvatures(lambda U: C.evaluate_classical(k, U),
                                     lambda U: C.evaluate_classical(t, U), rng,
                                     name=f"synth(kappa={law['kappa']}, tau={law['tau']})")
    if "partner" in doc:
        base = load_curve(doc["base"], base_dir)
        if rng:
            base = base.with_domain(rng)
        kind = doc["partner"]
        if kind == "bertrand":
            return bertrand_partner(base, parse_mnum(str(doc["lambda"])))
        if kind == "mannheim":
            return mannheim_partner(base)
        raise ParseError(f"unknown partner kind {kind!r}", 0, {"bertrand", "mannheim"})
    raise ParseError("curve document needs one of components, catalog, synthesized, partner",
                     0, {"components", "catalog", "synthesized", "partner"})


def load_curve(source: Union[str, dict], base_dir: Path = Path(".")) -> CurveJet:
    if isinstance(source, dict):
        return curve_from_doc(source, base_dir)
    text = source.strip()
    if text.startswith("@") or text.endswith(".json"):
        path = Path(text.lstrip("@"))
        if not path.is_absolute():
            path = base_dir / path
        with open(path) as fh:
            return curve_from_doc(json.load(fh), path.parent)
    return catalog_curve(text)
