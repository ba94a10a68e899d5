"""Multiplicative space curves: Frenet apparatus, classifiers, synthesis, catalog."""

from .catalog import CATALOG, catalog_curve, circle, helix, mannheim_test_curve, rectifying, slant_helix, sphcurve
from .classify import (
    ClassificationReport, classify, classify_helix, classify_slant_helix, rectifying_fit,
    slant_helix_sigma, spherical_check,
)
from .core import (
    Apparatus, CurveJet, FrenetApparatus, NaturalReport, apparatus, curvature_jets, frenet,
    frenet_residuals, is_natural, reparametrize_natural, sample_params, speed_star,
)
from .synth import curve_from_curvatures

__all__ = [
    "CATALOG", "catalog_curve", "circle", "helix", "mannheim_test_curve", "rectifying", "slant_helix",
    "sphcurve", "ClassificationReport", "classify", "classify_helix", "classify_slant_helix",
    "rectifying_fit", "slant_helix_sigma", "spherical_check", "Apparatus", "CurveJet",
    "FrenetApparatus", "NaturalReport", "apparatus", "curvature_jets", "frenet", "frenet_residuals",
    "is_natural", "reparametrize_natural", "sample_params", "speed_star", "curve_from_curvatures",
]
