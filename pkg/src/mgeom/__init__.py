"""Multiplicative (non-Newtonian) differential geometry of space curves.

Multiplicative numbers are positive reals stored by their logarithm, so
every multiplicative object has a classical "bridge" image under log.
"""

from . import errors, mcalc, mcurve, mexpr, mnum, mpartner, mvec
from .mnum import MNum, parse_mnum, render
from .mvec import MVec

__version__ = "0.1.0"

__all__ = ["errors", "mnum", "mvec", "mcalc", "mexpr", "mcurve", "mpartner", "MNum", "MVec",
           "parse_mnum", "render", "__version__"]
