"""Multiplicative vectors in R*^n, the inner/cross products and planes."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, ParseError
from .mnum import MNum, format_real, isclose, parse_mnum, render

__all__ = [
    "MVec", "MPlane",
    "vadd", "vsub", "vneg", "smul", "minner", "mnorm", "mdistance",
    "mcross", "mangle", "munit", "plane_eval", "plane_contains",
    "parse_mvec", "render_mvec", "example_plane", "ZERO3",
]


@dataclass(frozen=True)
class MVec:
    """A vector of multiplicative numbers, stored by its log-image."""

    logs: tuple[float, ...]

    def __post_init__(self):
        logs = tuple(float(u) for u in self.logs)
        if not all(math.isfinite(u) for u in logs):
            raise DomainError(f"vector components need finite logs: {logs}")
        object.__setattr__(self, "logs", logs)

    @classmethod
    def of(cls, *components: MNum) -> "MVec":
        return cls(tuple(c.logval for c in components))

    @classmethod
    def from_logs(cls, logs: Iterable[float]) -> "MVec":
        return cls(tuple(logs))

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "MVec":
        out = []
        for v in values:
            if not v > 0:
                raise DomainError(f"vector components must be positive, got {v}")
            out.append(math.log(v))
        return cls(tuple(out))

    @property
    def components(self) -> tuple[MNum, ...]:
        return tuple(MNum(u) for u in self.logs)

    @property
    def log(self) -> np.ndarray:
        return np.array(self.logs)

    @property
    def dim(self) -> int:
        return len(self.logs)

    def __len__(self):
        return len(self.logs)

    def __getitem__(self, i) -> MNum:
        return MNum(self.logs[i])

    def isclose(self, other: "MVec", atol=1e-12, rtol=1e-9) -> bool:
        _check_dims(self, other)
        return all(isclose(a, b, atol, rtol) for a, b in zip(self.components, other.components))

    def __str__(self):
        return "(" + ", ".join(render(c, "log") for c in self.components) + ")"


def _check_dims(u: MVec, v: MVec):
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch: {u.dim} vs {v.dim}")


def vadd(u: MVec, v: MVec) -> MVec:
    _check_dims(u, v)
    return MVec(tuple(a + b for a, b in zip(u.logs, v.logs)))


def vsub(u: MVec, v: MVec) -> MVec:
    _check_dims(u, v)
    return MVec(tuple(a - b for a, b in zip(u.logs, v.logs)))


def vneg(u: MVec) -> MVec:
    return MVec(tuple(-a for a in u.logs))


def smul(a: MNum, u: MVec) -> MVec:
    """a ·* u, i.e. e^(log a · log u) componentwise."""
    return MVec(tuple(a.logval * x for x in u.logs))


def minner(u: MVec, v: MVec) -> MNum:
    _check_dims(u, v)
    return MNum(math.fsum(a * b for a, b in zip(u.logs, v.logs)))


def mnorm(u: MVec) -> MNum:
    return MNum(math.hypot(*u.logs))


def mdistance(u: MVec, v: MVec) -> MNum:
    """d*(u, v) = ||u -* v||*."""
    return mnorm(vsub(u, v))


def mcross(u: MVec, v: MVec) -> MVec:
    if u.dim != 3 or v.dim != 3:
        raise DimensionError("the multiplicative cross product needs 3-vectors")
    (u1, u2, u3), (v1, v2, v3) = u.logs, v.logs
    return MVec((u2 * v3 - u3 * v2, u3 * v1 - u1 * v3, u1 * v2 - u2 * v1))


def munit(u: MVec) -> MVec:
    """u /* ||u||*, the multiplicative unit vector along ``u``."""
    n = math.hypot(*u.logs)
    if n == 0.0:
        raise DomainError("the multiplicative zero vector has no direction")
    return MVec(tuple(x / n for x in u.logs))


def mangle(u: MVec, v: MVec) -> MNum:
    """Multiplicative angle; its log is the classical angle in [0, pi]."""
    _check_dims(u, v)
    a, b = np.array(u.logs), np.array(v.logs)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise DomainError("the multiplicative zero vector has no direction")
    # Kahan's form stays accurate for nearly parallel or antiparallel vectors
    x, y = a * nb, b * na
    return MNum(2.0 * math.atan2(float(np.linalg.norm(x - y)), float(np.linalg.norm(x + y))))


@dataclass(frozen=True)
class MPlane:
    """The plane  n1 ·* x +* n2 ·* y +* n3 ·* z -* offset = 0*.

    Coefficients are kept in canonical +* form, so a term written
    ``-* e^-2 ·* y`` is stored with coefficient e^2.
    """

    normal: MVec
    offset: MNum

    def __post_init__(self):
        if self.normal.dim != 3:
            raise DimensionError("a plane normal needs 3 components")
        if not any(self.normal.logs):
            raise DomainError("a plane normal cannot be the zero vector")


def plane_eval(plane: MPlane, point: MVec) -> MNum:
    return MNum(math.fsum(a * p for a, p in zip(plane.normal.logs, point.logs)) - plane.offset.logval)


def plane_contains(plane: MPlane, point: MVec, atol: float = 1e-12, rtol: float = 1e-9) -> bool:
    scale = max(abs(plane.offset.logval), 1.0)
    return abs(plane_eval(plane, point).logval) <= atol + rtol * scale


def example_plane() -> MPlane:
    """e^3 ·* x -* e^-2 ·* y +* z -* e^5 = 0*, i.e. 3X + 2Y + Z = 5 on logs."""
    return MPlane(MVec((3.0, 2.0, 1.0)), MNum(5.0))


_SPLIT = re.compile(r"\s*,\s*")


def parse_mvec(text: str) -> MVec:
    """Parse ``(e^5, e^3, e^-2)`` or ``(2.5, 1, 7)`` (mixed forms allowed)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"vector literal must be parenthesised: {text!r}", 0, {"("})
    parts = [p for p in _SPLIT.split(s[1:-1].strip()) if p]
    if not parts:
        raise ParseError("empty vector literal", 1, {"component"})
    return MVec.of(*(parse_mnum(p) for p in parts))


def render_mvec(u: MVec) -> str:
    return "(" + ", ".join("e^" + format_real(x) for x in u.logs) + ")"


def as_logs(vectors: Sequence[MVec]) -> np.ndarray:
    return np.array([v.logs for v in vectors])


ZERO3 = MVec((0.0, 0.0, 0.0))
