"""Action of PSL(2,C) on upper half-space H^3 and on its boundary sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .algebra import DEFAULT_TOL, ProjectiveMatrix, Tolerance
from .errors import DegenerateDenominator

__all__ = ["UpperHalfSpacePoint", "Infinity", "INFINITY", "BoundaryPoint", "act_h3", "act_boundary"]


@dataclass(frozen=True)
class UpperHalfSpacePoint:
    z: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))
        if not self.t > 0 or not math.isfinite(self.t):
            raise ValueError(f"height must be positive and finite, got {self.t}")


class Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()
BoundaryPoint = Union[complex, Infinity]


def _act_h3_entries(entries, z: complex, t: float, tol: Tolerance) -> tuple[complex, float]:
    a, b, c, d = entries
    czd = c * z + d
    denom = abs(czd) ** 2 + abs(c) ** 2 * t * t
    if denom <= tol.det_tol:
        raise DegenerateDenominator(f"|cz+d|^2 + |c|^2 t^2 = {denom:.3e}")
    new_z = ((a * z + b) * czd.conjugate() + a * c.conjugate() * t * t) / denom
    return new_z, t / denom


def act_h3(g: ProjectiveMatrix, p: UpperHalfSpacePoint, tol: Tolerance = DEFAULT_TOL) -> UpperHalfSpacePoint:
    """g(z, t) = (((az+b) conj(cz+d) + a conj(c) t^2) / D, t / D), D = |cz+d|^2 + |c|^2 t^2."""
    z, t = _act_h3_entries(g.entries, p.z, p.t, tol)
    return UpperHalfSpacePoint(z, t)


def act_boundary(g: ProjectiveMatrix, x: BoundaryPoint, tol: Tolerance = DEFAULT_TOL) -> BoundaryPoint:
    a, b, c, d = g.entries
    if isinstance(x, Infinity):
        if abs(c) <= tol.det_tol:
            return INFINITY
        return a / c
    x = complex(x)
    denom = c * x + d
    if abs(denom) <= tol.det_tol:
        return INFINITY
    return (a * x + b) / denom
