"""Trace classification of PSL(2,C) elements and finite-order detection."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .algebra import DEFAULT_TOL, IDENTITY, ProjectiveMatrix, Tolerance, multiply, projective_distance
from .errors import AmbiguousClassification, NotElliptic

__all__ = ["Kind", "ElementClass", "classify", "elliptic_order", "is_involution"]


class Kind(str, enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class ElementClass:
    kind: Kind
    tr_squared: complex
    hyperbolic: bool = False
    order: Optional[tuple[int, int]] = None  # (k, n), rotation angle 2*pi*k/n

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "tr_squared": [self.tr_squared.real, self.tr_squared.imag],
            "hyperbolic": self.hyperbolic,
            "order": list(self.order) if self.order else None,
        }


def _is_identity(M: ProjectiveMatrix, tol: Tolerance) -> bool:
    return projective_distance(M, IDENTITY) <= tol.absolute


def classify(M: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL, max_order: int = 64) -> ElementClass:
    """Classify M as identity, elliptic, parabolic or loxodromic by tr^2.

    Identity is tested first. A squared trace within ``tol`` of 4 counts as
    parabolic, never loxodromic. Elements whose distance to +-I lies in
    ``(tol, sqrt(tol)]`` have tr^2 within tol of 4 whatever their type, so
    they raise AmbiguousClassification instead of being guessed.
    """
    t2 = M.trace_squared
    dist = projective_distance(M, IDENTITY)
    if dist <= tol.absolute:
        return ElementClass(Kind.IDENTITY, t2)
    if abs(t2 - 4) <= tol.absolute:
        if dist <= math.sqrt(tol.absolute):
            raise AmbiguousClassification(
                f"tr^2 = {t2:.6g} is at the parabolic boundary and M is {dist:.3e} from +-I",
                candidates=(Kind.IDENTITY, Kind.PARABOLIC),
            )
        return ElementClass(Kind.PARABOLIC, t2)
    if abs(t2.imag) <= tol.absolute and -tol.absolute <= t2.real < 4:
        return ElementClass(Kind.ELLIPTIC, t2, order=_nearest_order(t2, max_order, tol))
    t = M.trace
    hyperbolic = abs(t.imag) <= tol.absolute and abs(t.real) > 2 + tol.absolute
    return ElementClass(Kind.LOXODROMIC, t2, hyperbolic=hyperbolic)


def _nearest_order(t2: complex, max_n: int, tol: Tolerance) -> Optional[tuple[int, int]]:
    best = None
    best_res = math.inf
    for n in range(2, max_n + 1):
        # k and n - k give the same tr^2; k <= n/2 keeps the search tie-free
        for k in range(1, n // 2 + 1):
            if math.gcd(k, n) != 1:
                continue
            res = abs(t2 - 4 * math.cos(math.pi * k / n) ** 2)
            if res < best_res:
                best, best_res = (k, n), res
    if best_res <= tol.absolute:
        return best
    return None


def elliptic_order(M: ProjectiveMatrix, max_n: int = 64, tol: Tolerance = DEFAULT_TOL) -> Optional[tuple[int, int]]:
    """Coprime (k, n), n <= max_n, with tr^2(M) = 4 cos^2(pi k / n), if one fits within tol."""
    cls = classify(M, tol, max_order=max_n)
    if cls.kind is not Kind.ELLIPTIC:
        raise NotElliptic(f"element is {cls.kind.value}, not elliptic")
    return cls.order


def is_involution(M: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    if _is_identity(M, tol):
        return False
    return _is_identity(multiply(M, M), tol)
