"""The GMT functional and the trace identities built around it.

For f, g in PSL(2,C) with tr[f,g] != 1,

    G(f, g) = |tr^2 f - 2| + |tr[f,g] - 1|,

and a discrete pair always has G(f, g) >= 1. Nothing here certifies
discreteness; a value below one only certifies its failure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    DEFAULT_TOL,
    ProjectiveMatrix,
    Tolerance,
    commutator_trace,
    inverse,
    lift_trace,
    multiply,
    projective_distance,
)
from .classification import Kind, classify, is_involution
from .errors import (
    AmbiguousClassification,
    LemmaViolation,
    NoCaseMatches,
    PreconditionNotGmtPair,
    PreconditionTrSquared,
)

__all__ = [
    "GmtEvaluation",
    "InequalityStatus",
    "gmt_value",
    "gmt_inequality_check",
    "commutator_trace_identity_residual",
    "squared_distance_identity_residual",
    "Lemma1Floor",
    "lemma1_floor",
    "lemma2_conjugate_pair",
    "Lemma3Case",
    "Lemma3Result",
    "lemma3_case_residuals",
    "lemma3_verify",
]


def _cpair(z: complex) -> list[float]:
    return [z.real, z.imag]


@dataclass(frozen=True)
class GmtEvaluation:
    tr_squared_f: complex
    tr_commutator: complex
    value: float
    commutator_trace_is_one: bool
    # None when tr[f,g] = 1, where the functional is undefined
    equality_attained: Optional[bool]
    tolerance: Tolerance = field(default=DEFAULT_TOL)

    def to_dict(self) -> dict:
        return {
            "tr_squared_f": _cpair(self.tr_squared_f),
            "tr_commutator": _cpair(self.tr_commutator),
            "value": self.value,
            "commutator_trace_is_one": self.commutator_trace_is_one,
            "equality_attained": self.equality_attained,
            "tolerance": self.tolerance.to_dict(),
        }


def gmt_value(f: ProjectiveMatrix, g: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL) -> GmtEvaluation:
    t2 = f.trace_squared
    tc = commutator_trace(f, g)
    value = abs(t2 - 2) + abs(tc - 1)
    is_one = abs(tc - 1) <= tol.absolute
    equality = None if is_one else abs(value - 1) <= tol.absolute
    return GmtEvaluation(t2, tc, value, is_one, equality, tol)


class InequalityStatus(str, enum.Enum):
    SATISFIED_STRICT = "SatisfiedStrict"
    EQUALITY = "Equality"
    VIOLATED = "Violated"
    NOT_APPLICABLE = "NotApplicable"


def gmt_inequality_check(f: ProjectiveMatrix, g: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL) -> InequalityStatus:
    """Compare G(f, g) with 1.

    VIOLATED means <f, g> cannot be discrete (given tr[f,g] != 1). Neither
    SATISFIED_STRICT nor EQUALITY says anything about discreteness.
    """
    ev = gmt_value(f, g, tol)
    if ev.commutator_trace_is_one:
        return InequalityStatus.NOT_APPLICABLE
    if abs(ev.value - 1) <= tol.absolute:
        return InequalityStatus.EQUALITY
    if ev.value < 1 - tol.absolute:
        return InequalityStatus.VIOLATED
    return InequalityStatus.SATISFIED_STRICT


def _conj_trace_lhs(f: ProjectiveMatrix, h: ProjectiveMatrix) -> complex:
    # tr[f, h f h^-1] as one product of fixed lifts
    return lift_trace(
        [(f, 1), (h, 1), (f, 1), (h, -1), (f, -1), (h, 1), (f, -1), (h, -1)]
    )


def commutator_trace_identity_residual(f: ProjectiveMatrix, h: ProjectiveMatrix) -> float:
    """|tr[f, hfh^-1] - ((t - 2)(t - tr^2 f + 2) + 2)| with t = tr[f, h].

    The left side is a direct matrix product; the right side uses traces only.
    """
    lhs = _conj_trace_lhs(f, h)
    t = commutator_trace(f, h)
    rhs = (t - 2) * (t - f.trace_squared + 2) + 2
    return abs(lhs - rhs)


def squared_distance_identity_residual(
    f: ProjectiveMatrix, h: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL
) -> float:
    """| |tr[f, hfh^-1] - 1| - |tr[f, h] - 1|^2 |, valid when tr^2 f = 2."""
    if abs(f.trace_squared - 2) > tol.absolute:
        raise PreconditionTrSquared(f"tr^2 f = {f.trace_squared:.12g}, expected 2")
    lhs = abs(_conj_trace_lhs(f, h) - 1)
    rhs = abs(commutator_trace(f, h) - 1) ** 2
    return abs(lhs - rhs)


@dataclass(frozen=True)
class Lemma1Floor:
    case: str  # "i", "ii", "iii" or "iv"
    floor: float  # lower bound on |tr^2 f - 2|
    strict: bool = False  # bound is strict (hyperbolic case)


def lemma1_floor(f: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL) -> Optional[Lemma1Floor]:
    """Lower bound on |tr^2 f - 2| when f is of a type that forces G(f, g) > 1.

    Parabolic: 2. Hyperbolic: strictly above 2. Order two: 2. Order three: 1.
    Rotation by 2*pi*k/n with n/k >= 6: 1. Returns None for any other f,
    in particular for order four, where tr^2 f = 2.
    """
    try:
        cls = classify(f, tol)
    except AmbiguousClassification:
        return None
    if cls.kind is Kind.PARABOLIC:
        return Lemma1Floor("i", 2.0)
    if cls.kind is Kind.LOXODROMIC:
        return Lemma1Floor("ii", 2.0, strict=True) if cls.hyperbolic else None
    if cls.kind is Kind.ELLIPTIC and cls.order is not None:
        k, n = cls.order
        if n == 2:
            return Lemma1Floor("iii", 2.0)
        if n == 3:
            return Lemma1Floor("iii", 1.0)
        if n >= 6 * k:
            return Lemma1Floor("iv", 1.0)
    return None


def _require_gmt_pair(f, g, tol):
    if abs(f.trace_squared - 2) > tol.absolute:
        raise PreconditionNotGmtPair(f"tr^2 f = {f.trace_squared:.12g}; f must have order four")
    ev = gmt_value(f, g, tol)
    if not ev.equality_attained:
        raise PreconditionNotGmtPair(f"G(f, g) = {ev.value:.12g}, not 1")


def lemma2_conjugate_pair(
    f: ProjectiveMatrix, g: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL
) -> tuple[ProjectiveMatrix, GmtEvaluation]:
    """From a pair with G(f, g) = 1 and f of order four, build h = g f g^-1 with G(f, h) = 1."""
    _require_gmt_pair(f, g, tol)
    h = multiply(multiply(g, f), inverse(g))
    ev = gmt_value(f, h, tol)
    if not ev.equality_attained:
        raise LemmaViolation(f"G(f, gfg^-1) = {ev.value:.15g} despite G(f, g) = 1")
    return h, ev


class Lemma3Case(str, enum.Enum):
    CONJUGATES_TO_G = "i"  # h f h^-1 = g
    INVERTS_F = "ii"  # h f h^-1 = f^-1
    CONJUGATES_TO_FGINV_FINV = "iii"  # h f h^-1 = f g^-1 f^-1


@dataclass(frozen=True)
class Lemma3Result:
    case: Lemma3Case
    residual: float
    matches: tuple[Lemma3Case, ...]
    residuals: dict
    evaluation: GmtEvaluation


def lemma3_case_residuals(f: ProjectiveMatrix, g: ProjectiveMatrix, h: ProjectiveMatrix) -> dict:
    """Distance from h f h^-1 to each case target: g, f^-1 and f g^-1 f^-1."""
    finv = inverse(f)
    targets = {
        Lemma3Case.CONJUGATES_TO_G: g,
        Lemma3Case.INVERTS_F: finv,
        Lemma3Case.CONJUGATES_TO_FGINV_FINV: multiply(multiply(f, inverse(g)), finv),
    }
    hfh = multiply(multiply(h, f), inverse(h))
    return {case: projective_distance(hfh, target) for case, target in targets.items()}


def lemma3_verify(
    f: ProjectiveMatrix, g: ProjectiveMatrix, h: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL
) -> Lemma3Result:
    """Identify how the involution h acts on f and confirm G(f, h) = 1.

    All three target actions are tested; when several coincide the first in
    the order (i), (ii), (iii) is reported as primary.
    """
    _require_gmt_pair(f, g, tol)
    if not is_involution(h, tol):
        raise PreconditionNotGmtPair("h is not an involution")
    residuals = lemma3_case_residuals(f, g, h)
    matches = tuple(case for case, r in residuals.items() if r <= tol.absolute)
    if not matches:
        raise NoCaseMatches(
            "h f h^-1 matches none of g, f^-1, f g^-1 f^-1; residuals "
            + ", ".join(f"({c.value}) {r:.3e}" for c, r in residuals.items())
        )
    ev = gmt_value(f, h, tol)
    if not ev.equality_attained:
        raise LemmaViolation(f"case ({matches[0].value}) matched but G(f, h) = {ev.value:.15g}")
    return Lemma3Result(
        matches[0],
        residuals[matches[0]],
        matches,
        {c.value: r for c, r in residuals.items()},
        ev,
    )
