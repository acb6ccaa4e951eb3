"""Presentations and PSL(2,C) representations of the figure-eight orbifold family.

Groups covered: the figure-eight knot group, Gamma(n) (orbifold group of the
figure-eight knot with cone angle 2*pi/n), Delta(n) = O1(n) (its extension by
the involution h1), O2(n) (extension by h3), and the two tunnel orbifolds
O3 and O4.

Generator names: ``rho``, ``b`` for Gamma(n); ``h1``, ``h3`` for the
involutions; ``a``, ``b`` for O3 and ``a``, ``p`` for O4.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    commutator_trace,
    inverse,
    multiply,
    normalize_det,
    projective_distance,
)
from .classification import is_involution
from .errors import (
    AmbiguousSolution,
    BadIndex,
    LemmaViolation,
    NegativeRadicand,
    NoBranchSatisfiesRelation,
    NoSolution,
    RootFindFailed,
    SingularNormalization,
    UnknownName,
)
from .gmt import GmtEvaluation, gmt_value
from .words import Presentation, RelatorReport, Word, commutator_word, evaluate_word, verify_relators

__all__ = [
    "cosh_dn",
    "FigureEightData",
    "figure_eight_generators",
    "lambda_trace_distance",
    "gamma_gmt_upper_bound",
    "involution_h1",
    "involution_h2",
    "involution_h3",
    "solve_conjugator",
    "realize_automorphism",
    "figure_eight_relator",
    "build_presentation",
    "delta_two_generator_presentation",
    "o2_substitution_relator",
    "RootRecord",
    "o3_root",
    "o3_representation",
    "o4_representation",
    "OrbifoldGroupSpec",
    "catalog_group",
    "catalog_matrix",
    "export_group",
    "GROUP_NAMES",
]

# Relator residual that a branch of e^(d_n/2) must meet to be accepted.
BRANCH_RELATOR_TOL = 1e-8


def _check_index(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 4:
        raise BadIndex(f"index n must be an integer >= 4, got {n!r}")
    return int(n)


def cosh_dn(n: int) -> complex:
    """cosh d_n = (1 + cot^2(pi/n) - i sqrt(3 cot^4(pi/n) + 14 cot^2(pi/n) - 5)) / 4."""
    n = _check_index(n)
    c2 = 1.0 / math.tan(math.pi / n) ** 2
    radicand = 3 * c2 * c2 + 14 * c2 - 5
    return complex(1 + c2, -math.sqrt(radicand)) / 4


def _rho_b(n: int, half_exp: complex) -> tuple[ProjectiveMatrix, ProjectiveMatrix]:
    c = math.cos(math.pi / n)
    s = math.sin(math.pi / n)
    rho = ProjectiveMatrix(c, 1j * half_exp * s, 1j * s / half_exp, c)
    b = ProjectiveMatrix(c, 1j * s / half_exp, 1j * half_exp * s, c)
    return rho, b


def figure_eight_relator(x: str = "rho", y: str = "b") -> Word:
    """rho^-1 [b, rho] b^-1 [b, rho]^-1, i.e. rho^-1 [b,rho] = [b,rho] b."""
    X, Y = Word.gen(x), Word.gen(y)
    c = commutator_word(Y, X)
    return X.inverse() * c * Y.inverse() * c.inverse()


@dataclass(frozen=True)
class FigureEightData:
    n: int
    cosh_dn: complex
    dn_half_exp: complex
    branch_tag: str
    rho: ProjectiveMatrix
    b: ProjectiveMatrix
    relator_residual: float
    passing_branches: tuple[str, ...]

    @property
    def representation(self) -> dict[str, ProjectiveMatrix]:
        return {"rho": self.rho, "b": self.b}


@functools.lru_cache(maxsize=256)
def figure_eight_generators(n: int, tol: Tolerance = DEFAULT_TOL) -> FigureEightData:
    """Generators rho_n, b_n of Gamma(n) in PSL(2,C).

    Only cosh d_n is known in closed form, so every candidate
    e^(d_n/2) = +-sqrt(cosh d_n +- sinh d_n) is tried and kept if the
    figure-eight relator holds. Among survivors the first with nonnegative
    imaginary part, then nonnegative real part, wins.
    """
    n = _check_index(n)
    ch = cosh_dn(n)
    sh = cmath.sqrt(ch * ch - 1)
    relator = figure_eight_relator()
    passing = []
    for s_sign, s_tag in ((1, "+"), (-1, "-")):
        root = cmath.sqrt(ch + s_sign * sh)
        for r_sign, r_tag in ((1, "+"), (-1, "-")):
            e = r_sign * root
            rho, b = _rho_b(n, e)
            residual = projective_distance(evaluate_word({"rho": rho, "b": b}, relator), IDENTITY)
            if residual <= BRANCH_RELATOR_TOL:
                passing.append((f"sinh{s_tag}/root{r_tag}", e, rho, b, residual))
    if not passing:
        raise NoBranchSatisfiesRelation(f"no branch of e^(d_n/2) satisfies the relator at n={n}")

    def preference(item):
        e = item[1]
        return (e.imag < -tol.det_tol, e.real < -tol.det_tol)

    tag, e, rho, b, residual = min(passing, key=preference)
    return FigureEightData(n, ch, e, tag, rho, b, residual, tuple(p[0] for p in passing))


def lambda_trace_distance(n: int, lam: float) -> float:
    """Closed form for |tr[rho_n, b_n] - lam| with real lam."""
    n = _check_index(n)
    radicand = (lam * lam - 3 * lam + 3) + 4 * (lam - 1) * math.sin(math.pi / n) ** 2
    if radicand < 0:
        raise NegativeRadicand(f"radicand {radicand} < 0 at n={n}, lambda={lam}")
    return math.sqrt(radicand)


def gamma_gmt_upper_bound(n: int) -> float:
    """3 - 4 sin^2(pi/n): the G value of (rho_n, b_n), an upper bound on G(Gamma(n))."""
    n = _check_index(n)
    return 3 - 4 * math.sin(math.pi / n) ** 2


def involution_h1() -> ProjectiveMatrix:
    """The involution exchanging rho_n and b_n by conjugation, for every n."""
    return ProjectiveMatrix(0, 1j, 1j, 0)


def _conjugation_rows(g: ProjectiveMatrix, target: ProjectiveMatrix, sign: int = 1) -> np.ndarray:
    # row-major vec: vec(h g) = (I kron g^T) vec(h), vec(t h) = (t kron I) vec(h)
    eye = np.eye(2)
    return np.kron(eye, g.to_numpy().T) - sign * np.kron(target.to_numpy(), eye)


def solve_conjugator(
    constraints: Sequence[tuple[ProjectiveMatrix, ProjectiveMatrix]],
    tol: Tolerance = DEFAULT_TOL,
    rank_rtol: float = 1e-10,
    antiholomorphic: bool = False,
) -> ProjectiveMatrix:
    """Find h with h g h^-1 = +-target for every (g, target) pair.

    Each constraint h g = target h is linear in the entries of h. For every
    sign pattern on the targets the stacked system's null space is computed
    by SVD (rank cutoff ``rank_rtol`` times the largest singular value); the
    first pattern with a one-dimensional null space that verifies wins.

    With ``antiholomorphic=True`` the constraints read h conj(g) h^-1 = target,
    which realizes orientation-reversing symmetries.
    """
    constraints = list(constraints)
    if not constraints:
        raise ValueError("need at least one constraint")
    if antiholomorphic:
        constraints = [(_conj(g), t) for g, t in constraints]
    k = len(constraints)
    dims = []
    # each target's lift is independent, so no sign pattern is redundant
    for mask in range(2**k):
        signs = [-1 if mask >> i & 1 else 1 for i in range(k)]
        # the sign goes into the linear system; ProjectiveMatrix cannot hold -t
        system = np.vstack([_conjugation_rows(g, t, sign) for sign, (g, t) in zip(signs, constraints)])
        _, sv, vh = np.linalg.svd(system)
        rank = int(np.sum(sv > rank_rtol * sv[0])) if sv[0] > 0 else 0
        dim = 4 - rank
        dims.append(dim)
        if dim != 1:
            continue
        v = vh[-1].conj()
        h = v.reshape(2, 2)
        if abs(np.linalg.det(h)) <= tol.det_tol:
            raise SingularNormalization("null vector has determinant ~ 0")
        H = normalize_det(h, tol)
        Hinv = inverse(H)
        if all(projective_distance(multiply(multiply(H, g), Hinv), t) <= tol.absolute for g, t in constraints):
            return H
    top = max(dims)
    if top >= 2:
        raise AmbiguousSolution(f"null space has dimension {top}; add constraints", dimension=top)
    raise NoSolution("no nonzero solution for any sign pattern", dimension=0)


def _conj(m: ProjectiveMatrix) -> ProjectiveMatrix:
    return ProjectiveMatrix(*(x.conjugate() for x in m.entries))


def realize_automorphism(
    rep: Mapping[str, ProjectiveMatrix], images: Mapping[str, Word], tol: Tolerance = DEFAULT_TOL
) -> tuple[ProjectiveMatrix, str]:
    """Isometry inducing generator -> word images: (h, "preserving") or (h, "reversing").

    Orientation-reversing isometries act as x -> h conj(x) h^-1.
    """
    pairs = [(rep[g], evaluate_word(rep, w)) for g, w in images.items()]
    try:
        return solve_conjugator(pairs, tol), "preserving"
    except NoSolution:
        return solve_conjugator(pairs, tol, antiholomorphic=True), "reversing"


def _realize(rep: Mapping[str, ProjectiveMatrix], images: Mapping[str, Word], tol: Tolerance) -> ProjectiveMatrix:
    """Solve for h realizing generator -> word images by conjugation."""
    return solve_conjugator([(rep[g], evaluate_word(rep, w)) for g, w in images.items()], tol)


@functools.lru_cache(maxsize=64)
def involution_h2(n: int, tol: Tolerance = DEFAULT_TOL) -> ProjectiveMatrix:
    """Involution inverting both generators: rho -> rho^-1, b -> b^-1."""
    rep = figure_eight_generators(n, tol).representation
    return _realize(rep, {"rho": Word.parse("rho^-1"), "b": Word.parse("b^-1")}, tol)


# h3 sends b -> lam^-1 and lam -> b^-1 where lam = b rho b^-1.
H3_IMAGES = {"b": Word.parse("b rho^-1 b^-1"), "lam": Word.parse("b^-1")}


@functools.lru_cache(maxsize=64)
def involution_h3(n: int, tol: Tolerance = DEFAULT_TOL) -> ProjectiveMatrix:
    """Order-two symmetry with h3 b h3^-1 = b rho^-1 b^-1 and h3 (b rho b^-1) h3^-1 = b^-1."""
    rep = dict(figure_eight_generators(n, tol).representation)
    rep["lam"] = evaluate_word(rep, Word.parse("b rho b^-1"))
    return _realize(rep, H3_IMAGES, tol)


def _w(text: str) -> Word:
    return Word.parse(text)


def delta_two_generator_presentation(n: int) -> Presentation:
    """Delta(n) on rho, h1 after eliminating b = h1 rho h1^-1."""
    n = _check_index(n)
    b_image = _w("h1 rho h1^-1")
    fig8 = figure_eight_relator().substitute({"b": b_image})
    return Presentation(f"Delta({n}) two-generator", ("rho", "h1"), (_w(f"rho^{n}"), _w("h1^2"), fig8))


def o2_substitution_relator() -> Word:
    """Figure-eight relator with rho = b^-1 h3 b^-1 h3 b substituted."""
    return figure_eight_relator().substitute({"rho": _w("b^-1 h3 b^-1 h3 b")})


GROUP_NAMES = {
    "knot": "KnotGroup",
    "knotgroup": "KnotGroup",
    "gamma": "Gamma",
    "delta": "Delta",
    "o1": "Delta",
    "o2": "O2",
    "o3": "O3",
    "o4": "O4",
}


def _canonical_name(name: str) -> str:
    try:
        return GROUP_NAMES[name.lower()]
    except KeyError:
        raise UnknownName(f"unknown group {name!r}; known: {sorted(set(GROUP_NAMES.values()))}") from None


def build_presentation(name: str, n: Optional[int] = None) -> Presentation:
    canon = _canonical_name(name)
    if canon == "KnotGroup":
        return Presentation("KnotGroup", ("rho", "b"), (figure_eight_relator(),))
    if canon == "O3":
        a, b = Word.gen("a"), Word.gen("b")
        return Presentation("O3", ("a", "b"), (a**4, b**4, commutator_word(a, b) ** 2))
    if canon == "O4":
        return Presentation("O4", ("a", "p"), (_w("a^4"), _w("p^2"), _w("a p a p a^-1 p a^-1 p") ** 2))
    n = _check_index(n)
    if canon == "Gamma":
        return Presentation(f"Gamma({n})", ("rho", "b"), (_w(f"rho^{n}"), _w(f"b^{n}"), figure_eight_relator()))
    if canon == "Delta":
        return Presentation(
            f"Delta({n})",
            ("rho", "b", "h1"),
            (_w(f"rho^{n}"), _w(f"b^{n}"), _w("h1^2"), figure_eight_relator(), _w("h1 rho h1^-1 b^-1")),
        )
    # O2(n): b h b h b^-1 h b^-1 h b h = h b h b^-1 h b^-1 h b h b
    lhs = _w("b h3 b h3 b^-1 h3 b^-1 h3 b h3")
    rhs = _w("h3 b h3 b^-1 h3 b^-1 h3 b h3 b")
    return Presentation(f"O2({n})", ("b", "h3"), (_w(f"b^{n}"), _w("h3^2"), lhs * rhs.inverse()))


@dataclass(frozen=True)
class RootRecord:
    start: complex
    root: complex
    iterations: int
    residual: float


O3_START_GRID = (1 + 0j, 1 + 1j, 2 + 0j, 2 + 1j, 1 + 2j, 2 + 2j)


def _o3_a() -> ProjectiveMatrix:
    w = cmath.exp(1j * math.pi / 4)
    return ProjectiveMatrix(w, 0, 0, 1 / w)


def _translation(t: complex) -> ProjectiveMatrix:
    c, s = cmath.cosh(t / 2), cmath.sinh(t / 2)
    return ProjectiveMatrix(c, s, s, c)


def _o3_pair(t: complex) -> tuple[ProjectiveMatrix, ProjectiveMatrix]:
    a = _o3_a()
    T = _translation(t)
    return a, multiply(multiply(T, a), inverse(T))


def _o3_equation(t: complex) -> complex:
    return commutator_trace(*_o3_pair(t))


@functools.lru_cache(maxsize=8)
def o3_root(tol: Tolerance = DEFAULT_TOL, max_iter: int = 100, accept: float = 1e-10) -> RootRecord:
    """Newton's method for tr[a, T(t) a T(t)^-1] = 0 in the complex parameter t.

    The function is holomorphic in t, so a central difference with a complex
    step estimates the derivative. Starting points are tried in a fixed order.
    """
    step = 1e-7
    for t0 in O3_START_GRID:
        t = t0
        for it in range(1, max_iter + 1):
            f = _o3_equation(t)
            if abs(f) <= 1e-14:
                break
            df = (_o3_equation(t + step) - _o3_equation(t - step)) / (2 * step)
            if df == 0 or not cmath.isfinite(df):
                break
            t = t - f / df
            if not cmath.isfinite(t) or abs(t) > 50:
                break
        if cmath.isfinite(t) and abs(t) <= 50:
            res = abs(_o3_equation(t))
            if res <= accept:
                return RootRecord(t0, t, it, res)
    raise RootFindFailed("no start point converged to tr[a, b] = 0")


def o3_representation(tol: Tolerance = DEFAULT_TOL) -> dict[str, ProjectiveMatrix]:
    """a = order-four rotation about the vertical axis, b = T a T^-1 with tr[a, b] = 0."""
    rec = o3_root(tol)
    a, b = _o3_pair(rec.root)
    return {"a": a, "b": normalize_det(b, tol)}


def o4_representation(tol: Tolerance = DEFAULT_TOL) -> dict[str, ProjectiveMatrix]:
    """a from O3 together with the involution p exchanging a and b."""
    o3 = o3_representation(tol)
    a, b = o3["a"], o3["b"]
    p = solve_conjugator([(a, b), (b, a)], tol)
    if not is_involution(p, tol):
        raise LemmaViolation("conjugator exchanging a and b is not an involution")
    ev = gmt_value(a, p, tol)
    if not ev.equality_attained:
        raise LemmaViolation(f"G(a, p) = {ev.value:.15g}, expected 1")
    return {"a": a, "p": p}


@dataclass(frozen=True)
class OrbifoldGroupSpec:
    name: str
    n: Optional[int]
    presentation: Presentation
    representation: Optional[dict[str, ProjectiveMatrix]]
    notes: dict = field(default_factory=dict)
    gmt_pair: Optional[tuple[str, str]] = None

    def verify(self, tol: Tolerance = DEFAULT_TOL) -> Optional[RelatorReport]:
        if self.representation is None:
            return None
        return verify_relators(self.representation, self.presentation, tol)

    def gmt(self, tol: Tolerance = DEFAULT_TOL) -> Optional[GmtEvaluation]:
        if self.representation is None or self.gmt_pair is None:
            return None
        f, g = self.gmt_pair
        return gmt_value(self.representation[f], self.representation[g], tol)


def catalog_group(name: str, n: Optional[int] = None, tol: Tolerance = DEFAULT_TOL) -> OrbifoldGroupSpec:
    canon = _canonical_name(name)
    pres = build_presentation(canon, n)
    if canon == "KnotGroup":
        return OrbifoldGroupSpec(canon, None, pres, None, {"representation": "not constructed"})
    if canon == "O3":
        rec = o3_root(tol)
        notes = {"root_t": [rec.root.real, rec.root.imag], "start": [rec.start.real, rec.start.imag],
                 "iterations": rec.iterations, "equation_residual": rec.residual}
        return OrbifoldGroupSpec(canon, None, pres, o3_representation(tol), notes, ("a", "b"))
    if canon == "O4":
        rec = o3_root(tol)
        notes = {"root_t": [rec.root.real, rec.root.imag], "p": "solve_conjugator({a -> b, b -> a})"}
        return OrbifoldGroupSpec(canon, None, pres, o4_representation(tol), notes, ("a", "p"))
    data = figure_eight_generators(n, tol)
    notes = {
        "cosh_dn": [data.cosh_dn.real, data.cosh_dn.imag],
        "dn_half_exp": [data.dn_half_exp.real, data.dn_half_exp.imag],
        "branch": data.branch_tag,
        "passing_branches": list(data.passing_branches),
    }
    rep = dict(data.representation)
    if canon == "Gamma":
        return OrbifoldGroupSpec(canon, n, pres, rep, notes, ("rho", "b"))
    if canon == "Delta":
        rep["h1"] = involution_h1()
        return OrbifoldGroupSpec(canon, n, pres, rep, notes, ("rho", "h1"))
    h3 = involution_h3(n, tol)
    notes["rho"] = "b^-1 h3 b^-1 h3 b"
    return OrbifoldGroupSpec(canon, n, pres, {"b": rep["b"], "h3": h3}, notes, ("b", "h3"))


def catalog_matrix(ref: str, tol: Tolerance = DEFAULT_TOL) -> ProjectiveMatrix:
    """Resolve ``name[:n][:word]``, e.g. ``gamma:4:rho``, ``h1``, ``h3:5``, ``o3:a b^-1``."""
    parts = [p.strip() for p in ref.split(":")]
    name = parts[0].lower()
    n = None
    rest = parts[1:]
    if rest and rest[0].lstrip("-").isdigit():
        n = int(rest[0])
        rest = rest[1:]
    word = rest[0] if rest else None
    if len(rest) > 1:
        raise ValueError(f"bad catalog reference {ref!r}")
    if name == "h1":
        return involution_h1()
    if name == "h2":
        return involution_h2(_check_index(n), tol)
    if name == "h3":
        return involution_h3(_check_index(n), tol)
    spec = catalog_group(name, n, tol)
    if spec.representation is None:
        raise UnknownName(f"{spec.name} has no representation in the catalog")
    if word is None:
        raise ValueError(f"reference {ref!r} needs a generator or word, e.g. {name}:{n or ''}:{spec.presentation.generators[0]}")
    return evaluate_word(spec.representation, Word.parse(word))


def export_group(name: str, n: Optional[int] = None, tol: Tolerance = DEFAULT_TOL) -> dict:
    """JSON-ready document: presentation, matrices, branch/root data and residuals."""
    spec = catalog_group(name, n, tol)
    doc = {
        "name": spec.name,
        "n": spec.n,
        "presentation": spec.presentation.to_json(),
        "representation": None,
        "notes": spec.notes,
        "relators": None,
        "gmt": None,
        "tolerance": tol.to_dict(),
    }
    if spec.representation is not None:
        doc["representation"] = {k: m.to_literal() for k, m in spec.representation.items()}
        doc["relators"] = spec.verify(tol).to_dict()
        ev = spec.gmt(tol)
        doc["gmt"] = {"pair": list(spec.gmt_pair), **ev.to_dict()}
    return doc
