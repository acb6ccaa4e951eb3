"""Named verification suites, one per claim checked by ``gmtlab verify``.

Every suite returns a :class:`SuiteResult` whose checks compare a measured
value against a bound. Random draws use fixed seeds, so results are
reproducible run to run.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    commutator_trace,
    inverse,
    multiply,
    projective_distance,
)
from .catalog import (
    build_presentation,
    catalog_group,
    delta_two_generator_presentation,
    figure_eight_generators,
    involution_h1,
    involution_h2,
    involution_h3,
    o2_substitution_relator,
    o3_representation,
    o4_representation,
    realize_automorphism,
)
from .gmt import (
    commutator_trace_identity_residual,
    Lemma3Case,
    gmt_value,
    lemma1_floor,
    lemma3_case_residuals,
    lemma2_conjugate_pair,
    lemma3_verify,
    squared_distance_identity_residual,
)
from .sampling import random_conjugate, random_sl2
from .words import DEHN_TABLE, Word, apply_automorphism, evaluate_word, verify_relators

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "run_all", "LEMMA1_FIXTURES", "inner_conjugator_word"]

# Relator residuals are held to this multiple of tol.absolute.
RELATOR_FACTOR = 10


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    op: str = "<="  # "<=" for residuals, ">" for strict lower bounds

    @property
    def passed(self) -> bool:
        if self.op == ">":
            return self.value > self.bound
        return self.value <= self.bound

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "op": self.op, "bound": self.bound, "passed": self.passed}


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, name: str, value: float, bound: float, op: str = "<=") -> None:
        self.checks.append(Check(name, float(value), float(bound), op))

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": self.notes,
        }


def _rot(k: int, n: int) -> ProjectiveMatrix:
    w = cmath.exp(1j * math.pi * k / n)
    return ProjectiveMatrix(w, 0, 0, 1 / w)


LEMMA1_FIXTURES: dict[str, tuple[ProjectiveMatrix, str, float]] = {
    "parabolic": (ProjectiveMatrix(1, 1, 0, 1), "i", 2.0),
    "hyperbolic": (ProjectiveMatrix(2, 0, 0, 0.5), "ii", 2.0),
    "order 2": (ProjectiveMatrix(0, 1j, 1j, 0), "iii", 2.0),
    "order 3": (_rot(1, 3), "iii", 1.0),
    "order 6": (_rot(1, 6), "iv", 1.0),
    "order 7": (_rot(1, 7), "iv", 1.0),
    "rotation 2/13": (_rot(2, 13), "iv", 1.0),
}


def suite_lemma1(tol: Tolerance = DEFAULT_TOL, samples: int = 100, seed: int = 1) -> SuiteResult:
    """Types of f that force G(f, g) > 1 for every g with tr[f, g] != 1."""
    res = SuiteResult("lemma1")
    rng = np.random.default_rng(seed)
    for label, (f, case, floor) in LEMMA1_FIXTURES.items():
        got = lemma1_floor(f, tol)
        res.add(f"{label}: case ({case}) detected", 0.0 if got and got.case == case and got.floor == floor else 1.0, 0.0)
        worst_floor = -math.inf
        g_min = math.inf
        drawn = 0
        while drawn < samples:
            g = random_sl2(rng)
            ev = gmt_value(f, g, tol)
            if abs(ev.tr_commutator - 1) <= 1e-5:
                continue
            drawn += 1
            # G - |tr[f,g] - 1| = |tr^2 f - 2| must reach the floor
            worst_floor = max(worst_floor, floor + abs(ev.tr_commutator - 1) - ev.value)
            g_min = min(g_min, ev.value)
        res.add(f"{label}: floor shortfall", worst_floor, tol.absolute)
        res.add(f"{label}: min G", g_min, 1.0, ">")
    order4 = figure_eight_generators(4, tol).rho
    res.add("order 4 matches no case", 0.0 if lemma1_floor(order4, tol) is None else 1.0, 0.0)
    return res


def suite_lemma2(tol: Tolerance = DEFAULT_TOL, rounds: int = 3) -> SuiteResult:
    res = SuiteResult("lemma2")
    data = figure_eight_generators(4, tol)
    f, g = data.rho, data.b
    for i in range(rounds):
        h, ev = lemma2_conjugate_pair(f, g, tol)
        res.add(f"round {i + 1}: |G(f, gfg^-1) - 1|", abs(ev.value - 1), tol.absolute)
        g = h
    return res


def suite_lemma3(tol: Tolerance = DEFAULT_TOL, ns=(4, 5, 6)) -> SuiteResult:
    """Involutions h1, h2, h3 of Gamma(n) and the conjugation action each realizes.

    h3 acts by case (iii) with the generators in the order (b, rho).
    """
    res = SuiteResult("lemma3")
    for n in ns:
        data = figure_eight_generators(n, tol)
        rho, b = data.rho, data.b
        invols = {
            "h1": (involution_h1(), rho, b, "i"),
            "h2": (involution_h2(n, tol), rho, b, "ii"),
            "h3": (involution_h3(n, tol), b, rho, "iii"),
        }
        for name, (h, f, g, case) in invols.items():
            res.add(f"n={n} {name}: |h^2 - I|", projective_distance(multiply(h, h), IDENTITY), tol.absolute)
            res.add(f"n={n} {name}: case ({case}) residual", lemma3_case_residuals(f, g, h)[Lemma3Case(case)], tol.absolute)
            if n == 4:
                out = lemma3_verify(f, g, h, tol)
                res.add(f"n=4 {name}: reported case ({case})", 0.0 if out.case.value == case else 1.0, 0.0)
                res.add(f"n=4 {name}: |G(rho, h) - 1|", abs(gmt_value(rho, h, tol).value - 1), tol.absolute)
    return res


def suite_eq2(tol: Tolerance = DEFAULT_TOL, samples: int = 10_000, seed: int = 2) -> SuiteResult:
    res = SuiteResult("eq2")
    rng = np.random.default_rng(seed)
    worst = max(commutator_trace_identity_residual(random_sl2(rng), random_sl2(rng)) for _ in range(samples))
    res.add(f"max residual over {samples} random pairs", worst, tol.absolute)
    return res


def suite_eq3(tol: Tolerance = DEFAULT_TOL, samples: int = 1_000, seed: int = 3) -> SuiteResult:
    res = SuiteResult("eq3")
    rng = np.random.default_rng(seed)
    rho = figure_eight_generators(4, tol).rho
    worst = 0.0
    for _ in range(samples):
        f = random_conjugate(rng, rho)
        worst = max(worst, squared_distance_identity_residual(f, random_sl2(rng), tol))
    res.add(f"max residual over {samples} random h", worst, tol.absolute)
    return res


def _word_ball(gens: tuple[str, str], radius: int) -> list[Word]:
    letters = [(g, e) for g in gens for e in (1, -1)]
    out = [Word()]
    frontier: list[tuple] = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in letters:
                if w and w[-1][0] == x[0] and w[-1][1] == -x[1]:
                    continue
                nxt.append(w + (x,))
        out.extend(Word(w) for w in nxt)
        frontier = nxt
    return out


def _compose(labels) -> dict[str, Word]:
    # the table composes on the right: sigma tau means sigma first, then tau
    images = {"rho": Word.gen("rho"), "b": Word.gen("b")}
    for label in labels:
        images = {k: apply_automorphism(DEHN_TABLE, label, w) for k, w in images.items()}
    return images


def inner_conjugator_word(rep, images: dict[str, Word], radius: int = 6, tol: Tolerance = DEFAULT_TOL):
    """Shortest word X (length <= radius) with images = X gen X^-1 for both generators, or None."""
    targets = {k: evaluate_word(rep, w) for k, w in images.items()}
    for x in _word_ball(("rho", "b"), radius):
        X = evaluate_word(rep, x)
        Xi = inverse(X)
        if all(
            projective_distance(multiply(multiply(X, rep[k]), Xi), t) <= RELATOR_FACTOR * tol.absolute
            for k, t in targets.items()
        ):
            return x
    return None


DIHEDRAL_RELATIONS = {
    "sigma^2": ["sigma", "sigma"],
    "tau^4": ["tau"] * 4,
    "(sigma tau)^2": ["sigma tau", "sigma tau"],
}

ORIENTATION = {
    "sigma": "preserving",
    "tau": "reversing",
    "tau2": "preserving",
    "tau3": "reversing",
    "sigma tau": "reversing",
    "sigma tau2": "preserving",
    "sigma tau3": "reversing",
}


def suite_table1(tol: Tolerance = DEFAULT_TOL, ns=(4, 5, 6)) -> SuiteResult:
    """Automorphisms in the table send relators to relators and satisfy the dihedral relations up to inner automorphisms."""
    res = SuiteResult("table1")
    bound = RELATOR_FACTOR * tol.absolute
    for n in ns:
        rep = figure_eight_generators(n, tol).representation
        pres = build_presentation("Gamma", n)
        for label in DEHN_TABLE.labels():
            worst = 0.0
            for r in pres.relators:
                image = apply_automorphism(DEHN_TABLE, label, r)
                worst = max(worst, projective_distance(evaluate_word(rep, image), IDENTITY))
            res.add(f"n={n} {label}: relator images", worst, bound)
            images = dict(zip(DEHN_TABLE.generators, DEHN_TABLE.entries[label]))
            _, orientation = realize_automorphism(rep, images, tol)
            res.add(f"n={n} {label}: orientation {ORIENTATION[label]}", 0.0 if orientation == ORIENTATION[label] else 1.0, 0.0)
    rep4 = figure_eight_generators(4, tol).representation
    for name, labels in DIHEDRAL_RELATIONS.items():
        x = inner_conjugator_word(rep4, _compose(labels), tol=tol)
        res.add(f"{name} is inner", 0.0 if x is not None else 1.0, 0.0)
        res.notes[name] = str(x) if x is not None else None
    return res


def suite_o1(tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("o1")
    bound = RELATOR_FACTOR * tol.absolute
    spec = catalog_group("Delta", 4, tol)
    res.add("Delta(4) relators", spec.verify(tol).max_residual, bound)
    rep2 = {"rho": spec.representation["rho"], "h1": spec.representation["h1"]}
    res.add("Delta(4) two-generator relators", verify_relators(rep2, delta_two_generator_presentation(4), tol).max_residual, bound)
    rho, b, h1 = (spec.representation[k] for k in ("rho", "b", "h1"))
    out = lemma3_verify(rho, b, h1, tol)
    res.add("h1 case (i)", 0.0 if out.case.value == "i" else 1.0, 0.0)
    res.add("|G(rho, h1) - 1|", abs(out.evaluation.value - 1), tol.absolute)
    return res


def suite_o2(tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("o2")
    bound = RELATOR_FACTOR * tol.absolute
    spec = catalog_group("O2", 4, tol)
    res.add("O2(4) relators", spec.verify(tol).max_residual, bound)
    res.add(
        "figure-eight relator with rho = b^-1 h3 b^-1 h3 b",
        projective_distance(evaluate_word(spec.representation, o2_substitution_relator()), IDENTITY),
        bound,
    )
    data = figure_eight_generators(4, tol)
    h3 = spec.representation["h3"]
    rho_from_h3 = evaluate_word(spec.representation, Word.parse("b^-1 h3 b^-1 h3 b"))
    res.add("rho = b^-1 h3 b^-1 h3 b", projective_distance(rho_from_h3, data.rho), tol.absolute)
    out = lemma3_verify(data.b, data.rho, h3, tol)
    res.add("h3 case (iii) for (b, rho)", 0.0 if out.case.value == "iii" else 1.0, 0.0)
    res.add("|G(b, h3) - 1|", abs(out.evaluation.value - 1), tol.absolute)
    res.add("|G(rho, h3) - 1|", abs(gmt_value(data.rho, h3, tol).value - 1), tol.absolute)
    return res


def suite_o3(tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("o3")
    spec = catalog_group("O3", None, tol)
    a, b = spec.representation["a"], spec.representation["b"]
    res.add("|tr^2(a) - 2|", abs(a.trace_squared - 2), tol.absolute)
    res.add("|tr[a, b]|", abs(commutator_trace(a, b)), tol.absolute)
    res.add("|G(a, b) - 1|", abs(gmt_value(a, b, tol).value - 1), tol.absolute)
    res.add("O3 relators", spec.verify(tol).max_residual, RELATOR_FACTOR * tol.absolute)
    res.notes.update(spec.notes)
    return res


def suite_o4(tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("o4")
    o3 = o3_representation(tol)
    rep = o4_representation(tol)
    a, p = rep["a"], rep["p"]
    res.add("|p^2 - I|", projective_distance(multiply(p, p), IDENTITY), tol.absolute)
    res.add("|p a p^-1 - b|", projective_distance(multiply(multiply(p, a), inverse(p)), o3["b"]), tol.absolute)
    res.add("O4 relators", verify_relators(rep, build_presentation("O4"), tol).max_residual, RELATOR_FACTOR * tol.absolute)
    res.add("|G(a, p) - 1|", abs(gmt_value(a, p, tol).value - 1), tol.absolute)
    tc = commutator_trace(a, p)
    res.notes["tr[a, p]"] = [tc.real, tc.imag]
    return res


SUITES: dict[str, Callable[[Tolerance], SuiteResult]] = {
    "eq2": suite_eq2,
    "eq3": suite_eq3,
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma3": suite_lemma3,
    "o1": suite_o1,
    "o2": suite_o2,
    "o3": suite_o3,
    "o4": suite_o4,
    "table1": suite_table1,
}


def run_suite(name: str, tol: Tolerance = DEFAULT_TOL) -> SuiteResult:
    return SUITES[name](tol)


def run_all(tol: Tolerance = DEFAULT_TOL) -> list[SuiteResult]:
    return [SUITES[name](tol) for name in sorted(SUITES)]
