"""Group words, finite presentations, relator checks and generating-pair search."""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    commutator_trace,
    inverse,
    multiply,
    power,
    projective_distance,
)
from .errors import UnboundSymbol, UnknownLabel
from .gmt import gmt_value

__all__ = [
    "Word",
    "commutator_word",
    "Presentation",
    "evaluate_word",
    "RelatorCheck",
    "RelatorReport",
    "verify_relators",
    "AutomorphismTable",
    "DEHN_TABLE",
    "apply_automorphism",
    "NielsenResult",
    "nielsen_search",
]

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for sym, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((sym, merged))
        else:
            out.append((sym, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word: a tuple of (symbol, nonzero exponent) syllables."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        checked = []
        for sym, exp in self.letters:
            if not isinstance(sym, str) or not sym:
                raise ValueError(f"bad generator symbol {sym!r}")
            if isinstance(exp, bool) or int(exp) != exp:
                raise ValueError(f"bad exponent {exp!r}")
            checked.append((sym, int(exp)))
        object.__setattr__(self, "letters", _reduce(checked))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, exp),))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace-separated tokens ``x`` or ``x^k``; ``1`` or empty is the identity."""
        letters = []
        for tok in text.replace("*", " ").split():
            if tok == "1":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse word token {tok!r}")
            letters.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def substitute(self, mapping: Mapping[str, "Word"]) -> "Word":
        """Replace each generator by a word; unmapped generators stay as they are."""
        out = Word()
        for sym, exp in self.letters:
            image = mapping.get(sym, Word.gen(sym))
            out = out * image**exp
        return out

    def to_json(self) -> list[list]:
        return [[s, e] for s, e in self.letters]

    @classmethod
    def from_json(cls, obj) -> "Word":
        return cls(tuple((s, e) for s, e in obj))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)


def commutator_word(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators) or not all(self.generators):
            raise ValueError(f"generators must be nonempty and distinct: {self.generators}")
        for r in self.relators:
            extra = r.symbols() - set(self.generators)
            if extra:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(extra)}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [r.to_json() for r in self.relators],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Presentation":
        return cls(obj["name"], tuple(obj["generators"]), tuple(Word.from_json(r) for r in obj["relators"]))


def evaluate_word(rep: Mapping[str, ProjectiveMatrix], w: Word) -> ProjectiveMatrix:
    result = IDENTITY
    for sym, exp in w.letters:
        try:
            m = rep[sym]
        except KeyError:
            raise UnboundSymbol(f"no matrix assigned to generator {sym!r}") from None
        result = multiply(result, power(m, exp))
    return result


@dataclass(frozen=True)
class RelatorCheck:
    relator: Word
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound


@dataclass(frozen=True)
class RelatorReport:
    presentation: str
    checks: tuple[RelatorCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def to_dict(self) -> dict:
        return {
            "presentation": self.presentation,
            "passed": self.passed,
            "relators": [
                {"relator": str(c.relator), "residual": c.residual, "bound": c.bound, "passed": c.passed}
                for c in self.checks
            ],
        }


def verify_relators(
    rep: Mapping[str, ProjectiveMatrix], pres: Presentation, tol: Tolerance = DEFAULT_TOL
) -> RelatorReport:
    """Evaluate every relator and compare with +-I.

    Rounding error grows linearly with word length, so each relator is held
    to ``tol.absolute * max(1, len(relator))``.
    """
    missing = [g for g in pres.generators if g not in rep]
    if missing:
        raise UnboundSymbol(f"representation lacks generators {missing}")
    checks = []
    for r in pres.relators:
        residual = projective_distance(evaluate_word(rep, r), IDENTITY)
        checks.append(RelatorCheck(r, residual, tol.absolute * max(1, len(r))))
    return RelatorReport(pres.name, tuple(checks))


def _w(text: str) -> Word:
    return Word.parse(text)


@dataclass(frozen=True)
class AutomorphismTable:
    """Images of the generator pair under each labelled automorphism."""

    generators: tuple[str, str]
    entries: Mapping[str, tuple[Word, Word]]

    def labels(self) -> list[str]:
        return list(self.entries)


# Outer automorphisms of the figure-eight orbifold group on (rho, b).
DEHN_TABLE = AutomorphismTable(
    ("rho", "b"),
    {
        "sigma": (_w("b"), _w("rho")),
        "tau": (_w("rho b rho^-1"), _w("b^-1 rho b")),
        "tau2": (_w("b^-1"), _w("rho^-1")),
        "tau3": (_w("b^-1 rho^-1 b"), _w("rho b^-1 rho^-1")),
        "sigma tau": (_w("b^-1 rho b"), _w("rho b rho^-1")),
        "sigma tau2": (_w("rho^-1"), _w("b^-1")),
        "sigma tau3": (_w("rho b^-1 rho^-1"), _w("b^-1 rho^-1 b")),
    },
)


def apply_automorphism(table: AutomorphismTable, label: str, w: Word) -> Word:
    try:
        img_x, img_y = table.entries[label]
    except KeyError:
        raise UnknownLabel(f"unknown automorphism {label!r}; known: {table.labels()}") from None
    x, y = table.generators
    extra = w.symbols() - {x, y}
    if extra:
        raise ValueError(f"word uses generators outside {table.generators}: {sorted(extra)}")
    return w.substitute({x: img_x, y: img_y})


# Nielsen moves on a generating pair (f, g).
_MOVES = (
    ("swap", lambda f, g: (g, f)),
    ("invert", lambda f, g: (inverse(f), g)),
    ("right_mul", lambda f, g: (f, multiply(f, g))),
    ("left_mul_inv", lambda f, g: (f, multiply(g, inverse(f)))),
)


def _trace_key(f: ProjectiveMatrix, g: ProjectiveMatrix, digits: int) -> tuple:
    parts = (f.trace_squared, g.trace_squared, commutator_trace(f, g))
    # + 0.0 folds -0.0 into 0.0
    return tuple(round(v, digits) + 0.0 for z in parts for v in (z.real, z.imag))


@dataclass(frozen=True)
class NielsenResult:
    """Smallest G value met by the search; an upper bound on G of the group, never its infimum."""

    best_value: float
    best_pair: Optional[tuple[ProjectiveMatrix, ProjectiveMatrix]]
    best_moves: tuple[str, ...]
    visited: int
    skipped: int
    depth: int
    upper_bound: bool = field(default=True)

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_pair": [m.to_literal() for m in self.best_pair] if self.best_pair else None,
            "best_moves": list(self.best_moves),
            "visited": self.visited,
            "skipped": self.skipped,
            "depth": self.depth,
            "status": "upper bound",
        }


def nielsen_search(
    f: ProjectiveMatrix,
    g: ProjectiveMatrix,
    depth: int,
    tol: Tolerance = DEFAULT_TOL,
    key_digits: int = 6,
) -> NielsenResult:
    """Breadth-first search over Nielsen moves from (f, g), up to ``depth`` moves.

    Pairs are deduplicated by their rounded trace triple
    (tr^2 f, tr^2 g, tr[f, g]), a conjugation invariant; this is a heuristic
    that may merge distinct pairs. Pairs with tr[f, g] = 1 are counted as
    skipped.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    seen = {_trace_key(f, g, key_digits)}
    frontier: list[tuple[ProjectiveMatrix, ProjectiveMatrix, tuple[str, ...]]] = [(f, g, ())]
    best_value = float("inf")
    best_pair = None
    best_moves: tuple[str, ...] = ()
    visited = skipped = 0
    level = 0
    while True:
        for pf, pg, moves in frontier:
            visited += 1
            ev = gmt_value(pf, pg, tol)
            if ev.commutator_trace_is_one:
                skipped += 1
            elif ev.value < best_value:
                best_value, best_pair, best_moves = ev.value, (pf, pg), moves
        if level == depth:
            break
        nxt = []
        for pf, pg, moves in frontier:
            for name, move in _MOVES:
                nf, ng = move(pf, pg)
                key = _trace_key(nf, ng, key_digits)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((nf, ng, moves + (name,)))
        frontier = nxt
        level += 1
    return NielsenResult(best_value, best_pair, best_moves, visited, skipped, depth)
