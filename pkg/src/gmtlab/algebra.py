"""2x2 complex matrix algebra modulo sign, i.e. PSL(2,C).

Entries are stored as plain Python complex numbers; for 2x2 work this is
several times faster than numpy arrays and keeps every value hashable.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import SingularMatrix

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "ProjectiveMatrix",
    "IDENTITY",
    "normalize_det",
    "multiply",
    "inverse",
    "commutator",
    "commutator_trace",
    "lift_trace",
    "power",
    "product",
    "trace_data",
    "TraceData",
    "projective_distance",
    "projective_eq",
    "parse_matrix_literal",
    "matrix_literal",
]


@dataclass(frozen=True)
class Tolerance:
    """Numeric tolerances threaded through every comparison in the toolkit.

    ``absolute`` bounds entrywise and trace comparisons; ``det_tol`` bounds
    determinant residuals and the zero test used for canonical signs.
    """

    absolute: float = 1e-9
    det_tol: float = 1e-12

    def __post_init__(self):
        if not (0 < self.det_tol <= self.absolute < 1):
            raise ValueError(
                f"need 0 < det_tol <= absolute < 1, got det_tol={self.det_tol}, "
                f"absolute={self.absolute}"
            )

    def with_absolute(self, absolute: float) -> "Tolerance":
        return Tolerance(absolute=absolute, det_tol=min(self.det_tol, absolute))

    def to_dict(self) -> dict:
        return {"absolute": self.absolute, "det_tol": self.det_tol}


DEFAULT_TOL = Tolerance()

# Snap threshold for deciding the sign of the canonical representative.
_SIGN_EPS = DEFAULT_TOL.det_tol


def _positive_half(z: complex) -> bool:
    # arg(z) in [0, pi), with tiny imaginary parts read as zero
    if z.imag > _SIGN_EPS:
        return True
    if z.imag < -_SIGN_EPS:
        return False
    return z.real > 0


@dataclass(frozen=True)
class ProjectiveMatrix:
    """An element of PSL(2,C), stored through a canonical representative.

    The sign of the representative is chosen so that the first entry of
    ``(a, b, c, d)`` with modulus above ``det_tol`` has argument in ``[0, pi)``.
    Construction does not rescale; use :func:`normalize_det` for arbitrary
    nonsingular input.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        entries = tuple(complex(x) for x in (self.a, self.b, self.c, self.d))
        for x in entries:
            if not (math.isfinite(x.real) and math.isfinite(x.imag)):
                raise ValueError(f"non-finite matrix entry {x!r}")
        flip = False
        for x in entries:
            if abs(x) > _SIGN_EPS:
                flip = not _positive_half(x)
                break
        if flip:
            entries = tuple(-x for x in entries)
        for name, x in zip("abcd", entries):
            object.__setattr__(self, name, x)

    @property
    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def det_residual(self) -> float:
        return abs(self.det - 1)

    @property
    def trace(self) -> complex:
        """Trace of the stored representative; its sign is representative-dependent."""
        return self.a + self.d

    @property
    def trace_squared(self) -> complex:
        t = self.a + self.d
        return t * t

    def inverse(self) -> "ProjectiveMatrix":
        return inverse(self)

    def __matmul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return multiply(self, other)

    def __pow__(self, k: int) -> "ProjectiveMatrix":
        return power(self, k)

    def to_numpy(self):
        import numpy as np

        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def to_literal(self) -> list[list[float]]:
        return matrix_literal(self)

    def __repr__(self):
        return "ProjectiveMatrix(%r, %r, %r, %r)" % self.entries


IDENTITY = ProjectiveMatrix(1, 0, 0, 1)


def _as_entries(m) -> tuple[complex, complex, complex, complex]:
    if isinstance(m, ProjectiveMatrix):
        return m.entries
    try:
        shape = m.shape
    except AttributeError:
        shape = None
    if shape == (2, 2):
        return (complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))
    seq = list(m)
    if len(seq) == 2 and all(len(row) == 2 for row in seq):
        return (complex(seq[0][0]), complex(seq[0][1]), complex(seq[1][0]), complex(seq[1][1]))
    if len(seq) == 4:
        return tuple(complex(x) for x in seq)
    raise ValueError(f"cannot read a 2x2 matrix from {m!r}")


def normalize_det(m, tol: Tolerance = DEFAULT_TOL) -> ProjectiveMatrix:
    """Scale a nonsingular 2x2 matrix to determinant one and return its class.

    Accepts a ProjectiveMatrix, a 2x2 array, nested rows, or four entries in
    row-major order. The principal square root of the determinant is used;
    the other branch only flips the sign, which the class absorbs.
    """
    a, b, c, d = _as_entries(m)
    det = a * d - b * c
    if abs(det) <= tol.det_tol:
        raise SingularMatrix(f"|det| = {abs(det):.3e} <= {tol.det_tol:.1e}")
    s = cmath.sqrt(det)
    return ProjectiveMatrix(a / s, b / s, c / s, d / s)


def _mul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )


def _inv(x):
    a, b, c, d = x
    return (d, -b, -c, a)


def multiply(A: ProjectiveMatrix, B: ProjectiveMatrix) -> ProjectiveMatrix:
    return ProjectiveMatrix(*_mul(A.entries, B.entries))


def inverse(M: ProjectiveMatrix) -> ProjectiveMatrix:
    # adjugate; exact inverse for det = 1
    return ProjectiveMatrix(M.d, -M.b, -M.c, M.a)


def power(M: ProjectiveMatrix, k: int) -> ProjectiveMatrix:
    if k < 0:
        M, k = inverse(M), -k
    result = IDENTITY
    base = M
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def product(ms: Iterable[ProjectiveMatrix]) -> ProjectiveMatrix:
    result = IDENTITY
    for m in ms:
        result = multiply(result, m)
    return result


def commutator(f: ProjectiveMatrix, g: ProjectiveMatrix) -> ProjectiveMatrix:
    """Return [f, g] = f g f^-1 g^-1."""
    return multiply(multiply(f, g), multiply(inverse(f), inverse(g)))


def commutator_trace(f: ProjectiveMatrix, g: ProjectiveMatrix) -> complex:
    """tr[f, g], well defined on PSL classes since sign flips cancel.

    Computed on the raw lifts: canonicalizing the product would discard the
    sign that makes this trace meaningful.
    """
    x, y = f.entries, g.entries
    a, b, c, d = _mul(_mul(x, y), _mul(_inv(x), _inv(y)))
    return a + d


def lift_trace(factors: Iterable[tuple[ProjectiveMatrix, int]]) -> complex:
    """Trace of prod M_i ** e_i using one fixed lift per matrix.

    Well defined on PSL classes whenever every matrix object occurs with even
    total exponent parity (commutator-like words); otherwise the sign follows
    the stored representatives.
    """
    acc = (1 + 0j, 0j, 0j, 1 + 0j)
    for m, e in factors:
        x = m.entries if e > 0 else _inv(m.entries)
        for _ in range(abs(e)):
            acc = _mul(acc, x)
    return acc[0] + acc[3]


class TraceData(NamedTuple):
    tr_squared: complex
    trace: complex  # sign depends on the stored representative


def trace_data(M: ProjectiveMatrix) -> TraceData:
    t = M.a + M.d
    return TraceData(t * t, t)


def projective_distance(A: ProjectiveMatrix, B: ProjectiveMatrix) -> float:
    """min(||A - B||, ||A + B||) in the max-modulus entry norm."""
    plus = max(abs(x - y) for x, y in zip(A.entries, B.entries))
    minus = max(abs(x + y) for x, y in zip(A.entries, B.entries))
    return min(plus, minus)


def projective_eq(A: ProjectiveMatrix, B: ProjectiveMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return projective_distance(A, B) <= tol.absolute


def parse_matrix_literal(text_or_obj, tol: Tolerance = DEFAULT_TOL) -> ProjectiveMatrix:
    """Read ``[[re,im],[re,im],[re,im],[re,im]]`` (row-major a, b, c, d).

    Raises ValueError on malformed input and SingularMatrix on det = 0.
    """
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    if not isinstance(obj, Sequence) or len(obj) != 4:
        raise ValueError("matrix literal must be a list of four [re, im] pairs")
    entries = []
    for pair in obj:
        if (
            not isinstance(pair, Sequence)
            or isinstance(pair, str)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ValueError(f"bad complex entry {pair!r}; expected [re, im]")
        entries.append(complex(float(pair[0]), float(pair[1])))
    return normalize_det(entries, tol)


def matrix_literal(M: ProjectiveMatrix) -> list[list[float]]:
    return [[x.real, x.imag] for x in M.entries]
