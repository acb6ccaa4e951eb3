import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from gmtlab.algebra import ProjectiveMatrix, normalize_det

finite = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


@st.composite
def sl2(draw):
    """Unit-determinant matrices with moderate entries."""
    a, b, c, d = (draw(complexes) for _ in range(4))
    det = a * d - b * c
    if abs(det) < 0.25:
        # fall back to an upper-triangular element, always invertible
        return ProjectiveMatrix(1, b, 0, 1)
    return normalize_det([a, b, c, d])


def rotation(k: int, n: int) -> ProjectiveMatrix:
    w = cmath.exp(1j * math.pi * k / n)
    return ProjectiveMatrix(w, 0, 0, 1 / w)


def np_lift(m: ProjectiveMatrix) -> np.ndarray:
    return np.array([[m.a, m.b], [m.c, m.d]], dtype=complex)


def np_projective_close(A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    return min(np.abs(A - B).max(), np.abs(A + B).max()) <= tol


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
