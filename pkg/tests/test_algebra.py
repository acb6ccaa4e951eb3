import json

import numpy as np
import pytest
from hypothesis import given, settings

from gmtlab.algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    commutator,
    commutator_trace,
    inverse,
    lift_trace,
    matrix_literal,
    multiply,
    normalize_det,
    parse_matrix_literal,
    power,
    product,
    projective_distance,
    projective_eq,
    trace_data,
)
from gmtlab.errors import SingularMatrix
from gmtlab.sampling import random_sl2

from conftest import np_lift, np_projective_close, sl2


def test_tolerance_defaults_and_validation():
    assert DEFAULT_TOL.absolute == 1e-9
    assert DEFAULT_TOL.det_tol == 1e-12
    with pytest.raises(ValueError):
        Tolerance(absolute=0)
    with pytest.raises(ValueError):
        Tolerance(absolute=1e-9, det_tol=1e-6)
    loose = DEFAULT_TOL.with_absolute(1e-6)
    assert loose.absolute == 1e-6 and loose.det_tol == 1e-12


def test_sign_is_canonical():
    m = ProjectiveMatrix(1, 2, 3, 7)
    assert ProjectiveMatrix(-1, -2, -3, -7) == m
    assert m.a == 1
    # leading zero entry defers the sign choice to b
    z = ProjectiveMatrix(0, -1j, -1j, 0)
    assert z.entries == (0, 1j, 1j, 0)


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        ProjectiveMatrix(float("nan"), 0, 0, 1)


def test_normalize_det_scales_to_unit():
    m = normalize_det([2, 0, 0, 8])
    assert abs(m.det - 1) < 1e-15
    assert projective_eq(m, ProjectiveMatrix(0.5, 0, 0, 2))
    with pytest.raises(SingularMatrix):
        normalize_det([1, 2, 2, 4])


@given(sl2(), sl2())
@settings(max_examples=200, deadline=None)
def test_multiply_matches_numpy(A, B):
    expected = np_lift(A) @ np_lift(B)
    assert np_projective_close(np_lift(multiply(A, B)), expected, 1e-12 * max(1, np.abs(expected).max()))


@given(sl2())
@settings(max_examples=200, deadline=None)
def test_inverse_is_two_sided(M):
    assert projective_distance(multiply(M, inverse(M)), IDENTITY) < 1e-9
    assert projective_distance(multiply(inverse(M), M), IDENTITY) < 1e-9


@given(sl2())
@settings(max_examples=100, deadline=None)
def test_power_matches_numpy(M):
    for k in (-3, 0, 1, 5):
        expected = np.linalg.matrix_power(np_lift(M), k)
        scale = max(1.0, np.abs(expected).max())
        assert np_projective_close(np_lift(power(M, k)), expected, 1e-11 * scale)


@given(sl2(), sl2())
@settings(max_examples=200, deadline=None)
def test_commutator_trace_is_lift_independent(f, g):
    F, G = np_lift(f), np_lift(g)
    expected = np.trace(F @ G @ np.linalg.inv(F) @ np.linalg.inv(G))
    scale = max(1.0, abs(expected))
    assert abs(commutator_trace(f, g) - expected) < 1e-10 * scale
    # flipping the sign of either lift leaves the commutator unchanged
    neg = ProjectiveMatrix(*(-x for x in f.entries))
    assert commutator_trace(neg, g) == pytest.approx(commutator_trace(f, g), abs=1e-12 * scale)


def test_commutator_of_commuting_pair_is_identity():
    f = ProjectiveMatrix(2, 0, 0, 0.5)
    g = ProjectiveMatrix(1j, 0, 0, -1j)
    assert projective_eq(commutator(f, g), IDENTITY)
    assert commutator_trace(f, g) == pytest.approx(2)


def test_lift_trace_and_product():
    f = ProjectiveMatrix(1, 1, 0, 1)
    assert lift_trace([(f, 3)]) == pytest.approx(2)
    assert projective_eq(product([f, f, f]), ProjectiveMatrix(1, 3, 0, 1))
    assert projective_eq(product([]), IDENTITY)


def test_trace_data_of_rotation():
    r = ProjectiveMatrix(np.exp(1j * np.pi / 4), 0, 0, np.exp(-1j * np.pi / 4))
    td = trace_data(r)
    assert td.tr_squared == pytest.approx(2)


def test_projective_distance_ignores_sign():
    m = ProjectiveMatrix(1, 2, 3, 7)
    assert projective_distance(m, ProjectiveMatrix(-1, -2, -3, -7)) == 0


def test_literal_round_trip(rng):
    for _ in range(20):
        m = random_sl2(rng)
        text = json.dumps(matrix_literal(m))
        assert projective_distance(parse_matrix_literal(text), m) <= 1e-14


@pytest.mark.parametrize(
    "text",
    ["[[1,0],[1,0],[0,0]]", "[[1,0],[1,0],[0,0],[1]]", '[["a",0],[1,0],[0,0],[1,0]]', "not json", "[[true,0],[0,0],[0,0],[1,0]]"],
)
def test_literal_parse_errors(text):
    with pytest.raises(ValueError):
        parse_matrix_literal(text)


def test_literal_singular():
    with pytest.raises(SingularMatrix):
        parse_matrix_literal("[[1,0],[2,0],[1,0],[2,0]]")
