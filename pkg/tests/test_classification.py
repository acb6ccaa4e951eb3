import math

import pytest
from hypothesis import given, settings

from gmtlab.algebra import IDENTITY, ProjectiveMatrix, inverse, multiply
from gmtlab.classification import Kind, classify, elliptic_order, is_involution
from gmtlab.errors import AmbiguousClassification, NotElliptic

from conftest import rotation, sl2


@pytest.mark.parametrize(
    "m, kind, hyperbolic",
    [
        (IDENTITY, Kind.IDENTITY, False),
        (ProjectiveMatrix(1, 1, 0, 1), Kind.PARABOLIC, False),
        (ProjectiveMatrix(2, 0, 0, 0.5), Kind.LOXODROMIC, True),
        (ProjectiveMatrix(2j, 0, 0, -0.5j), Kind.LOXODROMIC, False),
        (ProjectiveMatrix(0, 1j, 1j, 0), Kind.ELLIPTIC, False),
    ],
)
def test_kinds(m, kind, hyperbolic):
    cls = classify(m)
    assert cls.kind is kind
    assert cls.hyperbolic is hyperbolic


@pytest.mark.parametrize("k, n", [(1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (1, 6), (3, 7), (2, 13)])
def test_elliptic_order_recovered(k, n):
    assert elliptic_order(rotation(k, n)) == (k, n)
    # the order survives conjugation
    c = ProjectiveMatrix(1, 0.3 + 0.2j, 0.5j, 1 + (0.3 + 0.2j) * 0.5j)
    assert classify(multiply(multiply(c, rotation(k, n)), inverse(c))).order == (k, n)


def test_irrational_rotation_has_no_order():
    cls = classify(rotation(1, math.sqrt(2) * 10))
    assert cls.kind is Kind.ELLIPTIC and cls.order is None


def test_not_elliptic():
    with pytest.raises(NotElliptic):
        elliptic_order(ProjectiveMatrix(1, 1, 0, 1))


def test_parabolic_boundary_is_not_loxodromic():
    # tr^2 off from 4 by less than tol
    eps = 2e-10
    a = (1 + eps / 8)
    m = ProjectiveMatrix(a, 1, 0, 1 / a)
    assert abs(m.trace_squared - 4) < 1e-9
    assert classify(m).kind is Kind.PARABOLIC


def test_near_identity_is_ambiguous():
    m = ProjectiveMatrix(1, 1e-6, 0, 1)
    with pytest.raises(AmbiguousClassification) as exc:
        classify(m)
    assert set(exc.value.candidates) == {Kind.IDENTITY, Kind.PARABOLIC}


def test_involution_check():
    assert is_involution(ProjectiveMatrix(0, 1j, 1j, 0))
    assert is_involution(rotation(1, 2))
    assert not is_involution(IDENTITY)
    assert not is_involution(rotation(1, 4))


@given(sl2(), sl2())
@settings(max_examples=200, deadline=None)
def test_kind_is_conjugation_invariant(m, c):
    try:
        before = classify(m)
        after = classify(multiply(multiply(c, m), inverse(c)))
    except AmbiguousClassification:
        return
    # near a boundary rounding may legitimately move the verdict
    t2 = m.trace_squared
    if abs(t2 - 4) < 1e-6 or abs(t2.imag) < 1e-6 or abs(t2) < 1e-6:
        return
    assert before.kind is after.kind


def test_to_dict():
    d = classify(rotation(1, 4)).to_dict()
    assert d["kind"] == "elliptic"
    assert d["order"] == [1, 4]
