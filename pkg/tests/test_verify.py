import pytest

from gmtlab.algebra import DEFAULT_TOL, projective_distance
from gmtlab.catalog import figure_eight_generators, realize_automorphism
from gmtlab.verify import SUITES, Check, inner_conjugator_word, run_all, run_suite, _compose
from gmtlab.words import Word


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    result = run_suite(name)
    failed = [c for c in result.checks if not c.passed]
    assert result.passed, failed


def test_run_all_sorted():
    assert [r.name for r in run_all()] == sorted(SUITES)


def test_check_ops():
    assert Check("x", 1e-10, 1e-9).passed
    assert not Check("x", 2e-9, 1e-9).passed
    assert Check("g", 1.2, 1.0, ">").passed
    assert not Check("g", 1.0, 1.0, ">").passed


def test_bounds_follow_tolerance():
    tight = DEFAULT_TOL.with_absolute(1e-11)
    bounds = {c.bound for c in run_suite("o1", tight).checks}
    assert bounds <= {0.0, 1e-11, 10 * 1e-11}


def test_dihedral_words():
    rep = figure_eight_generators(4).representation
    assert inner_conjugator_word(rep, _compose(["sigma", "sigma"])) == Word()
    assert inner_conjugator_word(rep, _compose(["tau"] * 4)) == Word()
    x = inner_conjugator_word(rep, _compose(["sigma tau", "sigma tau"]))
    assert x is not None and len(x) <= 6


def test_tau_twice_is_realized_like_tau2():
    rep = figure_eight_generators(4).representation
    h_twice, kind_twice = realize_automorphism(rep, _compose(["tau", "tau"]))
    h_table, kind_table = realize_automorphism(rep, _compose(["tau2"]))
    assert kind_twice == kind_table == "preserving"
    assert projective_distance(h_twice, h_table) <= 1e-9
