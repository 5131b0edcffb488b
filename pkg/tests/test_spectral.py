"""Substitution matrices, spectra, type frequencies, and counting."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brickwall import (RuleError, SubstitutionMatrix, assert_area_eigenvector,
                       brick_frequencies, builtin, count_bricks,
                       count_realizations, iterate, matrix, matrix_power,
                       parse_rule, pf_eigenvalue)
from oracles import exact_left_eigenvector

ALL_BUILTINS = ("ptm", "ptm_skewed", "sigma3", "rows23",
                "random_self_similar", "random_pp")

# rows are source types, columns produced types
FROZEN_ENTRIES = {
    "sigma3": ((0, 2, 0), (2, 1, 1), (4, 4, 1)),
    "rows23": ((2, 2), (4, 4)),
    "random_self_similar": ((2, 1), (4, 2)),
    "ptm": ((2, 2), (2, 2)),
    "ptm_skewed": ((2, 2), (2, 2)),
}

FROZEN_FREQUENCIES = {
    "sigma3": (Fraction(5, 13), Fraction(6, 13), Fraction(2, 13)),
    "rows23": (Fraction(1, 2), Fraction(1, 2)),
    "random_self_similar": (Fraction(2, 3), Fraction(1, 3)),
    "ptm": (Fraction(1, 2), Fraction(1, 2)),
}


def _rational(m: SubstitutionMatrix):
    return tuple(tuple(Fraction(v) for v in row) for row in m.entries)


def _bound(name):
    rule = builtin(name)
    return rule.bind(Fraction(1, 2)) if rule.is_parametric else rule


@pytest.mark.parametrize("name", sorted(FROZEN_ENTRIES))
def test_matrix_entries_frozen(name):
    m = matrix(builtin(name))
    assert _rational(m) == tuple(tuple(Fraction(v) for v in row)
                                 for row in FROZEN_ENTRIES[name])


def test_matrix_metadata():
    m = matrix(builtin("sigma3"))
    assert m.type_order == ("B11", "B21", "B22")
    assert m.areas == (1, 2, 4)
    assert m.expansion == 4
    assert m.size == 3
    assert m["B11", "B21"] == 2  # two wide bricks in the unit square's image


def test_block_matrix_uses_cell_counts():
    m = matrix(builtin("ptm"))
    assert m.areas == (1, 1)  # letters count as single cells here
    assert m.expansion == 4


@given(num=st.integers(0, 60), den=st.integers(1, 60))
@settings(max_examples=50, deadline=None)
def test_parametric_matrix_formula(num, den):
    num = num % (den + 1)  # keep p in [0, 1]
    p = Fraction(num, den)
    m = matrix(builtin("random_pp", p=p))
    assert _rational(m) == (
        (4 * (1 - p), 2 * p),
        (8 * (1 - p), 4 * p))


def test_matrix_rejects_unbound_parameter():
    with pytest.raises(RuleError):
        matrix(builtin("random_pp"))


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_area_vector_is_exact_eigenvector(name):
    assert_area_eigenvector(matrix(_bound(name)))  # must not raise


def test_area_eigenvector_detects_corruption():
    good = matrix(builtin("rows23"))
    bad = SubstitutionMatrix(good.type_order,
                             ((Fraction(2), Fraction(2)),
                              (Fraction(4), Fraction(5))),
                             good.areas, good.expansion)
    with pytest.raises(ValueError):
        assert_area_eigenvector(bad)


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_pf_eigenvalue_equals_expansion(name):
    rule = _bound(name)
    assert abs(pf_eigenvalue(matrix(rule)) - rule.expansion) < 1e-9


def test_pf_eigenvalue_trivial_rule_exact():
    rule = parse_rule(
        "rule quad\nengine geometric\nexpansion 2 2\nbrick A 1 1\n"
        "image A { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\nend\n")
    assert pf_eigenvalue(matrix(rule)) == 4.0


@pytest.mark.parametrize("name", sorted(FROZEN_FREQUENCIES))
def test_frequencies_match_exact_eigenvector(name):
    m = matrix(builtin(name))
    got = brick_frequencies(m)
    exact = exact_left_eigenvector(_rational(m), Fraction(m.expansion))
    assert exact == FROZEN_FREQUENCIES[name]
    assert len(got) == m.size
    assert abs(sum(got) - 1) < 1e-12
    for g, e in zip(got, exact):
        assert abs(g - e) < 1e-6


def test_matrix_power_closed_form_rows23():
    m = matrix(builtin("rows23"))
    for n in range(1, 6):
        pw = matrix_power(m, n)
        scale = 6 ** (n - 1)  # rank-one matrix: M^n = 6^(n-1) M
        assert _rational(pw) == ((2 * scale, 2 * scale),
                                 (4 * scale, 4 * scale))
        assert pw.expansion == 6 ** n


def test_matrix_power_identity_and_errors():
    m = matrix(builtin("sigma3"))
    p0 = matrix_power(m, 0)
    assert _rational(p0) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert p0.expansion == 1
    with pytest.raises(ValueError):
        matrix_power(m, -1)


def test_matrix_power_matches_repeated_multiply():
    m = matrix(builtin("sigma3"))
    acc = tuple(tuple(Fraction(int(i == j)) for j in range(m.size))
                for i in range(m.size))
    raw = _rational(m)
    for n in range(9):
        assert _rational(matrix_power(m, n)) == acc
        acc = tuple(tuple(sum(acc[i][k] * raw[k][j] for k in range(m.size))
                          for j in range(m.size)) for i in range(m.size))


def test_matrix_power_preserves_area_identity():
    for n in (2, 3, 4):
        assert_area_eigenvector(matrix_power(matrix(builtin("sigma3")), n))


def test_count_bricks_reference_values():
    assert count_bricks(builtin("sigma3"), "B22", 1) == 9
    assert count_bricks(builtin("sigma3"), "B22", 0) == 1
    assert [count_bricks(builtin("sigma3"), "B22", n) for n in range(4)] == \
        [1, 9, 33, 133]
    assert [count_bricks(builtin("rows23"), "B21", n) for n in range(1, 5)] \
        == [8, 48, 288, 1728]


def test_count_bricks_random_count_invariant_rule():
    rss = builtin("random_self_similar")
    assert [count_bricks(rss, "B22", n) for n in range(5)] == \
        [1, 6, 24, 96, 384]  # 6 * 4^(n-1) for n >= 1
    for n, seed in ((2, 0), (3, 5), (4, 11)):
        assert count_bricks(rss, "B22", n) == \
            len(iterate(rss, "B22", n, rng_seed=seed))


@pytest.mark.parametrize("name,seed", [("sigma3", "B22"), ("rows23", "B21")])
def test_count_bricks_matches_generation(name, seed):
    rule = builtin(name)
    if rule.engine != "geometric":
        pytest.skip("geometric only")
    for n in range(4):
        assert count_bricks(rule, seed, n) == len(iterate(rule, seed, n))


def test_count_realizations_values():
    rss = builtin("random_self_similar")
    assert count_realizations(rss, "B22", 1) == 2
    assert count_realizations(rss, "B22", 4) == 2 ** 127
    for n in range(1, 6):
        assert count_realizations(rss, "B22", n) == \
            2 ** (2 * 4 ** (n - 1) - 1)
    assert count_realizations(builtin("sigma3"), "B22", 5) == 1
    assert count_realizations(builtin("rows23"), "B21", 4) == 1


def test_counting_refuses_count_variant_rules():
    pp = builtin("random_pp", p=Fraction(1, 2))
    with pytest.raises(RuleError, match="option choice changes brick counts"):
        count_bricks(pp, "B22", 2)
    with pytest.raises(RuleError, match="option choice changes brick counts"):
        count_realizations(pp, "B22", 2)


def test_count_errors():
    with pytest.raises(ValueError):
        count_bricks(builtin("sigma3"), "B22", -1)
    with pytest.raises(RuleError):
        count_bricks(builtin("sigma3"), "B99", 2)
