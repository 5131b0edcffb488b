"""Rule model, DSL parsing, validation, and the built-in rules."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brickwall import (Prob, RuleError, RuleSyntaxError, RuleValidationError,
                       builtin, builtin_names, parse_rule, serialize_rule,
                       validate_rule)

ALL_BUILTINS = ("ptm", "ptm_skewed", "sigma3", "rows23",
                "random_self_similar", "random_pp")


def test_builtin_names():
    assert builtin_names() == ALL_BUILTINS


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_builtins_validate_clean(name):
    assert validate_rule(builtin(name)) == []


def test_unknown_builtin():
    with pytest.raises(RuleError):
        builtin("nope")


def test_sigma3_shape():
    rule = builtin("sigma3")
    assert rule.engine == "geometric"
    assert (rule.lambda1, rule.lambda2) == (2, 2)
    assert rule.type_ids == ("B11", "B21", "B22")
    assert len(rule.images["B22"][0].placements) == 9
    assert not rule.is_random and not rule.is_parametric


def test_deterministic_builtins_have_single_prob_one_option():
    for name in ("sigma3", "rows23"):
        rule = builtin(name)
        for tid in rule.type_ids:
            opts = rule.images[tid]
            assert len(opts) == 1
            assert opts[0].probability.value == 1


def test_block_builtins():
    rule = builtin("ptm_skewed")
    assert rule.engine == "block"
    assert rule.skew == 1
    assert builtin("ptm").skew == 0
    # rows are stored bottom-to-top
    assert rule.blocks["0"].cells == (("0", "1"), ("1", "0"))
    assert rule.blocks["1"].cells == (("1", "0"), ("0", "1"))
    widths = {t.id: t.width for t in rule.types}
    assert widths == {"0": 2, "1": 3}


@pytest.mark.parametrize("name", ALL_BUILTINS)
def test_serialize_round_trip(name):
    rule = builtin(name)
    assert parse_rule(serialize_rule(rule)) == rule


def test_parse_color_and_comment():
    rule = parse_rule(
        "rule demo  # a demo\n"
        "engine geometric\n"
        "expansion 2 2\n"
        "brick A 1 1 color #123abc\n"
        "# full-line comment\n"
        "image A { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\n"
        "end\n")
    assert rule.get_type("A").color == "#123abc"


def test_default_palette_colors():
    rule = parse_rule(
        "rule demo\nengine geometric\nexpansion 2 2\n"
        "brick A 1 1\n"
        "image A { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\nend\n")
    assert rule.get_type("A").color.startswith("#")


def test_syntax_error_carries_position():
    with pytest.raises(RuleSyntaxError) as exc:
        parse_rule("rule x\nengine geometric\nexpansion 2 2\nbrick A one 1\nend\n")
    assert exc.value.line == 4
    assert "line 4" in str(exc.value)


@pytest.mark.parametrize("source,fragment", [
    ("rule x\nengine geometric\nexpansion 2 2\nbrick A 0 1\nend\n",
     "non-positive dimension"),
    ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\nbrick A 2 1\nend\n",
     "duplicate type id"),
    ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\n"
     "image A { B @ 0 0 }\nend\n", "unknown type reference"),
    ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\nend\n",
     "no image declared"),
    ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\n"
     "image A { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\n",
     "missing 'end'"),
    ("rule x\nengine turbo\nexpansion 2 2\nbrick A 1 1\nend\n",
     "unknown engine"),
])
def test_structural_errors(source, fragment):
    with pytest.raises(RuleSyntaxError) as exc:
        parse_rule(source)
    assert fragment in str(exc.value)


def test_probability_sum_diagnostic():
    source = ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\n"
              "image A prob 1/3 { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\n"
              "image A prob 1/3 { A @ 0 0 ; A @ 1 0 ; A @ 0 1 ; A @ 1 1 }\n"
              "end\n")
    with pytest.raises(RuleValidationError) as exc:
        parse_rule(source)
    assert "probabilities sum to 2/3" in str(exc.value)
    diags = validate_rule(parse_rule(source, validate=False))
    assert any("probabilities sum to 2/3" in d for d in diags)


def test_area_identity_rejects_identity_map():
    # one type mapping to itself alone: area 1 != lambda1*lambda2
    source = ("rule x\nengine geometric\nexpansion 2 2\nbrick A 1 1\n"
              "image A { A @ 0 0 }\nend\n")
    with pytest.raises(RuleValidationError) as exc:
        parse_rule(source)
    assert "area 1 != 4" in str(exc.value)


def test_overlap_diagnostic():
    source = ("rule x\nengine geometric\nexpansion 2 2\nbrick A 2 2\n"
              "image A { A @ 0 0 ; A @ 1 1 ; A @ 3 3 ; A @ 5 5 }\nend\n")
    diags = validate_rule(parse_rule(source, validate=False))
    assert any("overlap" in d for d in diags)


def test_block_shape_diagnostics():
    source = ("rule x\nengine block skew 0\nexpansion 2 2\nbrick 0 2 1\n"
              "block 0 { row: 0 0 ; row: 0 0 ; row: 0 0 }\nend\n")
    diags = validate_rule(parse_rule(source, validate=False))
    assert any("3 rows" in d for d in diags)
    tall = ("rule x\nengine block skew 0\nexpansion 2 2\nbrick 0 2 2\n"
            "block 0 { row: 0 0 ; row: 0 0 }\nend\n")
    assert any("height 1" in d for d in validate_rule(parse_rule(tall, validate=False)))


def test_bind_random_pp():
    rule = builtin("random_pp")
    assert rule.is_parametric
    half = rule.bind(Fraction(1, 2))
    for tid in half.type_ids:
        assert sum(o.probability.value for o in half.images[tid]) == 1
    sure = rule.bind(1)
    for tid in sure.type_ids:
        assert [o.probability.value for o in sure.images[tid]] == [0, 1]
        # the probability-1 option is the all-B22 one
        chosen = sure.images[tid][1]
        assert {pl.type_id for pl in chosen.placements} == {"B22"}


def test_bind_errors():
    with pytest.raises(RuleError):
        builtin("sigma3").bind(Fraction(1, 2))
    with pytest.raises(RuleError):
        builtin("random_pp").bind(Fraction(3, 2))
    with pytest.raises(RuleError):
        builtin("random_pp").bind(-1)


def test_unbound_probability_value_raises():
    rule = builtin("random_pp")
    with pytest.raises(RuleError):
        rule.images["B12"][0].probability.value


@given(num=st.integers(0, 64), den=st.integers(1, 64))
def test_bound_probabilities_always_sum_to_one(num, den):
    p = Fraction(min(num, den), den)
    rule = builtin("random_pp").bind(p)
    for tid in rule.type_ids:
        opts = rule.images[tid]
        assert sum(o.probability.value for o in opts) == 1
        assert all(0 <= o.probability.value <= 1 for o in opts)


def test_prob_str_forms():
    assert str(Prob(Fraction(1, 2))) == "1/2"
    assert str(Prob(Fraction(0), Fraction(1))) == "p"
    assert str(Prob(Fraction(1), Fraction(-1))) == "1-p"
