"""Expression grammar round trips and diagnostics."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superkit.cli import default_signature, parse_expression
from superkit.errors import NotInvertible, ParseError
from superkit.parsing import format_expr, parse_expr

SIG = default_signature()


def test_single_generator():
    assert parse_expression("z1") == SIG.gen("z1")


def test_rational_coefficient_and_laurent_power():
    got = parse_expression("3/2*x^-1*t1*t2")
    assert got == SIG.monomial({"x": -1, "t1": 1, "t2": 1}, Fraction(3, 2))


def test_repeated_odd_factor_is_zero():
    assert parse_expression("t1*t1").is_zero()


def test_whitespace_and_signs():
    assert parse_expression(" 1 + t1*t2 ") == parse_expression("1+t1*t2")
    assert parse_expression("-2*z0 + z0") == -SIG.gen("z0")
    assert parse_expression("0").is_zero()


def test_anticommutation_sign_through_parser():
    assert parse_expression("t2*t1") == -parse_expression("t1*t2")


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x^")
    assert "offset" in str(err.value)


def test_unknown_generator():
    with pytest.raises(ParseError):
        parse_expression("qq1 + 1")


def test_negative_power_needs_laurent_flag():
    with pytest.raises((ParseError, NotInvertible)):
        parse_expression("w^-1")


def test_odd_power_rejected():
    from superkit.errors import ParityError
    with pytest.raises(ParityError):
        parse_expression("t1^2")


@st.composite
def lexicon_polys(draw):
    evens = ["x", "w", "z0", "z1"]
    odds = ["zeta", "xi", "t1", "t2"]
    terms = draw(st.lists(st.tuples(
        st.integers(min_value=-9, max_value=9).filter(lambda c: c != 0),
        st.integers(min_value=-2, max_value=2),
        st.lists(st.sampled_from(evens[1:]), max_size=2, unique=True),
        st.lists(st.sampled_from(odds), max_size=2, unique=True)),
        max_size=4))
    p = SIG.zero()
    for coeff, xpow, regs, odd in terms:
        powers = {"x": xpow}
        powers.update({g: 1 for g in regs})
        powers.update({g: 1 for g in odd})
        p = p + SIG.monomial(powers, coeff)
    return p


@given(lexicon_polys())
def test_parse_format_round_trip(p):
    assert parse_expr(SIG, format_expr(p)) == p


def test_format_of_zero_round_trips():
    z = SIG.zero()
    assert format_expr(z) == "0"
    assert parse_expr(SIG, "0") == z
