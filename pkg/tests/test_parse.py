from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motper.errors import NotAdmissible, ParseError, UnsupportedLetter
from motper.motivic import MotivicExpr, fmt_expr
from motper.parse import parse_expr


@pytest.mark.parametrize("s", ["", "zeta(", "zeta(a)", "3 +", "log(1)", "Li0(x)", "Li[e2](x)", "1/0",
                               "zeta(2) zeta(3)", "I(0; 1 0)", "foo"])
def test_rejects(s):
    with pytest.raises(ParseError):
        parse_expr(s)


def test_domain_errors():
    with pytest.raises(NotAdmissible):
        parse_expr("zeta(1,1)")
    with pytest.raises(UnsupportedLetter):
        parse_expr("I(0; 2; 1)")


def test_arithmetic():
    assert parse_expr("2*(zeta(3) - zeta(3))") == MotivicExpr()
    assert parse_expr("zeta(2)^0") == MotivicExpr.scalar(1)
    assert parse_expr("-L^2/24") == MotivicExpr.lef(2) * Fraction(-1, 24)
    assert parse_expr("1/2 + 1/2") == MotivicExpr.scalar(1)
    assert parse_expr("Li1(x)") == parse_expr("-I(0; 1; x)")


atoms = st.sampled_from(["zeta(2)", "zeta(3)", "zeta(2,3)", "L", "log(2)", "log(x)", "Li2(x)", "3/4",
                         "I(0; 1 0 -1; 1)", "zeta(-1,3)"])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["+", "-"]), st.lists(atoms, min_size=1, max_size=3)),
                min_size=1, max_size=3))
def test_print_parse_round_trip(terms):
    s = " ".join(f"{op} {'*'.join(fs)}" for op, fs in terms)
    e = parse_expr(s)
    assert parse_expr(fmt_expr(e)) == e
