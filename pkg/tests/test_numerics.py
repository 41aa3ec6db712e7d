
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motper.errors import Divergent, OutOfDomain, Unevaluable
from motper.numerics import (agree_digits, bloch_wigner, context, eval_ii, eval_li, eval_mzv,
                             nested_sum, nested_sum_extrapolated, per_eval)
from motper.parse import parse_expr
from motper.words import compositions

ctx = context(40)
PI = ctx.pi


def test_zeta_closed_forms():
    assert agree_digits(eval_mzv((2,), 40), PI ** 2 / 6, 40) > 35
    assert agree_digits(eval_mzv((4,), 40), PI ** 4 / 90, 40) > 35
    # Apery's constant, 40 digits
    assert agree_digits(eval_mzv((3,), 40), ctx.mpf("1.202056903159594285399738161511449990764986292"), 40) > 35
    # Euler: zeta(1,2) = zeta(3)
    assert agree_digits(eval_mzv((1, 2), 40), eval_mzv((3,), 40), 40) > 35


def test_euler_sum_against_nested_sums():
    # sum (-1)^k / k^2 over k >= 1 is -pi^2/12
    assert agree_digits(eval_mzv((-2,), 40), -PI ** 2 / 12, 40) > 35


@pytest.mark.parametrize("c", [c for n in range(2, 6) for c in compositions(n)] + [(-1, 2), (2, -1), (-2, -2)],
                         ids=str)
def test_hoelder_matches_nested_sums(c):
    a = nested_sum_extrapolated(c, 4000, 30)
    assert agree_digits(a, eval_mzv(c, 30), 30) >= 12


def test_raw_nested_sum_small():
    # plain truncation converges like 1/N
    s = nested_sum((2,), 1000, 20)
    assert 1e-4 < float(PI ** 2 / 6 - s) < 2e-3


def test_dilog_values():
    ln2 = ctx.log(2)
    assert agree_digits(eval_li((1, 0), 0.5, 40), PI ** 2 / 12 - ln2 ** 2 / 2, 40) > 25
    z = ctx.mpc(0.3, 0.4)
    with mpmath.workdps(50):
        ref = mpmath.polylog(2, mpmath.mpc(0.3, 0.4))
    assert agree_digits(eval_li((1, 0), z, 40), ref, 40) > 30
    with mpmath.workdps(50):
        ref3 = mpmath.polylog(3, mpmath.mpf(-0.7))
    assert agree_digits(eval_li((1, 0, 0), -0.7, 40), ref3, 40) > 30


def test_bloch_wigner():
    catalan = ctx.catalan
    assert agree_digits(bloch_wigner(1j, 40), catalan, 40) > 25
    assert abs(bloch_wigner(0.5, 40)) < 1e-40
    with pytest.raises(OutOfDomain):
        bloch_wigner(1, 40)


def test_regularised_words():
    # I(0; 1; 1) = 0 and I(0; 0 1; 1) = zeta(2) under shuffle regularisation
    assert eval_ii((1,), 30) == 0
    assert agree_digits(eval_ii((0, 1), 30), PI ** 2 / 6, 30) > 25


def test_errors():
    with pytest.raises(Divergent):
        eval_mzv((2, 1), 30)
    with pytest.raises(OutOfDomain):
        eval_li((1,), 1, 30)
    with pytest.raises(OutOfDomain):
        eval_li((1, 0), 2, 30)
    with pytest.raises(Unevaluable):
        per_eval(parse_expr("Li2(x)"), 30)


def test_per_lefschetz():
    v = per_eval(parse_expr("L"), 30)
    assert agree_digits(v, 2j * PI, 30) > 25
    assert per_eval(parse_expr("1"), 30) == 1
    assert abs(per_eval(parse_expr("zeta(2) + 1/24*L^2"), 40)) < 1e-35
    assert agree_digits(per_eval(parse_expr("log(3)"), 30), ctx.log(3), 30) > 25


EXPRS = ["zeta(3)", "zeta(2,3)", "L", "log(2)", "zeta(5) - zeta(3)^2", "3/7*zeta(1,2) + L^2", "I(0; 1 -1 0; 1)"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(EXPRS), st.sampled_from(EXPRS))
def test_per_is_a_homomorphism(a, b):
    x, y = parse_expr(a), parse_expr(b)
    lhs = per_eval(x * y, 30)
    rhs = per_eval(x, 30) * per_eval(y, 30)
    assert abs(lhs - rhs) < 10 ** -20


def test_refinement_keeps_digits():
    lo = ctx.nstr(eval_mzv((3, 5), 25), 20)
    hi = ctx.nstr(eval_mzv((3, 5), 50), 20)
    assert lo == hi


def test_family_per_at_point():
    v = per_eval(parse_expr("Li2(x) + log(x)*Li1(x)"), 30, at=0.25)
    with mpmath.workdps(40):
        ref = mpmath.polylog(2, 0.25) - mpmath.log(0.25) * mpmath.log(0.75)
    assert agree_digits(v, ref, 30) > 25
