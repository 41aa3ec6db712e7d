from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motper.kernel import (LinComb, NOT_IN_SPAN, SparseMat, rank_by_minors, rat, rat_from_str,
                           rat_to_str, rref, solve_in_span)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_rat_strings_round_trip():
    for q in [Fraction(0), Fraction(-11, 2), Fraction(7), Fraction(2374, 2275)]:
        assert rat_from_str(rat_to_str(q)) == q
    assert rat("3/6") == Fraction(1, 2)
    with pytest.raises((ValueError, ZeroDivisionError)):
        rat_from_str("1/0")


def test_lincomb_drops_zeros():
    a = LinComb({"x": 1, "y": 2})
    b = LinComb({"x": 1})
    assert (a - b) == LinComb({"y": 2})
    assert not (a - a)
    assert a.coeff("z") == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rref_rank_matches_minors(rows):
    m = SparseMat([{j: v for j, v in enumerate(r) if v} for r in rows], 4)
    _, pivots, rank = rref(m)
    assert rank == rank_by_minors(rows) == len(pivots)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solve_in_span(span_rows, coeffs):
    span = [LinComb({j: v for j, v in enumerate(r)}) for r in span_rows]
    target = LinComb()
    for c, s in zip(coeffs, span):
        target = target + s.scale(c)
    sol = solve_in_span(target, span)
    assert sol is not NOT_IN_SPAN
    back = LinComb()
    for c, s in zip(sol, span):
        back = back + s.scale(c)
    assert back == target


def test_not_in_span():
    assert solve_in_span(LinComb({"b": 1}), [LinComb({"a": 1})]) is NOT_IN_SPAN
