from fractions import Fraction

import pytest

from motper.errors import NotAdmissible, UnsupportedLetter
from motper.kernel import acc
from motper.motivic import (X, MotivicExpr, Mono, coaction, fmt_expr, galois_conjugates, mono_coaction,
                            project_dr, unipotency_degree, unipotent_reduced, word_zeta, zeta_word)
from motper.parse import parse_expr
from motper.words import compositions

ALL_WORDS = [c for n in range(2, 9) for c in compositions(n)]


def _left_coassoc(x):
    out = {}
    for (l, r), c in coaction(x).terms._t.items():
        for (l1, l2), d in mono_coaction(l).items():
            acc(out, (l1, l2, r), c * d)
    return out


def _right_coassoc(x):
    out = {}
    for (l, r), c in coaction(x).terms._t.items():
        for (r1, r2), d in mono_coaction(r).items():
            acc(out, (l, r1, r2), c * d)
    return out


def test_enough_words():
    assert len(ALL_WORDS) >= 60


@pytest.mark.parametrize("c", ALL_WORDS, ids=lambda c: ",".join(map(str, c)))
def test_coassociativity_and_counit(c):
    z = MotivicExpr.zeta(c)
    assert _left_coassoc(z) == _right_coassoc(z)
    assert coaction(z).counit() == z


def test_zeta3_coaction():
    assert str(coaction(MotivicExpr.zeta((3,)))) == "1 (x) zeta_dr(3) + zeta(3) (x) L_dr^3"


def test_log_and_dilog_coaction():
    assert str(coaction(parse_expr("log(2)"))) == "1 (x) log_dr(2) + log(2) (x) L_dr"
    assert str(coaction(parse_expr("Li2(x)"))) == \
        "1 (x) Li2_dr(x) + Li1(x) (x) L_dr*log_dr(x) + Li2(x) (x) L_dr^2"


def test_coaction_is_multiplicative():
    a, b = MotivicExpr.zeta((3,)), MotivicExpr.zeta((2, 3))
    assert coaction(a * b) == coaction(a) * coaction(b)
    assert coaction(parse_expr("L*log(3)")) == coaction(parse_expr("L")) * coaction(parse_expr("log(3)"))


def test_zeta_words():
    assert zeta_word((2, 3)) == ((1, 0, 1, 0, 0), 1)
    assert zeta_word((3,)) == ((1, 0, 0), -1)
    for c in [(2,), (1, 2), (-1, 2), (3, -1)]:
        w, s = zeta_word(c)
        assert word_zeta(w) == (c, s)


def test_regularisation():
    assert MotivicExpr.ii((1,)) == MotivicExpr()
    assert MotivicExpr.ii((0,)) == MotivicExpr()
    assert MotivicExpr.ii(()) == MotivicExpr.scalar(1)
    # reversal of paths
    assert MotivicExpr.ii((1, 0, 0), 1, 0) == MotivicExpr.ii((0, 0, 1)) * -1
    # I(0; 1 0; 1) = -zeta(2), and the shuffle regularisation of I(0; 0 1; 1)
    assert MotivicExpr.ii((1, 0)) == MotivicExpr.zeta((2,)) * -1
    assert MotivicExpr.ii((0, 1)) == MotivicExpr.zeta((2,))


def test_bad_letters():
    with pytest.raises(UnsupportedLetter):
        MotivicExpr.ii((2,))
    with pytest.raises(UnsupportedLetter):
        MotivicExpr.ii((1, 0), 0, -1)
    with pytest.raises(NotAdmissible):
        MotivicExpr.zeta((1,))


def test_family_endpoints():
    # composition of paths through 0
    e = MotivicExpr.ii((1, 0), X, 1)
    assert fmt_expr(e) == "-Li[e0 e1](x) - zeta(2)"


def test_unipotency_degrees(table):
    ud = lambda s: unipotency_degree(parse_expr(s), table)
    assert ud("zeta(2)") == 0
    for n in (3, 5, 7, 9):
        assert ud(f"zeta({n})") == 1
    assert ud("zeta(3,5)") == 2
    assert ud("zeta(3)*zeta(5)") == 2
    assert ud("L") == 0
    assert ud("log(2)") == 1


def test_unipotency_bounded_by_depth(table):
    for c in ALL_WORDS:
        assert unipotency_degree(MotivicExpr.zeta(c), table) <= len(c)


def test_reduced_coaction_of_single_zeta():
    # only 1 (x) zeta_dr(3) survives once the x (x) L^3 term is removed
    w, s = zeta_word((3,))
    assert unipotent_reduced(MotivicExpr.zeta((3,))) == {(Mono(), Mono(word=w)): Fraction(s)}


def test_conjugates(table):
    conj = [fmt_expr(c) for c in galois_conjugates(parse_expr("zeta(3)"), table)]
    assert conj == ["zeta(3)", "1"]
    assert len(galois_conjugates(parse_expr("zeta(3,5)"), table)) == 3
    assert [fmt_expr(c) for c in galois_conjugates(parse_expr("L"), table)] == ["L"]


def test_project_dr_kills_zeta2(table):
    assert not project_dr(parse_expr("zeta(2)"), table)
    assert project_dr(parse_expr("zeta(3)"), table)


def test_printing_round_trip():
    for s in ["zeta(3,5)", "-11/2*zeta(5) + 3*zeta(2)*zeta(3)", "L^3*log(2)", "Li[e1 e0 e1](x)",
              "I(0; 1 -1 0; 1)", "zeta(-1,-2)"]:
        e = parse_expr(s)
        assert parse_expr(fmt_expr(e)) == e
