from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motper.errors import NotAdmissible
from motper.kernel import LinComb
from motper.words import (comp_to_word, compositions, concat_lc, deconcat, lyndon_words, parse_word,
                          fmt_word, shuffle, shuffle_lc, stuffle, witt_count, word_to_comp)

words = st.lists(st.sampled_from([0, 1, -1]), max_size=4).map(tuple)
comps = st.lists(st.integers(1, 4).flatmap(lambda n: st.sampled_from([n, -n])), max_size=3).map(tuple)


def _stuffle_lc(x, y):
    return x.bilinear(y, lambda a, b: dict(stuffle(a, b)._t))


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_shuffle_assoc_comm(u, v, w):
    assert shuffle(u, v) == shuffle(v, u)
    U, W = LinComb({u: 1}), LinComb({w: 1})
    assert shuffle_lc(shuffle(u, v), W) == shuffle_lc(U, shuffle(v, w))


@settings(max_examples=200, deadline=None)
@given(comps, comps, comps)
def test_stuffle_assoc_comm(a, b, c):
    assert stuffle(a, b) == stuffle(b, a)
    A, C = LinComb({a: 1}), LinComb({c: 1})
    assert _stuffle_lc(stuffle(a, b), C) == _stuffle_lc(A, stuffle(b, c))


def test_shuffle_small():
    assert shuffle((0, 1), (0,)) == LinComb({(0, 0, 1): 2, (0, 1, 0): 1})
    assert stuffle((2,), (3,)) == LinComb({(2, 3): 1, (3, 2): 1, (5,): 1})
    assert stuffle((-1,), (-1,)) == LinComb({(-1, -1): 2, (2,): 1})


def test_deconcat_coassociative_exhaustive():
    for n in range(7):
        for w in product((0, 1), repeat=n):
            left, right = {}, {}
            for (a, b), c in deconcat(w).items():
                for (a1, a2), _ in deconcat(a).items():
                    left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c
                for (b1, b2), _ in deconcat(b).items():
                    right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c
            assert left == right
            # counit on either side
            assert sum(1 for (a, b) in deconcat(w)._t if a == ()) == 1


def test_shuffle_is_compatible_with_deconcat():
    # Delta(u sh v) = Delta(u) sh Delta(v) on a few words
    for u, v in [((0, 1), (1,)), ((1, 0, 0), (0, 1))]:
        lhs = LinComb()
        for w, c in shuffle(u, v).items():
            lhs = lhs + deconcat(w).scale(c)
        rhs = {}
        for (a1, b1), _ in deconcat(u).items():
            for (a2, b2), _ in deconcat(v).items():
                for x, c in shuffle(a1, a2).items():
                    for y, d in shuffle(b1, b2).items():
                        rhs[(x, y)] = rhs.get((x, y), 0) + c * d
        assert lhs == LinComb(rhs)


def _is_lyndon_brute(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@pytest.mark.parametrize("k", [2, 3])
def test_lyndon_witt_counts(k):
    top = 12 if k == 2 else 7
    for n in range(1, top + 1):
        ws = lyndon_words(k, n)
        assert len(ws) == witt_count(k, n)
        assert ws == sorted(ws)
        if k ** n <= 5000:
            assert ws == [w for w in product(range(k), repeat=n) if _is_lyndon_brute(w)]


def test_witt_counts_frozen():
    # necklace counts for two letters
    assert [witt_count(2, n) for n in range(1, 13)] == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335]


def test_comp_word_round_trip():
    for n in range(2, 9):
        for c in compositions(n):
            assert word_to_comp(comp_to_word(c)) == c
    assert comp_to_word((2, 3)) == (0, 1, 0, 0, 1)
    assert comp_to_word((-1, 2)) == (-1, 0, 1)
    with pytest.raises(NotAdmissible):
        word_to_comp((1,))


def test_composition_counts():
    # admissible compositions of n number 2^(n-2)
    assert [len(compositions(n)) for n in range(2, 10)] == [2 ** (n - 2) for n in range(2, 10)]
    assert compositions(4)[:2] == [(4,), (1, 3)]


def test_word_printing_round_trip():
    for w in [(), (0, 1), (1, -1, 0)]:
        assert parse_word(fmt_word(w)) == w


def test_concat_unit():
    x = LinComb({(0, 1): 2})
    assert concat_lc(x, LinComb({(): 1})) == x
