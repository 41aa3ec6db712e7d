"""Words, compositions and their Hopf-algebraic products.

Words are tuples of letters.  Integral words use the letters ``0, 1, -1``
(printed ``e0 e1 e-1``); abstract words may use any hashable letters.
Compositions are tuples of nonzero integers: the part ``-3`` stands for the
pair (3, sign -1) of an alternating (Euler) sum.

>>> shuffle((0, 1), (0,))
LinComb((0, 0, 1): 2, (0, 1, 0): 1)
>>> comp_to_word((2, 3))
(0, 1, 0, 0, 1)
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import NotAdmissible
from .kernel import LinComb, acc

Word = tuple
Composition = tuple


# ---------------------------------------------------------------- products

@lru_cache(maxsize=200_000)
def _shuffle(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    d: dict = {}
    a, b = u[-1], v[-1]
    for w, c in _shuffle(u[:-1], v):
        acc(d, w + (a,), c)
    for w, c in _shuffle(u, v[:-1]):
        acc(d, w + (b,), c)
    return tuple(d.items())


def shuffle_dict(u: tuple, v: tuple) -> dict:
    return dict(_shuffle(tuple(u), tuple(v)))


def shuffle(u: Word, v: Word) -> LinComb:
    """All interleavings of ``u`` and ``v`` counted with multiplicity."""
    return LinComb(_shuffle(tuple(u), tuple(v)))


def shuffle_lc(x: LinComb, y: LinComb) -> LinComb:
    return x.bilinear(y, shuffle_dict)


def _merge(a: int, b: int) -> int:
    s = (1 if a > 0 else -1) * (1 if b > 0 else -1)
    return s * (abs(a) + abs(b))


@lru_cache(maxsize=200_000)
def _stuffle(a: tuple, b: tuple) -> tuple:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    d: dict = {}
    x, y = a[-1], b[-1]
    for w, c in _stuffle(a[:-1], b):
        acc(d, w + (x,), c)
    for w, c in _stuffle(a, b[:-1]):
        acc(d, w + (y,), c)
    for w, c in _stuffle(a[:-1], b[:-1]):
        acc(d, w + (_merge(x, y),), c)
    return tuple(d.items())


def stuffle_dict(a: tuple, b: tuple) -> dict:
    return dict(_stuffle(tuple(a), tuple(b)))


def stuffle(a: Composition, b: Composition) -> LinComb:
    """Quasi-shuffle of compositions; merged parts add and multiply signs."""
    return LinComb(_stuffle(tuple(a), tuple(b)))


def deconcat(w: Word) -> LinComb:
    """Sum of ``(prefix, suffix)`` over all cut points."""
    w = tuple(w)
    return LinComb({(w[:k], w[k:]): 1 for k in range(len(w) + 1)})


def concat_lc(x: LinComb, y: LinComb) -> LinComb:
    return x.bilinear(y, lambda u, v: {u + v: 1})


def shuffle_count(u: Word, v: Word) -> int:
    return comb(len(u) + len(v), len(u))


# ---------------------------------------------------------------- Lyndon

def lyndon_words(alphabet_size: int, length: int) -> list[Word]:
    """Lyndon words of exact ``length`` over ``0..alphabet_size-1``, in lex order."""
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    if length == 0:
        return []
    out = []
    # Duval's generation; emits all Lyndon words of length <= n in lex order
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            out.append(tuple(w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return out


def is_lyndon(w: Word) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def witt_count(alphabet_size: int, length: int) -> int:
    """Necklace count (1/n) sum_{d|n} mu(d) k^(n/d)."""
    n = length
    s = sum(_mobius(d) * alphabet_size ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return s // n


# ---------------------------------------------------------------- compositions

def comp_to_word(c: Composition) -> Word:
    """``(n1,...,nr)`` -> ``e0^(n1-1) e_a1 ... e0^(nr-1) e_ar``.

    For plain MZVs every ``a_i`` is 1.  For Euler sums ``a_i`` is the product
    of the signs of parts ``i..r``.
    """
    out: list[int] = []
    signs = [1 if p > 0 else -1 for p in c]
    for i, p in enumerate(c):
        if p == 0:
            raise NotAdmissible("composition parts must be nonzero")
        a = 1
        for s in signs[i:]:
            a *= s
        out.extend([0] * (abs(p) - 1))
        out.append(a)
    return tuple(out)


def word_to_comp(w: Word, admissible: bool = True) -> Composition:
    """Inverse of :func:`comp_to_word`; raises ``NotAdmissible``."""
    w = tuple(w)
    if not w:
        return ()
    if w[-1] == 0:
        raise NotAdmissible(f"word {fmt_word(w)} does not end in a nonzero letter")
    letters, zeros = [], []
    z = 0
    for x in w:
        if x == 0:
            z += 1
        elif x in (1, -1):
            letters.append(x)
            zeros.append(z)
            z = 0
        else:
            raise NotAdmissible(f"letter {x!r} not in {{0, 1, -1}}")
    parts = []
    for i, (a, z) in enumerate(zip(letters, zeros)):
        nxt = letters[i + 1] if i + 1 < len(letters) else 1
        sign = a * nxt
        parts.append(sign * (z + 1))
    c = tuple(parts)
    if admissible and not is_admissible(c):
        raise NotAdmissible(f"{fmt_comp(c)} is divergent")
    return c


def is_admissible(c: Composition) -> bool:
    return bool(c) and all(p != 0 for p in c) and c[-1] != 1


def compositions(weight: int, admissible: bool = True) -> list[Composition]:
    """All (positive) compositions of ``weight``, ordered length-then-lex."""
    out = []

    def rec(rest, acc_):
        if rest == 0:
            out.append(tuple(acc_))
            return
        for k in range(1, rest + 1):
            rec(rest - k, acc_ + [k])

    rec(weight, [])
    if admissible:
        out = [c for c in out if is_admissible(c)]
    out.sort(key=lambda c: (len(c), c))
    return out


def comp_weight(c: Composition) -> int:
    return sum(abs(p) for p in c)


# ---------------------------------------------------------------- printing

def fmt_letter(a) -> str:
    return f"e{a}" if isinstance(a, int) else str(a)


def fmt_word(w: Word) -> str:
    return " ".join(fmt_letter(a) for a in w) if w else "1"


def parse_word(s: str) -> Word:
    s = s.strip()
    if s in ("", "1", "()"):
        return ()
    out = []
    for tok in s.split():
        if not tok.startswith("e"):
            raise ValueError(f"bad letter {tok!r}")
        out.append(int(tok[1:]))
    return tuple(out)


def fmt_comp(c: Composition) -> str:
    return "zeta(" + ",".join(str(p) for p in c) + ")"
