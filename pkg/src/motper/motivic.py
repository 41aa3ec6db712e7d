"""Motivic iterated integrals of mixed Tate type and their coaction.

Conventions (fixed once, used everywhere):

* a letter ``a`` in ``{0, 1, -1}`` stands for the form ``dt/(t - a)``; an
  integral ``I(a0; a1 ... an; a_{n+1})`` is read along the path with ``a1``
  integrated first (nearest ``a0``).  With this choice

      zeta(n1,...,nr) = (-1)^r I(0; 1 0^(n1-1) ... 1 0^(nr-1); 1)

  and Euler sums replace the ``i``-th ``1`` by the product of the signs of
  parts ``i..r``.
* tangential regularisation sets ``I(0; 0; 1) = I(0; 1; 1) = 0``.
* a monomial :class:`Mono` is ``L^lef * I(0; word; 1) * I(0; fword; x) *
  prod log(p)``.  Products of iterated integrals with equal endpoints are
  always expanded by the shuffle product, so each monomial carries a single
  constant word and a single family word.  The same monomial type is used
  for de Rham elements (right-hand factors of the coaction).
* the coaction puts the de Rham factor on the right; its Lefschetz power is
  the weight of the left factor (so both sides have the input's weight).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import (MissingRelationTable, NotAdmissible, NotEffective, UnsupportedLetter,
                     WeightOutOfRange)
from .kernel import LinComb, acc, rat, rat_to_str
from .words import _shuffle, comp_to_word, fmt_comp, word_to_comp

X = "x"  # the variable endpoint of polylogarithm families
_POINTS = (0, 1, -1, X)
_LETTERS = (0, 1, -1)


class Mono(NamedTuple):
    lef: int = 0
    word: tuple = ()
    fword: tuple = ()
    primes: tuple = ()

    def mzv_weight(self) -> int:
        return self.lef + len(self.word) + len(self.fword) + len(self.primes)

    def weight(self) -> int:
        return 2 * self.mzv_weight()

    def uweight(self) -> int:
        # weight seen by the unipotent coaction (Lefschetz set to 1)
        return len(self.word) + len(self.fword) + len(self.primes)

    def sort_key(self):
        return (self.mzv_weight(), self.lef, len(self.word), self.word, len(self.fword), self.fword,
                self.primes)


ONE = Mono()


# ---------------------------------------------------------------- products

def mono_mul(a: Mono, b: Mono) -> dict:
    lef = a.lef + b.lef
    primes = tuple(sorted(a.primes + b.primes))
    out: dict = {}
    for w, c in _shuffle(a.word, b.word):
        for fw, e in _shuffle(a.fword, b.fword):
            acc(out, Mono(lef, w, fw, primes), Fraction(c * e))
    return out


def _pair_mul(p: tuple, q: tuple) -> dict:
    # (word, fword) pairs, used for canonical iterated integrals
    out: dict = {}
    for w, c in _shuffle(p[0], q[0]):
        for fw, e in _shuffle(p[1], q[1]):
            acc(out, (w, fw), c * e)
    return out


def _dict_mul(x: dict, y: dict, mul) -> dict:
    out: dict = {}
    for a, c in x.items():
        for b, e in y.items():
            ce = c * e
            for k, v in mul(a, b).items():
                acc(out, k, ce * v)
    return out


# ---------------------------------------------------------------- regularisation

def _check_letters(w: Iterable) -> tuple:
    w = tuple(w)
    for a in w:
        if a not in _LETTERS:
            raise UnsupportedLetter(f"letter {a!r} not in {{0, 1, -1}}")
    return w


@lru_cache(maxsize=None)
def _reg_lead(w: tuple, letter) -> tuple:
    """Shuffle-regularise leading ``letter``s to 0; returns ((word, coeff), ...)."""
    if not w or w[0] != letter:
        return ((w, Fraction(1)),)
    k = 0
    while k < len(w) and w[k] == letter:
        k += 1
    if k == len(w):
        return ()
    u = w[k:]
    head = (letter,) * (k - 1)
    out: dict = {}
    for j in range(1, len(u) + 1):
        for v, c in _reg_lead(head + u[:j] + (letter,) + u[j:], letter):
            acc(out, v, -c / k)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _reg01(w: tuple) -> tuple:
    out: dict = {}
    for v, c in _reg_lead(w, 0):
        for u, e in _reg_lead(v[::-1], 1):
            acc(out, u[::-1], c * e)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _canon(a, w: tuple, b) -> tuple:
    """Canonical form of I(a; w; b) as ((word, fword), coeff) pairs."""
    if not w:
        return ((((), ()), Fraction(1)),)
    if a == b:
        return ()
    n = len(w)
    sgn = -1 if n % 2 else 1
    if b == 0 or a == X:
        return tuple((k, sgn * c) for k, c in _canon(b, w[::-1], a))
    if (a, b) == (0, 1):
        return tuple(((v, ()), c) for v, c in _reg01(w))
    if (a, b) == (0, -1):
        # t -> -t; the change of tangent vector only affects log(-1), zero in de Rham
        return tuple(((v, ()), c) for v, c in _reg01(tuple(-x for x in w)))
    if (a, b) == (0, X):
        return ((((), w), Fraction(1)),)
    # remaining: (1, X), (-1, X), (1, -1), (-1, 1): compose paths through 0
    out: dict = {}
    for k in range(n + 1):
        left = dict(_canon(a, w[:k], 0))
        right = dict(_canon(0, w[k:], b))
        for key, c in _dict_mul(left, right, _pair_mul).items():
            acc(out, key, c)
    return tuple(out.items())


def regularize_ii(a0, w, a1) -> LinComb:
    """Normal form of I(a0; w; a1) as a combination of words for I(0; . ; 1).

    Endpoints ``-1`` are reduced by ``t -> -t`` which is exact for de Rham
    factors (it ignores ``log(-1)``).
    """
    w = _check_letters(w)
    if a0 not in _LETTERS or a1 not in _LETTERS:
        raise UnsupportedLetter("endpoints must lie in {0, 1, -1}")
    return LinComb({v: c for (v, fv), c in _canon(a0, w, a1)})


def is_normal(w: tuple) -> bool:
    return not w or (w[0] != 0 and w[-1] != 1)


# ---------------------------------------------------------------- expressions

class MotivicExpr:
    """Exact linear combination of monomials :class:`Mono`."""

    __slots__ = ("terms",)

    def __init__(self, terms: LinComb | dict | None = None):
        if isinstance(terms, LinComb):
            self.terms = terms
        else:
            self.terms = LinComb(terms or {})

    # constructors
    @classmethod
    def scalar(cls, c) -> "MotivicExpr":
        return cls({ONE: rat(c)}) if rat(c) else cls()

    @classmethod
    def lef(cls, k: int = 1) -> "MotivicExpr":
        return cls({Mono(lef=k): 1})

    @classmethod
    def log(cls, p: int) -> "MotivicExpr":
        return cls({Mono(primes=(int(p),)): 1})

    @classmethod
    def ii(cls, w, a0=0, a1=1) -> "MotivicExpr":
        w = _check_letters(w)
        if a1 == X or a0 == X:
            d = _canon(a0, w, a1)
        else:
            if a0 not in _LETTERS or a1 not in _LETTERS:
                raise UnsupportedLetter("endpoints must lie in {0, 1, -1, x}")
            if -1 in (a0, a1) and w:
                raise UnsupportedLetter("motivic endpoint -1 needs log(-1); only de Rham factors support it")
            d = _canon(a0, w, a1)
        return cls({Mono(0, v, fv): c for (v, fv), c in d})

    @classmethod
    def zeta(cls, c) -> "MotivicExpr":
        w, s = zeta_word(c)
        return cls({Mono(word=w): s})

    # arithmetic
    def __add__(self, o):
        o = _as_expr(o)
        return MotivicExpr(self.terms + o.terms)

    __radd__ = __add__

    def __sub__(self, o):
        return MotivicExpr(self.terms - _as_expr(o).terms)

    def __rsub__(self, o):
        return _as_expr(o) - self

    def __neg__(self):
        return MotivicExpr(-self.terms)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return MotivicExpr(self.terms.scale(o))
        o = _as_expr(o)
        return MotivicExpr(LinComb.raw(_dict_mul(self.terms._t, o.terms._t, mono_mul)))

    def __rmul__(self, o):
        return self * o

    def __pow__(self, k: int):
        out = MotivicExpr.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = MotivicExpr.scalar(o)
        return isinstance(o, MotivicExpr) and self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def weights(self) -> set:
        return {m.mzv_weight() for m in self.terms._t}

    def mzv_weight(self) -> int:
        ws = self.weights()
        if len(ws) > 1:
            raise WeightOutOfRange("expression is not homogeneous")
        return ws.pop() if ws else 0

    def homogeneous_parts(self) -> dict:
        out: dict = {}
        for m, c in self.terms._t.items():
            out.setdefault(m.mzv_weight(), {})[m] = c
        return {w: MotivicExpr(LinComb.raw(d)) for w, d in out.items()}

    def __str__(self):
        return fmt_expr(self)

    def __repr__(self):
        return f"MotivicExpr({fmt_expr(self)})"


def _as_expr(o) -> MotivicExpr:
    if isinstance(o, MotivicExpr):
        return o
    if isinstance(o, (int, Fraction)):
        return MotivicExpr.scalar(o)
    raise TypeError(f"cannot use {o!r} as a motivic expression")


def zeta_word(c) -> tuple[tuple, int]:
    """``(word, sign)`` with ``zeta(c) = sign * I(0; word; 1)``."""
    c = tuple(int(p) for p in c)
    if not c or any(p == 0 for p in c) or c[-1] == 1:
        raise NotAdmissible(f"{fmt_comp(c)} is divergent")
    e = comp_to_word(c)  # e0^(n1-1) e_a1 ... : letters grouped per part
    out: list[int] = []
    i = 0
    for p in c:
        n = abs(p)
        block = e[i:i + n]
        i += n
        out.append(block[-1])
        out.extend([0] * (n - 1))
    return tuple(out), (-1) ** len(c)


def word_zeta(w: tuple) -> tuple[tuple, int]:
    """Inverse of :func:`zeta_word` on normal-form words."""
    if not is_normal(w) or not w:
        raise NotAdmissible("not a normal-form word")
    letters, zeros = [], []
    for a in w:
        if a == 0:
            zeros[-1] += 1
        else:
            letters.append(a)
            zeros.append(0)
    e: list[int] = []
    for a, z in zip(letters, zeros):
        e.extend([0] * z)
        e.append(a)
    c = word_to_comp(tuple(e))
    return c, (-1) ** len(c)


# ---------------------------------------------------------------- coaction

@lru_cache(maxsize=None)
def _coaction_ii(a0, w: tuple, a1) -> tuple:
    """Goncharov's formula; returns (((lword, lfword), (lef, rword, rfword)), coeff)."""
    pts = (a0,) + w + (a1,)
    n = len(w)
    gap: dict = {}
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            gap[i, j] = dict(_canon(pts[i], pts[i + 1:j], pts[j]))
    out: dict = {}

    def rec(i, chosen, right):
        # i: last chosen index; right: accumulated product of gap factors
        if not right:
            return
        left = dict(_canon(a0, tuple(pts[k] for k in chosen), a1))
        fin = _dict_mul(right, gap[i, n + 1], _pair_mul)
        lef = len(chosen)
        for lk, lc in left.items():
            for rk, rc in fin.items():
                acc(out, (lk, (lef,) + rk), lc * rc)
        for j in range(i + 1, n + 1):
            g = gap[i, j]
            if g:
                rec(j, chosen + (j,), _dict_mul(right, g, _pair_mul))

    rec(0, (), {((), ()): Fraction(1)})
    return tuple(out.items())


def _mono_coaction(m: Mono) -> dict:
    """Coaction of a single monomial; keys are (left Mono, right Mono)."""
    out = {(Mono(lef=m.lef), Mono(lef=m.lef)): Fraction(1)}
    parts = []
    if m.word:
        parts.append(_coaction_ii(0, m.word, 1))
    if m.fword:
        parts.append(_coaction_ii(0, m.fword, X))
    for part in parts:
        d = {}
        for ((lw, lfw), (lef, rw, rfw)), c in part:
            acc(d, (Mono(0, lw, lfw), Mono(lef, rw, rfw)), c)
        out = _dict_mul(out, d, _tensor_mul)
    for p in m.primes:
        d = {(Mono(primes=(p,)), Mono(lef=1)): Fraction(1), (ONE, Mono(primes=(p,))): Fraction(1)}
        out = _dict_mul(out, d, _tensor_mul)
    return out


def _tensor_mul(s: tuple, t: tuple) -> dict:
    return _dict_mul(mono_mul(s[0], t[0]), mono_mul(s[1], t[1]), lambda a, b: {(a, b): 1})


_MONO_COACTION: dict = {}


def mono_coaction(m: Mono) -> dict:
    r = _MONO_COACTION.get(m)
    if r is None:
        r = _mono_coaction(m)
        _MONO_COACTION[m] = r
    return r


class CoactionTensor:
    """Linear combination of ``left (motivic) (x) right (de Rham)`` monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: LinComb | dict):
        self.terms = terms if isinstance(terms, LinComb) else LinComb(terms)

    def __eq__(self, o):
        return isinstance(o, CoactionTensor) and self.terms == o.terms

    def __add__(self, o):
        return CoactionTensor(self.terms + o.terms)

    def __sub__(self, o):
        return CoactionTensor(self.terms - o.terms)

    def __mul__(self, o):
        return CoactionTensor(LinComb.raw(_dict_mul(self.terms._t, o.terms._t, _tensor_mul)))

    def items(self):
        return self.terms.items(key=lambda k: (k[1].sort_key(), k[0].sort_key()))

    def __len__(self):
        return len(self.terms)

    def counit(self) -> MotivicExpr:
        """Apply the counit (``L_dr -> 1``, nonempty words -> 0) to the right factor."""
        d: dict = {}
        for (l, r), c in self.terms._t.items():
            if not r.word and not r.fword and not r.primes:
                acc(d, l, c)
        return MotivicExpr(LinComb.raw(d))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (l, r), c in self.items():
            sl, bl = fmt_mono_signed(l, "m")
            sr, br = fmt_mono_signed(r, "dr")
            c = c * sl * sr
            if bl == "1" and abs(c) != 1:
                # a bare scalar on the left prints as "3 (x) ..." rather than "3*1 (x) ..."
                bl, c = rat_to_str(abs(c)), (1 if c > 0 else -1)
            parts.append((c, f"{bl} (x) {br}"))
        return _join_terms(parts)

    def __repr__(self):
        return f"CoactionTensor({self})"


def coaction(x: MotivicExpr) -> CoactionTensor:
    d: dict = {}
    for m, c in x.terms._t.items():
        for k, v in mono_coaction(m).items():
            acc(d, k, c * v)
    return CoactionTensor(LinComb.raw(d))


def dr_coproduct(m: Mono) -> dict:
    """Coproduct on a de Rham monomial (same formula, both factors de Rham)."""
    return mono_coaction(m)


def unipotent_reduced(x: MotivicExpr) -> dict:
    """``Delta^u - id (x) 1``: right Lefschetz power dropped, empty right factors removed."""
    d: dict = {}
    for m, c in x.terms._t.items():
        for (l, r), v in mono_coaction(m).items():
            if r.uweight() == 0:
                continue
            acc(d, (l, r._replace(lef=0)), c * v)
    return d


# ---------------------------------------------------------------- printing

def _sup(k: int) -> str:
    return "" if k == 1 else f"^{k}"


def fmt_mono(m: Mono, kind: str = "m") -> str:
    """Print a monomial; ``kind`` is 'm' (motivic) or 'dr' (de Rham)."""
    c, s = fmt_mono_signed(m, kind)
    if c == 1:
        return s
    return f"-{s}" if s != "1" else "-1"


def fmt_mono_signed(m: Mono, kind: str = "m") -> tuple[int, str]:
    sfx = "_dr" if kind == "dr" else ""
    factors = []
    sign = 1
    if m.lef:
        factors.append(f"L{sfx}{_sup(m.lef)}")
    ps: dict = {}
    for p in m.primes:
        ps[p] = ps.get(p, 0) + 1
    for p, k in sorted(ps.items()):
        factors.append(f"log{sfx}({p}){_sup(k)}")
    if m.word:
        if all(a in (0, 1, -1) for a in m.word) and is_normal(m.word):
            comp, s = word_zeta(m.word)
            sign *= s
            factors.append(f"zeta{sfx}(" + ",".join(map(str, comp)) + ")")
        else:
            factors.append(f"I{sfx}(0; " + " ".join(map(str, m.word)) + "; 1)")
    if m.fword:
        name, s = _family_name(m.fword)
        sign *= s
        factors.append(name.replace("(x)", f"{sfx}(x)"))
    return sign, "*".join(factors) if factors else "1"


def _family_name(fw: tuple) -> tuple[str, int]:
    # Li_w(x) = (-1)^{#nonzero letters} I(0; w; x) with e0 = dx/x, e1 = dx/(1-x)
    s = (-1) ** sum(1 for a in fw if a != 0)
    if fw == (0,):
        return "log(x)", 1
    if fw[0] == 1 and all(a == 0 for a in fw[1:]):
        return f"Li{len(fw)}(x)", s
    return "Li[" + " ".join(f"e{a}" for a in fw) + "](x)", s


def _join_terms(parts: list) -> str:
    out = ""
    for c, s in parts:
        neg = c < 0
        a = -c if neg else c
        if s == "1":
            body = rat_to_str(a)
        elif a == 1:
            body = s
        else:
            body = f"{rat_to_str(a)}*{s}"
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def fmt_expr(x: MotivicExpr) -> str:
    parts = []
    for m, c in x.terms.items():
        s, body = fmt_mono_signed(m, "m")
        parts.append((c * s, body))
    return _join_terms(parts)


# ---------------------------------------------------------------- table-based operations

def _need_table(table, weight: int):
    if table is None:
        raise MissingRelationTable("a relation table is required")
    if weight > table.max_weight:
        raise MissingRelationTable(f"relation table covers weight <= {table.max_weight}, need {weight}")


def reduce_word(word: tuple, table) -> dict:
    """Reduce a constant word I(0; word; 1) to basis-monomial coordinates."""
    if not word:
        return {(): Fraction(1)}
    if any(a == -1 for a in word):
        raise UnsupportedLetter("relation tables cover the {0, 1} alphabet only")
    _need_table(table, len(word))
    comp, s = word_zeta(word)
    return {b: s * c for b, c in table.reduce_comp(comp).items()}


def lie_coordinate(word: tuple, r: int, table) -> Fraction:
    """Coordinate of a weight-r de Rham word on the class of zeta_dr(r) modulo products."""
    red = reduce_word(word, table)
    return red.get(((r,),), Fraction(0))


def derivation_D(r: int, x: MotivicExpr, table) -> MotivicExpr:
    """Coefficient ``xi_r`` of ``D_r x = xi_r (x) [zeta_dr(r)]``."""
    if r < 3 or r % 2 == 0:
        raise WeightOutOfRange("r must be odd and >= 3")
    ws = x.weights()
    if ws and r > max(ws):
        raise WeightOutOfRange(f"r={r} exceeds the weight of the input")
    _need_table(table, r)
    d: dict = {}
    for (l, rt), c in unipotent_reduced(x).items():
        if rt.uweight() != r:
            continue
        if rt.fword:
            raise UnsupportedLetter("derivations are defined on constant periods only")
        if rt.primes:
            continue  # products with log_dr(p) vanish modulo products (r >= 3)
        k = lie_coordinate(rt.word, r, table)
        if k:
            acc(d, l, c * k)
    return MotivicExpr(LinComb.raw(d))


def basis_to_expr(b: tuple) -> MotivicExpr:
    """Basis monomial (tuple of compositions) -> product of zeta values."""
    out = MotivicExpr.scalar(1)
    for comp in b:
        out = out * MotivicExpr.zeta(comp)
    return out


class _Slot(NamedTuple):
    # reduced coordinates of one tensor slot
    basis: tuple
    lef: int
    primes: tuple


def _reduce_left(m: Mono, table) -> dict:
    """Motivic monomial -> {(basis monomial, odd L power, primes): coeff}."""
    if m.fword:
        raise UnsupportedLetter("family periods are not covered by relation tables")
    base = reduce_word(m.word, table)
    k2, odd = divmod(m.lef, 2)
    out: dict = {}
    factor = Fraction(-24) ** k2
    for b, c in base.items():
        nb = tuple(sorted(b + ((2,),) * k2, key=_comp_key))
        acc(out, _Slot(nb, odd, m.primes), c * factor)
    return out


def _reduce_right(m: Mono, table) -> dict:
    """de Rham monomial (Lefschetz kept) -> coordinates modulo zeta_dr(2)."""
    if m.fword:
        raise UnsupportedLetter("family periods are not covered by relation tables")
    out: dict = {}
    for b, c in reduce_word(m.word, table).items():
        if any(comp == (2,) for comp in b):
            continue
        acc(out, _Slot(b, m.lef, m.primes), c)
    return out


def _comp_key(c):
    return (sum(abs(p) for p in c), len(c), c)


def reduce_expr(x: MotivicExpr, table) -> dict:
    d: dict = {}
    for m, c in x.terms._t.items():
        for k, v in _reduce_left(m, table).items():
            acc(d, k, c * v)
    return d


def slot_to_expr(s: _Slot) -> MotivicExpr:
    out = basis_to_expr(s.basis)
    if s.lef:
        out = out * MotivicExpr.lef(s.lef)
    for p in s.primes:
        out = out * MotivicExpr.log(p)
    return out


def unipotency_degree(x: MotivicExpr, table) -> int:
    """Smallest ``i`` with ``(Delta^{u,r})^{i+1} x = 0``."""
    state = {(k,): c for k, c in reduce_expr(x, table).items()}
    deg = 0
    cache: dict = {}
    while True:
        nxt: dict = {}
        for key, c in state.items():
            head, rest = key[0], key[1:]
            red = cache.get(head)
            if red is None:
                red = {}
                for (l, r), v in unipotent_reduced(slot_to_expr(head)).items():
                    for lk, lc in _reduce_left(l, table).items():
                        for rk, rc in _reduce_right(r, table).items():
                            acc(red, (lk, rk), v * lc * rc)
                cache[head] = red
            for (lk, rk), v in red.items():
                acc(nxt, (lk, rk) + rest, c * v)
        if not nxt:
            return deg
        deg += 1
        state = nxt


def galois_conjugates(x: MotivicExpr, table) -> list[MotivicExpr]:
    """Basis of the span of left factors of the coaction (x first)."""
    from .kernel import solve_in_span, NotInSpan

    groups: dict = {}
    for m, c in x.terms._t.items():
        for (l, r), v in mono_coaction(m).items():
            for rk, rc in _reduce_right(r, table).items():
                g = groups.setdefault(rk, {})
                for lk, lc in _reduce_left(l, table).items():
                    acc(g, lk, c * v * rc * lc)
    # x itself (paired with a pure Lefschetz power) comes first
    order = sorted((k for k in groups if groups[k]), key=lambda s: (_slot_uweight(s), repr(s)))
    chosen: list[LinComb] = []
    out: list[MotivicExpr] = []
    for k in order:
        v = LinComb(groups[k])
        if chosen and not isinstance(solve_in_span(v, chosen), NotInSpan):
            continue
        if not v:
            continue
        chosen.append(v)
        e = MotivicExpr()
        for s, c in v.items(key=repr):
            e = e + slot_to_expr(s) * c
        out.append(e)
    return out


def _slot_uweight(s: _Slot) -> int:
    return sum(sum(abs(p) for p in b) for b in s.basis) + len(s.primes)


def project_dr(x: MotivicExpr, table=None) -> LinComb:
    """Image in de Rham periods; ``L -> 0`` and the ideal of zeta(2) is killed.

    With a table the result is a combination of :class:`_Slot` coordinates
    (basis monomials free of zeta(2)); without one, of de Rham monomials.
    """
    d: dict = {}
    for m, c in x.terms._t.items():
        if m.lef < 0:
            raise NotEffective("negative Lefschetz power")
        if m.lef > 0:
            continue
        if table is None:
            acc(d, m, c)
        else:
            for k, v in _reduce_right(m, table).items():
                acc(d, k, c * v)
    return LinComb.raw(d)


def fmt_slot(s: _Slot, kind: str = "m") -> str:
    sfx = "_dr" if kind == "dr" else ""
    fs = []
    if s.lef:
        fs.append(f"L{sfx}{_sup(s.lef)}")
    ps: dict = {}
    for p in s.primes:
        ps[p] = ps.get(p, 0) + 1
    for p, k in sorted(ps.items()):
        fs.append(f"log{sfx}({p}){_sup(k)}")
    fs.extend(fmt_basis(s.basis, sfx).split("*") if s.basis else [])
    return "*".join(fs) if fs else "1"


def fmt_basis(b: tuple, sfx: str = "") -> str:
    if not b:
        return "1"
    cnt: dict = {}
    for comp in b:
        cnt[comp] = cnt.get(comp, 0) + 1
    return "*".join(f"zeta{sfx}(" + ",".join(map(str, comp)) + ")" + _sup(k)
                    for comp, k in sorted(cnt.items(), key=lambda kv: _comp_key(kv[0])))


def fmt_slots(d: LinComb | dict, kind: str = "m") -> str:
    items = d.items() if isinstance(d, dict) else d.items(key=repr)
    parts = [(c, fmt_slot(s, kind)) for s, c in sorted(items, key=lambda kv: (_slot_sort(kv[0])))]
    return _join_terms(parts)


def _slot_sort(s):
    if isinstance(s, _Slot):
        return (_slot_uweight(s) + s.lef, s.lef, tuple(_comp_key(c) for c in s.basis), s.primes)
    return (0, repr(s))


def fmt_reduced(x: MotivicExpr, table) -> str:
    """Print ``x`` through its basis coordinates (products stay factored)."""
    return fmt_slots(reduce_expr(x, table))


def zeta2_to_lef(x: MotivicExpr, table) -> MotivicExpr:
    """Explicit normalisation pass rewriting zeta(2)^k as (-1/24)^k L^2k."""
    out = MotivicExpr()
    for s, c in reduce_expr(x, table).items():
        k = sum(1 for comp in s.basis if comp == (2,))
        rest = _Slot(tuple(comp for comp in s.basis if comp != (2,)), s.lef + 2 * k, s.primes)
        out = out + slot_to_expr(rest) * (c * Fraction(-1, 24) ** k)
    return out
