"""Decomposition into the f-alphabet ``Q[f2] (x) Q<f3, f5, ...>`` (plus ``nu_p``).

The map is built generator by generator: for a new algebra generator ``g``
of weight ``n``

    phi(g) = sum_{r odd} f_r . phi(xi_r)      with D_r g = xi_r (x) [zeta_dr(r)]

where the letter ``f_r`` is prepended.  Generators other than ``zeta(2)``
get no pure ``f2^k`` term, which makes the ``f2^(n/2)`` coefficient of
``phi(x)`` equal to the coordinate of ``x`` on ``zeta(2)^(n/2)``.  Products
map to shuffle products, ``log(p)`` to the letter ``nu_p`` and odd powers of
``L`` are carried as a scalar-side factor.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import NotInImage, ParseError, WeightTooLarge
from .kernel import LinComb, NotInSpan, acc, rat, solve_in_span
from .motivic import MotivicExpr, _Slot, derivation_D, reduce_expr, slot_to_expr
from .words import _shuffle

# letters: odd r >= 3 stands for f_r; a negative integer -p for nu_p


def letter_degree(a: int) -> int:
    return a if a > 0 else 1


def fmt_fletter(a: int) -> str:
    return f"f{a}" if a > 0 else f"nu{-a}"


class FMono(NamedTuple):
    f2: int = 0
    lef: int = 0
    word: tuple = ()

    def degree(self) -> int:
        return 2 * self.f2 + self.lef + sum(letter_degree(a) for a in self.word)

    def sort_key(self):
        return (self.degree(), len(self.word), self.lef, -self.f2, tuple(_lkey(a) for a in self.word))

    def __str__(self):
        fs = []
        if self.lef:
            fs.append("L" if self.lef == 1 else f"L^{self.lef}")
        if self.f2:
            fs.append("f2" if self.f2 == 1 else f"f2^{self.f2}")
        if self.word:
            fs.append("|".join(fmt_fletter(a) for a in self.word))
        return "*".join(fs) if fs else "1"


def _lkey(a: int):
    return (0, -a) if a < 0 else (1, a)


class FPoly:
    """Linear combination of :class:`FMono`."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if isinstance(terms, LinComb) else LinComb(terms or {})

    @classmethod
    def letter(cls, r: int) -> "FPoly":
        if r == 2:
            return cls({FMono(f2=1): 1})
        return cls({FMono(word=(r,)): 1})

    @classmethod
    def nu(cls, p: int) -> "FPoly":
        return cls({FMono(word=(-int(p),)): 1})

    @classmethod
    def one(cls) -> "FPoly":
        return cls({FMono(): 1})

    def __add__(self, o):
        return FPoly(self.terms + o.terms)

    def __sub__(self, o):
        return FPoly(self.terms - o.terms)

    def __neg__(self):
        return FPoly(-self.terms)

    def scale(self, c) -> "FPoly":
        return FPoly(self.terms.scale(c))

    def __mul__(self, o):
        # f2 and L multiply, words shuffle
        if isinstance(o, (int, Fraction)):
            return self.scale(o)
        return FPoly(self.terms.bilinear(o.terms, _fmul))

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, FPoly) and self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def prepend(self, a: int) -> "FPoly":
        return FPoly(self.terms.map(lambda m: {m._replace(word=(a,) + m.word): 1}))

    def length_part(self, k: int) -> "FPoly":
        return FPoly({m: c for m, c in self.terms.items() if len(m.word) == k})

    def max_length(self) -> int:
        return max((len(m.word) for m in self.terms._t), default=0)

    def deconcat(self) -> dict:
        """Sum over cuts ``w = u v`` of ``(f2^k v) (x) u`` (left keeps the suffix)."""
        out: dict = {}
        for m, c in self.terms._t.items():
            for k in range(len(m.word) + 1):
                acc(out, (m._replace(word=m.word[k:]), m.word[:k]), c)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        from .motivic import _join_terms
        return _join_terms([(c, str(m)) for m, c in self.terms.items()])

    def __repr__(self):
        return f"FPoly({self})"


def _fmul(a: FMono, b: FMono) -> dict:
    return {FMono(a.f2 + b.f2, a.lef + b.lef, w): c for w, c in _shuffle(a.word, b.word)}


# ---------------------------------------------------------------- decompose

class Decomposer:
    """Caches generator images for one relation table."""

    def __init__(self, table):
        self.table = table
        self._gen: dict = {}

    def generator(self, comp: tuple) -> FPoly:
        r = self._gen.get(comp)
        if r is not None:
            return r
        n = sum(abs(p) for p in comp)
        if comp == (2,):
            out = FPoly.letter(2)
        else:
            z = MotivicExpr.zeta(comp)
            out = FPoly()
            for r_ in range(3, n + 1, 2):
                xi = derivation_D(r_, z, self.table)
                if xi:
                    out = out + self.expr(xi).prepend(r_)
        self._gen[comp] = out
        return out

    def basis(self, b: tuple) -> FPoly:
        out = FPoly.one()
        for comp in b:
            out = out * self.generator(comp)
        return out

    def slot(self, s: _Slot) -> FPoly:
        out = self.basis(s.basis)
        for p in s.primes:
            out = out * FPoly.nu(p)
        if s.lef:
            out = FPoly(out.terms.map(lambda m: {m._replace(lef=m.lef + s.lef): 1}))
        return out

    def expr(self, x: MotivicExpr) -> FPoly:
        ws = x.weights()
        if ws and max(ws) > self.table.max_weight:
            raise WeightTooLarge(f"weight {max(ws)} exceeds table weight {self.table.max_weight}")
        out = FPoly()
        for s, c in reduce_expr(x, self.table).items():
            out = out + self.slot(s).scale(c)
        return out


_DECOMPOSERS: dict = {}


def _dec(table) -> Decomposer:
    d = _DECOMPOSERS.get(id(table))
    if d is None or d.table is not table:
        d = Decomposer(table)
        _DECOMPOSERS[id(table)] = d
    return d


def decompose(x: MotivicExpr, table) -> FPoly:
    return _dec(table).expr(x)


def grC_leading(x: MotivicExpr, table) -> tuple[int, FPoly]:
    """``(degree, leading)``: the component of maximal tensor length."""
    f = decompose(x, table)
    k = f.max_length()
    return k, f.length_part(k)


def recompose(f: FPoly, table) -> MotivicExpr:
    """Inverse of :func:`decompose` on the table's range; raises ``NotInImage``."""
    dec = _dec(table)
    out = MotivicExpr()
    groups: dict = {}
    for m, c in f.terms._t.items():
        groups.setdefault((m.degree(), m.lef), {})[m] = c
    for (deg, lef), part in sorted(groups.items()):
        target = LinComb(part)
        primes = sorted({-a for m in part for a in m.word if a < 0})
        cands = []
        nnu = {sum(1 for a in m.word if a < 0) for m in part}
        for k in sorted(nnu):
            for ps in _multisets(primes, k):
                w = deg - lef - k
                if w < 0 or w == 1:
                    continue
                if w > table.max_weight:
                    raise WeightTooLarge(f"weight {w} exceeds table weight {table.max_weight}")
                for b in table.basis.get(w, []):
                    cands.append(_Slot(b, lef, ps))
        imgs = [dec.slot(s).terms for s in cands]
        sol = solve_in_span(target, imgs)
        if isinstance(sol, NotInSpan):
            raise NotInImage(f"{FPoly(target)} is not in the image of the decomposition map")
        for s, c in zip(cands, sol):
            if c:
                out = out + slot_to_expr(s) * c
    return out


def _multisets(items: list, k: int) -> list[tuple]:
    out: list[tuple] = []

    def rec(i, acc_):
        if len(acc_) == k:
            out.append(tuple(acc_))
            return
        for j in range(i, len(items)):
            rec(j, acc_ + [items[j]])

    rec(0, [])
    return out


# ---------------------------------------------------------------- parsing

def parse_fpoly(s: str) -> FPoly:
    """Parse ``3*f2*f3 - 11/2*f5 + f5|f3 + nu2``; ``*`` between words is the shuffle."""
    import re

    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty f-polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    out: dict = {}
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        term = FPoly.one().scale(sign)
        for fac in t.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", fac):
                term = term.scale(rat(fac))
            elif m := re.fullmatch(r"f2(?:\^(\d+))?", fac):
                term = term * FPoly({FMono(f2=int(m.group(1) or 1)): 1})
            elif m := re.fullmatch(r"L(?:\^(\d+))?", fac):
                term = term * FPoly({FMono(lef=int(m.group(1) or 1)): 1})
            elif re.fullmatch(r"((f\d+|nu\d+)\|)*(f\d+|nu\d+)", fac):
                word: tuple = ()
                for a in fac.split("|"):
                    if a.startswith("nu"):
                        word += (-int(a[2:]),)
                    else:
                        r = int(a[1:])
                        if r < 3 or r % 2 == 0:
                            raise ParseError(f"letter {a} is not an odd generator")
                        word += (r,)
                # juxtaposed words multiply by shuffle, like FPoly products
                term = term * FPoly({FMono(word=word): 1})
            else:
                raise ParseError(f"cannot parse factor {fac!r}")
        for m, c in term.terms._t.items():
            acc(out, m, c)
    return FPoly(LinComb.raw(out))
