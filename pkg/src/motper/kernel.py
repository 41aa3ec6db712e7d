"""Exact rational arithmetic, linear combinations and sparse row reduction.

Rationals are :class:`fractions.Fraction` (always stored reduced).  A
:class:`LinComb` is an immutable finite map from generators to nonzero
rationals; every other module builds on it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Rat = Fraction


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return rat_from_str(x)
    return Fraction(x)


def rat_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def default_key(g):
    """Generator order: objects may define ``sort_key``; tuples sort length-then-lex."""
    sk = getattr(g, "sort_key", None)
    if sk is not None and callable(sk):
        return sk()
    if isinstance(g, tuple):
        return (len(g), tuple(default_key(x) for x in g))
    if isinstance(g, (int, Fraction)):
        return (0, g)
    return (1, str(g))


def acc(d: dict, k, c) -> None:
    """In-place ``d[k] += c`` dropping zeros."""
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


class LinComb:
    """Finite Q-linear combination of hashable generators."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping | Iterable | None = None):
        d: dict = {}
        if terms is not None:
            it = terms.items() if isinstance(terms, Mapping) else terms
            for g, c in it:
                acc(d, g, rat(c))
        self._t = d
        self._h = None

    @classmethod
    def raw(cls, d: dict) -> "LinComb":
        # trusted: d has Fraction values, no zeros, and is not shared
        obj = cls.__new__(cls)
        obj._t = d
        obj._h = None
        return obj

    @classmethod
    def gen(cls, g, c=1) -> "LinComb":
        return cls({g: c})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls.raw({})

    # --- access -------------------------------------------------------
    def items(self, key: Callable | None = None) -> list:
        return sorted(self._t.items(), key=lambda kv: (key or default_key)(kv[0]))

    def support(self) -> list:
        return [g for g, _ in self.items()]

    def coeff(self, g) -> Fraction:
        return self._t.get(g, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self._t)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other: "LinComb") -> "LinComb":
        d = dict(self._t)
        for g, c in other._t.items():
            acc(d, g, c)
        return LinComb.raw(d)

    def __sub__(self, other: "LinComb") -> "LinComb":
        d = dict(self._t)
        for g, c in other._t.items():
            acc(d, g, -c)
        return LinComb.raw(d)

    def __neg__(self) -> "LinComb":
        return LinComb.raw({g: -c for g, c in self._t.items()})

    def scale(self, c) -> "LinComb":
        c = rat(c)
        if not c:
            return LinComb.zero()
        return LinComb.raw({g: c * v for g, v in self._t.items()})

    def __rmul__(self, c) -> "LinComb":
        return self.scale(c)

    def map(self, f: Callable[[Hashable], Mapping | "LinComb"]) -> "LinComb":
        """Linear extension of ``f``: generator -> combination."""
        d: dict = {}
        for g, c in self._t.items():
            img = f(g)
            img = img._t if isinstance(img, LinComb) else img
            for h, e in img.items():
                acc(d, h, c * e)
        return LinComb.raw(d)

    def bilinear(self, other: "LinComb", f: Callable) -> "LinComb":
        d: dict = {}
        for g, c in self._t.items():
            for h, e in other._t.items():
                img = f(g, h)
                img = img._t if isinstance(img, LinComb) else img
                ce = c * e
                for k, v in img.items():
                    acc(d, k, ce * v)
        return LinComb.raw(d)

    # --- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._t == other._t
        if other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __repr__(self) -> str:
        if not self._t:
            return "LinComb(0)"
        return "LinComb(" + ", ".join(f"{g!r}: {rat_to_str(c)}" for g, c in self.items()) + ")"


# ----------------------------------------------------------------------
# sparse matrices

class SparseMat:
    """Rows are ``LinComb`` over column indices ``0 <= j < ncols``."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable, ncols: int):
        rs = [r if isinstance(r, LinComb) else LinComb(r) for r in rows]
        for r in rs:
            for j in r._t:
                if not (isinstance(j, int) and 0 <= j < ncols):
                    raise ValueError(f"column index {j!r} out of range for ncols={ncols}")
        self.rows = rs
        self.ncols = ncols

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMat) and self.ncols == other.ncols and self.rows == other.rows

    def to_json(self) -> list:
        return [[[j, rat_to_str(c)] for j, c in r.items()] for r in self.rows]

    @classmethod
    def from_json(cls, data: list, ncols: int) -> "SparseMat":
        return cls([{int(j): rat_from_str(c) for j, c in row} for row in data], ncols)

    def __repr__(self) -> str:
        return f"SparseMat({len(self.rows)}x{self.ncols})"


def _eliminate(rows: list[dict]) -> list[tuple[int, dict]]:
    """Markowitz-pivoted elimination.

    Returns ``(pivot column, row)`` pairs where each row has a 1 at its pivot
    column and zeros at every other returned pivot column.
    """
    active = [dict(r) for r in rows if r]
    colcount: dict[int, int] = {}
    for r in active:
        for j in r:
            colcount[j] = colcount.get(j, 0) + 1
    done: list[tuple[int, dict]] = []
    while active:
        # fewest nonzeros in the row, then rarest column, then smallest index
        bi = min(range(len(active)), key=lambda i: (len(active[i]), min(active[i])))
        prow = active.pop(bi)
        pc = min(prow, key=lambda j: (colcount.get(j, 0), j))
        inv = 1 / prow[pc]
        prow = {j: v * inv for j, v in prow.items()}
        for j in prow:
            colcount[j] -= 1
        survivors = []
        for r in active:
            f = r.get(pc)
            if f:
                for j in r:
                    colcount[j] -= 1
                for j, v in prow.items():
                    acc(r, j, -f * v)
                for j in r:
                    colcount[j] = colcount.get(j, 0) + 1
            if r:
                survivors.append(r)
        active = survivors
        for _, r in done:
            f = r.get(pc)
            if f:
                for j, v in prow.items():
                    acc(r, j, -f * v)
        done.append((pc, prow))
    return done


def rref(m: SparseMat) -> tuple[SparseMat, list[int], int]:
    """Reduced row-echelon form; returns ``(reduced, pivots, rank)``."""
    basis = [r for _, r in _eliminate([r._t for r in m.rows])]
    # canonical form: Gauss-Jordan on the (small) row basis with leftmost pivots
    rows = [dict(r) for r in basis]
    pivots: list[int] = []
    out: list[dict] = []
    while rows:
        rows.sort(key=lambda r: min(r))
        r = rows.pop(0)
        pc = min(r)
        inv = 1 / r[pc]
        r = {j: v * inv for j, v in r.items()}
        nxt = []
        for s in rows:
            f = s.get(pc)
            if f:
                for j, v in r.items():
                    acc(s, j, -f * v)
            if s:
                nxt.append(s)
        rows = nxt
        for s in out:
            f = s.get(pc)
            if f:
                for j, v in r.items():
                    acc(s, j, -f * v)
        out.append(r)
        pivots.append(pc)
    return SparseMat([LinComb.raw(r) for r in out], m.ncols), pivots, len(out)


class NotInSpan:
    """Returned (not raised) by :func:`solve_in_span` when no solution exists."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NotInSpan"

    def __bool__(self) -> bool:
        return False


NOT_IN_SPAN = NotInSpan()


def solve_in_span(target: LinComb, span: list[LinComb]) -> list[Fraction] | NotInSpan:
    """Coordinates ``c`` with ``sum c_i span_i == target`` or ``NOT_IN_SPAN``."""
    n = len(span)
    # each working row: (vector, combination of original indices)
    rows: list[tuple[dict, dict]] = [(dict(s._t), {i: Fraction(1)}) for i, s in enumerate(span) if s]
    piv: list[tuple[object, dict, dict]] = []
    for vec, comb in rows:
        for g, pv, pc in piv:
            f = vec.get(g)
            if f:
                for k, v in pv.items():
                    acc(vec, k, -f * v)
                for k, v in pc.items():
                    acc(comb, k, -f * v)
        if not vec:
            continue
        g = min(vec, key=default_key)
        inv = 1 / vec[g]
        piv.append((g, {k: v * inv for k, v in vec.items()}, {k: v * inv for k, v in comb.items()}))
    res = dict(target._t)
    coords = [Fraction(0)] * n
    for g, pv, pc in piv:
        f = res.get(g)
        if f:
            for k, v in pv.items():
                acc(res, k, -f * v)
            for k, v in pc.items():
                coords[k] += f * v
    if res:
        return NOT_IN_SPAN
    return coords


def rank_by_minors(rows: list[list[Fraction]]) -> int:
    """Brute-force rank through determinant minors (test oracle, tiny sizes only)."""
    from itertools import combinations

    def det(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))

    if not rows:
        return 0
    nr, nc = len(rows), len(rows[0])
    for k in range(min(nr, nc), 0, -1):
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                if det([[rows[i][j] for j in ci] for i in ri]) != 0:
                    return k
    return 0
