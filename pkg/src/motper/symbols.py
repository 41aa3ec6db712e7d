"""Symbols of unipotent connections and the reduced bar construction.

Two differential graded algebras are provided:

* :class:`TableDGA` is generated by named functions and forms with a
  declared differential and wedge table (surface-like examples).
* :class:`P1Minus` has rational functions in ``x`` with poles at given
  points; every element is expanded in partial fractions so tensors over Q
  are computed in a canonical basis.  All wedges vanish.

A bar element is a combination of ``coefficient (x) [a1 | ... | an]`` where
the coefficient is a degree-0 basis monomial and the letters are basis
monomials of any degree.  The differential follows
``d = id (x) d_I + id (x) d_C`` with ``j = (-1)^deg`` and the augmentation
``eps`` projecting onto degree 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

import sympy as sp

from .errors import BasisMismatch, NotIntegrable, NotLengthN, ParseError, UnsupportedBasePoint
from .kernel import LinComb, NotInSpan, acc, rat, solve_in_span
from .words import _shuffle


# ---------------------------------------------------------------- DGAs

class TableDGA:
    """Free graded-commutative algebra truncated above degree 2.

    Basis monomials are ``(functions, form)``: a sorted tuple of function
    names and ``None``, a one-form name or a two-form name.  Undeclared
    wedges of one-forms are formal two-forms ``a^b`` when ``free_wedges``
    is set, zero otherwise.
    """

    kind = "table"

    def __init__(self, functions=(), one_forms=(), two_forms=(), d_table=None, wedge_table=None,
                 free_wedges: bool = True, d_functions=None):
        self.functions = list(functions)
        self.one_forms = list(one_forms)
        self.two_forms = list(two_forms)
        self.free_wedges = free_wedges
        self._dfun: dict = {}
        for f in self.functions:
            if d_functions and f in d_functions:
                continue
            name = f"d{f}"
            if name not in self.one_forms:
                self.one_forms.append(name)
            self._dfun[f] = {((), name): Fraction(1)}
        self._d1: dict = {}
        self._wedge: dict = {}
        for (a, b), v in (wedge_table or {}).items():
            img = self.parse(v) if isinstance(v, str) else v
            self._wedge[(a, b)] = img
            self._wedge[(b, a)] = {k: -c for k, c in img.items()}
        for f, v in (d_functions or {}).items():
            self._dfun[f] = self.parse(v) if isinstance(v, str) else v
        for w, v in (d_table or {}).items():
            self._d1[w] = self.parse(v) if isinstance(v, str) else v
        self._check()

    def _check(self):
        names = self.functions + self.one_forms + self.two_forms
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad generator name {n!r}")

    # --- basic structure ---------------------------------------------
    unit = ((), None)

    def deg(self, m) -> int:
        form = m[1]
        if form is None:
            return 0
        if form in self.one_forms:
            return 1
        return 2

    def mul(self, a, b) -> dict:
        fa, wa = a
        fb, wb = b
        funcs = tuple(sorted(fa + fb))
        if wa is None:
            return {(funcs, wb): Fraction(1)}
        if wb is None:
            return {(funcs, wa): Fraction(1)}
        da, db = self.deg(a), self.deg(b)
        if da + db > 2:
            return {}
        # two one-forms
        out: dict = {}
        for (gf, g), c in self._wedge_gens(wa, wb).items():
            acc(out, (tuple(sorted(funcs + gf)), g), c)
        return out

    def _wedge_gens(self, a: str, b: str) -> dict:
        if (a, b) in self._wedge:
            return self._wedge[(a, b)]
        if a == b or not self.free_wedges:
            return {}
        if a < b:
            return {((), f"{a}^{b}"): Fraction(1)}
        return {((), f"{b}^{a}"): Fraction(-1)}

    def d(self, m) -> dict:
        funcs, w = m
        out: dict = {}
        # d(g) for the function part, by the Leibniz rule
        for k, f in enumerate(funcs):
            rest = funcs[:k] + funcs[k + 1:]
            for dm, c in self._dfun.get(f, {}).items():
                tgt = (tuple(sorted(rest + dm[0])), dm[1])
                if w is None:
                    acc(out, tgt, c)
                else:
                    for k2, c2 in self.mul(tgt, ((), w)).items():
                        acc(out, k2, c * c2)
        if w is not None and self.deg(m) == 1:
            for dm, c in self._d1.get(w, {}).items():
                acc(out, (tuple(sorted(funcs + dm[0])), dm[1]), c)
        return out

    def fmt(self, m) -> str:
        funcs, w = m
        parts = list(funcs)
        if w is not None:
            parts.append(w)
        return "*".join(parts) if parts else "1"

    def sort_key(self, m):
        return (self.deg(m), m[1] or "", len(m[0]), m[0])

    # --- parsing -----------------------------------------------------
    def parse(self, s: str) -> dict:
        """``2*f*w1 - w1^w2 + 3/2`` -> {monomial: coeff}."""
        s = s.replace(" ", "")
        if s in ("", "0"):
            return {}
        out: dict = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            coef = Fraction(-1 if sign == "-" else 1)
            mono: dict = {self.unit: Fraction(1)}
            for fac in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", fac):
                    coef *= rat(fac)
                    continue
                if "^" in fac:
                    a, b = fac.split("^", 1)
                    for n in (a, b):
                        if n not in self.one_forms:
                            raise ParseError(f"{n!r} is not a one-form")
                    fm = self._wedge_gens(a, b)
                elif fac in self.functions:
                    fm = {((fac,), None): Fraction(1)}
                elif fac in self.one_forms or fac in self.two_forms:
                    fm = {((), fac): Fraction(1)}
                else:
                    raise ParseError(f"unknown generator {fac!r}")
                nxt: dict = {}
                for m1, c1 in mono.items():
                    for m2, c2 in fm.items():
                        for k, c3 in self.mul(m1, m2).items():
                            acc(nxt, k, c1 * c2 * c3)
                mono = nxt
            for k, c in mono.items():
                acc(out, k, coef * c)
        return out

    # --- cohomology (only what the symbol tests need) -----------------
    def h1_class(self, m):
        """Class of a one-form monomial, ``0`` if exact, ``None`` if unknown."""
        funcs, w = m
        if self.deg(m) != 1:
            return None
        if not funcs and w.startswith("d") and w[1:] in self._dfun and self._dfun[w[1:]] == {((), w): 1}:
            return 0
        if not funcs and not self.d(m):
            return w
        return None

    def h2_class(self, elem: dict):
        """Reduce a two-form combination modulo d of declared one-forms."""
        exact = [LinComb(self.d(((), w))) for w in self.one_forms]
        exact = [e for e in exact if e]
        v = LinComb(elem)
        if not v:
            return LinComb()
        sol = solve_in_span(v, exact)
        if isinstance(sol, NotInSpan):
            return v
        return LinComb()

    def to_json(self) -> dict:
        return {"kind": "table", "functions": self.functions,
                "one_forms": [w for w in self.one_forms if not (w.startswith("d") and w[1:] in self.functions)],
                "two_forms": self.two_forms, "free_wedges": self.free_wedges,
                "d": {w: self.fmt_elem(v) for w, v in self._d1.items()},
                "wedge": {f"{a},{b}": self.fmt_elem(v) for (a, b), v in self._wedge.items() if a < b}}

    def fmt_elem(self, d: dict) -> str:
        return _fmt_lin([(c, self.fmt(m)) for m, c in sorted(d.items(), key=lambda kv: self.sort_key(kv[0]))])


X = sp.Symbol("x")
DX = sp.Symbol("dx")


class P1Minus:
    """Rational functions on the projective line minus ``points`` (and infinity).

    Basis functions: ``("pow", k)`` for ``x^k`` (k >= 0) and ``("pole", a, k)``
    for ``(x - a)^-k``.  One-forms are ``("dx", f)`` for a basis function f.
    """

    kind = "P1minus"

    def __init__(self, points=(0, 1)):
        self.points = tuple(sorted({Fraction(p) for p in points}))
        if not self.points:
            raise ValueError("at least one puncture is required")

    unit = ("pow", 0)

    def deg(self, m) -> int:
        return 1 if m[0] == "dx" else 0

    @staticmethod
    def _expr(f) -> sp.Expr:
        if f[0] == "pow":
            return X ** f[1]
        a = sp.Rational(f[1].numerator, f[1].denominator)
        return (X - a) ** (-f[2])

    def expand(self, e: sp.Expr) -> dict:
        """Partial-fraction coordinates of a rational function of x."""
        e = sp.together(sp.sympify(e))
        if e == 0:
            return {}
        num, den = sp.fraction(e)
        for r in sp.roots(sp.Poly(den, X)) if sp.Poly(den, X).degree() > 0 else []:
            if not r.is_rational or Fraction(int(r.p), int(r.q)) not in self.points:
                raise ValueError(f"pole at {r} is not a puncture")
        out: dict = {}
        for term in sp.Add.make_args(sp.apart(e, X)):
            c, rest = term.as_independent(X, as_Add=False)
            if rest == 1:
                acc(out, ("pow", 0), _q(c))
                continue
            base, ex = rest.as_base_exp()
            if base == X and ex > 0:
                acc(out, ("pow", int(ex)), _q(c))
                continue
            if ex >= 0:
                poly = sp.Poly(sp.expand(rest), X)
                for (k,), cc in poly.terms():
                    acc(out, ("pow", int(k)), _q(c * cc))
                continue
            p = sp.Poly(base, X)
            if p.degree() != 1:
                raise ValueError(f"unexpected partial fraction term {term}")
            alpha, beta = p.all_coeffs()
            a = -beta / alpha
            k = int(-ex)
            acc(out, ("pole", Fraction(int(a.p), int(a.q)), k), _q(c / alpha ** k))
        return out

    def expand_form(self, e: sp.Expr) -> dict:
        """``g(x) dx`` -> form coordinates (``e`` may contain the symbol dx)."""
        e = sp.sympify(e)
        if e.has(DX):
            g = sp.simplify(e / DX)
            if g.has(DX):
                raise ParseError("one-forms must be linear in dx")
        else:
            g = e
        return {("dx", f): c for f, c in self.expand(g).items()}

    def mul(self, a, b) -> dict:
        da, db = self.deg(a), self.deg(b)
        if da and db:
            return {}  # curves have no two-forms
        fa = a[1] if da else a
        fb = b[1] if db else b
        e = self._expr(fa) * self._expr(fb)
        if da or db:
            return self.expand_form(e)
        return self.expand(e)

    def d(self, m) -> dict:
        if self.deg(m):
            return {}
        return self.expand_form(sp.diff(self._expr(m), X))

    def fmt(self, m) -> str:
        if m[0] == "dx":
            f = m[1]
            if f[0] == "pole" and f[2] == 1:
                a = f[1]
                if a == 0:
                    return "dlog(x)"
                if a == 1:
                    return "dlog(1-x)"
                return f"dlog(x-{a})" if a > 0 else f"dlog(x+{-a})"
            return _fmt_fun(f) + "*dx" if _fmt_fun(f) != "1" else "dx"
        return _fmt_fun(m)

    def sort_key(self, m):
        if m[0] == "dx":
            return (1,) + self._fkey(m[1])
        return (0,) + self._fkey(m)

    @staticmethod
    def _fkey(f):
        if f[0] == "pow":
            return (0, Fraction(0), f[1])
        return (1, f[1], f[2])

    def parse(self, s: str) -> dict:
        try:
            e = sp.sympify(s, locals={"x": X, "dx": DX, "dlog": lambda g: sp.diff(g, X) / g * DX})
        except (sp.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot parse {s!r}") from exc
        if e.has(DX):
            return self.expand_form(e)
        return self.expand(e)

    def h1_class(self, m):
        if m[0] != "dx":
            return None
        f = m[1]
        if f[0] == "pole" and f[2] == 1:
            return f"dlog(x-{f[1]})"
        return 0  # x^k dx and higher poles are exact

    def h2_class(self, elem: dict):
        return LinComb()

    def to_json(self) -> dict:
        return {"kind": "P1minus", "points": [str(p) for p in self.points]}

    def fmt_elem(self, d: dict) -> str:
        return _fmt_lin([(c, self.fmt(m)) for m, c in sorted(d.items(), key=lambda kv: self.sort_key(kv[0]))])


def _q(c) -> Fraction:
    c = sp.nsimplify(c)
    if not c.is_rational:
        raise ValueError(f"non-rational coefficient {c}")
    return Fraction(int(c.p), int(c.q))


def _fmt_fun(f) -> str:
    if f[0] == "pow":
        return "1" if f[1] == 0 else ("x" if f[1] == 1 else f"x^{f[1]}")
    a = f[1]
    base = "x" if a == 0 else (f"(x-{a})" if a > 0 else f"(x+{-a})")
    return f"1/{base}" if f[2] == 1 else f"1/{base}^{f[2]}"


def _fmt_lin(parts: list) -> str:
    from .motivic import _join_terms
    return _join_terms(parts)


# ---------------------------------------------------------------- bar elements

class BarElem:
    """``sum c * coef (x) [a1|...|an]``; keys are ``(coef, letters)``."""

    __slots__ = ("dga", "terms")

    def __init__(self, dga, terms=None):
        self.dga = dga
        self.terms = terms if isinstance(terms, LinComb) else LinComb(terms or {})

    @classmethod
    def word(cls, dga, letters, coef=None, c=1) -> "BarElem":
        return cls(dga, {(coef if coef is not None else dga.unit, tuple(letters)): c})

    def __add__(self, o):
        return BarElem(self.dga, self.terms + o.terms)

    def __sub__(self, o):
        return BarElem(self.dga, self.terms - o.terms)

    def __neg__(self):
        return BarElem(self.dga, -self.terms)

    def scale(self, c):
        return BarElem(self.dga, self.terms.scale(c))

    def __eq__(self, o):
        return isinstance(o, BarElem) and self.terms == o.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return self.terms.items(key=self._key)

    def _key(self, k):
        coef, letters = k
        return (len(letters), tuple(self.dga.sort_key(a) for a in letters), self.dga.sort_key(coef))

    def length(self) -> int:
        return max((len(l) for _, l in self.terms._t), default=0)

    def degree_set(self) -> set:
        return {sum(self.dga.deg(a) - 1 for a in l) for _, l in self.terms._t}

    def length_part(self, k: int) -> "BarElem":
        return BarElem(self.dga, {kk: c for kk, c in self.terms._t.items() if len(kk[1]) == k})

    def shuffle(self, o: "BarElem") -> "BarElem":
        """Shuffle product (degree-0 letters only, so no signs)."""
        out: dict = {}
        for (ca, la), x in self.terms._t.items():
            for (cb, lb), y in o.terms._t.items():
                for cm, z in self.dga.mul(ca, cb).items():
                    for w, n in _shuffle(la, lb):
                        acc(out, (cm, w), x * y * z * n)
        return BarElem(self.dga, LinComb.raw(out))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (coef, letters), c in self.items():
            body = "[" + "|".join(self.dga.fmt(a) for a in letters) + "]"
            cf = self.dga.fmt(coef)
            if cf != "1":
                body = f"{cf}*{body}"
            parts.append((c, body))
        return _fmt_lin(parts)

    def __repr__(self):
        return f"BarElem({self})"


def _letter_deg(dga, letters) -> int:
    return sum(dga.deg(a) - 1 for a in letters)


def bar_d(b: BarElem) -> BarElem:
    dga = b.dga
    out: dict = {}
    for (coef, L), c in b.terms._t.items():
        n = len(L)
        degs = [dga.deg(a) for a in L]
        jsign = [(-1) ** g for g in degs]
        # d_I: differential of one letter
        pre = 1
        for i in range(n):
            sgn = (-1) ** (i + 1) * pre
            for m, v in dga.d(L[i]).items():
                acc(out, (coef, L[:i] + (m,) + L[i + 1:]), c * sgn * v)
            pre *= jsign[i]
        # d_I: wedge of adjacent letters
        pre = 1
        for i in range(n - 1):
            sgn = (-1) ** (i + 2) * pre * jsign[i]
            for m, v in dga.mul(L[i], L[i + 1]).items():
                acc(out, (coef, L[:i] + (m,) + L[i + 2:]), c * sgn * v)
            pre *= jsign[i]
        # d_C: augmentation at both ends
        if n and degs[0] == 0:
            for cm, v in dga.mul(coef, L[0]).items():
                acc(out, (cm, L[1:]), -c * v)
        if n and degs[-1] == 0:
            nu = (degs[-1] - 1) * _letter_deg(dga, L[:-1])
            for cm, v in dga.mul(coef, L[-1]).items():
                acc(out, (cm, L[:-1]), c * (-1) ** nu * v)
    return BarElem(dga, LinComb.raw(out))


# ---------------------------------------------------------------- connections

@dataclass
class Connection:
    dga: object
    matrix: list            # n x n list of {monomial: coeff} (one-forms)
    blocks: list            # filtration index per basis vector
    names: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def entry(self, i, j) -> dict:
        return self.matrix[i][j]


@dataclass
class IntegrabilityResult:
    ok: bool
    witness: tuple | None = None
    value: str = ""

    def __bool__(self):
        return self.ok


def make_connection(dga, matrix, blocks=None, names=None) -> Connection:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise BasisMismatch("connection matrix must be square")
    m = [[(dga.parse(e) if isinstance(e, str) else dict(e)) for e in row] for row in matrix]
    blocks = list(range(n)) if blocks is None else list(blocks)
    if len(blocks) != n:
        raise BasisMismatch("one filtration index per basis vector")
    for i in range(n):
        for j in range(n):
            if m[i][j] and not blocks[i] < blocks[j]:
                raise BasisMismatch(f"entry ({i},{j}) violates strict upper-triangularity")
            for k in m[i][j]:
                if dga.deg(k) != 1:
                    raise BasisMismatch(f"entry ({i},{j}) is not a one-form")
    return Connection(dga, m, blocks, list(names or []))


def check_integrability(c: Connection) -> IntegrabilityResult:
    """``dN + N ^ N = 0`` entrywise; reports the first failing entry."""
    dga = c.dga
    n = c.size
    for i in range(n):
        for j in range(n):
            tot: dict = {}
            for m, v in c.matrix[i][j].items():
                for k, w in dga.d(m).items():
                    acc(tot, k, v * w)
            for k in range(n):
                for a, x in c.matrix[i][k].items():
                    for b, y in c.matrix[k][j].items():
                        for m, z in dga.mul(a, b).items():
                            acc(tot, m, x * y * z)
            if tot:
                return IntegrabilityResult(False, (i, j), dga.fmt_elem(tot))
    return IntegrabilityResult(True)


def _vec(dga, v, n) -> dict:
    """Vector/covector: an index, or {index: function element or string}."""
    if isinstance(v, int):
        if not 0 <= v < n:
            raise BasisMismatch(f"index {v} out of range")
        return {v: {dga.unit: Fraction(1)}}
    out = {}
    for i, e in dict(v).items():
        i = int(i)
        if not 0 <= i < n:
            raise BasisMismatch(f"index {i} out of range")
        el = dga.parse(e) if isinstance(e, str) else ({dga.unit: rat(e)} if isinstance(e, (int, Fraction)) else dict(e))
        if any(dga.deg(m) != 0 for m in el):
            raise BasisMismatch("vector components must be functions")
        out[i] = el
    return out


def smb(c: Connection, f, w, check: bool = True) -> BarElem:
    """``sum_k <f, N^k w>`` with concatenation of letters."""
    if check:
        res = check_integrability(c)
        if not res:
            raise NotIntegrable(f"dN + N^N != 0 at entry {res.witness}: {res.value}")
    dga = c.dga
    n = c.size
    fv, wv = _vec(dga, f, n), _vec(dga, w, n)
    out: dict = {}
    # paths[j] = combination of (coef, letters) reaching column j
    for i, fi in fv.items():
        frontier = {i: {(dga.unit, ()): Fraction(1)}}
        while frontier:
            for j, terms in frontier.items():
                if j in wv:
                    for (cf, L), v in terms.items():
                        for a, x in fi.items():
                            for b, y in wv[j].items():
                                for m1, z1 in dga.mul(cf, a).items():
                                    for m2, z2 in dga.mul(m1, b).items():
                                        acc(out, (m2, L), v * x * y * z1 * z2)
            nxt: dict = {}
            for j, terms in frontier.items():
                for k in range(n):
                    e = c.matrix[j][k]
                    if not e:
                        continue
                    d = nxt.setdefault(k, {})
                    for (cf, L), v in terms.items():
                        for m, x in e.items():
                            acc(d, (cf, L + (m,)), v * x)
            frontier = {k: d for k, d in nxt.items() if d}
    return BarElem(dga, LinComb.raw(out))


# ---------------------------------------------------------------- equality modulo R

@dataclass
class Verdict:
    kind: str                       # "Equal" | "Distinct" | "Inconclusive"
    preimage: BarElem | None = None
    reason: str = ""

    def __str__(self):
        if self.kind == "Equal":
            return f"Equal(preimage = {self.preimage})"
        return f"{self.kind}({self.reason})" if self.reason else self.kind


def _classes(b: BarElem, k: int):
    """Length-k part with letters replaced by H^1 classes (None if unknown)."""
    dga = b.dga
    out: dict = {}
    for (coef, L), c in b.terms._t.items():
        if len(L) != k:
            continue
        cls = [dga.h1_class(a) for a in L]
        if any(x is None for x in cls):
            return None
        if any(x == 0 for x in cls):
            continue
        acc(out, (coef, tuple(cls)), c)
    return LinComb.raw(out)


def equal_mod_R(a: BarElem, b: BarElem, hint=(), max_candidates: int = 4000) -> Verdict:
    dga = a.dga
    diff = a - b
    if not diff:
        return Verdict("Equal", BarElem(dga))
    ell = diff.length()
    obstruction = _classes(diff, ell)
    if obstruction and not any(len(L) > ell for _, L in diff.terms._t):
        # closed difference with nonzero top-length cohomology class
        if not bar_d(diff):
            return Verdict("Distinct", reason="nonzero cohomological symbol of the difference")
    # candidate pool
    forms, funcs, coefs = set(), set(), {dga.unit}
    for (cf, L), _ in diff.terms._t.items():
        coefs.add(cf)
        for x in L:
            (forms if dga.deg(x) == 1 else funcs).add(x)
    for h in hint:
        el = dga.parse(h) if isinstance(h, str) else dict(h)
        for m in el:
            (forms if dga.deg(m) == 1 else funcs).add(m)
    # functions hidden in letters such as f*w1 or coefficients
    for m in list(forms) + list(coefs):
        for f in _function_parts(dga, m):
            funcs.add(f)
    funcs.discard(dga.unit)
    forms = sorted(forms, key=dga.sort_key)
    funcs = sorted(funcs, key=dga.sort_key)
    coefs = sorted(coefs, key=dga.sort_key)
    cands: list[tuple] = []
    for L in range(0, ell + 1):
        for u in iproduct(forms, repeat=L):
            for g in funcs:
                for p in range(L + 1):
                    for cf in coefs:
                        cands.append((cf, u[:p] + (g,) + u[p:]))
                        if len(cands) > max_candidates:
                            return Verdict("Inconclusive", reason="candidate space too large")
    if not cands:
        return Verdict("Inconclusive", reason="no candidates")
    images = [bar_d(BarElem(dga, {k: 1})).terms for k in cands]
    sol = solve_in_span(diff.terms, images)
    if isinstance(sol, NotInSpan):
        return Verdict("Inconclusive", reason="no boundary found in the candidate space")
    pre = {k: v for k, v in zip(cands, sol) if v}
    return Verdict("Equal", BarElem(dga, pre))


def _function_parts(dga, m):
    if isinstance(dga, TableDGA):
        return [((f,), None) for f in m[0]]
    if dga.deg(m) == 1:
        return [m[1]] if m[1] != dga.unit else []
    return [m]


# ---------------------------------------------------------------- cohomological symbol

@dataclass
class CmbResult:
    classes: LinComb                 # keys (coef, tuple of class labels)
    kernel_ok: bool
    witness: str = ""
    dga: object = None

    def __str__(self):
        parts = []
        for (coef, cls), c in self.classes.items(key=lambda k: (len(k[1]), tuple(map(str, k[1])))):
            body = "[" + "|".join(f"[{x}]" for x in cls) + "]"
            cf = self.dga.fmt(coef) if self.dga is not None else "1"
            parts.append((c, body if cf == "1" else f"{cf}*{body}"))
        return _fmt_lin(parts) if parts else "0"


def cmb(c: Connection, f, w, n: int) -> CmbResult:
    """``<f, Nbar^(x)n w>`` with forms replaced by cohomology classes."""
    dga = c.dga
    length = max(c.blocks) - min(c.blocks)
    if n > length or n < 1:
        raise NotLengthN(f"connection has length {length}, cannot form cmb_{n}")
    size = c.size
    fv, wv = _vec(dga, f, size), _vec(dga, w, size)
    out: dict = {}
    word_reps: dict = {}
    for i, fi in fv.items():
        frontier = {i: {(dga.unit, ()): Fraction(1)}}
        for _ in range(n):
            nxt: dict = {}
            for j, terms in frontier.items():
                for k in range(size):
                    if c.blocks[k] != c.blocks[j] + 1 or not c.matrix[j][k]:
                        continue
                    d = nxt.setdefault(k, {})
                    for (cf, L), v in terms.items():
                        for m, x in c.matrix[j][k].items():
                            acc(d, (cf, L + (m,)), v * x)
            frontier = nxt
        for j, terms in frontier.items():
            if j not in wv:
                continue
            for (cf, L), v in terms.items():
                cls = [dga.h1_class(a) for a in L]
                if any(x is None for x in cls):
                    raise NotIntegrable("graded connection has a non-closed entry")
                if any(x == 0 for x in cls):
                    continue
                for a, x in fi.items():
                    for b, y in wv[j].items():
                        for m1, z1 in dga.mul(cf, a).items():
                            for m2, z2 in dga.mul(m1, b).items():
                                key = (m2, tuple(cls))
                                acc(out, key, v * x * y * z1 * z2)
                                word_reps.setdefault(key, L)
    classes = LinComb.raw(out)
    ok, witness = wedge_kernel_check(dga, classes, word_reps)
    return CmbResult(classes, ok, witness, dga)


def wedge_kernel_check(dga, classes: LinComb, reps: dict) -> tuple[bool, str]:
    """Apply the wedge-insertion map slot by slot and test for zero in H^2."""
    n = max((len(k[1]) for k in classes._t), default=0)
    for k in range(n - 1):
        tot: dict = {}
        for key, c in classes._t.items():
            L = reps[key]
            for m, v in dga.mul(L[k], L[k + 1]).items():
                acc(tot, (key[0], key[1][:k], key[1][k + 2:], m), c * v)
        # group by the untouched slots and reduce each two-form modulo exact forms
        groups: dict = {}
        for (cf, pre, post, m), v in tot.items():
            acc(groups.setdefault((cf, pre, post), {}), m, v)
        for g, two in groups.items():
            cls = dga.h2_class(two)
            if cls:
                return False, f"slot {k}: nonzero class {dga.fmt_elem(dict(cls._t))}"
    return True, ""


# ---------------------------------------------------------------- KZ connection and polylogs

def kz_form(dga: P1Minus, a: int) -> dict:
    """I-word letter ``a`` -> ``dx/(x - a)``."""
    return dga.expand_form(1 / (X - a)) if a != 0 else dga.expand_form(1 / X)


def kz_letter(dga: P1Minus, s: int) -> dict:
    """KZ letters: ``e0 = dx/x``, ``e1 = dx/(1-x)``, ``e-1 = dx/(-1-x)``."""
    if s == 0:
        return dga.expand_form(1 / X)
    return dga.expand_form(1 / (s - X))


def kz_connection(word, dga: P1Minus | None = None) -> Connection:
    """Prefix chain of ``word`` (letters 0, +-1) with the KZ connection.

    ``Li_word`` is the coefficient ``(0, len(word))``.
    """
    word = tuple(word)
    pts = {0} | {abs(a) * (1 if a > 0 else -1) for a in word if a != 0} | {1}
    dga = dga or P1Minus(sorted(pts))
    n = len(word) + 1
    m = [[{} for _ in range(n)] for _ in range(n)]
    for k, s in enumerate(word):
        m[k][k + 1] = kz_letter(dga, s)
    return Connection(dga, m, list(range(n)), ["1"] + [" ".join(f"e{a}" for a in word[:k + 1]) for k in range(n - 1)])


def tensor_connection(a: Connection, b: Connection) -> tuple[Connection, callable]:
    """``N = N_a (x) 1 + 1 (x) N_b``; returns the connection and an index map."""
    if a.dga is not b.dga:
        raise BasisMismatch("both connections must share one DGA")
    na, nb = a.size, b.size
    idx = lambda i, j: i * nb + j
    n = na * nb
    m = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                if a.matrix[i][k]:
                    m[idx(i, j)][idx(k, j)] = dict(a.matrix[i][k])
            for k in range(nb):
                if b.matrix[j][k]:
                    d = m[idx(i, j)][idx(i, k)]
                    for kk, v in b.matrix[j][k].items():
                        acc(d, kk, v)
    blocks = [a.blocks[i] + b.blocks[j] for i in range(na) for j in range(nb)]
    return Connection(a.dga, m, blocks), idx


def smb_li(n: int, dga: P1Minus | None = None) -> BarElem:
    """Symbol of ``Li_n = Li_{e1 e0^(n-1)}``."""
    c = kz_connection((1,) + (0,) * (n - 1), dga)
    return smb(c, 0, n)


def kz_word(word, dga: P1Minus) -> BarElem:
    """The bar word ``[e_{w1}|...|e_{wn}]`` in KZ letters, multilinearly expanded."""
    out = BarElem(dga, {(dga.unit, ()): 1})
    for s in word:
        f = kz_letter(dga, s)
        nxt: dict = {}
        for (cf, L), c in out.terms._t.items():
            for m, v in f.items():
                acc(nxt, (cf, L + (m,)), c * v)
        out = BarElem(dga, LinComb.raw(nxt))
    return out


def dlog_word(points, dga: P1Minus) -> BarElem:
    """``[dlog(x - a1)|...]``; ``a = 1`` prints as dlog(1-x) (same form)."""
    out: dict = {(dga.unit, tuple(("dx", ("pole", Fraction(a), 1)) for a in points)): Fraction(1)}
    return BarElem(dga, out)


# ---------------------------------------------------------------- symbols based at a point

BASE_POINTS = ("0", "1")


def smb_at_point(x, t: str = "0", dga: P1Minus | None = None) -> dict:
    """``(ev_t (x) smb) Delta(x)`` for polylogarithm families on P^1 minus {0, 1, -1}.

    Returns ``{(constant MotivicExpr printed, letters): coeff}`` packaged as a
    list of ``(MotivicExpr, BarElem)`` pairs grouped by bar word.
    """
    from .motivic import MotivicExpr, Mono, coaction

    t = str(t)
    if t not in BASE_POINTS:
        raise UnsupportedBasePoint("only the tangential base points at 0 and 1 are supported")
    pts = {0, 1}
    for m, _ in x.items():
        pts |= {a for a in m.fword if a != 0}
    dga = dga or P1Minus(sorted(pts))
    groups: dict = {}
    for (l, r), c in coaction(x).terms._t.items():
        # smb of the de Rham factor: constants other than L_dr have no symbol
        if r.word or r.primes:
            continue
        letters: dict = {(dga.unit, ()): Fraction(1)}
        for a in r.fword:
            f = kz_form(dga, a)
            nxt: dict = {}
            for (cf, L), v in letters.items():
                for mm, w in f.items():
                    acc(nxt, (cf, L + (mm,)), v * w)
            letters = nxt
        # ev_t of the motivic factor
        if l.fword:
            if t == "0":
                continue
            ev = {Mono(l.lef, w, (), l.primes): e for w, e in _evaluate_at_one(l)}
        else:
            ev = {l: Fraction(1)}
        for key, v in letters.items():
            g = groups.setdefault(key, {})
            for mm, e in ev.items():
                acc(g, mm, c * v * e)
    out = []
    for key, g in groups.items():
        if not g:
            continue
        out.append((MotivicExpr(LinComb.raw(g)), BarElem(dga, {key: 1})))
    out.sort(key=lambda p: (len(next(iter(p[1].terms._t))[1]), str(p[1])))
    return out


def _evaluate_at_one(l):
    """Regularised value at x = 1 of the family part: I(0; fw; 1) shuffled into the word."""
    from .motivic import _reg01
    out: dict = {}
    for v, c in _reg01(l.fword):
        for w, e in _shuffle(l.word, v):
            acc(out, w, c * e)
    return out.items()


def fmt_at_point(pairs) -> str:
    if not pairs:
        return "0"
    return " + ".join(f"({c}) (x) {b}" for c, b in pairs)


# ---------------------------------------------------------------- JSON

def dga_from_json(d: dict):
    kind = d.get("kind", "table")
    if kind == "P1minus":
        return P1Minus([Fraction(p) for p in d.get("points", [0, 1])])
    if kind == "table":
        wedge = {}
        for k, v in d.get("wedge", {}).items():
            a, b = k.split(",")
            wedge[(a.strip(), b.strip())] = v
        dga = TableDGA(d.get("functions", []), d.get("one_forms", []), d.get("two_forms", []),
                       None, None, bool(d.get("free_wedges", True)))
        # tables refer to generators, so parse after construction
        dga._wedge = {}
        for (a, b), v in wedge.items():
            img = dga.parse(v)
            dga._wedge[(a, b)] = img
            dga._wedge[(b, a)] = {k: -c for k, c in img.items()}
        for w, v in d.get("d", {}).items():
            if w not in dga.one_forms:
                raise ParseError(f"d-table entry for unknown one-form {w!r}")
            dga._d1[w] = dga.parse(v)
        return dga
    raise ParseError(f"unknown DGA kind {kind!r}")


def connection_from_json(d: dict) -> Connection:
    dga = dga_from_json(d["dga"])
    return make_connection(dga, d["matrix"], d.get("blocks"), d.get("names"))


def connection_to_json(c: Connection) -> dict:
    return {"dga": c.dga.to_json(),
            "matrix": [[c.dga.fmt_elem(e) if e else "0" for e in row] for row in c.matrix],
            "blocks": list(c.blocks)}


# ---------------------------------------------------------------- the worked example

def example_dga(integrable: bool = True) -> TableDGA:
    """Functions ``f``; closed forms ``w1, w2``; ``d w12 = -w1^w2`` (or 0)."""
    return TableDGA(["f"], ["w1", "w2", "w12"], [], {"w12": "-w1^w2"} if integrable else {}, None, True)


def example_connection(integrable: bool = True, shear: str | None = None) -> Connection:
    dga = example_dga(integrable)
    if shear is None:
        return make_connection(dga, [["0", "w1", "w12"], ["0", "0", "w2"], ["0", "0", "0"]])
    # basis e2' = e2 + g e1: N' has w12 + g w1 and w2 + dg
    g = dga.parse(shear)
    w12 = dict(dga.parse("w12"))
    for m, c in g.items():
        for k, v in dga.mul(m, ((), "w1")).items():
            acc(w12, k, c * v)
    w2 = dict(dga.parse("w2"))
    for m, c in g.items():
        for k, v in dga.d(m).items():
            acc(w2, k, c * v)
    return make_connection(dga, [[{}, dga.parse("w1"), w12], [{}, {}, w2], [{}, {}, {}]])
