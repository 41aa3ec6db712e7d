"""Symbolic period matrices, real Frobenius and single-valued periods.

Entries are sympy expressions in named generators, localised at ``L``.  A
:class:`SymRing` records each generator's weight and its image under the
real Frobenius ``F_inf``; bar partners (``Li2bar``, ``logbar``...) are
independent symbols tied to their partners only through that table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .errors import (MissingHodge, MissingWeights, NotInvertible, ParseError, SizeMismatch,
                     UnknownGenerator, UnsupportedKind)


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int
    frobenius: str  # sympy-parsable image in terms of other generators


class SymRing:
    def __init__(self, gens: list[Generator]):
        self.gens = {g.name: g for g in gens}
        if "L" not in self.gens:
            self.gens["L"] = Generator("L", 2, "-L")
        self.symbols = {n: sp.Symbol(n) for n in self.gens}
        self._frob = {self.symbols[n]: self.parse(g.frobenius) for n, g in self.gens.items()}
        # F_inf must be an involution on generators
        for s, img in self._frob.items():
            back = img.xreplace(self._frob)
            if sp.expand(back - s) != 0:
                raise ValueError(f"frobenius table is not an involution on {s}")

    def parse(self, s: str) -> sp.Expr:
        try:
            e = sp.sympify(s, locals=dict(self.symbols))
        except (sp.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot parse entry {s!r}") from exc
        for f in e.free_symbols:
            if f.name not in self.gens:
                raise UnknownGenerator(f.name)
        return e

    def frobenius(self, e: sp.Expr) -> sp.Expr:
        for f in e.free_symbols:
            if f.name not in self.gens:
                raise UnknownGenerator(f.name)
        return e.xreplace(self._frob)

    def merged(self, other: "SymRing") -> "SymRing":
        return SymRing(list({**self.gens, **other.gens}.values()))

    def to_json(self) -> list:
        return [{"name": g.name, "weight": g.weight, "frobenius": g.frobenius}
                for g in sorted(self.gens.values(), key=lambda g: g.name)]


def _norm(e):
    return sp.factor_terms(sp.expand(sp.cancel(sp.together(e))))


@dataclass
class PeriodMatrix:
    entries: sp.Matrix
    ring: SymRing
    weights: list | None = None          # per-row weights (even integers)
    hodge: list | None = None            # [(p, q), ...]
    name: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, o):
        return isinstance(o, PeriodMatrix) and (self.entries - o.entries).applyfunc(_norm) == sp.zeros(*self.entries.shape)

    def rows(self) -> list[list[str]]:
        return [[_fmt(self.entries[i, j]) for j in range(self.size)] for i in range(self.size)]

    def __str__(self):
        rs = self.rows()
        w = max(len(x) for r in rs for x in r)
        return "\n".join("[ " + "  ".join(x.rjust(w) for x in r) + " ]" for r in rs)

    def to_json(self) -> dict:
        d = {"generators": self.ring.to_json(), "entries": self.rows()}
        if self.weights is not None:
            d["weights"] = list(self.weights)
        if self.hodge is not None:
            d["hodge"] = [list(h) for h in self.hodge]
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_json(cls, data: dict) -> "PeriodMatrix":
        ring = SymRing([Generator(g["name"], int(g["weight"]), str(g["frobenius"])) for g in data["generators"]])
        rows = data["entries"]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SizeMismatch("period matrix must be square")
        m = sp.Matrix([[ring.parse(str(x)) for x in r] for r in rows])
        hodge = [tuple(h) for h in data["hodge"]] if "hodge" in data else None
        return cls(m, ring, data.get("weights"), hodge, data.get("name", ""))


def _fmt(e) -> str:
    s = str(_norm(e))
    return s.replace("**", "^")


# ---------------------------------------------------------------- builders

def _ring_dilog() -> SymRing:
    g = [Generator("L", 2, "-L"),
         Generator("Li1", 2, "Li1bar"), Generator("Li1bar", 2, "Li1"),
         Generator("Li2", 4, "Li2bar"), Generator("Li2bar", 4, "Li2"),
         Generator("log", 2, "logbar"), Generator("logbar", 2, "log")]
    return SymRing(g)


def log_name(alpha) -> str:
    a = Fraction(alpha)
    if a <= 0 or a == 1:
        raise UnsupportedKind("kummer needs a positive rational alpha != 1")
    return f"log_{a.numerator}" if a.denominator == 1 else f"log_{a.numerator}_{a.denominator}"


def builder(kind: str, alpha=None, n: int | None = None, depth: int | None = None) -> PeriodMatrix:
    if kind == "lefschetz":
        r = SymRing([])
        L = r.symbols["L"]
        return PeriodMatrix(sp.Matrix([[L]]), r, [2], [(1, 1)], "lefschetz")
    if kind == "kummer":
        if alpha is None:
            raise UnsupportedKind("kummer needs alpha")
        nm = log_name(alpha)
        r = SymRing([Generator(nm, 2, nm)])
        L, lg = r.symbols["L"], r.symbols[nm]
        return PeriodMatrix(sp.Matrix([[1, lg], [0, L]]), r, [0, 2], [(0, 0), (1, 1)], f"kummer({alpha})")
    if kind == "zeta":
        if n is None or n < 3 or n % 2 == 0:
            raise UnsupportedKind("zeta builder needs an odd n >= 3")
        nm = f"zeta{n}"
        r = SymRing([Generator(nm, 2 * n, nm)])
        L, z = r.symbols["L"], r.symbols[nm]
        return PeriodMatrix(sp.Matrix([[1, z], [0, L ** n]]), r, [0, 2 * n], [(0, 0), (n, n)], f"zeta({n})")
    if kind == "polylog_tower":
        depth = 2 if depth is None else depth
        r = _ring_dilog()
        s = r.symbols
        L = s["L"]
        if depth == 1:
            m = sp.Matrix([[1, s["Li1"]], [0, L]])
            return PeriodMatrix(m, r, [0, 2], [(0, 0), (1, 1)], "polylog_tower(1)")
        if depth == 2:
            m = sp.Matrix([[1, s["Li1"], s["Li2"]], [0, L, L * s["log"]], [0, 0, L ** 2]])
            return PeriodMatrix(m, r, [0, 2, 4], [(0, 0), (1, 1), (2, 2)], "polylog_tower(2)")
        raise UnsupportedKind("polylog_tower supports depth 1 or 2")
    raise UnsupportedKind(f"unknown builder {kind!r}")


def identity(n: int) -> PeriodMatrix:
    return PeriodMatrix(sp.eye(n), SymRing([]), [0] * n, [(0, 0)] * n, f"identity({n})")


# ---------------------------------------------------------------- operations

def frobenius_apply(m: PeriodMatrix) -> PeriodMatrix:
    e = m.entries.applyfunc(m.ring.frobenius)
    return PeriodMatrix(e, m.ring, m.weights, m.hodge, m.name)


def _inverse(m: sp.Matrix) -> sp.Matrix:
    n = m.shape[0]
    for i in range(n):
        for j in range(i):
            if _norm(m[i, j]) != 0:
                return _general_inverse(m)
    # upper triangular: back substitution keeps entries polynomial in L^-1
    inv = sp.zeros(n, n)
    for i in range(n):
        if _norm(m[i, i]) == 0:
            raise NotInvertible("zero diagonal entry")
    for j in range(n):
        for i in range(j, -1, -1):
            s = sp.Integer(1 if i == j else 0) - sum((m[i, k] * inv[k, j] for k in range(i + 1, j + 1)), sp.Integer(0))
            inv[i, j] = _norm(s / m[i, i])
    return inv


def _general_inverse(m: sp.Matrix) -> sp.Matrix:
    d = _norm(m.det())
    if d == 0:
        raise NotInvertible("singular period matrix")
    return m.inv().applyfunc(_norm)


def single_valued(m: PeriodMatrix) -> PeriodMatrix:
    """``(F_inf C)^-1 C``."""
    fc = frobenius_apply(m).entries
    sv = (_inverse(fc) * m.entries).applyfunc(_norm)
    return PeriodMatrix(sv, m.ring, m.weights, m.hodge, f"sv({m.name})" if m.name else "")


def single_valued_twisted(m: PeriodMatrix) -> PeriodMatrix:
    """Same with ``F_inf`` twisted by ``(-1)^n`` in weight ``2n`` (row weights)."""
    if m.weights is None:
        raise MissingWeights("twisted single-valued map needs row weights")
    if len(m.weights) != m.size:
        raise SizeMismatch("one weight per row is required")
    sv = single_valued(m).entries
    d = sp.diag(*[(-1) ** (int(w) // 2) for w in m.weights])
    return PeriodMatrix((d * sv).applyfunc(_norm), m.ring, m.weights, m.hodge,
                        f"sv_tw({m.name})" if m.name else "")


def monodromy_apply(g, m: PeriodMatrix) -> PeriodMatrix:
    G = sp.Matrix(g)
    if G.shape != m.entries.shape:
        raise SizeMismatch(f"monodromy matrix {G.shape} does not match {m.entries.shape}")
    for x in G:
        if not x.is_rational:
            raise ValueError("monodromy matrices must be rational")
    return PeriodMatrix((G * m.entries).applyfunc(_norm), m.ring, m.weights, m.hodge, m.name)


RHO_GAMMA0 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
RHO_GAMMA1 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]


def invariants(m: PeriodMatrix) -> dict:
    if m.hodge is None:
        raise MissingHodge("Hodge numbers are required")
    r, s = sp.symbols("r s")
    h = sp.Integer(0)
    for p, q in m.hodge:
        h += r ** int(p) * s ** int(q)
    rank = int(h.subs({r: 1, s: 1}))
    d = _norm(m.entries.det())
    coeff, rest = sp.Mul(d).as_coeff_Mul()
    return {"hodge_poly": sp.expand(h), "rank": rank, "det": rest if coeff != 0 else sp.Integer(0),
            "det_rational_factor": coeff}


# ---------------------------------------------------------------- periods

def period_values(ring: SymRing, z=None, prec: int = 40, alpha_values: dict | None = None) -> dict:
    """Numeric periods of generators (``z`` is the dilog argument)."""
    from .numerics import context
    ctx = context(prec)
    vals = {"L": 2 * ctx.pi * ctx.j}
    for name in ring.gens:
        if name.startswith("log_"):
            parts = name[4:].split("_")
            a = Fraction(int(parts[0]), int(parts[1]) if len(parts) > 1 else 1)
            vals[name] = ctx.log(ctx.mpf(a.numerator) / a.denominator)
        elif name.startswith("zeta"):
            from .numerics import eval_mzv
            vals[name] = eval_mzv((int(name[4:]),), prec)
    if z is not None:
        zz = ctx.mpmathify(z)
        li1 = -ctx.log(1 - zz)
        li2 = ctx.polylog(2, zz)
        lg = ctx.log(zz)
        vals.update({"Li1": li1, "Li1bar": ctx.conj(li1), "Li2": li2, "Li2bar": ctx.conj(li2),
                     "log": lg, "logbar": ctx.conj(lg)})
    if alpha_values:
        vals.update(alpha_values)
    return vals


def per_entry(e, vals: dict, prec: int = 40):
    from .numerics import context
    ctx = context(prec)
    e = sp.sympify(e)
    missing = [f.name for f in e.free_symbols if f.name not in vals]
    if missing:
        raise UnknownGenerator(", ".join(sorted(missing)))
    f = sp.lambdify(sorted(e.free_symbols, key=lambda s: s.name), e, modules=[{"I": ctx.j}, ctx])
    args = [vals[s.name] for s in sorted(e.free_symbols, key=lambda s: s.name)]
    return ctx.mpmathify(f(*args))
