"""Relations among multiple zeta values and reduction to a chosen basis.

Relations come from the double shuffle:

* shuffle products of the iterated-integral words of two admissible
  compositions, compared with
* their stuffle (quasi-shuffle) products, and
* ``zeta(1) * zeta(b)`` computed both ways, where the divergent term
  ``zeta(b, 1)`` occurs once on each side and cancels.

The algebra basis at each weight is made of monomials in generators.  New
generators are picked greedily in the order ``zeta(2)``, ``zeta(odd)``,
compositions in ``{2, 3}``, then everything else (length, then lex).
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .errors import DimensionMismatch, MissingRelationTable, TableChecksumError, WeightTooLarge
from .kernel import LinComb, SparseMat, acc, rat_from_str, rat_to_str, rref, solve_in_span
from .motivic import MotivicExpr, fmt_basis, reduce_expr, word_zeta, zeta_word
from .words import _shuffle, _stuffle, comp_weight, compositions

GENSET_VERSION = 1
EXPECTED_DIMS = {0: 1, 1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 4, 9: 5}
MAX_WEIGHT = 9


def _comp_key(c):
    return (comp_weight(c), len(c), c)


def _mono_key(m):
    return (len(m), tuple(_comp_key(c) for c in m))


# ---------------------------------------------------------------- products

def shuffle_comps(a: tuple, b: tuple) -> dict:
    """zeta(a) * zeta(b) via the shuffle of iterated-integral words."""
    wa, sa = zeta_word(a) if a != (1,) else ((1,), -1)
    wb, sb = zeta_word(b) if b != (1,) else ((1,), -1)
    out: dict = {}
    for w, c in _shuffle(wa, wb):
        if w[-1] == 1:
            comp = _divergent_comp(w)
            acc(out, comp, Fraction(c))
            continue
        comp, s = word_zeta(w)
        acc(out, comp, Fraction(c * s * sa * sb))
    return out


def _divergent_comp(w: tuple) -> tuple:
    # a word ending in letter 1; its depth sign convention matches zeta_word
    parts = []
    for a in w:
        if a == 1:
            parts.append(1)
        else:
            parts[-1] += 1
    return tuple(parts)


def stuffle_comps(a: tuple, b: tuple) -> dict:
    return {c: Fraction(k) for c, k in _stuffle(a, b)}


def product_vector(mono: tuple) -> dict:
    """Expand a product of zeta values into a combination of compositions."""
    cur = {(): Fraction(1)}
    for comp in mono:
        nxt: dict = {}
        for c, v in cur.items():
            if not c:
                acc(nxt, comp, v)
                continue
            for d, e in shuffle_comps(c, comp).items():
                acc(nxt, d, v * e)
        cur = nxt
    return cur


# ---------------------------------------------------------------- relation rows

def relation_rows(n: int) -> list[dict]:
    """Relations of weight ``n`` as maps composition -> coefficient."""
    rows: list[dict] = []
    for k in range(2, n - 1):
        for a in compositions(k):
            for b in compositions(n - k):
                if (_comp_key(a), a) > (_comp_key(b), b):
                    continue
                row = dict(shuffle_comps(a, b))
                for c, v in stuffle_comps(a, b).items():
                    acc(row, c, -v)
                if row:
                    rows.append(row)
    for b in compositions(n - 1):
        row = dict(shuffle_comps((1,), b))
        for c, v in stuffle_comps((1,), b).items():
            acc(row, c, -v)
        # the divergent zeta(b, 1) cancels; anything else divergent is a bug
        assert all(c[-1] != 1 for c in row), row
        if row:
            rows.append(row)
    return rows


# ---------------------------------------------------------------- the table

class RelationTable:
    """Basis monomials and reductions for every admissible composition."""

    def __init__(self, max_weight: int, basis: dict, reductions: dict, relations: dict,
                 generators: dict, provenance: dict):
        self.max_weight = max_weight
        self.basis = basis            # weight -> [monomial]
        self.reductions = reductions  # comp -> {monomial: Fraction}
        self.relations = relations    # weight -> [ {comp: Fraction} ]
        self.generators = generators  # weight -> [comp]
        self.provenance = provenance

    def dims(self) -> dict:
        return {w: len(self.basis[w]) for w in sorted(self.basis)}

    def reduce_comp(self, c: tuple) -> dict:
        c = tuple(c)
        w = comp_weight(c)
        if w > self.max_weight:
            raise WeightTooLarge(f"weight {w} exceeds table weight {self.max_weight}")
        r = self.reductions.get(c)
        if r is None:
            raise MissingRelationTable(f"no reduction for zeta{c}")
        return r

    def reduce(self, x: MotivicExpr) -> LinComb:
        return reduce_to_basis(x, self)

    # --- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        body = {
            "format": "motper-relation-table",
            "version": GENSET_VERSION,
            "max_weight": self.max_weight,
            "weights": {
                str(w): {
                    "basis": [_mono_str(m) for m in self.basis[w]],
                    "generators": [_comp_str(c) for c in self.generators.get(w, [])],
                    "relations": [[[_comp_str(c), rat_to_str(v)] for c, v in sorted(r.items(), key=lambda kv: _comp_key(kv[0]))]
                                  for r in self.relations.get(w, [])],
                    "reductions": {
                        _comp_str(c): [[_mono_str(m), rat_to_str(v)] for m, v in sorted(self.reductions[c].items(), key=lambda kv: _mono_key(kv[0]))]
                        for c in compositions(w) if c in self.reductions
                    },
                }
                for w in range(2, self.max_weight + 1)
            },
            "provenance": self.provenance,
        }
        body["checksum"] = _checksum(body)
        return body

    @classmethod
    def from_json(cls, data: dict) -> "RelationTable":
        stored = data.get("checksum")
        body = {k: v for k, v in data.items() if k != "checksum"}
        if stored != _checksum(body):
            raise TableChecksumError("relation table checksum mismatch")
        if data.get("version") != GENSET_VERSION:
            raise TableChecksumError("relation table was produced by another generator set")
        N = int(data["max_weight"])
        basis, reductions, relations, generators = {0: [()], 1: []}, {}, {}, {}
        for ws, d in data["weights"].items():
            w = int(ws)
            basis[w] = [_mono_parse(s) for s in d["basis"]]
            generators[w] = [_comp_parse(s) for s in d["generators"]]
            relations[w] = [{_comp_parse(c): rat_from_str(v) for c, v in r} for r in d["relations"]]
            for cs, row in d["reductions"].items():
                reductions[_comp_parse(cs)] = {_mono_parse(m): rat_from_str(v) for m, v in row}
        return cls(N, basis, reductions, relations, generators, data.get("provenance", {}))


def _checksum(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _comp_str(c: tuple) -> str:
    return ",".join(map(str, c))


def _comp_parse(s: str) -> tuple:
    return tuple(int(p) for p in s.split(",")) if s else ()


def _mono_str(m: tuple) -> str:
    return ";".join(_comp_str(c) for c in m) if m else "1"


def _mono_parse(s: str) -> tuple:
    return () if s == "1" else tuple(_comp_parse(p) for p in s.split(";"))


# ---------------------------------------------------------------- datamine

def _candidate_order(n: int) -> list[tuple]:
    comps = compositions(n)
    def pref(c):
        if c == (2,) or (len(c) == 1 and n % 2 == 1):
            return (0, _comp_key(c))
        if all(p in (2, 3) for p in c):
            return (1, _comp_key(c))
        return (2, _comp_key(c))
    return sorted(comps, key=pref)


def _monomials(gens: dict, n: int) -> list[tuple]:
    """All multisets of generators with total weight ``n`` (sorted canonically)."""
    flat = sorted(((w, c) for w, cs in gens.items() for c in cs), key=lambda wc: _comp_key(wc[1]))
    out: list[tuple] = []

    def rec(i, rest, acc_):
        if rest == 0:
            out.append(tuple(acc_))
            return
        for j in range(i, len(flat)):
            w, c = flat[j]
            if w <= rest:
                rec(j, rest - w, acc_ + [c])

    rec(0, n, [])
    return sorted(out, key=_mono_key)


class _Quotient:
    """Vectors over the compositions of one weight modulo relation rows."""

    def __init__(self, n: int, rows: list[dict]):
        self.cols = compositions(n)
        self.index = {c: i for i, c in enumerate(self.cols)}
        m = SparseMat([{self.index[c]: v for c, v in r.items()} for r in rows], len(self.cols))
        red, piv, rank = rref(m)
        self.pivrows = list(zip(piv, red.rows))
        self.rank = rank
        self.pivots = piv
        self.dim = len(self.cols) - rank

    def nf(self, vec: dict) -> LinComb:
        d = {self.index[c]: v for c, v in vec.items() if v}
        for p, row in self.pivrows:
            f = d.get(p)
            if f:
                for j, v in row._t.items():
                    acc(d, j, -f * v)
        return LinComb.raw(d)


def datamine(max_weight: int, check_dims: bool = True) -> RelationTable:
    if max_weight > MAX_WEIGHT:
        raise WeightTooLarge(f"tables are supported up to weight {MAX_WEIGHT}")
    if max_weight < 2:
        raise WeightTooLarge("max_weight must be >= 2")
    basis: dict = {0: [()], 1: []}
    gens: dict = {}
    reductions: dict = {}
    relations: dict = {}
    prov: dict = {"generator_set": "double shuffle + regularised zeta(1) rows", "weights": {}}
    for n in range(2, max_weight + 1):
        rows = relation_rows(n)
        q = _Quotient(n, rows)
        relations[n] = rows
        if check_dims and q.dim != EXPECTED_DIMS[n]:
            raise DimensionMismatch(f"weight {n}: quotient dimension {q.dim}, expected {EXPECTED_DIMS[n]}")
        chosen: list[tuple] = []
        vecs: list[LinComb] = []
        for m in _monomials(gens, n):
            if len(m) < 2:
                continue
            v = q.nf(product_vector(m))
            if v and _independent(v, vecs):
                chosen.append(m)
                vecs.append(v)
            else:
                raise DimensionMismatch(f"weight {n}: products of generators are dependent ({_mono_str(m)})")
        new: list[tuple] = []
        fallback = []
        for c in _candidate_order(n):
            if len(vecs) >= q.dim:
                break
            v = q.nf({c: Fraction(1)})
            if v and _independent(v, vecs):
                new.append(c)
                chosen.append((c,))
                vecs.append(v)
                if not (c == (2,) or len(c) == 1 or all(p in (2, 3) for p in c)):
                    fallback.append(_comp_str(c))
        if len(vecs) != q.dim:
            raise DimensionMismatch(f"weight {n}: could only find {len(vecs)} basis elements of {q.dim}")
        gens[n] = new
        basis[n] = sorted(chosen, key=_mono_key)
        for c in q.cols:
            coords = solve_in_span(q.nf({c: Fraction(1)}), vecs)
            reductions[c] = {chosen[i]: v for i, v in enumerate(coords) if v}
        prov["weights"][str(n)] = {"columns": len(q.cols), "relations": len(rows), "rank": q.rank,
                                   "dim": q.dim, "pivots": [_comp_str(q.cols[p]) for p in q.pivots],
                                   "new_generators": [_comp_str(c) for c in new], "fallback": fallback}
    return RelationTable(max_weight, basis, reductions, relations, gens, prov)


def _independent(v: LinComb, vecs: list[LinComb]) -> bool:
    from .kernel import NotInSpan
    return isinstance(solve_in_span(v, vecs), NotInSpan)


# ---------------------------------------------------------------- reduction

def reduce_to_basis(x: MotivicExpr, t: RelationTable) -> LinComb:
    """Coordinates of ``x`` on basis monomials (odd L powers and logs kept as factors)."""
    ws = x.weights()
    if ws and max(ws) > t.max_weight:
        raise WeightTooLarge(f"weight {max(ws)} exceeds table weight {t.max_weight}")
    return LinComb.raw(reduce_expr(x, t))


def reduce_comp_expr(c: tuple, t: RelationTable) -> LinComb:
    return LinComb(t.reduce_comp(c))


def fmt_reduction(d) -> str:
    from .motivic import fmt_slots
    return fmt_slots(d)


def basis_strings(t: RelationTable, w: int) -> list[str]:
    return [fmt_basis(m) for m in t.basis[w]]


# ---------------------------------------------------------------- numeric check

def relation_residuals(t: RelationTable, prec: int = 40) -> list[tuple[int, int, float]]:
    """(weight, row index, |residual|) for every stored relation."""
    from .numerics import context, eval_mzv
    ctx = context(prec)
    cache: dict = {}
    out = []
    for w in sorted(t.relations):
        for i, row in enumerate(t.relations[w]):
            s = ctx.mpf(0)
            for c, v in row.items():
                if c not in cache:
                    cache[c] = eval_mzv(c, prec)
                s += ctx.mpf(v.numerator) / v.denominator * cache[c]
            out.append((w, i, float(abs(s))))
    return out


# ---------------------------------------------------------------- cache

def table_dir() -> Path:
    d = os.environ.get("PERIODS_TABLE_DIR")
    if d:
        return Path(d)
    return Path.cwd() / ".motper-tables"


def table_path(max_weight: int, directory: Path | None = None) -> Path:
    return (directory or table_dir()) / f"mzv-relations-w{max_weight}-v{GENSET_VERSION}.json"


def save_table(t: RelationTable, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = json.dumps(t.to_json(), sort_keys=True, indent=1)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def read_table(path: Path) -> RelationTable:
    with open(path) as fh:
        return RelationTable.from_json(json.load(fh))


_MEMO: dict = {}


def load_table(max_weight: int = 8, directory: Path | None = None, build: bool = True) -> RelationTable:
    """Cached table covering at least ``max_weight``; datamines on a miss."""
    if max_weight > MAX_WEIGHT:
        raise WeightTooLarge(f"tables are supported up to weight {MAX_WEIGHT}")
    max_weight = max(max_weight, 2)
    for w, tab in _MEMO.items():
        if w >= max_weight:
            return tab
    d = directory or table_dir()
    for w in range(max_weight, MAX_WEIGHT + 1):
        p = table_path(w, d)
        if p.exists():
            tab = read_table(p)
            _MEMO[w] = tab
            return tab
    if not build:
        raise MissingRelationTable(f"no cached table of weight >= {max_weight} in {d}")
    tab = datamine(max_weight)
    try:
        save_table(tab, table_path(max_weight, d))
    except OSError:
        pass
    _MEMO[max_weight] = tab
    return tab
