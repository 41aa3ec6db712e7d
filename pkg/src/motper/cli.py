"""Command-line interface.

``motper GROUP VERB ...`` with groups ``relations``, ``mzv``, ``pm`` and
``symbol``; each group is also installed as its own command.  Exit codes:
0 success, 2 bad input (parse, admissibility, domain), 3 relation-table
problems (missing, checksum, dimension mismatch).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import DimensionMismatch, MissingRelationTable, MotperError, TableChecksumError

EXIT_OK, EXIT_INPUT, EXIT_TABLE = 0, 2, 3
_TABLE_ERRORS = (DimensionMismatch, MissingRelationTable, TableChecksumError)


class _Fail(Exception):
    """Raised by argparse so that usage errors map to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Fail(f"{self.prog}: {message}")


# ---------------------------------------------------------------- helpers

def _globals() -> argparse.ArgumentParser:
    g = _Parser(add_help=False)
    S = argparse.SUPPRESS
    g.add_argument("--json", action="store_true", default=S, help="machine-readable output")
    g.add_argument("--prec", type=int, default=S, help="decimal digits for numerics (default 30)")
    g.add_argument("--table", type=Path, default=S, help="relation table file or cache directory")
    g.add_argument("--weight-limit", type=int, default=S, help="refuse inputs above this weight")
    return g


_DEFAULTS = {"json": False, "prec": 30, "table": None, "weight_limit": None}


def _table(args, weight: int):
    from .errors import WeightTooLarge
    from .relations import MAX_WEIGHT, load_table, read_table

    if args.weight_limit is not None and weight > args.weight_limit:
        raise WeightTooLarge(f"weight {weight} exceeds --weight-limit {args.weight_limit}")
    if weight > MAX_WEIGHT:
        raise WeightTooLarge(f"weight {weight} exceeds the supported maximum {MAX_WEIGHT}")
    if args.table is not None and args.table.suffix == ".json":
        if not args.table.exists():
            raise MissingRelationTable(f"no table at {args.table}")
        t = read_table(args.table)
        if t.max_weight < weight:
            raise MissingRelationTable(f"table {args.table} stops at weight {t.max_weight}")
        return t
    return load_table(max(weight, 2), args.table)


def _expr(s: str):
    from .parse import parse_expr
    return parse_expr(s)


def _weight(x) -> int:
    ws = x.weights()
    return max(ws) if ws else 0


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- relations

def cmd_datamine(args):
    from .relations import datamine, save_table, table_path

    t0 = time.perf_counter()
    if args.weight_limit is not None and args.weight > args.weight_limit:
        from .errors import WeightTooLarge
        raise WeightTooLarge(f"weight {args.weight} exceeds --weight-limit {args.weight_limit}")
    t = datamine(args.weight)
    dt = time.perf_counter() - t0
    if args.out is not None:
        out = args.out
    elif args.table is not None and args.table.suffix == ".json":
        out = args.table
    else:
        out = table_path(args.weight, args.table)
    save_table(t, out)
    dims = {w: d for w, d in t.dims().items() if w >= 2}
    text = "\n".join(f"weight {w}: {d}" for w, d in dims.items()) + f"\nwrote {out} ({dt:.2f} s)"
    _emit(args, text, {"command": "relations datamine", "input": str(args.weight),
                       "result": {str(w): d for w, d in dims.items()}, "path": str(out)})


# ---------------------------------------------------------------- mzv

def cmd_reduce(args):
    from .motivic import fmt_reduced
    x = _expr(args.expr)
    out = fmt_reduced(x, _table(args, _weight(x)))
    _emit(args, out, {"command": "mzv reduce", "input": args.expr, "result": out})


def cmd_coaction(args):
    from .motivic import coaction
    x = _expr(args.expr)
    out = str(coaction(x))
    _emit(args, out, {"command": "mzv coaction", "input": args.expr, "result": out})


def cmd_decompose(args):
    from .falphabet import decompose
    x = _expr(args.expr)
    out = str(decompose(x, _table(args, _weight(x))))
    _emit(args, out, {"command": "mzv decompose", "input": args.expr, "result": out})


def cmd_ud(args):
    from .motivic import unipotency_degree
    x = _expr(args.expr)
    out = unipotency_degree(x, _table(args, _weight(x)))
    _emit(args, str(out), {"command": "mzv ud", "input": args.expr, "result": out})


def cmd_conjugates(args):
    from .motivic import fmt_reduced, galois_conjugates
    x = _expr(args.expr)
    t = _table(args, _weight(x))
    out = [fmt_reduced(c, t) for c in galois_conjugates(x, t)]
    _emit(args, "\n".join(out), {"command": "mzv conjugates", "input": args.expr, "result": out})


def cmd_eval(args):
    from .numerics import context, per_eval
    x = _expr(args.expr)
    at = None
    if args.at is not None:
        at = context(args.prec).mpmathify(args.at.replace("i", "j"))
    v = per_eval(x, args.prec, at)
    ctx = context(args.prec)
    v = ctx.chop(v, tol=ctx.mpf(10) ** (-(args.prec + 5)))
    bound = f"1e-{max(args.prec - 5, 1)}"
    s = ctx.nstr(v, args.prec)
    _emit(args, f"{s} +/- {bound}", {"command": "mzv eval", "input": args.expr, "result": s,
                                      "error_bound": bound, "prec": args.prec})


# ---------------------------------------------------------------- period matrices

def _matrix(args):
    from .periodmatrix import PeriodMatrix, builder
    if args.file is not None:
        with open(args.file) as fh:
            return PeriodMatrix.from_json(json.load(fh))
    if args.builder is None:
        raise _Fail("either --file or --builder is required")
    return builder(args.builder, args.alpha, args.n, args.depth)


def _matrix_out(args, name: str, m):
    _emit(args, str(m), {"command": f"pm {name}", "input": args.file and str(args.file) or args.builder,
                         "result": m.to_json()})


def cmd_sv(args):
    from .periodmatrix import single_valued
    _matrix_out(args, "sv", single_valued(_matrix(args)))


def cmd_sv_twisted(args):
    from .periodmatrix import single_valued_twisted
    _matrix_out(args, "sv-twisted", single_valued_twisted(_matrix(args)))


def cmd_monodromy(args):
    from .periodmatrix import RHO_GAMMA0, RHO_GAMMA1, monodromy_apply, single_valued
    m = _matrix(args)
    g = {"0": RHO_GAMMA0, "1": RHO_GAMMA1}[args.loop]
    moved = monodromy_apply(g, m)
    same = single_valued(moved) == single_valued(m)
    text = f"{moved}\nsv invariant: {'yes' if same else 'no'}"
    _emit(args, text, {"command": "pm monodromy", "input": args.loop, "result": moved.to_json(),
                       "sv_invariant": bool(same)})


def cmd_invariants(args):
    inv = __import__("motper.periodmatrix", fromlist=["invariants"]).invariants(_matrix(args))
    rows = {k: str(v).replace("**", "^") for k, v in inv.items()}
    _emit(args, "\n".join(f"{k}: {v}" for k, v in rows.items()),
          {"command": "pm invariants", "input": str(args.file or args.builder), "result": rows})


# ---------------------------------------------------------------- symbols

def _connection(args):
    from .symbols import connection_from_json
    with open(args.file) as fh:
        return connection_from_json(json.load(fh))


def _vector(s: str):
    """``2`` or ``{"2": "1", "1": "-f"}``."""
    s = s.strip()
    if s.lstrip("-").isdigit():
        return int(s)
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        from .errors import ParseError
        raise ParseError(f"bad vector {s!r}") from exc


def cmd_check(args):
    from .symbols import check_integrability
    r = check_integrability(_connection(args))
    text = "Pass" if r.ok else f"Fail at entry {r.witness}: {r.value}"
    _emit(args, text, {"command": "symbol check", "input": str(args.file), "result": "Pass" if r.ok else "Fail",
                       "witness": list(r.witness) if r.witness else None})


def cmd_smb(args):
    from .symbols import smb
    out = str(smb(_connection(args), _vector(args.row), _vector(args.col)))
    _emit(args, out, {"command": "symbol smb", "input": str(args.file), "result": out})


def cmd_cmb(args):
    from .symbols import cmb
    r = cmb(_connection(args), _vector(args.row), _vector(args.col), args.n)
    text = f"{r}\nkernel check: {'pass' if r.kernel_ok else 'fail (' + r.witness + ')'}"
    _emit(args, text, {"command": "symbol cmb", "input": str(args.file), "result": str(r),
                       "kernel_ok": r.kernel_ok})


def cmd_li(args):
    from .symbols import smb_li
    if args.n < 1:
        from .errors import ParseError
        raise ParseError("N must be positive")
    out = str(smb_li(args.n))
    _emit(args, out, {"command": "symbol li", "input": str(args.n), "result": out})


def cmd_at_point(args):
    from .symbols import fmt_at_point, smb_at_point
    s = args.expr
    if s.startswith("li") and s[2:].isdigit():
        s = f"Li{s[2:]}(x)"
    out = fmt_at_point(smb_at_point(_expr(s), args.base))
    _emit(args, out, {"command": "symbol at-point", "input": args.expr, "result": out})


# ---------------------------------------------------------------- parser

def _groups(sub, g):
    def leaf(p, name, fn, help_):
        q = p.add_parser(name, parents=[g], help=help_)
        q.set_defaults(fn=fn)
        return q

    rel = sub.add_parser("relations", help="double-shuffle relation tables").add_subparsers(dest="verb", required=True)
    q = leaf(rel, "datamine", cmd_datamine, "build and cache the table up to a weight")
    q.add_argument("--weight", type=int, required=True)
    q.add_argument("--out", type=Path)

    mzv = sub.add_parser("mzv", help="motivic multiple zeta values").add_subparsers(dest="verb", required=True)
    for name, fn, h in [("reduce", cmd_reduce, "reduce to the table basis"),
                        ("coaction", cmd_coaction, "motivic coaction"),
                        ("decompose", cmd_decompose, "f-alphabet decomposition"),
                        ("ud", cmd_ud, "unipotency degree"),
                        ("conjugates", cmd_conjugates, "Galois conjugates"),
                        ("eval", cmd_eval, "numerical period")]:
        q = leaf(mzv, name, fn, h)
        q.add_argument("expr")
        if name == "eval":
            q.add_argument("--at", help="value of x for families, e.g. 0.5 or 0.5+0.5i")

    pm = sub.add_parser("pm", help="period matrices").add_subparsers(dest="verb", required=True)
    for name, fn, h in [("sv", cmd_sv, "single-valued matrix"),
                        ("sv-twisted", cmd_sv_twisted, "de Rham twisted single-valued matrix"),
                        ("invariants", cmd_invariants, "Hodge polynomial, rank, determinant"),
                        ("monodromy", cmd_monodromy, "apply a local monodromy")]:
        q = leaf(pm, name, fn, h)
        q.add_argument("--file", type=Path)
        q.add_argument("--builder", choices=["lefschetz", "kummer", "zeta", "polylog_tower"])
        q.add_argument("--alpha", default="2")
        q.add_argument("--n", type=int, default=3)
        q.add_argument("--depth", type=int, default=2)
        if name == "monodromy":
            q.add_argument("--loop", choices=["0", "1"], default="0")

    sym = sub.add_parser("symbol", help="symbols of unipotent connections").add_subparsers(dest="verb", required=True)
    q = leaf(sym, "check", cmd_check, "integrability")
    q.add_argument("--file", type=Path, required=True)
    for name, fn in [("smb", cmd_smb), ("cmb", cmd_cmb)]:
        q = leaf(sym, name, fn, f"{name} of a matrix coefficient")
        q.add_argument("--file", type=Path, required=True)
        q.add_argument("--row", default="0", help="covector: index or JSON {index: function}")
        q.add_argument("--col", required=True, help="vector: index or JSON {index: function}")
        if name == "cmb":
            q.add_argument("--n", type=int, default=2)
    q = leaf(sym, "li", cmd_li, "symbol of Li_N")
    q.add_argument("n", type=int)
    q = leaf(sym, "at-point", cmd_at_point, "symbol based at a tangential point")
    q.add_argument("expr", help="li2, Li3(x), I(0; 1 0; x), ...")
    q.add_argument("--base", choices=["0", "1"], default="0")


def build_parser(group: str | None = None) -> argparse.ArgumentParser:
    g = _globals()
    p = _Parser(prog=group or "motper", parents=[g], description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="group", required=True)
    _groups(sub, g)
    return p


def parse_and_run(argv: list[str], group: str | None = None) -> int:
    argv = list(argv)
    if group is not None:
        argv = [group] + argv
    try:
        args = build_parser().parse_args(argv)
        for k, v in _DEFAULTS.items():
            if not hasattr(args, k):
                setattr(args, k, v)
        args.fn(args)
        return EXIT_OK
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except _TABLE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_TABLE
    except MotperError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> int:
    return parse_and_run(sys.argv[1:] if argv is None else argv)


def _alias(group):
    def run(argv=None) -> int:
        return parse_and_run(sys.argv[1:] if argv is None else argv, group)
    return run


relations_main = _alias("relations")
mzv_main = _alias("mzv")
pm_main = _alias("pm")
symbol_main = _alias("symbol")


if __name__ == "__main__":
    sys.exit(main())
