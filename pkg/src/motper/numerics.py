"""High-precision numerical oracle.

Every evaluation takes an explicit precision in decimal digits and works in
a private :class:`mpmath.ctx_mp.MPContext`; nothing touches ``mpmath.mp``.
Results carry ``prec`` digits of which ``prec - 5`` are guaranteed.

Iterated integrals ``I(0; a1 ... an; y)`` are summed as power series in the
integration variable (``a1`` innermost).  Constants use Hoelder convolution
at ``1/2``; families use path splitting so each segment converges at least
like ``2^-k``.
"""
from __future__ import annotations

from mpmath.ctx_mp import MPContext

from .errors import Divergent, OutOfDomain, Unevaluable, UnsupportedLetter
from .motivic import MotivicExpr, _reg01, zeta_word
from .words import is_admissible

GUARD = 15


def context(prec: int) -> MPContext:
    if prec < 1 or prec > 1000:
        raise ValueError("prec must be in 1..1000")
    ctx = MPContext()
    ctx.dps = prec + GUARD
    return ctx


def _series_prefixes(ctx, letters, y):
    """Values of I(0; letters[:k]; y) for k = 1..n.

    ``letters[0]`` must be nonzero and ``|y| < |a|`` for every nonzero letter.
    Coefficients are carried in the scaled variable ``t = y s`` so all
    quantities stay of unit size.
    """
    n = len(letters)
    if not n:
        return []
    if letters[0] == 0:
        raise ValueError("leading zero needs regularisation")
    ratio = max(abs(y / a) for a in letters if a != 0)
    if ratio >= 1:
        raise OutOfDomain("series outside its disc of convergence")
    eps = ctx.mpf(2) ** (-(ctx.prec + 20))
    # enough terms for ratio^M * M^n < eps
    M = 16
    lr = float(ctx.log(ratio)) if ratio > 0 else -50.0
    while M * lr + n * float(ctx.log(M)) > float(ctx.log(eps)):
        M += 16
    # c[k][m]: coefficient of s^m in F_k(y s); F_0 = 1
    cur = [ctx.mpf(1)] + [ctx.mpf(0)] * M
    out = []
    for a in letters:
        nxt = [ctx.mpf(0)] * (M + 1)
        if a == 0:
            for m in range(1, M + 1):
                nxt[m] = cur[m] / m
        else:
            q = y / a
            # F/(t - a) dt in s: -(y/a) sum_j (q s)^j F(ys) ds
            d = ctx.mpf(0)
            for m in range(M):
                d = d * q + cur[m]
                nxt[m + 1] = -q * d / (m + 1)
        cur = nxt
        out.append(ctx.fsum(cur))
    return out


def _reg_series(ctx, w: tuple, y, cache: dict):
    """I(0; w; y) with tangential base point at 0 (regulator log y)."""
    key = w
    if key in cache:
        return cache[key]
    if not w:
        v = ctx.mpf(1)
    elif w[0] != 0:
        v = _series_prefixes(ctx, w, y)[-1]
    else:
        k = 0
        while k < len(w) and w[k] == 0:
            k += 1
        u = w[k:]
        head = (0,) * (k - 1)
        v = ctx.log(y) * _reg_series(ctx, head + u, y, cache)
        for j in range(1, len(u) + 1):
            v -= _reg_series(ctx, head + u[:j] + (0,) + u[j:], y, cache)
        v /= k
    cache[key] = v
    return v


def _normal_ii(ctx, w: tuple):
    """Convergent I(0; w; 1) for a normal-form word via Hoelder convolution at 1/2."""
    if not w:
        return ctx.mpf(1)
    half = ctx.mpf(1) / 2
    left = [ctx.mpf(1)] + _series_prefixes(ctx, w, half)
    out = ctx.mpf(0)
    n = len(w)
    for k in range(n + 1):
        v = w[k:]
        if not v:
            right = ctx.mpf(1)
        else:
            # I(1/2; v; 1) = (-1)^|v| I(0; rev(1 - v); 1/2)
            r = tuple(1 - a for a in reversed(v))
            right = (-1) ** len(v) * _series_prefixes(ctx, r, half)[-1]
        out += left[k] * right
    return out


def _check_word(w) -> tuple:
    w = tuple(w)
    for a in w:
        if a not in (0, 1, -1):
            raise UnsupportedLetter(f"letter {a!r} not in {{0, 1, -1}}")
    return w


def eval_ii(w, prec: int = 40):
    """Regularised I(0; w; 1) (tangential base points, regulators 0)."""
    w = _check_word(w)
    ctx = context(prec)
    out = ctx.mpf(0)
    for v, c in _reg01(w):
        out += ctx.mpf(c.numerator) / c.denominator * _normal_ii(ctx, v)
    return +out


def eval_mzv(c, prec: int = 40):
    c = tuple(int(p) for p in c)
    if not is_admissible(c):
        raise Divergent(f"zeta{c} diverges")
    w, s = zeta_word(c)
    ctx = context(prec)
    return s * _normal_ii(ctx, w)


def _family(ctx, w: tuple, x):
    """I(0; w; x) along the straight path, tangential at 0."""
    if not w:
        return ctx.mpf(1)
    if x == 0:
        raise OutOfDomain("x = 0 is the base point")
    sing = sorted({a for a in w if a != 0})
    for a in sing:
        if ctx.im(x) == 0 and ((a > 0 and ctx.re(x) >= a) or (a < 0 and ctx.re(x) <= a)):
            raise OutOfDomain(f"x = {x} lies on the branch cut from {a}")
    # first segment from 0 to q, then march along the ray
    r = abs(x)
    q = x if r <= ctx.mpf(1) / 2 else x * (ctx.mpf(1) / 2) / r
    n = len(w)
    cache: dict = {}
    vals = [ctx.mpf(1)] + [_reg_series(ctx, w[:k], q, cache) for k in range(1, n + 1)]
    p = q
    steps = 0
    while p != x:
        dist = min([abs(p)] + [abs(p - a) for a in sing])
        h = dist / 2
        rem = abs(x - p)
        qn = x if rem <= h else p + (x - p) * h / rem
        # segment prefixes: seg[j][k] = I(p; w[j:k]; qn)
        seg = {}
        for j in range(n):
            letters = tuple((a - p) / (qn - p) for a in w[j:])
            seg[j] = _series_prefixes(ctx, letters, ctx.mpf(1))
        new = [ctx.mpf(1)]
        for k in range(1, n + 1):
            s = vals[k]
            for j in range(k):
                s += vals[j] * seg[j][k - j - 1]
            new.append(s)
        vals = new
        p = qn
        steps += 1
        if steps > 10000:
            raise OutOfDomain("path too close to a singularity")
    return vals[n]


def eval_li(w, x, prec: int = 40):
    """Li_w(x) = (-1)^{#nonzero letters} I(0; w; x), letters read innermost first."""
    w = _check_word(w)
    ctx = context(prec)
    x = ctx.mpmathify(x)
    if not w:
        return ctx.mpf(1)
    if x == 0:
        if w[0] == 0:
            raise OutOfDomain("log(0) is singular")
        return ctx.mpf(0)
    if abs(x) > 1 + ctx.mpf(10) ** (-prec):
        raise OutOfDomain("|x| must be <= 1")
    sign = (-1) ** sum(1 for a in w if a != 0)
    if x == 1:
        if w[-1] == 1:
            raise OutOfDomain("word diverges at x = 1")
        return sign * eval_ii(w, prec)
    if x == -1 and w[-1] == -1:
        raise OutOfDomain("word diverges at x = -1")
    return sign * _family(ctx, w, x)


def eval_family(w, x, prec: int = 40):
    """I(0; w; x) without the Li sign."""
    w = _check_word(w)
    sign = (-1) ** sum(1 for a in w if a != 0)
    return sign * eval_li(w, x, prec)


def bloch_wigner(z, prec: int = 40):
    ctx = context(prec)
    z = ctx.mpmathify(z)
    if z == 0 or z == 1:
        raise OutOfDomain("D is evaluated away from 0 and 1")
    return +(ctx.im(ctx.polylog(2, z)) + ctx.arg(1 - z) * ctx.log(abs(z)))


def nested_sum(c, terms: int = 10**6, prec: int = 30, samples=None):
    """Direct truncated sum over k1 < ... < kr (slow cross-check oracle).

    With ``samples`` the partial sums at those truncation points are returned
    as well (for tail extrapolation).
    """
    c = tuple(int(p) for p in c)
    ctx = context(prec)
    r = len(c)
    want = set(samples or ())
    seen = {}
    # partial[j] = sum over chains below k of the first j parts
    partial = [ctx.mpf(1)] + [ctx.mpf(0)] * r
    for k in range(1, terms + 1):
        for j in range(r, 0, -1):
            p = c[j - 1]
            term = partial[j - 1] / ctx.mpf(k) ** abs(p)
            if p < 0 and k % 2:
                term = -term
            partial[j] += term
        if k in want:
            seen[k] = partial[r]
    return (partial[r], seen) if samples else partial[r]


def nested_sum_extrapolated(c, terms: int = 20000, prec: int = 30, order: int = 4):
    """Truncated nested sum with its tail removed by a least-squares fit.

    The truncation error of a depth-r sum expands in ``log(N)^l / N^j`` with
    ``l < r``; fitting those terms over ``N in [terms/2, terms]`` recovers the
    limit far beyond the raw ``1/N`` accuracy.
    """
    c = tuple(int(p) for p in c)
    if not is_admissible(c):
        raise Divergent(f"zeta{c} diverges")
    r = len(c)
    work = prec * 2 + 20
    ctx = context(work)
    nb = 1 + order * r
    npts = 2 * nb
    pts = sorted({terms // 2 + (terms - terms // 2) * i // (npts - 1) for i in range(npts)})
    _, seen = nested_sum(c, terms, work, pts)
    if any(p < 0 for p in c):
        # alternating tails oscillate; pair even and odd truncation points
        pts = [n for n in pts if n % 2 == 0]
    rows, rhs = [], []
    for n in pts:
        ln = ctx.log(n)
        row = [ctx.mpf(1)]
        for j in range(1, order + 1):
            for l in range(r):
                row.append(ln ** l / ctx.mpf(n) ** j)
        rows.append(row)
        rhs.append(seen[n])
    A = ctx.matrix(rows)
    b = ctx.matrix(rhs)
    x = ctx.lu_solve(A.T * A, A.T * b)
    return +x[0]


def per_eval(x: MotivicExpr, prec: int = 40, at=None):
    """Period of ``x``; ``at`` gives a numeric value for the family variable."""
    ctx = context(prec)
    L = 2 * ctx.pi * ctx.j
    out = ctx.mpc(0)
    wcache: dict = {}
    for m, c in x.terms._t.items():
        v = ctx.mpf(c.numerator) / c.denominator
        if m.lef:
            v *= L ** m.lef
        for p in m.primes:
            v *= ctx.log(p)
        if m.word:
            if m.word not in wcache:
                wcache[m.word] = eval_ii(m.word, prec + 5)
            v *= wcache[m.word]
        if m.fword:
            if at is None:
                raise Unevaluable("family period needs a value for x")
            v *= eval_family(m.fword, at, prec + 5)
        out += v
    return out


def agree_digits(a, b, prec: int = 40) -> float:
    ctx = context(prec)
    d = abs(ctx.mpmathify(a) - ctx.mpmathify(b))
    if d == 0:
        return float(prec + GUARD)
    return float(-ctx.log10(d))


__all__ = ["eval_mzv", "eval_ii", "eval_li", "eval_family", "bloch_wigner", "per_eval", "nested_sum",
           "nested_sum_extrapolated",
           "context", "agree_digits"]
