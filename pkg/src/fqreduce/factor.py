"""Reference factorization engine: DDF, EDF, full factorization, trial division."""
from __future__ import annotations

import itertools
from collections import namedtuple
from math import ceil, isqrt, log2

from .errors import BadInput, InternalError, NotMonic, NotSquarefree, TooLarge
from .field import Rng
from .poly import Factorization, ModCtx, Poly, check_squarefree, modcompose, poly_gcd, squarefree_decompose

TRIAL_LIMIT = 1 << 22

DDFResult = namedtuple("DDFResult", ["parts", "remainder"])


class _Counter:
    """Number of entries into the engine; read by the oracle bookkeeping."""

    def __init__(self):
        self.value = 0

    def bump(self):
        self.value += 1


engine_calls = _Counter()


def _split_off(cur: Poly, h: Poly, ctx: ModCtx):
    """gcd(h - x mod cur, cur) and the cofactor."""
    g = poly_gcd(ctx.reduce(h) - Poly.x(cur.field), cur)
    return g, cur // g


def ddf(f: Poly | ModCtx, up_to: int | None = None, strategy: str = "plain",
        check: bool = True) -> DDFResult:
    """Split squarefree f into products of same-degree irreducibles, degrees <= up_to.

    Powers x^{q^i} are computed modulo the original f and reduced into the
    shrinking cofactor only inside gcds.
    """
    engine_calls.bump()
    ctx = f if isinstance(f, ModCtx) else ModCtx(f)
    f = ctx.f
    if check:
        check_squarefree(f)
    t = f.deg if up_to is None else min(int(up_to), f.deg)
    if strategy == "plain":
        parts, rest = _ddf_plain(ctx, t)
    elif strategy == "bsgs":
        parts, rest = _ddf_bsgs(ctx, t)
    else:
        raise ValueError(f"unknown ddf strategy {strategy!r}")
    return DDFResult(parts, rest)


def _ddf_plain(ctx: ModCtx, t: int):
    field = ctx.field
    cur = ctx.f
    parts = []
    h = Poly.x(field)
    for d in range(1, t + 1):
        if cur.deg < 2 * d:
            break
        h = ctx.frobenius(h)
        g, rest = _split_off(cur, h, ctx)
        if g.deg > 0:
            if g.deg % d:
                raise NotSquarefree("factor degrees inconsistent with a squarefree input")
            parts.append((g, d))
            cur = rest
    if 0 < cur.deg <= t:
        # every factor left has degree > half of deg(cur), so cur is irreducible
        parts.append((cur, cur.deg))
        cur = Poly.one(field)
    return parts, cur


def _ddf_bsgs(ctx: ModCtx, t: int):
    field = ctx.field
    cur = ctx.f
    parts = []
    if t < 1:
        return parts, cur
    ell = isqrt(t - 1) + 1  # ceil(sqrt(t))
    baby = [Poly.x(field)]
    for _ in range(1, ell):
        baby.append(ctx.frobenius(baby[-1]))
    step = ctx.frobenius(baby[-1])  # x^{q^ell}
    start, giant = baby[0], step  # x^{q^{lo}}, x^{q^{lo+ell}}
    lo = 0  # every factor of degree <= lo has been removed
    while lo < t:
        if cur.deg < 2 * (lo + 1):
            break
        interval = Poly.one(field)
        for h in baby:
            interval = ctx.mulmod(interval, giant - h)
        g = poly_gcd(interval, cur)
        top = min(lo + ell, t)
        if g.deg > 0:
            pw = start
            for d in range(lo + 1, top + 1):
                pw = ctx.frobenius(pw)
                piece, g_rest = _split_off(g, pw, ctx)
                if piece.deg > 0:
                    if piece.deg % d:
                        raise NotSquarefree("factor degrees inconsistent with a squarefree input")
                    parts.append((piece, d))
                    cur = cur // piece
                    g = g_rest
                if g.deg == 0:
                    break
        lo = top
        start, giant = giant, modcompose(giant, step, ctx)
    if 0 < cur.deg <= t and cur.deg < 2 * (lo + 1):
        parts.append((cur, cur.deg))
        cur = Poly.one(field)
    return parts, cur


def _edf_witness(a: Poly, d: int, ctx: ModCtx) -> Poly:
    """Norm-power a^{(q^d-1)/2} - 1 for odd q, trace sum a^{2^i} for q = 2."""
    if ctx.p == 2:
        acc, cur = a, a
        for _ in range(d - 1):
            cur = ctx.frobenius(cur)
            acc = acc + cur
        return acc
    # (q^d - 1)/2 = (1 + q + ... + q^{d-1}) * (q - 1)/2
    norm, cur = a, a
    for _ in range(d - 1):
        cur = ctx.frobenius(cur)
        norm = ctx.mulmod(norm, cur)
    return ctx.powmod(norm, (ctx.p - 1) // 2) - 1


def edf(g: Poly, d: int, rng: Rng | None = None) -> list:
    """Irreducible factors of g, a product of distinct irreducibles of degree d."""
    engine_calls.bump()
    if d < 1 or g.deg % d:
        raise BadInput(f"degree {g.deg} is not a multiple of {d}")
    if g.deg == d:
        return [g.monic()]
    rng = rng or Rng(0)
    ctx = ModCtx(g.monic())
    field = g.field
    done, pending = [], [ctx.f]
    budget = 64 * max(1, ceil(log2(g.deg // d)))
    for _ in range(budget):
        a = Poly(field, rng.elements(field, g.deg))
        if a.deg < 1:
            continue
        w = _edf_witness(a, d, ctx)
        nxt = []
        for h in pending:
            s = poly_gcd(w % h, h) if not w.is_zero() else h
            if 0 < s.deg < h.deg:
                parts = (s, h // s)
            else:
                parts = (h,)
            for piece in parts:
                (done if piece.deg == d else nxt).append(piece)
        pending = nxt
        if not pending:
            return sorted(done)
    raise InternalError(f"equal-degree splitting did not finish in {budget} draws")


def factor_squarefree(f: Poly, rng: Rng | None = None, strategy: str = "bsgs") -> list:
    """Irreducible factors of a monic squarefree f."""
    rng = rng or Rng(0)
    if f.deg < 1:
        return []
    parts, _ = ddf(f, strategy=strategy, check=False)
    out = []
    for g, d in parts:
        out.extend(edf(g, d, rng))
    return out


def factor(f: Poly, rng: Rng | None = None) -> Factorization:
    """Complete factorization into monic irreducibles with multiplicities."""
    engine_calls.bump()
    if not f.is_monic():
        raise NotMonic(f"factor needs a monic input, got {f!r}")
    rng = rng or Rng(0)
    found = []
    for g, e in squarefree_decompose(f):
        found.extend((h, e) for h in factor_squarefree(g, rng))
    fac = Factorization(f.field, tuple(found))
    if fac.product() != f:
        raise InternalError("factor product check failed")
    return fac


def _monics(field, d):
    lead = [1]
    for tail in itertools.product(range(field.p), repeat=d):
        yield Poly(field, list(tail) + lead)


def trial_factor(f: Poly) -> Factorization:
    """Factorization by dividing out monic candidates in increasing degree."""
    engine_calls.bump()
    if not f.is_monic():
        raise NotMonic(f"trial_factor needs a monic input, got {f!r}")
    field, q = f.field, f.p
    top = -(-f.deg // 2)
    if sum(q**d for d in range(1, top + 1)) > TRIAL_LIMIT:
        raise TooLarge(f"more than {TRIAL_LIMIT} trial divisors for degree {f.deg}")
    cur = f
    found = []
    d = 1
    while 2 * d <= cur.deg:
        for h in _monics(field, d):
            e = 0
            while True:
                quo, r = divmod(cur, h)
                if not r.is_zero():
                    break
                cur, e = quo, e + 1
            if e:
                found.append((h, e))
        d += 1
    if cur.deg > 0:
        found.append((cur, 1))
    return Factorization(field, tuple(found))


def factor_degree_ref(f: Poly) -> int:
    """Smallest irreducible factor degree, by plain DDF stopping at the first hit."""
    engine_calls.bump()
    ctx = ModCtx(f)
    if f.deg == 1:
        return 1
    h = Poly.x(f.field)
    for d in range(1, f.deg + 1):
        if 2 * d > f.deg:
            return f.deg
        h = ctx.frobenius(h)
        if poly_gcd(h - Poly.x(f.field), f).deg > 0:
            return d
    return f.deg


def is_irreducible(f: Poly) -> bool:
    """A repeated factor has degree <= deg/2, so the smallest-degree test suffices."""
    if f.deg < 1:
        return False
    return factor_degree_ref(f.monic()) == f.deg
