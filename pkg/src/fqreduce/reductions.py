"""Factoring from degree oracles and from the Frobenius minimal polynomial.

Every randomized step is followed by a deterministic check; failed checks
retry with fresh randomness and, as a last resort, fall back to the
reference engine with the event recorded in the run statistics.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import ceil, floor, log, log2

from ._ntheory import divisors, ilog, is_prime, totient
from .carlitz import carlitz_charpoly, smallest_degree_via_carlitz
from .determinants import largest_degree_binary_search, moore_zero_test, vandermonde_det
from .errors import (
    BadInput, InternalError, LoopBudgetExceeded, NotMonic, OracleInconsistent, OracleLied,
    StuckError, ValidationFailed,
)
from .factor import ddf, edf, engine_calls, factor, factor_degree_ref
from .field import Rng
from .frobenius import FrobTable, frob_minpoly
from .poly import (
    Factorization, ModCtx, Poly, check_squarefree, lcm, minpoly_mod, poly_gcd,
    squarefree_decompose,
)

FINDT_RETRIES = 3
CYCLO_CONSTANT = 8


def small_degree_bound(n: int) -> int:
    """ceil(n^{2/3}), computed exactly."""
    t = max(1, round(n ** (2 / 3)))
    while t**3 < n * n:
        t += 1
    while t > 1 and (t - 1) ** 3 >= n * n:
        t -= 1
    return t


# -- oracles -----------------------------------------------------------------


class Oracle:
    """Callable wrapper counting invocations and engine entries made inside."""

    def __init__(self, name: str, kind: str, fn):
        self.name, self.kind, self.fn = name, kind, fn
        self.calls = 0
        self.engine_calls = 0

    def __call__(self, *args, **kwargs):
        self.calls += 1
        before = engine_calls.value
        try:
            return self.fn(*args, **kwargs)
        finally:
            self.engine_calls += engine_calls.value - before

    def __repr__(self):
        return f"Oracle({self.name}, {self.kind}, calls={self.calls})"


@dataclass
class OracleSet:
    factor_degree: Oracle
    frob_minpoly: Oracle
    carlitz_charpoly: Oracle
    moore_zero: Oracle

    @classmethod
    def reference(cls, rng: Rng | None = None) -> "OracleSet":
        rng = rng or Rng(0)
        return cls(
            Oracle("factor_degree", "reference", factor_degree_ref),
            Oracle("frob_minpoly", "reference",
                   lambda f: frob_minpoly(ModCtx(f), rng.child(), mode="reference")),
            Oracle("carlitz_charpoly", "reference",
                   lambda f: carlitz_charpoly(f, "from_factors", factor(f, rng.child()))),
            Oracle("moore_zero", "reference",
                   lambda f, m: max(factor(f, rng.child()).degrees()) <= m),
        )

    @classmethod
    def independent(cls, rng: Rng | None = None) -> "OracleSet":
        rng = rng or Rng(0)
        return cls(
            Oracle("factor_degree", "independent",
                   lambda f: factor_degree_via_determinant(f, "moore")),
            Oracle("frob_minpoly", "independent",
                   lambda f: frob_minpoly(ModCtx(f), rng.child(), mode="independent")),
            Oracle("carlitz_charpoly", "independent", lambda f: carlitz_charpoly(f, "direct")),
            Oracle("moore_zero", "independent", lambda f, m: moore_zero_test(ModCtx(f), m)),
        )

    def __iter__(self):
        return iter((self.factor_degree, self.frob_minpoly, self.carlitz_charpoly, self.moore_zero))


def _require(f: Poly):
    if not f.is_monic():
        raise NotMonic(f"expected a monic polynomial, got {f!r}")
    check_squarefree(f)


# -- factoring from a factor-degree oracle -----------------------------------


def reduce_factor_via_factordegree(f: Poly, oracle, t: int | None = None, rng: Rng | None = None,
                                   stats: dict | None = None) -> Factorization:
    """Strip factors of degree <= t through prod (x^{q^i} - x), then peel one
    oracle-announced degree at a time."""
    _require(f)
    rng = rng or Rng(0)
    field, n = f.field, f.deg
    t = small_degree_bound(n) if t is None else max(1, int(t))
    ctx = ModCtx(f)
    frob = FrobTable(ctx).extend(range(1, min(t, n) + 1), "iterate")
    x = ctx.reduce(Poly.x(field))
    s = ctx.reduce(Poly.one(field))
    for i in range(1, min(t, n) + 1):
        s = ctx.mulmod(s, frob[i] - x)
    g = f if s.is_zero() else poly_gcd(s, f)
    found = []
    if g.deg > 0:
        for part, d in ddf(g, up_to=t, check=False).parts:
            found.extend(edf(part, d, rng))
    cur = f // g
    rounds = 0
    while cur.deg > 0:
        rounds += 1
        if rounds * t > n:
            raise LoopBudgetExceeded(f"more than n/t = {n}/{t} oracle rounds")
        d = int(oracle(cur))
        if d < 1 or d > cur.deg:
            raise OracleLied(f"claimed degree {d} for a polynomial of degree {cur.deg}")
        cctx = ModCtx(cur)
        proper = [e for e in divisors(d) if e < d and e > t]
        table = FrobTable(cctx).extend([d, *proper])
        xc = cctx.reduce(Poly.x(field))
        part = poly_gcd(table[d] - xc, cur)
        for e in proper:
            if part.deg == 0:
                break
            part = part // poly_gcd(cctx.reduce(table[e]) % part - xc % part, part)
        if part.deg == 0 or part.deg % d:
            raise OracleLied(f"no irreducible factor of degree {d}")
        found.extend(edf(part, d, rng))
        cur = cur // part
    if stats is not None:
        stats["rounds"] = rounds
        stats["t"] = t
    fac = Factorization(field, tuple((h, 1) for h in found))
    if fac.product() != f:
        raise InternalError("factor-degree reduction product check failed")
    return fac


# -- cyclotomic machinery ------------------------------------------------------


class CycloFactorSet:
    """Irreducible factors of one cyclotomic polynomial, in insertion order."""

    def __init__(self, items=()):
        self._order = []
        self._set = set()
        for h in items:
            self.add(h)

    def add(self, h: Poly) -> bool:
        if h in self._set:
            return False
        self._set.add(h)
        self._order.append(h)
        return True

    def __contains__(self, h):
        return h in self._set

    def __iter__(self):
        return iter(list(self._order))

    def __len__(self):
        return len(self._order)

    def product(self) -> Poly:
        out = Poly.one(self._order[0].field)
        for h in self._order:
            out = out * h
        return out

    def __repr__(self):
        return f"CycloFactorSet({self._order!r})"


def _as_set(L) -> CycloFactorSet:
    return L if isinstance(L, CycloFactorSet) else CycloFactorSet(L)


def find_order(ell: int, L, rng: Rng | None = None, n: int | None = None) -> int:
    """Order of the coset of ell in G/H for the subgroup H that L describes; 0
    when ell is not a unit mod k."""
    L = _as_set(L)
    rng = rng or Rng(ell)
    f0 = min(L, key=Poly.sort_key)
    ctx = ModCtx(f0)
    r = ctx.reduce(Poly.x(f0.field))
    seen = {f0}
    cap = (n or 4096) + (n or 4096).bit_length() + 64
    for e in range(1, cap + 1):
        r = ctx.powmod(r, ell)
        fe = minpoly_mod(r, ctx, rng)
        if fe in L:
            return e
        if fe in seen:
            return 0
        seen.add(fe)
    raise InternalError(f"find_order exceeded {cap} iterations")


def cyclotomic_rounds(n: int, c: int = CYCLO_CONSTANT) -> int:
    n = max(n, 1)
    return max(1, floor(c * log(n) * log(log(max(n, 3)))))


def find_cyclotomic(g0: Poly, n: int, rng: Rng, c: int = CYCLO_CONSTANT) -> CycloFactorSet:
    """All irreducible factors of the cyclotomic polynomial that g0 divides (whp)."""
    L = CycloFactorSet([g0])
    for _ in range(cyclotomic_rounds(n, c)):
        ell = rng.uniform(1, max(n, 1))
        e = find_order(ell, L, rng, n)
        if e <= 1:
            continue
        for h in L:
            ctx = ModCtx(h)
            r = ctx.reduce(Poly.x(h.field))
            for _i in range(1, e):
                r = ctx.powmod(r, ell)
                L.add(minpoly_mod(r, ctx, rng))
    return L


def find_k(d: int, g0: Poly, rng: Rng | None = None) -> int:
    """A divisor k0 of k (g0 | Phi_k), equal to k when d = phi(k)."""
    rng = rng or Rng(d)
    k0 = 1
    for delta in divisors(d):
        ell = delta + 1
        if not is_prime(ell):
            continue
        ctx = ModCtx(g0)
        r = ctx.reduce(Poly.x(g0.field))
        h = g0
        e = 0
        while find_order(ell, [h], rng) == 0:
            e += 1
            if e > 64:
                raise InternalError(f"valuation search for {ell} did not stop")
            r = ctx.powmod(r, ell)
            h = minpoly_mod(r, ctx, rng)
        k0 *= ell**e
    return k0


@dataclass
class DegreeCertificate:
    p: int
    multiplicities: dict = dc_field(default_factory=dict)

    @property
    def T(self) -> set:
        return set(self.multiplicities)

    @property
    def S(self) -> list:
        out = set()
        for k, mk in self.multiplicities.items():
            for e in range(ilog(mk, self.p) + 1):
                out.add(k * self.p**e)
        return sorted(out)

    def weight(self) -> int:
        return sum(mk * totient(k) for k, mk in self.multiplicities.items())


def find_T(factors, n: int, rng: Rng, stats: dict | None = None) -> DegreeCertificate:
    """Cyclotomic indices k (p not dividing k) and multiplicities of Phi_k in g,
    from the irreducible factors of g with multiplicities."""
    L0 = Counter()
    p = None
    for u, mu in factors:
        L0[u] += mu
        p = u.p
    cert = DegreeCertificate(p or 2)
    cap = max(1, sum(L0.values())) * 32
    rounds = 0
    while L0:
        rounds += 1
        if rounds > cap:
            raise StuckError(f"find_T made no progress in {cap} rounds")
        g0 = min(L0, key=Poly.sort_key)
        L = find_cyclotomic(g0, n, rng)
        h = L.product()
        k0 = find_k(h.deg, g0, rng)
        closes = (Poly.monomial(h.field, k0) - 1) % h
        if closes.is_zero() and h.deg == totient(k0) and all(u in L0 for u in L):
            cert.multiplicities[k0] = cert.multiplicities.get(k0, 0) + 1
            for u in L:
                L0[u] -= 1
                if not L0[u]:
                    del L0[u]
        elif stats is not None:
            stats["findT_misses"] = stats.get("findT_misses", 0) + 1
    return cert


# -- factoring from the Frobenius minimal polynomial --------------------------


def reduce_factor_via_frobminpoly(f: Poly, oracle, rng: Rng | None = None,
                                  stats: dict | None = None) -> Factorization:
    """Factor squarefree f with an exact Frobenius minimal-polynomial oracle."""
    _require(f)
    rng = rng or Rng(0)
    st = stats if stats is not None else {}
    st.setdefault("max_depth", 0)
    st.setdefault("fallback", False)
    st.setdefault("oracle_calls", 0)
    found = _factor_alg(f, oracle, rng, 0, st)
    fac = Factorization(f.field, tuple((h, 1) for h in found))
    if fac.product() != f:
        raise InternalError("Frobenius reduction product check failed")
    return fac


def _annihilates_x(g: Poly, table: FrobTable) -> bool:
    ctx = table.ctx
    acc = Poly.zero(ctx.field)
    for j, gj in enumerate(g.coeffs()):
        if gj:
            acc = acc + table[j] * gj
    return acc.is_zero()


def _factor_alg(f: Poly, oracle, rng: Rng, depth: int, st: dict) -> list:
    st["max_depth"] = max(st["max_depth"], depth)
    n = f.deg
    if n <= 0:
        return []
    if n == 1:
        return [f]
    t = small_degree_bound(n)
    out = []
    parts, rest = ddf(f, up_to=t, strategy="bsgs", check=False)
    for g, d in parts:
        out.extend(edf(g, d, rng))
    if rest.deg <= 0:
        return out
    if rest.deg < 2 * (t + 1):
        return out + [rest]

    g = oracle(rest)
    st["oracle_calls"] += 1
    ctx = ModCtx(rest)
    table = FrobTable(ctx).extend(range(g.deg + 1), "iterate")
    if not g.is_monic() or g.deg > rest.deg or not _annihilates_x(g, table):
        raise OracleInconsistent("oracle output does not annihilate the Frobenius map")

    gfac = []
    for h, e in squarefree_decompose(g):
        gfac.extend((u, e) for u in _factor_alg(h, oracle, rng, depth + 1, st))

    for _attempt in range(FINDT_RETRIES):
        try:
            cert = find_T(gfac, n, rng.child(), st)
        except StuckError:
            st["findT_retries"] = st.get("findT_retries", 0) + 1
            continue
        S = cert.S
        big = [s for s in S if s**3 > n * n]
        if len(big) * n ** (2 / 3) > sum(S) + 1e-9:
            raise InternalError("S budget inequality violated")
        got = _split_by_S(rest, big, table, rng)
        if got is not None:
            return out + got
        st["findT_retries"] = st.get("findT_retries", 0) + 1
    st["fallback"] = True
    return out + [h for h, _ in factor(rest, rng)]


def _split_by_S(f: Poly, big: list, table: FrobTable, rng: Rng):
    ctx = table.ctx
    x = Poly.x(f.field)
    cur = f
    found = []
    table.extend(big)
    for s in big:
        if cur.deg == 0:
            break
        fs = poly_gcd(table[s] % cur - x % cur, cur) if cur.deg > 1 else cur
        if fs.deg == 0:
            continue
        if fs.deg % s:
            return None
        found.extend(edf(fs, s, rng))
        cur = cur // fs
    return found if cur.deg == 0 else None


# -- factor degree from Carlitz and from determinants --------------------------


def validate_smallest_degree(f: Poly, d: int) -> bool:
    """Whether d is exactly the smallest irreducible factor degree of f."""
    if d < 1 or d > f.deg:
        return False
    ctx = ModCtx(f)
    x = ctx.reduce(Poly.x(f.field))
    h = x
    for e in range(1, d + 1):
        h = ctx.frobenius(h)
        g = poly_gcd(h - x, f) if not (h - x).is_zero() else f
        if g.deg > 0:
            return e == d
    return False


def factor_degree_via_carlitz(f: Poly, oracle=None, strict: bool = False):
    """(degree estimate, validated flag) from the Carlitz characteristic polynomial."""
    _require(f)
    chi = oracle(f) if oracle is not None else carlitz_charpoly(f, "direct")
    d = smallest_degree_via_carlitz(f, chi)
    ok = validate_smallest_degree(f, d)
    if strict and not ok:
        raise ValidationFailed(f"degree {d} is not the smallest factor degree")
    return d, ok


def factor_degree_via_determinant(f: Poly, which: str = "moore", stats: dict | None = None) -> int:
    """Largest irreducible factor degree by bisection on a determinant zero test."""
    _require(f)
    ctx = ModCtx(f)
    table = FrobTable(ctx)
    if which == "moore":
        def zero(m):
            return moore_zero_test(ctx, m, table)
    elif which == "vandermonde":
        def zero(m):
            return vandermonde_det(ctx, m, table).is_zero()
    else:
        raise BadInput(f"unknown determinant {which!r}")
    return largest_degree_binary_search(f.deg, zero, stats)


# -- easy directions -----------------------------------------------------------


def easy_directions(f: Poly, target: str, rng: Rng | None = None) -> Poly:
    _require(f)
    fac = factor(f, rng or Rng(0))
    field = f.field
    if target == "frob_minpoly":
        out = Poly.one(field)
        for d in sorted(set(fac.degrees())):
            out = lcm(out, Poly.monomial(field, d) - 1)
        return out
    if target == "frob_charpoly":
        out = Poly.one(field)
        for d in fac.degrees():
            out = out * (Poly.monomial(field, d) - 1)
        return out
    if target == "carlitz_charpoly":
        return carlitz_charpoly(f, "from_factors", fac)
    raise BadInput(f"unknown target {target!r}")
