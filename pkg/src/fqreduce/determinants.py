"""Moore and Vandermonde determinants modulo f, and degree finding by binary search."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import BadInput, OracleInconsistent, TooLarge
from .frobenius import FrobTable
from .poly import ModCtx, Poly, poly_gcd

MOORE_DIRECT_LIMIT = 1 << 30


@dataclass(frozen=True)
class IndexSetSm:
    m: int
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def differences(self) -> set:
        e = self.elements
        return {b - a for i, a in enumerate(e) for b in e[i + 1:]}


def _sm_textbook(m: int) -> set:
    b = isqrt(m)
    return set(range(b)) | {b * j for j in range(1, b)} | {b * b, m}


def build_Sm(m: int) -> IndexSetSm:
    """Set S with 0, m in S, |S| <= 2*floor(sqrt m) + 1 and differences covering 1..m.

    The square-grid set {0..b-1} u {b, 2b, .., b^2} u {m} covers every
    difference only when m - b^2 <= b + 1 (or b = 1); otherwise the coarse
    part is taken with step b + 1 from b, which keeps the size bound.
    """
    if m < 1:
        raise BadInput("m must be >= 1")
    b = isqrt(m)
    r = m - b * b
    if b == 1 or r <= b + 1:
        elems = _sm_textbook(m)
    else:
        elems = set(range(b + 1)) | {min(b + j * (b + 1), m) for j in range(1, b + 1)} | {m}
    return IndexSetSm(m, tuple(sorted(elems)))


def berkowitz_det(A, one, mul, add, neg):
    """Determinant over a commutative ring, without division."""
    N = len(A)
    if N == 0:
        return one
    C = [one, neg(A[0][0])]
    for r in range(1, N):
        a = A[r][r]
        R = [A[r][j] for j in range(r)]
        col = [A[i][r] for i in range(r)]
        T = [one, neg(a)]
        v = R
        for k in range(r):
            if k:
                v = [_dot(v, [A[i][j] for i in range(r)], mul, add) for j in range(r)]
            T.append(neg(_dot(v, col, mul, add)))
        newC = []
        for i in range(r + 2):
            acc = None
            for j in range(max(0, i - len(T) + 1), min(i, r) + 1):
                term = mul(T[i - j], C[j])
                acc = term if acc is None else add(acc, term)
            newC.append(acc)
        C = newC
    det = C[N]
    return det if N % 2 == 0 else neg(det)


def _dot(u, v, mul, add):
    acc = mul(u[0], v[0])
    for a, b in zip(u[1:], v[1:]):
        acc = add(acc, mul(a, b))
    return acc


def moore_matrix(ctx: ModCtx, m: int, frob: FrobTable | None = None) -> list:
    frob = frob or FrobTable(ctx)
    rows = []
    for i in range(m + 1):
        y = frob[i]
        row = [ctx.reduce(Poly.one(ctx.field))]
        for _ in range(m):
            row.append(ctx.mulmod(row[-1], y))
        rows.append(row)
    return rows


def moore_det_direct(ctx: ModCtx, m: int, frob: FrobTable | None = None) -> Poly:
    """det[x^{j q^i}]_{0<=i,j<=m} mod f by division-free elimination."""
    if m < 0 or m > ctx.n:
        raise BadInput(f"m = {m} outside [0, {ctx.n}]")
    if (m + 1) ** 3 * ctx.n**2 > MOORE_DIRECT_LIMIT:
        raise TooLarge(f"direct Moore determinant with m = {m}, n = {ctx.n} is too large")
    A = moore_matrix(ctx, m, frob)
    return berkowitz_det(A, Poly.one(ctx.field) if ctx.n > 0 else Poly.zero(ctx.field),
                         ctx.mulmod, lambda a, b: a + b, lambda a: -a)


def carlitz_factorial(field, m: int) -> Poly:
    """prod_{0<=i<j<=m} (x^{q^{j-i}} - x)^{q^i} in F_q[x]."""
    q = field.p
    x = Poly.x(field)
    out = Poly.one(field)
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            out = out * (Poly.monomial(field, q ** (j - i)) - x) ** (q**i)
    return out


def moore_det_symbolic(field, m: int) -> Poly:
    """Moore determinant of (1, x, .., x^m) in F_q[x], no modulus."""
    q = field.p
    A = [[Poly.monomial(field, j * q**i) for j in range(m + 1)] for i in range(m + 1)]
    return berkowitz_det(A, Poly.one(field), lambda a, b: a * b, lambda a, b: a + b, lambda a: -a)


def moore_zero_test(ctx: ModCtx, m: int, frob: FrobTable | None = None) -> bool:
    """Whether the Moore determinant vanishes mod squarefree f, i.e.
    prod_{d<=m} (x^{q^d} - x) = 0 mod f."""
    if m < 1:
        raise BadInput("m must be >= 1")
    frob = frob or FrobTable(ctx)
    x = ctx.reduce(Poly.x(ctx.field))
    acc = ctx.reduce(Poly.one(ctx.field))
    for d in range(1, m + 1):
        acc = ctx.mulmod(acc, frob[d] - x)
        if acc.is_zero():
            return True
    return False


def vandermonde_det(ctx: ModCtx, m: int, frob: FrobTable | None = None) -> Poly:
    """prod_{i<j in S_m} (x^{q^j} - x^{q^i}) mod f."""
    if m < 1 or m > ctx.n:
        raise BadInput(f"m = {m} outside [1, {ctx.n}]")
    frob = frob or FrobTable(ctx)
    S = build_Sm(m).elements
    frob.extend(S)
    acc = ctx.reduce(Poly.one(ctx.field))
    for a, i in enumerate(S):
        for j in S[a + 1:]:
            acc = ctx.mulmod(acc, frob[j] - frob[i])
            if acc.is_zero():
                return acc
    return acc


def vandermonde_gcd_split(ctx: ModCtx, m: int, frob: FrobTable | None = None):
    """(product of factors of degree <= m, cofactor)."""
    if m < 1:
        raise BadInput("m must be >= 1")
    frob = frob or FrobTable(ctx)
    x = ctx.reduce(Poly.x(ctx.field))
    acc = ctx.reduce(Poly.one(ctx.field))
    for d in range(1, min(m, ctx.n) + 1):
        acc = ctx.mulmod(acc, frob[d] - x)
        if acc.is_zero():
            break
    low = poly_gcd(acc, ctx.f) if not acc.is_zero() else ctx.f
    return low, ctx.f // low


def largest_degree_binary_search(n: int, zero_oracle, stats: dict | None = None) -> int:
    """Least m in [1, n] with zero_oracle(m) true, for a monotone predicate.

    One confirming call at m = n, then ceil(log2 n) bisection calls.
    """
    if n < 1:
        raise BadInput("degree must be >= 1")
    seen_true, seen_false = [], []
    calls = 0

    def ask(m):
        nonlocal calls
        calls += 1
        v = bool(zero_oracle(m))
        (seen_true if v else seen_false).append(m)
        if seen_true and seen_false and max(seen_false) >= min(seen_true):
            raise OracleInconsistent(f"zero test is not monotone around m = {m}")
        return v

    if not ask(n):
        raise OracleInconsistent(f"zero test false at m = n = {n}")
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if ask(mid):
            hi = mid
        else:
            lo = mid + 1
    if stats is not None:
        stats["calls"] = calls
    return lo
