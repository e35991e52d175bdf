"""Dense univariate polynomials over a prime field and their classical toolkit.

Coefficients are stored ascending in a numpy array owned by the polynomial;
the zero polynomial has no coefficients. Polynomials are treated as
immutable values: every operation returns a new object.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from . import _kernels as K
from ._ntheory import divisors, mobius
from .errors import BothZero, DivisionByZero, FieldMismatch, NotMonic, NotSquarefree
from .field import PrimeField, Rng


class Poly:
    __slots__ = ("field", "c")

    def __init__(self, field: PrimeField, coeffs=(), *, _raw: bool = False):
        self.field = field
        if _raw:
            self.c = coeffs
        else:
            self.c = K.trim(field.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs))

    # -- constructors ---------------------------------------------------------
    @classmethod
    def _wrap(cls, field, arr):
        return cls(field, K.trim(arr), _raw=True)

    @classmethod
    def zero(cls, field):
        return cls(field, field.zeros(0), _raw=True)

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def monomial(cls, field, k: int, c: int = 1):
        arr = field.zeros(k + 1)
        arr[k] = c % field.p
        return cls._wrap(field, arr)

    @classmethod
    def from_roots(cls, field, roots):
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, [-r, 1])
        return out

    # -- basic properties -----------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def deg(self) -> int:
        return self.c.size - 1

    def degree(self) -> int:
        return self.c.size - 1

    @property
    def lc(self) -> int:
        return int(self.c[-1]) if self.c.size else 0

    def is_zero(self) -> bool:
        return self.c.size == 0

    def is_one(self) -> bool:
        return self.c.size == 1 and self.c[0] == 1

    def is_monic(self) -> bool:
        return self.c.size > 0 and self.c[-1] == 1

    def coeffs(self) -> list:
        return [int(v) for v in self.c]

    def __len__(self):
        return self.c.size

    def __getitem__(self, i: int) -> int:
        return int(self.c[i]) if 0 <= i < self.c.size else 0

    def sort_key(self):
        return (self.deg, tuple(self.coeffs()))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.c.size == other.c.size \
            and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash((self.field.p, tuple(self.coeffs())))

    def __repr__(self):
        return f"Poly(q={self.p}, {self.coeffs()})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.deg, -1, -1):
            v = int(self.c[i])
            if v == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(v) if (v != 1 or i == 0) else ""
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(terms)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return Poly.const(self.field, other)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Poly(self.field, K.add(self.c, other.c, self.p), _raw=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Poly(self.field, K.sub(self.c, other.c, self.p), _raw=True)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Poly(self.field, (-self.c) % self.p, _raw=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.field, K.scale(self.c, other, self.p), _raw=True)
        other = self._check(other)
        return Poly(self.field, K.mul(self.c, other.c, self.p), _raw=True)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        quo, r = K.divrem(self.c, other.c, self.p)
        return Poly(self.field, quo, _raw=True), Poly(self.field, r, _raw=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = Poly.one(self.field), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def exquo(self, other):
        quo, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other!r} does not divide {self!r}")
        return quo

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self * self.field.inv(self.lc)

    def derivative(self):
        if self.c.size <= 1:
            return Poly.zero(self.field)
        k = np.arange(1, self.c.size, dtype=self.c.dtype if self.c.dtype != object else np.int64)
        if self.c.dtype == object:
            k = k.astype(object)
        return Poly._wrap(self.field, (self.c[1:] * (k % self.p)) % self.p)

    def __call__(self, v: int) -> int:
        acc = 0
        for coef in reversed(self.coeffs()):
            acc = (acc * v + coef) % self.p
        return acc

    def compose(self, h: "Poly") -> "Poly":
        """Plain (unreduced) composition self(h(x))."""
        out = Poly.zero(self.field)
        for coef in reversed(self.coeffs()):
            out = out * h + coef
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        arr = self.field.zeros(self.c.size + k)
        arr[k:] = self.c
        return Poly(self.field, arr, _raw=True)


# -- arithmetic entry points by name ------------------------------------------


def poly_arith(a: Poly, b: Poly, kind: str):
    if a.field != b.field:
        raise FieldMismatch(f"F_{a.p} vs F_{b.p}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "divrem":
        return divmod(a, b)
    raise ValueError(f"unknown operation {kind!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    if a.field != b.field:
        raise FieldMismatch(f"F_{a.p} vs F_{b.p}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return Poly(a.field, K.gcd(a.c, b.c, a.p), _raw=True)


gcd = poly_gcd


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


# -- modular context ----------------------------------------------------------

# Above this degree the Frobenius map is applied by powering instead of a
# dense n x n matrix.
FROB_MATRIX_MAX = 1536


def _newton_inverse(h: np.ndarray, k: int, p: int) -> np.ndarray:
    """Power series inverse of h (h[0] != 0) modulo x^k."""
    g = h[:1].copy()
    g[0] = pow(int(h[0]), -1, p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        hg = K.mul(h[:prec], g, p)[:prec]
        corr = (-hg) % p
        if corr.size:
            corr[0] = (corr[0] + 2) % p
        else:
            corr = h[:1].copy()
            corr[0] = 2 % p
        g = K.mul(g, corr, p)[:prec]
    return g


class ModCtx:
    """Arithmetic in F_q[x]/(f) for a fixed monic f of degree n >= 1.

    Holds the reversed-modulus inverse used for remainders by multiplication
    and lazily caches x^q mod f together with the matrix of the Frobenius map
    (row j is x^{jq} mod f), so that applying the Frobenius map is a modular
    composition with precomputed powers of x^q.
    """

    NEWTON_CUTOFF = {"numba": 320, "numpy": 24, "object": 12}

    def __init__(self, f: Poly):
        if not f.is_monic() or f.deg < 1:
            raise NotMonic(f"modulus must be monic of degree >= 1, got {f!r}")
        self.f = f
        self.field = f.field
        self.p = f.p
        self.n = f.deg
        self._rinv = None
        self._xq = None
        self._frob = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ModCtx({self.f!r})"

    # -- remaindering ---------------------------------------------------------
    @property
    def rev_inverse(self) -> np.ndarray:
        if self._rinv is None:
            self._rinv = _newton_inverse(self.f.c[::-1].copy(), max(self.n, 1), self.p)
        return self._rinv

    def _reduce(self, a: np.ndarray) -> np.ndarray:
        n = self.n
        if a.size <= n:
            return a
        mode = K.BACKEND if self.field.native else "object"
        if a.size <= 2 * n - 1 and n >= self.NEWTON_CUTOFF[mode]:
            m = a.size - n
            top = a[::-1][:m].copy()
            qr = K.mul(top, self.rev_inverse[:m], self.p)[:m]
            quo = self.field.zeros(m)
            quo[m - qr.size:] = qr[::-1]
            low = K.mul(K.trim(quo), self.f.c, self.p)[:n]
            return K.sub(a[:n], low, self.p)
        return K.rem(a, self.f.c, self.p)

    def reduce(self, a: Poly) -> Poly:
        if a.c.size <= self.n:
            return a
        return Poly(self.field, self._reduce(a.c), _raw=True)

    def mulmod(self, a: Poly, b: Poly) -> Poly:
        return Poly(self.field, self._reduce(K.mul(a.c, b.c, self.p)), _raw=True)

    def powmod(self, a: Poly, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        a = self.reduce(a)
        if K.BACKEND == "numba" and self.field.native and self.n < self.NEWTON_CUTOFF["numba"] \
                and e < (1 << 62):
            return self.from_vec(K._nb_powmod(self.vec(a), e, self.f.c, self.p, K.lazy_ok(self.n, self.p)))
        result = np.array([1], dtype=self.field.dtype) if self.n > 0 else self.field.zeros(0)
        base = a.c
        for bit in bin(e)[2:]:
            result = self._reduce(K.mul(result, result, self.p))
            if bit == "1":
                result = self._reduce(K.mul(result, base, self.p))
        return Poly(self.field, K.trim(result), _raw=True)

    # -- vectors --------------------------------------------------------------
    def vec(self, a: Poly) -> np.ndarray:
        out = self.field.zeros(self.n)
        c = self.reduce(a).c
        out[: c.size] = c
        return out

    def from_vec(self, v: np.ndarray) -> Poly:
        return Poly(self.field, K.trim(np.asarray(v)), _raw=True)

    # -- Frobenius ------------------------------------------------------------
    @property
    def xq(self) -> Poly:
        """x^q mod f."""
        if self._xq is None:
            with self._lock:
                if self._xq is None:
                    self._xq = self.powmod(Poly.x(self.field), self.p)
        return self._xq

    @property
    def frob_matrix(self) -> np.ndarray:
        if self._frob is None:
            xq = self.xq
            with self._lock:
                if self._frob is None:
                    # row j holds x^{qj} mod f
                    self._frob = K.ModMatrix(_power_rows(xq, self, self.n), self.p)
        return self._frob.B

    @property
    def frob_operator(self) -> "K.ModMatrix":
        self.frob_matrix
        return self._frob

    def frobenius(self, a: Poly, times: int = 1) -> Poly:
        """a^(q^times) mod f."""
        if self.n > FROB_MATRIX_MAX:
            for _ in range(times):
                a = self.powmod(a, self.p)
            return self.reduce(a)
        v = self.vec(a)
        F = self.frob_operator
        for _ in range(times):
            v = F.rmul(v)
        return self.from_vec(v)

    def frobenius_vecs(self, V: np.ndarray) -> np.ndarray:
        """Apply the Frobenius map to each row of V (rows are residues)."""
        return self.frob_operator.rmul(V)


def modpow(base: Poly, e: int, ctx: ModCtx) -> Poly:
    return ctx.powmod(base, e)


# -- modular composition -----------------------------------------------------


class ComposeTable:
    """Baby-step powers h^0..h^s of a fixed inner polynomial (Brent-Kung)."""

    def __init__(self, h: Poly, ctx: ModCtx, s: int):
        self.ctx = ctx
        self.s = max(1, s)
        h = ctx.reduce(h)
        rows = [ctx.vec(Poly.one(ctx.field))]
        cur = Poly.one(ctx.field)
        for _ in range(self.s):
            cur = ctx.mulmod(cur, h)
            rows.append(ctx.vec(cur))
        self.powers = np.array(rows, dtype=ctx.field.dtype) if ctx.field.native \
            else np.array(rows, dtype=object).reshape(len(rows), ctx.n)
        self.giant = cur  # h^s

    def compose(self, g: Poly) -> Poly:
        ctx, s, p = self.ctx, self.s, self.ctx.p
        coeffs = g.c
        if coeffs.size == 0:
            return g
        nblocks = -(-coeffs.size // s)
        acc = None
        for b in range(nblocks - 1, -1, -1):
            block = coeffs[b * s:(b + 1) * s]
            piece = ctx.from_vec(K.matmul(block, self.powers[: block.size], p))
            acc = piece if acc is None else ctx.mulmod(acc, self.giant) + piece
        return acc


def modcompose(g: Poly, h: Poly, ctx: ModCtx, strategy: str = "brent_kung") -> Poly:
    """g(h(x)) mod f by Horner or Brent-Kung baby-steps/giant-steps."""
    if strategy == "horner":
        h = ctx.reduce(h)
        acc = Poly.zero(ctx.field)
        for coef in reversed(g.coeffs()):
            acc = ctx.mulmod(acc, h) + coef
        return acc
    if strategy in ("brent_kung", "bsgs"):
        if g.is_zero():
            return g
        s = isqrt(g.deg) + (0 if isqrt(g.deg) ** 2 == g.deg else 1)
        return ComposeTable(h, ctx, max(1, s)).compose(g)
    raise ValueError(f"unknown composition strategy {strategy!r}")


# -- squarefree decomposition -------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    p = f.p
    return Poly._wrap(f.field, f.c[::p].copy())


def squarefree_decompose(f: Poly) -> list:
    """[(g_i, e_i)] with f = prod g_i^e_i, g_i squarefree and pairwise coprime."""
    if not f.is_monic():
        raise NotMonic(f"squarefree decomposition needs a monic input, got {f!r}")
    parts: dict = {}

    def run(f, mult):
        if f.deg <= 0:
            return
        fp = f.derivative()
        if fp.is_zero():
            run(_pth_root(f), mult * f.p)
            return
        c = poly_gcd(f, fp)
        w = f // c
        i = 1
        while w.deg > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.deg > 0:
                key = i * mult
                parts[key] = parts[key] * z if key in parts else z
            i += 1
            w = y
            c = c // y
        if c.deg > 0:
            run(_pth_root(c), mult * f.p)

    run(f, 1)
    return [(parts[e].monic(), e) for e in sorted(parts)]


def is_squarefree(f: Poly) -> bool:
    if f.deg <= 0:
        return True
    fp = f.derivative()
    if fp.is_zero():
        return False
    return poly_gcd(f, fp).deg == 0


# -- Berlekamp-Massey and minimal polynomials ---------------------------------

if K.HAVE_NUMBA:

    @K.njit(cache=True)
    def _nb_bm(s, p):
        N = s.size
        C = np.zeros(N + 1, np.int64)
        B = np.zeros(N + 1, np.int64)
        C[0] = 1
        B[0] = 1
        L = 0
        m = 1
        b = 1
        for n in range(N):
            d = s[n]
            for i in range(1, L + 1):
                d = (d + C[i] * s[n - i]) % p
            if d == 0:
                m += 1
                continue
            coef = d * K._nb_inv(b, p) % p
            negc = p - coef
            if 2 * L <= n:
                T = C.copy()
                for i in range(m, N + 1):
                    C[i] = (C[i] + negc * B[i - m]) % p
                L = n + 1 - L
                B = T
                b = d
                m = 1
            else:
                for i in range(m, N + 1):
                    C[i] = (C[i] + negc * B[i - m]) % p
                m += 1
        return C[: L + 1].copy()


def _py_bm(s, p):
    N = len(s)
    C = [1] + [0] * N
    B = [1] + [0] * N
    L, m, b = 0, 1, 1
    for n in range(N):
        d = int(s[n])
        for i in range(1, L + 1):
            d += C[i] * int(s[n - i])
        d %= p
        if d == 0:
            m += 1
            continue
        coef = d * pow(b, -1, p) % p
        T = C[:] if 2 * L <= n else None
        for i in range(m, N + 1):
            C[i] = (C[i] - coef * B[i - m]) % p
        if T is not None:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    return C[: L + 1]


def berlekamp_massey(seq, field: PrimeField) -> Poly:
    """Monic minimal polynomial lambda^L + c_1 lambda^(L-1) + ... + c_L of a sequence."""
    arr = field.array(list(seq) if not isinstance(seq, np.ndarray) else seq)
    p = field.p
    if K.BACKEND == "numba" and field.native and arr.size:
        conn = _nb_bm(arr, p)
    else:
        conn = _py_bm(arr, p)
    # connection polynomial 1 + c_1 z + ... + c_L z^L -> reversed
    return Poly(field, list(conn)[::-1])


def krylov_dependency(rows: np.ndarray, p: int):
    """First index i such that rows[i] is a combination of rows[:i].

    Returns (i, coeffs) with rows[i] = sum_j coeffs[j] * rows[j], or None.
    Gaussian elimination that carries each row's combination in terms of the
    original rows.
    """
    k, n = rows.shape
    obj = rows.dtype == object
    basis = []  # (pivot column, reduced row, combination)
    for i in range(k):
        v = rows[i].copy()
        comb = np.zeros(k, dtype=object) if obj else np.zeros(k, dtype=np.int64)
        comb[i] = 1
        for piv, brow, bcomb in basis:
            c = int(v[piv])
            if c:
                v = (v - c * brow) % p
                comb = (comb - c * bcomb) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            # 0 = rows[i] + sum_{j<i} comb[j] rows[j]
            return i, [(-int(comb[j])) % p for j in range(i)]
        piv = int(nz[0])
        inv = pow(int(v[piv]), -1, p)
        basis.append((piv, v * inv % p, comb * inv % p))
    return None


if K.HAVE_NUMBA:

    @K.njit(cache=True)
    def _nb_power_rows(r, f, p, count, lazy):
        # rows i = r^i mod f as length-n vectors, f monic, r reduced
        n = f.size - 1
        out = np.zeros((count, n), np.int64)
        out[0, 0] = 1 % p
        prod = np.zeros(2 * n, np.int64)
        for i in range(1, count):
            K._nb_mulmod_into(out[i - 1], r, f, p, lazy, prod, out[i])
        return out


def _power_rows(r: Poly, ctx: ModCtx, count: int) -> np.ndarray:
    field, n = ctx.field, ctx.n
    if n == 0:
        return field.zeros((count, 0)) if field.native else np.empty((count, 0), dtype=object)
    if K.BACKEND == "numba" and field.native:
        return _nb_power_rows(ctx.vec(r), ctx.f.c, ctx.p, count, K.lazy_ok(n, ctx.p))
    rows = [ctx.vec(Poly.one(field))]
    cur = Poly.one(field)
    for _ in range(count - 1):
        cur = ctx.mulmod(cur, r)
        rows.append(ctx.vec(cur))
    return np.array(rows, dtype=field.dtype) if field.native \
        else np.array(rows, dtype=object).reshape(len(rows), n)


def minpoly_mod(r: Poly, ctx: ModCtx, rng: Rng, projections: int = 3) -> Poly:
    """Minimal polynomial of r in F_q[x]/(h) over F_q.

    Random projections u(r^i), i <= 2n, go through Berlekamp-Massey and are
    merged by lcm until the candidate vanishes at r; two rounds of
    projections, then a Krylov-space elimination make the result unconditional.
    """
    field, p, n = ctx.field, ctx.p, ctx.n
    r = ctx.reduce(r)
    powers = _power_rows(r, ctx, 2 * n + 1)

    def annihilates(g):
        if g.deg >= powers.shape[0]:
            return False
        return not K.matmul(g.c, powers[: g.deg + 1], p).any()

    g = None
    for _round in range(2):
        U = rng.elements(field, n * projections).reshape(n, projections)
        seqs = K.matmul(powers, U, p)
        for t in range(projections):
            cand = berlekamp_massey(seqs[:, t], field)
            g = cand if g is None else lcm(g, cand)
            if annihilates(g):
                return g
    idx, coeffs = krylov_dependency(powers[: n + 1], p)
    return Poly(field, [(-c) % p for c in coeffs] + [1])


# -- cyclotomic polynomials ---------------------------------------------------


@lru_cache(maxsize=2048)
def _cyclotomic_coeffs(k: int, p: int) -> tuple:
    field = PrimeField(p)
    num, den = Poly.one(field), Poly.one(field)
    for d in divisors(k):
        mu = mobius(d)
        if mu == 0:
            continue
        term = Poly.monomial(field, k // d) - 1
        if mu == 1:
            num = num * term
        else:
            den = den * term
    return tuple(num.exquo(den).coeffs())


def cyclotomic(k: int, field: PrimeField) -> Poly:
    """k-th cyclotomic polynomial reduced mod p (Moebius product)."""
    if k < 1:
        raise ValueError("k must be positive")
    return Poly(field, _cyclotomic_coeffs(k, field.p))


# -- instance generation ------------------------------------------------------


def random_poly(n: int, field: PrimeField, rng: Rng, monic: bool = True) -> Poly:
    arr = rng.elements(field, n + 1)
    if monic:
        arr[n] = 1
    return Poly(field, arr)


def random_monic_squarefree(n: int, field: PrimeField, rng: Rng, *, stats: dict | None = None) -> Poly:
    if n < 1:
        raise ValueError("degree must be >= 1")
    tries = 0
    while True:
        tries += 1
        f = random_poly(n, field, rng)
        if is_squarefree(f):
            if stats is not None:
                stats["tries"] = stats.get("tries", 0) + tries
                stats["accepted"] = stats.get("accepted", 0) + 1
            return f


# -- factorizations -----------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Multiset of monic irreducible factors, canonically ordered."""

    field: PrimeField
    factors: tuple

    def __post_init__(self):
        merged: dict = {}
        for g, e in self.factors:
            merged[g] = merged.get(g, 0) + e
        object.__setattr__(
            self, "factors", tuple(sorted(merged.items(), key=lambda ge: ge[0].sort_key())))

    def product(self) -> Poly:
        out = Poly.one(self.field)
        for g, e in self.factors:
            out = out * g**e
        return out

    def degrees(self) -> list:
        """Factor degrees, repeated by multiplicity."""
        return [g.deg for g, e in self.factors for _ in range(e)]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def check_squarefree(f: Poly) -> None:
    if not is_squarefree(f):
        raise NotSquarefree(f"{f!r} is not squarefree")


__all__ = [
    "Poly", "ModCtx", "ComposeTable", "Factorization", "poly_arith", "poly_gcd", "gcd",
    "lcm", "modpow", "modcompose", "squarefree_decompose", "is_squarefree",
    "berlekamp_massey", "minpoly_mod", "krylov_dependency", "cyclotomic",
    "random_poly", "random_monic_squarefree", "check_squarefree", "DivisionByZero",
]
