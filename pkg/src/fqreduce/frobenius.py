"""Frobenius powers x^{q^i} mod f, projections, and the Frobenius minimal polynomial."""
from __future__ import annotations

from math import isqrt

import numpy as np

from . import _kernels as K
from .field import PrimeField, Rng
from .poly import ModCtx, Poly, berlekamp_massey, krylov_dependency, lcm, modcompose


class FrobTable:
    """Cache of x^{q^i} mod f keyed by i."""

    def __init__(self, ctx: ModCtx):
        self.ctx = ctx
        self.entries = {0: ctx.reduce(Poly.x(ctx.field))}

    def __contains__(self, i):
        return i in self.entries

    def __getitem__(self, i: int) -> Poly:
        if i not in self.entries:
            self.extend([i])
        return self.entries[i]

    def get(self, i: int) -> Poly:
        return self[i]

    def extend(self, indices, method: str = "auto") -> "FrobTable":
        todo = sorted(set(int(i) for i in indices) - set(self.entries))
        if not todo:
            return self
        if method == "auto":
            # one Frobenius step is a single matrix-vector product; a doubling
            # step is a full modular composition (about 2*sqrt(n) products)
            top = todo[-1]
            doubling = (len(todo) + top.bit_length()) * 2 * (isqrt(self.ctx.n) + 1)
            method = "iterate" if top - max(self.entries) <= doubling else "doubling"
        if method == "iterate":
            self._iterate(todo)
        elif method == "doubling":
            self._doubling(todo)
        else:
            raise ValueError(f"unknown method {method!r}")
        return self

    def _iterate(self, todo):
        ctx = self.ctx
        start = max(i for i in self.entries if i <= todo[0])
        cur = self.entries[start]
        wanted = set(todo)
        for i in range(start + 1, todo[-1] + 1):
            if i in self.entries:
                cur = self.entries[i]
                continue
            cur = ctx.frobenius(cur)
            if i in wanted:
                self.entries[i] = cur

    def _doubling(self, todo):
        ctx = self.ctx
        pow2 = {0: self.entries.get(1) or ctx.xq}
        self.entries.setdefault(1, pow2[0])
        for i in todo:
            acc = None
            k = 0
            rest = i
            while rest:
                if k not in pow2:
                    prev = pow2[k - 1]
                    pow2[k] = modcompose(prev, prev, ctx)
                    self.entries.setdefault(1 << k, pow2[k])
                if rest & 1:
                    acc = pow2[k] if acc is None else modcompose(pow2[k], acc, ctx)
                rest >>= 1
                k += 1
            self.entries[i] = acc


def frob_powers(ctx: ModCtx, indices, method: str = "auto") -> FrobTable:
    """Table with x^{q^i} mod f for every requested i."""
    return FrobTable(ctx).extend(indices, method)


class LinearFunctional:
    """u(a) = sum_j weights[j] * coeff_j(a) on F_q[x]/(f)."""

    def __init__(self, field: PrimeField, weights):
        self.field = field
        self.weights = field.array(list(weights) if not isinstance(weights, np.ndarray) else weights)

    @classmethod
    def random(cls, field, n, rng: Rng):
        return cls(field, rng.elements(field, n))

    @classmethod
    def coefficient(cls, field, n, j):
        w = [0] * n
        w[j] = 1
        return cls(field, w)

    def __call__(self, a: Poly) -> int:
        c = a.c[: self.weights.size]
        if c.size == 0:
            return 0
        p = self.field.p
        return int(((c * self.weights[: c.size]) % p).sum() % p)


def automorphism_projection(ctx: ModCtx, alpha: Poly, u: LinearFunctional, count: int) -> list:
    """[u(alpha^{q^1}), ..., u(alpha^{q^count})]."""
    out = []
    cur = ctx.reduce(alpha)
    for _ in range(count):
        cur = ctx.frobenius(cur)
        out.append(u(cur))
    return out


def _row_dots(V, U, p):
    return ((V * U) % p).sum(axis=-1) % p


def matrix_poly_is_zero(g: Poly, op: K.ModMatrix) -> bool:
    """Whether g(M) = 0, by Paterson-Stockmeyer on the n x n matrix M."""
    M, p = op.B, op.p
    n = M.shape[0]
    if g.is_zero():
        return True
    if n == 0:
        return True
    D = g.deg
    s = isqrt(D) + 1
    eye = np.eye(n, dtype=np.int64) if M.dtype != object else np.eye(n, dtype=np.int64).astype(object)
    baby = [eye, M]
    for _ in range(2, s + 1):
        baby.append(op.rmul(baby[-1]))
    giant = K.ModMatrix(baby[s], p)
    stack = np.array([b.reshape(-1) for b in baby[:s]])
    coeffs = g.c
    acc = None
    for b in range(D // s, -1, -1):
        block = coeffs[b * s:(b + 1) * s]
        piece = K.matmul(block, stack[: block.size], p).reshape(n, n)
        acc = piece if acc is None else (giant.rmul(acc) + piece) % p
    return not acc.any()


def annihilates_frobenius(g: Poly, ctx: ModCtx) -> bool:
    """g(sigma) = 0 on F_q[x]/(f), i.e. sum_j g_j (x^k)^{q^j} = 0 for all k < n."""
    return matrix_poly_is_zero(g, ctx.frob_operator)


def matrix_minpoly(op: K.ModMatrix, field: PrimeField) -> Poly:
    """Deterministic minimal polynomial of M acting on row vectors.

    lcm over the standard basis of the local minimal polynomials, each read
    off the first linear dependency of its Krylov sequence.
    """
    M, p = op.B, op.p
    n = M.shape[0]
    g = Poly.one(field)
    for k in range(n):
        e = field.zeros(n)
        e[k] = 1
        # skip e_k if g already kills it: Horner with g's coefficients
        acc = field.zeros(n)
        for coef in reversed(g.coeffs()):
            acc = (op.rmul(acc) + coef * e) % p
        if not acc.any():
            continue
        rows = [e]
        for _ in range(n):
            rows.append(op.rmul(rows[-1]))
        R = np.array(rows) if field.native else np.array(rows, dtype=object).reshape(n + 1, n)
        idx, comb = krylov_dependency(R, p)
        g = lcm(g, Poly(field, [(-c) % p for c in comb] + [1]))
    return g


def frob_minpoly(ctx: ModCtx, rng: Rng | None = None, mode: str = "independent",
                 trials: int = 3, rounds: int = 3, stats: dict | None = None) -> Poly:
    """Minimal polynomial of the Frobenius map on F_q[x]/(f), f squarefree.

    ``independent``: Berlekamp-Massey on random projection sequences
    u(alpha^{q^i}), i = 0..2n-1, lcm over trials, verified by g(sigma) = 0 on
    the monomial basis; unverified rounds draw fresh projections, and the last
    resort is the dense minimal polynomial of the Frobenius matrix.
    ``reference``: lcm(lambda^d - 1) over the factor degrees from the engine.
    """
    field = ctx.field
    if mode == "reference":
        from .factor import factor

        fac = factor(ctx.f, rng or Rng(0))
        out = Poly.one(field)
        for d in sorted({g.deg for g, _ in fac.factors}):
            out = lcm(out, Poly.monomial(field, d) - 1)
        return out
    if mode != "independent":
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng or Rng(0)
    n, p = ctx.n, ctx.p
    op = ctx.frob_operator
    g = Poly.one(field)
    for rnd in range(rounds):
        A = rng.elements(field, trials * n).reshape(trials, n)
        U = rng.elements(field, trials * n).reshape(trials, n)
        seqs = [_row_dots(A, U, p)]
        V = A
        for _ in range(2 * n - 1):
            V = op.rmul(V)
            seqs.append(_row_dots(V, U, p))
        S = np.array(seqs).T if field.native else np.array(seqs, dtype=object).T
        for t in range(trials):
            g = lcm(g, berlekamp_massey(S[t], field))
        if stats is not None:
            stats["rounds"] = rnd + 1
        if annihilates_frobenius(g, ctx):
            if stats is not None:
                stats["fallback"] = False
            return g
    if stats is not None:
        stats["fallback"] = True
    return matrix_minpoly(op, field)


def frob_charpoly_from_degrees(degrees, field: PrimeField) -> Poly:
    """prod (lambda^{d_i} - 1)."""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("degrees must be nonempty")
    out = Poly.one(field)
    for d in degrees:
        out = out * (Poly.monomial(field, d) - 1)
    return out


def frob_charpoly(ctx: ModCtx, mode: str = "independent", rng: Rng | None = None) -> Poly:
    """Characteristic polynomial of the Frobenius map.

    ``independent`` uses the Hessenberg characteristic polynomial of the
    Frobenius matrix; ``reference`` multiplies lambda^d - 1 over factor degrees.
    """
    if mode == "reference":
        from .factor import factor

        fac = factor(ctx.f, rng or Rng(0))
        return frob_charpoly_from_degrees(fac.degrees(), ctx.field)
    if mode != "independent":
        raise ValueError(f"unknown mode {mode!r}")
    return Poly(ctx.field, K.charpoly(ctx.frob_matrix, ctx.p), _raw=True)
