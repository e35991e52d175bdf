"""Carlitz module action rho_x(a) = a^q + x*a on F_q[x]/(f) and its characteristic polynomial."""
from __future__ import annotations

import numpy as np

from . import _kernels as K
from .errors import DegenerateDifference, NotSquarefree
from .poly import Factorization, ModCtx, Poly, check_squarefree


class CarlitzCtx:
    def __init__(self, f: Poly | ModCtx):
        self.ctx = f if isinstance(f, ModCtx) else ModCtx(f)
        self.xq = self.ctx.xq

    @property
    def f(self) -> Poly:
        return self.ctx.f

    def rho_x(self, a: Poly) -> Poly:
        ctx = self.ctx
        return ctx.frobenius(a) + ctx.reduce(a.shift(1))

    def matrix(self) -> np.ndarray:
        """Row j holds rho_x(x^j); the transpose of the column convention."""
        ctx = self.ctx
        n = ctx.n
        M = ctx.frob_matrix.copy()
        for j in range(n):
            v = ctx.vec(Poly.monomial(ctx.field, j + 1))
            M[j] = (M[j] + v) % ctx.p
        return M


def carlitz_apply(m: Poly, a: Poly, cctx: CarlitzCtx) -> Poly:
    """rho_m(a) = sum_i m_i rho_x^i(a)."""
    ctx = cctx.ctx
    beta = ctx.reduce(a)
    acc = Poly.zero(ctx.field)
    coeffs = m.coeffs()
    for i, mi in enumerate(coeffs):
        if mi:
            acc = acc + beta * mi
        if i + 1 < len(coeffs):
            beta = cctx.rho_x(beta)
    return acc


def carlitz_charpoly(f: Poly, mode: str = "direct", factorization: Factorization | None = None) -> Poly:
    """Characteristic polynomial of rho_x on F_q[x]/(f).

    ``direct`` reduces the matrix of rho_x to Hessenberg form; ``from_factors``
    multiplies (f_i - 1) over a given factorization.
    """
    if mode == "direct":
        check_squarefree(f)
        cctx = CarlitzCtx(f)
        return Poly(f.field, K.charpoly(cctx.matrix(), f.p), _raw=True)
    if mode == "from_factors":
        if factorization is None:
            raise ValueError("from_factors mode needs a factorization")
        if not factorization.is_squarefree():
            raise NotSquarefree("factorization has repeated factors")
        out = Poly.one(f.field)
        for g, _ in factorization:
            out = out * (g - 1)
        return out
    raise ValueError(f"unknown mode {mode!r}")


def smallest_degree_via_carlitz(f: Poly, chi: Poly) -> int:
    """deg f - deg(f - chi); trustworthy only when p does not divide the
    number of smallest-degree factors."""
    diff = f - chi
    if diff.is_zero():
        raise DegenerateDifference("f equals its Carlitz characteristic polynomial")
    return f.deg - diff.deg
