"""Coefficient-array kernels: multiplication, division, gcd, matrices mod p.

Two interchangeable backends implement the scalar inner loops:

* ``numba`` -- ``@njit`` loops over int64 arrays (moduli below 2**31);
* ``numpy`` -- vectorized numpy, also the only path for ``object`` arrays
  holding residues of moduli in [2**31, 2**62).

The backend is read from the ``FQREDUCE_BACKEND`` environment variable
(``numba`` or ``numpy``) at import time, falls back to ``numpy`` when numba
cannot be imported, and can be switched at runtime with :func:`set_backend`.
Both backends are bit-identical; the test-suite runs them against each other.

Arrays are dense, ascending, and canonical (entries in ``[0, p)``). Functions
that return polynomials strip trailing zeros; the zero polynomial is the
empty array.
"""
from __future__ import annotations

import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

_requested = os.environ.get("FQREDUCE_BACKEND", "numba").strip().lower() or "numba"
if _requested not in ("numba", "numpy"):
    warnings.warn(f"unknown FQREDUCE_BACKEND={_requested!r}; using numpy")
    _requested = "numpy"
if _requested == "numba" and not HAVE_NUMBA:
    _requested = "numpy"
BACKEND = _requested

KARATSUBA_CUTOFF = 192
_I64_MAX = (1 << 63) - 1
_F64_EXACT = 1 << 53


def lazy_ok(n: int, p: int) -> bool:
    """Whether a length-n modular product can skip intermediate reductions."""
    return 2 * (n + 1) * (p - 1) ** 2 + p <= _I64_MAX


def set_backend(name: str) -> str:
    """Select ``numba`` or ``numpy``; returns the previous backend name."""
    global BACKEND
    name = name.lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable in this environment")
    prev, BACKEND = BACKEND, name
    return prev


def _jit(a: np.ndarray) -> bool:
    return BACKEND == "numba" and a.dtype != object


# -- numba kernels -----------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_inv(a, p):
        # extended Euclid on int64; a in [1, p)
        t, new_t, r, new_r = 0, 1, p, a
        while new_r != 0:
            quo = r // new_r
            t, new_t = new_t, t - quo * new_t
            r, new_r = new_r, r - quo * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _nb_mul(a, b, p, chunk):
        n, m = a.size, b.size
        out = np.empty(n + m - 1, np.int64)
        for k in range(n + m - 1):
            lo = k - m + 1 if k - m + 1 > 0 else 0
            hi = k if k < n - 1 else n - 1
            s = 0
            c = 0
            for i in range(lo, hi + 1):
                s += a[i] * b[k - i]
                c += 1
                if c == chunk:
                    s %= p
                    c = 0
            out[k] = s % p
        return out

    @njit(cache=True)
    def _nb_divrem(a, b, p, lazy):
        r = a.copy()
        db = b.size - 1
        inv = _nb_inv(b[db], p)
        nq = a.size - db
        quo = np.zeros(nq if nq > 0 else 0, np.int64)
        for i in range(a.size - 1, db - 1, -1):
            c = r[i] % p * inv % p
            if c == 0:
                continue
            quo[i - db] = c
            negc = p - c
            base = i - db
            if lazy:
                for j in range(db):
                    r[base + j] += negc * b[j]
            else:
                for j in range(db):
                    r[base + j] = (r[base + j] + negc * b[j]) % p
        rr = r[:db] if db < r.size else r
        if lazy:
            for j in range(rr.size):
                rr[j] %= p
        return quo, rr

    @njit(cache=True)
    def _nb_gcd(a, b, p):
        # returns the monic gcd (empty array when both are zero)
        x = a.copy()
        y = b.copy()
        dx = x.size - 1
        dy = y.size - 1
        while dx >= 0 and x[dx] == 0:
            dx -= 1
        while dy >= 0 and y[dy] == 0:
            dy -= 1
        if dx < dy:
            x, y = y, x
            dx, dy = dy, dx
        while dy >= 0:
            inv = _nb_inv(y[dy], p)
            for i in range(dx, dy - 1, -1):
                c = x[i] * inv % p
                if c == 0:
                    continue
                negc = p - c
                base = i - dy
                for j in range(dy + 1):
                    x[base + j] = (x[base + j] + negc * y[j]) % p
            dx = dy - 1
            while dx >= 0 and x[dx] == 0:
                dx -= 1
            x, y = y, x
            dx, dy = dy, dx
        out = x[: dx + 1].copy()
        if dx >= 0:
            inv = _nb_inv(out[dx], p)
            for i in range(dx + 1):
                out[i] = out[i] * inv % p
        return out

    @njit(cache=True)
    def _nb_mulmod_into(a, b, f, p, lazy, prod, out):
        # lazy: every slot of prod stays below 2**63 without intermediate
        # reduction, so residues are taken only when a slot is read
        n = f.size - 1
        prod[:] = 0
        for i in range(a.size):
            ai = a[i]
            if ai == 0:
                continue
            if lazy:
                for j in range(b.size):
                    prod[i + j] += ai * b[j]
            else:
                for j in range(b.size):
                    prod[i + j] = (prod[i + j] + ai * b[j]) % p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c == 0:
                continue
            negc = p - c
            base = k - n
            if lazy:
                for j in range(n):
                    prod[base + j] += negc * f[j]
            else:
                for j in range(n):
                    prod[base + j] = (prod[base + j] + negc * f[j]) % p
        for j in range(n):
            out[j] = prod[j] % p

    @njit(cache=True)
    def _nb_powmod(a, e, f, p, lazy):
        # a reduced mod monic f, length n; returns a^e mod f as length-n vector
        n = f.size - 1
        prod = np.zeros(2 * n, np.int64)
        res = np.zeros(n, np.int64)
        res[0] = 1 % p
        base = a.copy()
        tmp = np.zeros(n, np.int64)
        while e > 0:
            if e & 1:
                _nb_mulmod_into(res, base, f, p, lazy, prod, tmp)
                res[:] = tmp
            e >>= 1
            if e:
                _nb_mulmod_into(base, base, f, p, lazy, prod, tmp)
                base[:] = tmp
        return res

    @njit(cache=True)
    def _nb_charpoly(A, p):
        n = A.shape[0]
        H = A.copy()
        for j in range(n - 2):
            piv = -1
            for i in range(j + 1, n):
                if H[i, j] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != j + 1:
                for c in range(n):
                    t = H[piv, c]
                    H[piv, c] = H[j + 1, c]
                    H[j + 1, c] = t
                for r in range(n):
                    t = H[r, piv]
                    H[r, piv] = H[r, j + 1]
                    H[r, j + 1] = t
            inv = _nb_inv(H[j + 1, j], p)
            for i in range(j + 2, n):
                u = H[i, j] * inv % p
                if u == 0:
                    continue
                negu = p - u
                for c in range(n):
                    H[i, c] = (H[i, c] + negu * H[j + 1, c]) % p
                for r in range(n):
                    H[r, j + 1] = (H[r, j + 1] + u * H[r, i]) % p
        # charpoly recurrence on the upper Hessenberg form
        P = np.zeros((n + 1, n + 1), np.int64)
        P[0, 0] = 1
        for m in range(1, n + 1):
            hmm = H[m - 1, m - 1]
            for d in range(m + 1):
                v = 0
                if d >= 1:
                    v = P[m - 1, d - 1]
                if d <= m - 1:
                    v = (v + (p - hmm) * P[m - 1, d]) % p
                P[m, d] = v
            t = 1
            for i in range(m - 1, 0, -1):
                t = t * H[i, i - 1] % p
                coef = H[i - 1, m - 1] * t % p
                if coef == 0:
                    continue
                negc = p - coef
                for d in range(i):
                    P[m, d] = (P[m, d] + negc * P[i - 1, d]) % p
        return P[n].copy()


# -- helpers -----------------------------------------------------------------


def trim(a: np.ndarray) -> np.ndarray:
    """Drop trailing zero coefficients."""
    n = a.size
    if n == 0 or a[n - 1] != 0:
        return a
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _zeros_like(a: np.ndarray, n: int) -> np.ndarray:
    if a.dtype == object:
        out = np.empty(n, dtype=object)
        out[:] = 0
        return out
    return np.zeros(n, dtype=a.dtype)


def add(a, b, p):
    if a.size < b.size:
        a, b = b, a
    out = a.copy()
    out[: b.size] += b
    out[: b.size] %= p
    return trim(out)


def sub(a, b, p):
    n = max(a.size, b.size)
    out = _zeros_like(a if a.size else b, n)
    out[: a.size] += a
    out[: b.size] -= b
    out %= p
    return trim(out)


def scale(a, c, p):
    c %= p
    if c == 0:
        return a[:0]
    return (a * c) % p


# -- multiplication ----------------------------------------------------------


def _kronecker_mul(a, b, p):
    n = min(a.size, b.size)
    nbits = 2 * (p - 1).bit_length() + n.bit_length() + 1
    slot = (nbits + 7) // 8
    A = int.from_bytes(b"".join(int(c).to_bytes(slot, "little") for c in a), "little")
    B = int.from_bytes(b"".join(int(c).to_bytes(slot, "little") for c in b), "little")
    size = a.size + b.size - 1
    raw = (A * B).to_bytes(size * slot, "little")
    out = np.empty(size, dtype=object)
    for i in range(size):
        out[i] = int.from_bytes(raw[i * slot:(i + 1) * slot], "little") % p
    return out


def _np_mul(a, b, p):
    m = min(a.size, b.size)
    if m * (p - 1) ** 2 <= _I64_MAX:
        return np.convolve(a, b) % p
    # 16-bit limbs keep every partial product below 2**32
    a0, a1 = a & 0xFFFF, a >> 16
    b0, b1 = b & 0xFFFF, b >> 16
    c0 = np.convolve(a0, b0) % p
    c1 = (np.convolve(a0, b1) + np.convolve(a1, b0)) % p
    c2 = np.convolve(a1, b1) % p
    return (c0 + c1 * (65536 % p) % p + c2 * ((1 << 32) % p) % p) % p


def _base_mul(a, b, p):
    if a.dtype == object:
        return _kronecker_mul(a, b, p)
    if BACKEND == "numba" and min(a.size, b.size) * (p - 1) ** 2 > _I64_MAX:
        # np.convolve outruns a scalar loop whenever it cannot overflow
        chunk = max(1, (_I64_MAX - p) // max(1, (p - 1) ** 2))
        return _nb_mul(a, b, p, min(chunk, 1 << 40))
    return _np_mul(a, b, p)


def _mul_raw(a, b, p):
    # untrimmed product of nonempty arrays, length len(a)+len(b)-1
    if a.size < b.size:
        a, b = b, a
    if b.size < KARATSUBA_CUTOFF or a.dtype == object:
        return _base_mul(a, b, p)
    la, lb = a.size, b.size
    if la >= 2 * lb:
        out = _zeros_like(a, la + lb - 1)
        for s in range(0, la, lb):
            piece = _mul_raw(a[s:s + lb], b, p)
            out[s:s + piece.size] += piece
        return out % p
    m = la // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _mul_raw(a0, b0, p)
    z2 = _mul_raw(a1, b1, p)
    sa = a1.copy()
    sa[:m] += a0
    sb = _zeros_like(b, max(m, lb - m))
    sb[: b1.size] += b1
    sb[:m] += b0
    z1 = _mul_raw(sa % p, sb % p, p)
    z1[: z0.size] -= z0
    z1[: z2.size] -= z2
    out = _zeros_like(a, la + lb - 1)
    out[: z0.size] += z0
    out[m:m + z1.size] += z1
    out[2 * m:2 * m + z2.size] += z2
    return out % p


def mul(a, b, p):
    if a.size == 0 or b.size == 0:
        return a[:0]
    return trim(_mul_raw(a, b, p))


# -- division and gcd --------------------------------------------------------


def _np_divrem(a, b, p):
    db = b.size - 1
    r = a.copy()
    nq = a.size - db
    quo = _zeros_like(a, max(nq, 0))
    inv = pow(int(b[db]), -1, p)
    for i in range(a.size - 1, db - 1, -1):
        c = int(r[i]) * inv % p
        if c == 0:
            continue
        quo[i - db] = c
        r[i - db:i + 1] = (r[i - db:i + 1] - c * b) % p
    return quo, r[:db]


def divrem(a, b, p):
    """Quotient and remainder; ``b`` must be nonzero."""
    if b.size == 0:
        from .errors import DivisionByZero

        raise DivisionByZero("polynomial division by zero")
    if a.size < b.size:
        return a[:0], a
    if _jit(a):
        quo, r = _nb_divrem(a, b, p, lazy_ok(a.size, p))
    else:
        quo, r = _np_divrem(a, b, p)
    return trim(quo), trim(r)


def rem(a, b, p):
    return divrem(a, b, p)[1]


def _np_gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b.size:
        a, b = b, rem(a, b, p)
    if a.size:
        a = scale(a, pow(int(a[-1]), -1, p), p)
    return a


def gcd(a, b, p):
    """Monic gcd (empty array if both inputs are zero)."""
    if _jit(a) and b.dtype != object:
        return _nb_gcd(a, b, p)
    return _np_gcd(a, b, p)


# -- dense matrices mod p ----------------------------------------------------


class ModMatrix:
    """Right operand of repeated products ``A @ B mod p``.

    For int64 residues, B is split once into float64 limbs narrow enough that
    every BLAS dot product is exact; ``rmul`` then recombines the limbs.
    """

    def __init__(self, B: np.ndarray, p: int):
        self.B = B
        self.p = p
        self.obj = B.dtype == object
        self.limbs = []
        if self.obj or B.shape[0] == 0:
            return
        k = B.shape[0]
        if k * (p - 1) ** 2 < _F64_EXACT:
            self.limbs = [(1, B.astype(np.float64))]
            return
        s = (_F64_EXACT // (k * (p - 1))).bit_length() - 1
        if s < 1:
            return
        mask = (1 << s) - 1
        Bw = B.copy()
        shift = 1
        while Bw.any():
            self.limbs.append((shift, (Bw & mask).astype(np.float64)))
            Bw >>= s
            shift = (shift << s) % p

    def rmul(self, A: np.ndarray) -> np.ndarray:
        p, B = self.p, self.B
        if self.obj or A.dtype == object:
            return np.asarray(A.dot(B) % p)
        shape = A.shape[:-1] + B.shape[1:]
        if B.shape[0] == 0:
            return np.zeros(shape, dtype=np.int64)
        if not self.limbs:
            out = np.zeros(shape, dtype=np.int64)
            for i in range(B.shape[0]):
                out = (out + np.multiply.outer(A[..., i], B[i]) % p) % p
            return out
        Af = A.astype(np.float64)
        out = None
        for shift, limb in self.limbs:
            part = np.mod(Af @ limb, p).astype(np.int64)
            if shift != 1:
                part = part * shift % p
            out = part if out is None else (out + part) % p
        return out


def matmul(A, B, p):
    """``A @ B mod p`` exactly, via float64 BLAS on limbs small enough to be exact."""
    return ModMatrix(B, p).rmul(A)


def _np_charpoly(A, p):
    n = A.shape[0]
    H = A.copy()
    for j in range(n - 2):
        col = H[j + 1:, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            H[[piv, j + 1], :] = H[[j + 1, piv], :]
            H[:, [piv, j + 1]] = H[:, [j + 1, piv]]
        inv = pow(int(H[j + 1, j]), -1, p)
        u = H[j + 2:, j] * inv % p
        if not u.any():
            continue
        H[j + 2:, :] = (H[j + 2:, :] - np.multiply.outer(u, H[j + 1, :]) % p) % p
        H[:, j + 1] = (H[:, j + 1] + matmul(H[:, j + 2:], u, p)) % p
    polys = [np.array([1], dtype=A.dtype)]
    for m in range(1, n + 1):
        hmm = int(H[m - 1, m - 1])
        prev = polys[m - 1]
        cur = _zeros_like(prev, m + 1)
        cur[1:] += prev
        cur[:m] -= hmm * prev
        cur %= p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * int(H[i, i - 1]) % p
            coef = int(H[i - 1, m - 1]) * t % p
            if coef:
                cur[:i] = (cur[:i] - coef * polys[i - 1]) % p
        polys.append(cur)
    return polys[n]


def charpoly(A, p):
    """Characteristic polynomial det(lambda*I - A) by Hessenberg reduction."""
    n = A.shape[0]
    if n == 0:
        return np.array([1], dtype=A.dtype)
    if _jit(A):
        return _nb_charpoly(np.ascontiguousarray(A), p)
    return _np_charpoly(A.copy(), p)
