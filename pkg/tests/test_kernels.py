"""The numba and numpy backends must agree bit for bit."""
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fqreduce import _kernels as K
from fqreduce.field import PrimeField, Rng
from fqreduce.poly import ModCtx, Poly, berlekamp_massey, random_poly

pytestmark = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba unavailable")

PRIMES = [2, 3, 97, 65521, 2147483647]


def both(fn):
    out = {}
    for name in ("numba", "numpy"):
        prev = K.set_backend(name)
        try:
            out[name] = fn()
        finally:
            K.set_backend(prev)
    return out["numba"], out["numpy"]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def arrays(p, max_size):
    return st.lists(st.integers(0, p - 1), min_size=0, max_size=max_size).map(
        lambda v: np.array(v, dtype=np.int64))


@pytest.mark.parametrize("p", PRIMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_mul_divrem_gcd_agree(p, data):
    a = data.draw(arrays(p, 80))
    b = data.draw(arrays(p, 60))
    assert same(*both(lambda: K.mul(a, b, p)))
    b = K.trim(b)
    if b.size:
        assert same(*both(lambda: K.divrem(a, b, p)))
        assert same(*both(lambda: K.gcd(a, b, p)))
    if K.trim(a).size:
        assert same(*both(lambda: K.gcd(b, K.trim(a), p)))


@pytest.mark.parametrize("p", PRIMES)
def test_karatsuba_sizes_agree(p):
    r = Rng(p)
    F = PrimeField(p)
    for la, lb in ((200, 200), (700, 300), (1024, 1000)):
        a, b = r.elements(F, la), r.elements(F, lb)
        x, y = both(lambda: K.mul(a, b, p))
        assert same(x, y)
        assert same(x, K.trim(np.convolve(a.astype(object), b.astype(object)) % p))


@pytest.mark.parametrize("p", [2, 101, 2147483647])
def test_powmod_and_frobenius_matrix_agree(p):
    F = PrimeField(p)
    r = Rng(9)
    for n in (1, 3, 30, 150, 400):
        f = random_poly(n, F, r)
        a = random_poly(n - 1, F, r, monic=False)
        e = r.uniform(0, 1 << 61)
        x, y = both(lambda: ModCtx(f).powmod(a, e))
        assert x == y
        x, y = both(lambda: ModCtx(f).frob_matrix)
        assert same(x, y)


@pytest.mark.parametrize("p", [2, 13, 65521, 2147483647])
def test_charpoly_agrees_with_sympy(p):
    r = Rng(p)
    F = PrimeField(p)
    for n in (1, 2, 7, 20):
        A = r.elements(F, n * n).reshape(n, n)
        x, y = both(lambda: K.charpoly(A, p))
        assert same(x, y)
        want = sympy.Matrix(A.tolist()).charpoly().all_coeffs()[::-1]
        assert [int(v) for v in x] == [int(c) % p for c in want]


@pytest.mark.parametrize("p", [2, 65521, 2147483647, 2305843009213693951])
def test_matmul_exact(p):
    r = Rng(1)
    F = PrimeField(p)
    for k in (1, 5, 64):
        A = r.elements(F, 3 * k).reshape(3, k)
        B = r.elements(F, k * 4).reshape(k, 4)
        got = K.matmul(A, B, p)
        want = (A.astype(object).dot(B.astype(object))) % p
        assert [[int(v) for v in row] for row in got] == [[int(v) for v in row] for row in want]


def test_berlekamp_massey_agrees():
    F = PrimeField(65521)
    seq = Rng(2).elements(F, 60)
    x, y = both(lambda: berlekamp_massey(seq, F))
    assert x == y


def test_lazy_bound():
    assert K.lazy_ok(1000, 65521)
    assert not K.lazy_ok(10, 2147483647)


def test_set_backend_validates():
    with pytest.raises(ValueError):
        K.set_backend("fortran")
    prev = K.set_backend("numpy")
    assert K.set_backend(prev) == "numpy"


def test_object_dtype_path():
    p = 2305843009213693951
    F = PrimeField(p)
    r = Rng(4)
    f = random_poly(40, F, r)
    a = random_poly(39, F, r, monic=False)
    ctx = ModCtx(f)
    got = ctx.powmod(a, p)
    sp = sympy.polys.galoistools.gf_pow_mod(a.coeffs()[::-1], p, f.coeffs()[::-1], p, sympy.ZZ)
    assert got == Poly(F, [int(c) for c in sp[::-1]])
