import itertools

import pytest

from conftest import P
from fqreduce.factor import factor, is_irreducible
from fqreduce.field import PrimeField, Rng
from fqreduce.frobenius import (
    FrobTable, LinearFunctional, annihilates_frobenius, automorphism_projection, frob_charpoly,
    frob_charpoly_from_degrees, frob_minpoly, frob_powers, matrix_minpoly,
)
from fqreduce.poly import ModCtx, Poly, berlekamp_massey, lcm, modcompose, random_monic_squarefree


def test_frob_table_examples():
    ctx = ModCtx(P(2, 1, 1, 1))
    table = frob_powers(ctx, [0, 1, 2])
    assert table[0] == P(2, 0, 1)
    assert table[1] == P(2, 1, 1)
    assert table[2] == P(2, 0, 1)


@pytest.mark.parametrize("q,n", [(2, 7), (3, 5), (101, 4)])
def test_frob_table_irreducible_period(q, n, rng):
    F = PrimeField(q)
    while True:
        f = random_monic_squarefree(n, F, rng)
        if is_irreducible(f):
            break
    table = FrobTable(ModCtx(f))
    assert table[n] == P(q, 0, 1)
    assert table[1] != P(q, 0, 1) or n == 1


@pytest.mark.parametrize("method", ["iterate", "doubling"])
def test_frob_table_methods_agree(method, rng):
    F = PrimeField(7)
    f = random_monic_squarefree(30, F, rng)
    ctx = ModCtx(f)
    idx = [1, 2, 5, 13, 40, 64]
    got = frob_powers(ctx, idx, method)
    for i in idx:
        assert got[i] == ctx.powmod(P(7, 0, 1), 7**i)
    for i in (1, 2, 5):
        assert got[2 * i] == modcompose(got[i], got[i], ctx)


def test_linear_functional_is_linear(rng):
    F = PrimeField(101)
    u = LinearFunctional.random(F, 6, rng)
    a = Poly(F, rng.elements(F, 6))
    b = Poly(F, rng.elements(F, 6))
    assert u(a + b) == (u(a) + u(b)) % 101
    assert u(a * 7) == 7 * u(a) % 101


def test_automorphism_projection_examples(rng):
    ctx = ModCtx(P(2, 1, 1, 1))
    u = LinearFunctional.coefficient(PrimeField(2), 2, 1)
    assert automorphism_projection(ctx, P(2, 0, 1), u, 2) == [1, 1]
    F = PrimeField(5)
    ctx = ModCtx(random_monic_squarefree(6, F, rng))
    v = LinearFunctional.random(F, 6, rng)
    assert automorphism_projection(ctx, P(5, 3), v, 6) == [v(P(5, 3))] * 6
    zero = LinearFunctional(F, [0] * 6)
    assert automorphism_projection(ctx, P(5, 1, 2, 3), zero, 6) == [0] * 6


def test_frob_minpoly_examples(rng):
    for mode in ("independent", "reference"):
        assert frob_minpoly(ModCtx(P(2, 1, 1, 0, 1)), rng, mode) == P(2, 1, 0, 0, 1)
        f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1)
        assert frob_minpoly(ModCtx(f), rng, mode) == P(2, 1, 0, 1)
        assert frob_minpoly(ModCtx(P(3, 0, 2, 1)), rng, mode) == P(3, 2, 1)


def _reference_minpoly(f, rng):
    out = Poly.one(f.field)
    for d in set(factor(f, rng).degrees()):
        out = lcm(out, Poly.monomial(f.field, d) - 1)
    return out


@pytest.mark.parametrize("q", [2, 3, 5, 101])
def test_frob_minpoly_random_with_minimality(q, rng):
    F = PrimeField(q)
    for _ in range(15):
        n = rng.uniform(1, 12)
        f = random_monic_squarefree(n, F, rng)
        ctx = ModCtx(f)
        g = frob_minpoly(ctx, rng)
        assert g == _reference_minpoly(f, rng)
        assert g.deg <= n and annihilates_frobenius(g, ctx)
        # no proper monic divisor annihilates
        parts = factor(g, rng).factors
        for exps in itertools.product(*[range(e + 1) for _, e in parts]):
            d = Poly.one(F)
            for (h, _), k in zip(parts, exps):
                d = d * h**k
            if d != g:
                assert not annihilates_frobenius(d, ctx)


def test_projection_recurrence_divides_minpoly(rng):
    F = PrimeField(3)
    for _ in range(10):
        f = random_monic_squarefree(10, F, rng)
        ctx = ModCtx(f)
        g = _reference_minpoly(f, rng)
        alpha = Poly(F, rng.elements(F, 10))
        u = LinearFunctional.random(F, 10, rng)
        seq = [u(ctx.reduce(alpha))] + automorphism_projection(ctx, alpha, u, 19)
        assert (g % berlekamp_massey(seq, F)).is_zero()


def test_frob_minpoly_matrix_fallback_agrees(rng):
    F = PrimeField(2)
    f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1) * P(2, 1, 1, 0, 1)
    ctx = ModCtx(f)
    stats = {}
    assert frob_minpoly(ctx, rng, rounds=0, stats=stats) == _reference_minpoly(f, rng)
    assert stats["fallback"] is True
    assert matrix_minpoly(ctx.frob_operator, F) == _reference_minpoly(f, rng)


def test_frob_charpoly_from_degrees_examples():
    assert frob_charpoly_from_degrees([1], PrimeField(7)) == P(7, 6, 1)
    assert frob_charpoly_from_degrees([1, 1], PrimeField(2)) == P(2, 1, 0, 1)
    assert frob_charpoly_from_degrees([1, 2], PrimeField(3)) == P(3, 1, 2, 2, 1)
    with pytest.raises(ValueError):
        frob_charpoly_from_degrees([], PrimeField(3))


@pytest.mark.parametrize("q", [2, 5, 101])
def test_frob_charpoly_modes_agree(q, rng):
    F = PrimeField(q)
    for n in (1, 4, 9, 20):
        ctx = ModCtx(random_monic_squarefree(n, F, rng))
        assert frob_charpoly(ctx, "independent") == frob_charpoly(ctx, "reference", rng)
