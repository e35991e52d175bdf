import pytest

from conftest import P
from fqreduce.carlitz import CarlitzCtx, carlitz_apply, carlitz_charpoly, smallest_degree_via_carlitz
from fqreduce.errors import DegenerateDifference, NotSquarefree
from fqreduce.factor import factor
from fqreduce.field import PrimeField, Rng
from fqreduce.poly import Factorization, ModCtx, Poly, random_monic_squarefree, random_poly


def test_apply_examples(rng):
    F = PrimeField(7)
    f = random_monic_squarefree(5, F, rng)
    cctx = CarlitzCtx(f)
    a = random_poly(4, F, rng, monic=False)
    assert carlitz_apply(P(7, 3), a, cctx) == a * 3
    assert carlitz_apply(P(7, 0, 1), P(7, 1), cctx) == P(7, 1, 1)
    c2 = CarlitzCtx(P(2, 1, 1, 1))
    assert carlitz_apply(P(2, 0, 1), P(2, 0, 1), c2).is_zero()


def test_apply_on_non_squarefree_modulus(rng):
    f = P(3, 1, 1) ** 2 * P(3, 0, 1)
    cctx = CarlitzCtx(ModCtx(f))
    a = P(3, 2, 0, 1)
    assert carlitz_apply(P(3, 0, 1), a, cctx) == ModCtx(f).reduce(a**3 + a * P(3, 0, 1))


@pytest.mark.parametrize("q", [2, 3, 101])
def test_module_laws(q, rng):
    F = PrimeField(q)
    f = random_monic_squarefree(8, F, rng)
    cctx = CarlitzCtx(f)
    ctx = cctx.ctx
    for _ in range(10):
        m1 = random_poly(rng.uniform(0, 5), F, rng, monic=False)
        m2 = random_poly(rng.uniform(0, 5), F, rng, monic=False)
        a = random_poly(7, F, rng, monic=False)
        b = random_poly(7, F, rng, monic=False)
        assert carlitz_apply(m1 + m2, a, cctx) == carlitz_apply(m1, a, cctx) + carlitz_apply(m2, a, cctx)
        assert carlitz_apply(m1, a + b, cctx) == carlitz_apply(m1, a, cctx) + carlitz_apply(m1, b, cctx)
        assert carlitz_apply(m1 * m2, a, cctx) == carlitz_apply(m1, carlitz_apply(m2, a, cctx), cctx)
        assert cctx.rho_x(a) == ctx.reduce(ctx.powmod(a, q) + a * P(q, 0, 1))


def test_matrix_rows_are_images_of_monomials(rng):
    F = PrimeField(5)
    cctx = CarlitzCtx(random_monic_squarefree(7, F, rng))
    M = cctx.matrix()
    for j in range(7):
        assert cctx.ctx.from_vec(M[j]) == cctx.rho_x(Poly.monomial(F, j))


def test_charpoly_examples(rng):
    g = P(2, 1, 1, 0, 1)
    for mode in ("direct", "from_factors"):
        fac = factor(g, rng) if mode == "from_factors" else None
        assert carlitz_charpoly(g, mode, fac) == g - 1
    f = P(2, 1, 1, 1)
    assert carlitz_charpoly(f) == P(2, 0, 1, 1)
    assert carlitz_charpoly(P(2, 0, 1, 1)) == P(2, 0, 1, 1)


def test_charpoly_from_factors_rejects_multiplicities():
    F = PrimeField(3)
    fac = Factorization(F, ((P(3, 1, 1), 2),))
    with pytest.raises(NotSquarefree):
        carlitz_charpoly(P(3, 1, 1) ** 2, "from_factors", fac)
    with pytest.raises(NotSquarefree):
        carlitz_charpoly(P(3, 1, 1) ** 2, "direct")


@pytest.mark.parametrize("q", [2, 3, 5, 101])
def test_charpoly_modes_agree(q, rng):
    F = PrimeField(q)
    for _ in range(75):
        f = random_monic_squarefree(rng.uniform(1, 48), F, rng)
        chi = carlitz_charpoly(f, "direct")
        assert chi == carlitz_charpoly(f, "from_factors", factor(f, rng))
        assert chi.is_monic() and chi.deg == f.deg


def test_smallest_degree_examples():
    f = P(2, 1, 1, 1)
    assert smallest_degree_via_carlitz(f, P(2, 0, 1, 1)) == 2
    g = P(3, 0, 2, 0, 1)
    with pytest.raises(DegenerateDifference):
        smallest_degree_via_carlitz(g, carlitz_charpoly(g))
    h = P(5, 0, 1, 1)
    chi = carlitz_charpoly(h)
    assert chi == P(5, 0, 4, 1)
    assert smallest_degree_via_carlitz(h, chi) == 1
