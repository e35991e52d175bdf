import pytest

from conftest import P
from fqreduce._ntheory import totient
from fqreduce.errors import DegenerateDifference, NotSquarefree, OracleInconsistent, OracleLied
from fqreduce.factor import engine_calls, factor, factor_degree_ref, is_irreducible
from fqreduce.field import PrimeField, Rng
from fqreduce.frobenius import frob_minpoly
from fqreduce.poly import ModCtx, Poly, cyclotomic, random_monic_squarefree
from fqreduce.reductions import (
    CycloFactorSet, DegreeCertificate, OracleSet, easy_directions, factor_degree_via_carlitz,
    factor_degree_via_determinant, find_cyclotomic, find_k, find_order, find_T,
    reduce_factor_via_factordegree, reduce_factor_via_frobminpoly, small_degree_bound,
    validate_smallest_degree,
)

PHI7 = (P(2, 1, 1, 0, 1), P(2, 1, 0, 1, 1))


def test_small_degree_bound_exact():
    for n in range(1, 3000):
        t = small_degree_bound(n)
        assert t**3 >= n * n and (t - 1) ** 3 < n * n


# -- factoring from factor degrees -------------------------------------------------


def test_factordegree_stage_two_skipped_when_t_covers(rng):
    f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1)
    stats = {}
    calls = []
    fac = reduce_factor_via_factordegree(f, lambda g: calls.append(g) or factor_degree_ref(g), t=2,
                                         rng=rng, stats=stats)
    assert fac == factor(f, rng) and stats["rounds"] == 0 and not calls


def test_factordegree_example_one_round_per_degree(rng):
    f = P(2, 0, 1) * P(2, 1, 1) * PHI7[0] * PHI7[1]
    stats = {}
    fac = reduce_factor_via_factordegree(f, factor_degree_ref, t=1, rng=rng, stats=stats)
    assert [g for g, _ in fac] == [P(2, 0, 1), P(2, 1, 1), PHI7[1], PHI7[0]]
    assert stats["rounds"] == 1


def test_factordegree_handles_composite_degree_claims(rng):
    # degree 4 claimed while degree-2 factors are still present above t = 1
    F = PrimeField(2)
    f = P(2, 1, 1, 1) * P(2, 1, 1, 0, 0, 1) * P(2, 1, 0, 0, 1, 1)
    order = iter([4, 2])
    fac = reduce_factor_via_factordegree(f, lambda g: next(order), t=1, rng=rng)
    assert fac == factor(f, rng)


def test_factordegree_detects_lies(rng):
    f = PHI7[0] * PHI7[1]
    with pytest.raises(OracleLied):
        reduce_factor_via_factordegree(f, lambda g: 2, t=1, rng=rng)
    with pytest.raises(OracleLied):
        reduce_factor_via_factordegree(f, lambda g: 9, t=1, rng=rng)
    with pytest.raises(NotSquarefree):
        reduce_factor_via_factordegree(PHI7[0] ** 2, factor_degree_ref, rng=rng)


# -- cyclotomic subroutines ---------------------------------------------------------


def test_find_order_examples():
    L = [PHI7[0]]
    assert find_order(2, L) == 1
    assert find_order(3, L) == 2
    assert find_order(7, L) == 0


def test_find_cyclotomic_examples(rng):
    assert list(find_cyclotomic(P(2, 1, 1, 1), 10, rng)) == [P(2, 1, 1, 1)]
    assert set(find_cyclotomic(PHI7[0], 10, rng)) == set(PHI7)
    assert list(find_cyclotomic(P(3, 1, 1), 10, rng)) == [P(3, 1, 1)]


def test_find_k_examples(rng):
    assert find_k(6, PHI7[0], rng) == 7
    assert find_k(1, P(5, 4, 1), rng) == 1
    assert find_k(2, P(3, 1, 0, 1), rng) == 4


def test_find_T_examples(rng):
    c = find_T([(P(3, 2, 1), 2)], 4, rng)
    assert c.T == {1} and c.multiplicities == {1: 2} and c.S == [1]
    c = find_T([(P(2, 1, 1), 2)], 4, rng)
    assert c.multiplicities == {1: 2} and c.S == [1, 2]
    c = find_T([(PHI7[0], 1), (PHI7[1], 1)], 10, rng)
    assert c.T == {7} and c.S == [7]


def test_degree_certificate_S():
    cert = DegreeCertificate(3, {1: 9, 4: 2})
    assert cert.S == [1, 3, 4, 9]
    assert cert.weight() == 9 + 2 * totient(4)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_certificate_contains_every_factor_degree(q, rng):
    F = PrimeField(q)
    for _ in range(12):
        f = random_monic_squarefree(rng.uniform(2, 40), F, rng)
        g = frob_minpoly(ModCtx(f), rng)
        gfac = list(factor(g, rng))
        cert = find_T(gfac, f.deg, rng)
        assert set(factor(f, rng).degrees()) <= set(cert.S)
        assert cert.weight() <= g.deg <= f.deg


# -- factoring from the Frobenius minimal polynomial ---------------------------------


def test_frobminpoly_irreducible_and_small(rng):
    oracles = OracleSet.independent(rng.child())
    g = PHI7[0]
    assert reduce_factor_via_frobminpoly(g, oracles.frob_minpoly, rng).factors == ((g, 1),)
    assert oracles.frob_minpoly.calls == 0


@pytest.mark.parametrize("q", [2, 3, 97])
def test_frobminpoly_matches_factor(q, rng):
    F = PrimeField(q)
    for _ in range(10):
        n = rng.uniform(20, 90)
        f = random_monic_squarefree(n, F, rng)
        oracles = OracleSet.independent(rng.child())
        stats = {}
        fac = reduce_factor_via_frobminpoly(f, oracles.frob_minpoly, rng, stats)
        assert fac == factor(f, rng)
        assert not stats["fallback"]
        assert oracles.frob_minpoly.engine_calls == 0


def _irreducible(n, field, rng):
    while True:
        h = random_monic_squarefree(n, field, rng)
        if is_irreducible(h):
            return h


def test_frobminpoly_rejects_wrong_oracle(rng):
    F = PrimeField(2)
    f = _irreducible(10, F, rng) * _irreducible(11, F, rng)
    with pytest.raises(OracleInconsistent):
        reduce_factor_via_frobminpoly(f, lambda g: Poly.monomial(F, 3) - 1, rng)
    calls = []
    good = OracleSet.reference(rng).frob_minpoly
    fac = reduce_factor_via_frobminpoly(f, lambda g: calls.append(g) or good(g), rng)
    assert calls and sorted(fac.degrees()) == [10, 11]


def test_independent_oracles_never_enter_engine(rng):
    F = PrimeField(3)
    f = random_monic_squarefree(30, F, rng)
    oracles = OracleSet.independent(rng)
    oracles.factor_degree(f)
    oracles.frob_minpoly(f)
    oracles.carlitz_charpoly(f)
    oracles.moore_zero(f, 4)
    assert all(o.engine_calls == 0 and o.calls == 1 for o in oracles)
    ref = OracleSet.reference(rng)
    ref.frob_minpoly(f)
    assert ref.frob_minpoly.engine_calls > 0
    before = engine_calls.value
    factor(f, rng)
    assert engine_calls.value > before


# -- factor degree estimators ----------------------------------------------------------


def test_carlitz_degree_examples():
    g = PHI7[0]
    assert factor_degree_via_carlitz(g) == (3, True)
    f = P(5, 0, 1) * P(5, 1, 1) * P(5, 2, 0, 1)
    assert factor_degree_via_carlitz(f) == (1, True)
    with pytest.raises(DegenerateDifference):
        factor_degree_via_carlitz(P(3, 0, 2, 0, 1))


def test_carlitz_degree_flags_untrusted():
    # two linear factors over F_2: p divides the count, the estimate is not the minimum
    f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1)
    assert factor_degree_via_carlitz(f) == (2, False)
    assert factor_degree_via_carlitz(P(2, 0, 1) * P(2, 1, 1) * PHI7[0]) == (3, False)
    assert validate_smallest_degree(f, 1) and not validate_smallest_degree(f, 2)


def test_determinant_degree_examples():
    f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1)
    for which in ("moore", "vandermonde"):
        assert factor_degree_via_determinant(f, which) == 2
        assert factor_degree_via_determinant(PHI7[0], which) == 3


def test_easy_directions_examples():
    g = PHI7[0]
    assert easy_directions(g, "frob_minpoly") == P(2, 1, 0, 0, 1)
    assert easy_directions(g, "frob_charpoly") == P(2, 1, 0, 0, 1)
    assert easy_directions(g, "carlitz_charpoly") == g - 1
    f = P(2, 0, 1) * P(2, 1, 1) * P(2, 1, 1, 1)
    assert easy_directions(f, "frob_minpoly") == P(2, 1, 0, 1)
    assert easy_directions(P(2, 0, 1, 1), "carlitz_charpoly") == P(2, 0, 1, 1)


def test_cyclo_factor_set_dedups():
    L = CycloFactorSet([PHI7[0], PHI7[0], PHI7[1]])
    assert len(L) == 2 and L.product() == cyclotomic(7, PrimeField(2))
