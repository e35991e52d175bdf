import itertools

import pytest

from fqreduce import _kernels as K
from fqreduce.field import PrimeField, Rng
from fqreduce.poly import Poly

EXHAUSTIVE = ((2, 8), (3, 6), (5, 4))


def P(q, *coeffs):
    """Polynomial over F_q from ascending coefficients."""
    return Poly(PrimeField(q), list(coeffs))


def monic_polys(q, deg):
    field = PrimeField(q)
    for tail in itertools.product(range(q), repeat=deg):
        yield Poly(field, list(tail) + [1])


def exhaustive(limits=EXHAUSTIVE):
    for q, top in limits:
        for d in range(1, top + 1):
            yield from monic_polys(q, d)


@pytest.fixture
def rng():
    return Rng(20240611)


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not K.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    prev = K.set_backend(request.param)
    yield request.param
    K.set_backend(prev)
