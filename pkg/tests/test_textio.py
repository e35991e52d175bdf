import pytest

from conftest import P
from fqreduce.errors import ParseError
from fqreduce.field import PrimeField, Rng
from fqreduce.poly import Factorization, random_poly
from fqreduce.textio import format_factorization, format_poly, parse_line, parse_poly


def test_roundtrip_fuzz():
    r = Rng(2024)
    primes = [2, 3, 5, 101, 65537, 2305843009213693951]
    for i in range(10**4):
        F = PrimeField(primes[i % len(primes)])
        f = random_poly(r.uniform(0, 30), F, r, monic=r.uniform(0, 1) == 1)
        if f.is_zero():
            continue
        assert parse_poly(format_poly(f)) == f


def test_format_examples():
    assert format_poly(P(2, 0, 1, 0, 0, 1, 1)) == "q=2 f=0,1,0,0,1,1"
    assert format_poly(P(3, 1, 1), 3) == "q=3 f=1,1^3"
    assert format_poly(P(7)) == "q=7 f=0"


def test_whitespace_tolerant():
    assert parse_poly("  q = 5   f = 1, 2 ,3 \n\n") == P(5, 1, 2, 3)
    assert parse_line("q=3 f=1,1^2", with_mult=True) == (P(3, 1, 1), 2)


@pytest.mark.parametrize("text", [
    "q=4 f=1,1",          # not prime
    "q=5 f=1,5",          # residue not reduced
    "q=5 f=1,0",          # leading zero
    "q=5 f=",             # empty
    "q=5 f=1,,2",         # empty coefficient
    "p=5 f=1,1",          # wrong key
    "q=5 f=1,1^2",        # multiplicity not expected
    "q=5 f=1,1\nq=5 f=1", # two lines
    "q=5 f=-1,1",         # sign
])
def test_rejects(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_factorization_lines_sorted():
    F = PrimeField(2)
    fac = Factorization(F, ((P(2, 1, 1, 1), 2), (P(2, 0, 1), 1)))
    assert format_factorization(fac) == "q=2 f=0,1\nq=2 f=1,1,1^2"
