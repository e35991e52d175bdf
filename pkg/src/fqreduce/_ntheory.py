"""Small-integer number theory helpers (primality, factoring, totient)."""
from functools import lru_cache
from math import isqrt

# Deterministic for every n < 3.3e24, in particular for all n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorint(n: int) -> tuple:
    """Trial-division factorization as a tuple of (prime, exponent)."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list:
    divs = [1]
    for ell, e in factorint(n):
        divs = [d * ell**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    out = n
    for ell, _ in factorint(n):
        out = out // ell * (ell - 1)
    return out


def mobius(n: int) -> int:
    fs = factorint(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def ilog(n: int, base: int) -> int:
    """Largest e with base**e <= n (n >= 1)."""
    e, acc = 0, base
    while acc <= n:
        acc *= base
        e += 1
    return e


__all__ = ["is_prime", "factorint", "divisors", "totient", "mobius", "ilog", "isqrt"]
