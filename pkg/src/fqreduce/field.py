"""Prime field scalars and seeded randomness.

Field elements are plain Python ints held in canonical form ``0 <= a < p``;
the :class:`PrimeField` object carries the modulus and the numpy dtype used
for coefficient arrays (``int64`` whenever products of two residues fit in a
signed 64-bit word, Python ``object`` otherwise).
"""
from __future__ import annotations

import numpy as np

from ._ntheory import is_prime
from .errors import DivisionByZero, EmptyRange, NotPrime, TooLarge

MAX_MODULUS = 1 << 62
# Below this bound a*b of two residues fits in int64 and numba kernels apply.
NATIVE_BOUND = 1 << 31


class PrimeField:
    """The field F_p for a prime ``p < 2**62``."""

    __slots__ = ("p", "dtype", "native")

    def __init__(self, p: int):
        p = int(p)
        if p >= MAX_MODULUS:
            raise TooLarge(f"modulus {p} is not below 2**62")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.native = p < NATIVE_BOUND
        self.dtype = np.dtype(np.int64) if self.native else np.dtype(object)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def __call__(self, value: int) -> int:
        return int(value) % self.p

    @property
    def q(self) -> int:
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return pow(a, -1, self.p)

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a % self.p, e, self.p)

    def array(self, values) -> np.ndarray:
        """Canonical coefficient array for ``values`` (reduced mod p)."""
        if self.native:
            arr = np.asarray(values, dtype=np.int64) if not isinstance(values, np.ndarray) \
                else values.astype(np.int64, copy=True)
            return np.mod(arr, self.p)
        arr = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            arr[i] = int(v) % self.p
        return arr

    def zeros(self, n: int) -> np.ndarray:
        if self.native:
            return np.zeros(n, dtype=np.int64)
        arr = np.empty(n, dtype=object)
        arr[:] = 0
        return arr


def field_new(p: int) -> PrimeField:
    return PrimeField(p)


def arith(field: PrimeField, a: int, b: int | None, kind: str, e: int | None = None) -> int:
    """Dispatch form of the scalar operations: kind in add/sub/mul/inv/pow."""
    if kind == "add":
        return field.add(a, b)
    if kind == "sub":
        return field.sub(a, b)
    if kind == "mul":
        return field.mul(a, b)
    if kind == "inv":
        return field.inv(a)
    if kind == "pow":
        return field.pow(a, b if e is None else e)
    raise ValueError(f"unknown operation {kind!r}")


class Rng:
    """Counter-based (Philox) generator with an explicit 64-bit seed.

    Integer draws go through numpy's bounded-integer sampler, which rejects
    to remove modulo bias.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.Philox(self.seed))
        self._children = 0

    def __repr__(self):
        return f"Rng(seed={self.seed})"

    def uniform(self, lo: int, hi: int) -> int:
        if lo > hi:
            raise EmptyRange(f"empty range [{lo}, {hi}]")
        if hi - lo < (1 << 63) - 1:
            return int(lo + self._gen.integers(0, hi - lo + 1))
        span = hi - lo + 1
        nbits = span.bit_length()
        while True:
            words = self._gen.integers(0, 1 << 32, size=(nbits + 31) // 32)
            v = 0
            for w in words:
                v = (v << 32) | int(w)
            v >>= 32 * len(words) - nbits
            if v < span:
                return lo + v

    def elements(self, field: PrimeField, size: int) -> np.ndarray:
        """``size`` independent uniform elements of ``field``."""
        if field.native:
            return self._gen.integers(0, field.p, size=size, dtype=np.int64)
        out = np.empty(size, dtype=object)
        for i in range(size):
            out[i] = self.uniform(0, field.p - 1)
        return out

    def child(self) -> "Rng":
        """Independent generator derived from this one's seed and a counter."""
        self._children += 1
        mixed = np.random.SeedSequence([self.seed, self._children]).generate_state(2, np.uint32)
        return Rng((int(mixed[0]) << 32) | int(mixed[1]))


def rng_uniform(r: Rng, lo: int, hi: int) -> int:
    return r.uniform(lo, hi)
