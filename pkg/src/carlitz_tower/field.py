"""Finite fields F_q = F_p[x]/(modulus).

Elements are plain integers in ``range(q)``: the code of
``c_0 + c_1 x + ... + c_{r-1} x^{r-1}`` is ``sum c_i p^i``.  For prime
fields the code is the residue itself.  Hot loops work on codes; the
:class:`FFElem` wrapper is for callers who want operators.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _intpoly, config
from .errors import CeilingError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.r < 1 or len(self.modulus) != self.r + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r")
        if not _intpoly.is_irreducible_fp(list(self.modulus), self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def is_prime_field(self) -> bool:
        return self.r == 1

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r}, modulus={list(self.modulus)})"

    # -- coordinates -------------------------------------------------
    def to_vector(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.r)]

    def from_vector(self, v) -> int:
        v = list(v)
        if len(v) > self.r:
            v = _intpoly.mod(v, list(self.modulus), self.p)
        return sum((c % self.p) * self.p**i for i, c in enumerate(v))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- dense tables (extension fields) -----------------------------
    @functools.cached_property
    def _tables(self):
        addt, mult, negt, invt = self.numpy_tables()
        return addt.tolist(), mult.tolist(), negt.tolist(), invt.tolist()

    @functools.lru_cache(maxsize=None)
    def numpy_tables(self):
        """(add, mul, neg, inv) as int32 arrays; inv[0] is 0."""
        q, p, r = self.q, self.p, self.r
        if q > config.TABLE_LIMIT:
            raise CeilingError(f"q = {q} exceeds the table limit {config.TABLE_LIMIT}")
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p**i) % p for i in range(r)], axis=1)
        weights = p ** np.arange(r, dtype=np.int64)
        sums = (digits[:, None, :] + digits[None, :, :]) % p
        addt = (sums * weights).sum(axis=2)
        negt = ((-digits) % p * weights).sum(axis=1)
        # one row of the product table at a time keeps memory at O(q r)
        mult = np.zeros((q, q), dtype=np.int64)
        mod = self.modulus
        for a in range(q):
            prod = np.zeros((q, 2 * r - 1), dtype=np.int64)
            for i in range(r):
                if digits[a, i]:
                    prod[:, i:i + r] += digits[a, i] * digits
            prod %= p
            for k in range(2 * r - 2, r - 1, -1):
                c = prod[:, k].copy()
                for i in range(r + 1):
                    prod[:, k - r + i] = (prod[:, k - r + i] - c * mod[i]) % p
            mult[a] = (prod[:, :r] * weights).sum(axis=1)
        invt = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(mult == 1)
        invt[rows] = cols
        return (addt.astype(np.int32), mult.astype(np.int32),
                negt.astype(np.int32), invt.astype(np.int32))

    # -- arithmetic on codes -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self._tables[0][a][b]

    def neg(self, a: int) -> int:
        if self.r == 1:
            return -a % self.p
        return self._tables[2][a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        return self._tables[1][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.r == 1:
            return pow(a, -1, self.p)
        return self._tables[3][a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.r == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def elem(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            return value
        if isinstance(value, (list, tuple)):
            return FFElem(self, self.from_vector(value))
        if self.r == 1:
            return FFElem(self, value % self.p)
        if not 0 <= value < self.q:
            raise ValueError(f"code {value} outside range({self.q})")
        return FFElem(self, value)

    def format(self, a: int) -> str:
        if self.r == 1:
            return str(a)
        return "[" + ",".join(map(str, self.to_vector(a))) + "]"


@dataclass(frozen=True)
class FFElem:
    field: FieldSpec
    code: int

    def _other(self, o):
        if isinstance(o, FFElem):
            if o.field != self.field:
                raise ValueError("elements of different fields")
            return o.code
        if isinstance(o, int):
            return self.field.from_int(o)
        return NotImplemented

    def __add__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FFElem(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FFElem(self.field, self.field.sub(self.code, c))

    def __rsub__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FFElem(self.field, self.field.sub(c, self.code))

    def __mul__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FFElem(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FFElem(self.field, self.field.div(self.code, c))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    @property
    def vector(self):
        return self.field.to_vector(self.code)

    def __repr__(self):
        return self.field.format(self.code)


@functools.lru_cache(maxsize=None)
def make_field(p: int, r: int = 1) -> FieldSpec:
    """F_{p^r} with the least monic irreducible modulus (by code)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"extension degree must be positive, got {r!r}")
    if p**r > config.ENUM_CEILING:
        raise CeilingError(f"q = {p}^{r} exceeds the enumeration ceiling")
    return FieldSpec(p, r, tuple(_intpoly.least_irreducible(p, r)))


def field_for_q(q: int) -> FieldSpec:
    """Field of order q (a prime power)."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return make_field(p, r)
