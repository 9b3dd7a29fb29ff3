"""Polynomials in A = F_q[t], monic enumeration, irreducibility, places."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import cache, config
from . import _kernels as K
from ._intpoly import prime_factors
from .errors import CeilingError
from .field import FieldSpec, FFElem


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Element of F_q[t]; coefficients are field codes, lowest degree first."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        self.field = field
        self.coeffs = _trim([c.code if isinstance(c, FFElem) else int(c) for c in coeffs])
        self._hash = None

    # -- constructors ------------------------------------------------
    @classmethod
    def zero(cls, F):
        return cls(F)

    @classmethod
    def one(cls, F):
        return cls(F, (1,))

    @classmethod
    def t(cls, F):
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F, c):
        return cls(F, (c,))

    @classmethod
    def monomial(cls, F, n, c=1):
        return cls(F, [0] * n + [c])

    @classmethod
    def from_code(cls, F, code: int, monic_degree: int | None = None):
        """Inverse of :attr:`code`; with monic_degree, code lists only the lower coefficients."""
        q = F.q
        out = []
        while code:
            code, c = divmod(code, q)
            out.append(c)
        if monic_degree is not None:
            out += [0] * (monic_degree - len(out)) + [1]
        return cls(F, out)

    def _make(self, coeffs):
        return Poly(self.field, coeffs)

    # -- basic data ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def is_monic(self):
        return self.leading == 1

    @property
    def code(self) -> int:
        q = self.field.q
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([self.field.from_int(other)])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def sort_key(self):
        return (self.degree, self.code)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations --------------------------------------------
    def _coerce(self, o):
        if isinstance(o, Poly):
            if o.field != self.field:
                raise ValueError("polynomials over different fields")
            return o
        if isinstance(o, int):
            return Poly(self.field, (self.field.from_int(o),))
        if isinstance(o, FFElem):
            return Poly(self.field, (o.code,))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        F, a, b = self.field, self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if F.r == 1:
            p = F.p
            for i, c in enumerate(b):
                out[i] = (out[i] + c) % p
        else:
            for i, c in enumerate(b):
                out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return Poly(self.field, _mul(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(x, c) for x in self.coeffs])

    def __divmod__(self, o):
        o = self._coerce(o)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        r = list(self.coeffs)
        db = o.degree
        inv = F.inv(o.leading)
        b = o.coeffs
        quot = [0] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = F.mul(r[k], inv)
            if c:
                quot[k - db] = c
                nc = F.neg(c)
                for i, bc in enumerate(b):
                    if bc:
                        r[k - db + i] = F.add(r[k - db + i], F.mul(nc, bc))
        return Poly(F, quot), Poly(F, r[:db])

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def powmod(self, e: int, m: "Poly") -> "Poly":
        if e < 0:
            return self.inverse_mod(m).powmod(-e, m)
        result, base = Poly.one(self.field) % m, self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading))

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, o: "Poly"):
        """(g, s, u) with s*self + u*o = g, g monic."""
        F = self.field
        r0, r1 = self, o
        s0, s1 = Poly.one(F), Poly.zero(F)
        u0, u1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            qq, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qq * s1
            u0, u1 = u1, u0 - qq * u1
        if r0.is_zero():
            return r0, s0, u0
        c = F.inv(r0.leading)
        return r0.scale(c), s0.scale(c), u0.scale(c)

    def inverse_mod(self, m: "Poly") -> "Poly":
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError(f"{self} is not invertible modulo {m}")
        return s % m

    def __call__(self, x: int) -> int:
        """Evaluate at a field element code."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def shift(self, k: int) -> "Poly":
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def subs_power(self, k: int) -> "Poly":
        """f(t^k); equals f^(q^i) when k = q^i since F_q is fixed by Frobenius."""
        out = [0] * (self.degree * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly(self.field, out)

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    # -- display -----------------------------------------------------
    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        F = self.field
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.format(c)
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mon:
                terms.append(cs)
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(cs + mon)
        return " + ".join(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()})"


def _mul(F: FieldSpec, a: tuple, b: tuple) -> list:
    if not a or not b:
        return []
    if F.r == 1:
        p = F.p
        if len(a) * len(b) > 2000 and max(len(a), len(b)) * p * p < 2**52:
            out = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
            return out.tolist()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % p for c in out]
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return out


# -- parsing -----------------------------------------------------------
_TERM = re.compile(r"^(?P<coef>\d+|\[[\d,\s]*\])?\*?(?:(?P<var>[a-zA-Z])(?:\^(?P<exp>\d+))?)?$")


def parse_poly(F: FieldSpec, text: str, var: str = "t") -> Poly:
    """Parse ASCII like ``t^3+t+1``, ``2t^2+1`` or ``[1,1]t+[0,1]``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    pieces = re.findall(r"[+-]?[^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    total = Poly.zero(F)
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("var") and m.group("var") != var) or not body:
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        coef = m.group("coef")
        if coef is None:
            c = 1
        elif coef.startswith("["):
            vec = [int(x) for x in coef[1:-1].split(",") if x]
            if any(not 0 <= x < F.p for x in vec) or len(vec) > F.r:
                raise ValueError(f"bad extension-field coefficient {coef}")
            c = F.from_vector(vec)
        else:
            if int(coef) >= F.p:
                raise ValueError(f"coefficient {coef} is not in 0..{F.p - 1}")
            c = F.from_int(int(coef))
        if sign < 0:
            c = F.neg(c)
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp") or 1)
        total = total + Poly.monomial(F, exp, c)
    return total


# -- enumeration ---------------------------------------------------------
def _check_ceiling(q, d):
    if q**d > config.ENUM_CEILING:
        raise CeilingError(f"{q}^{d} monics exceed the enumeration ceiling {config.ENUM_CEILING}")


def enumerate_monic(F: FieldSpec, d: int, coprime_to: "Place | None" = None) -> list[Poly]:
    """All monic polynomials of degree d in code order, optionally coprime to a finite place."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    _check_ceiling(F.q, d)
    q = F.q
    out = []
    P = coprime_to.poly if coprime_to is not None and not coprime_to.is_infinite else None
    for code in range(q**d):
        digits = []
        c = code
        for _ in range(d):
            c, r = divmod(c, q)
            digits.append(r)
        f = Poly(F, digits + [1])
        if P is not None and (f % P).is_zero():
            continue
        out.append(f)
    return out


def _frobenius_powers(f: Poly, n: int):
    """x^(q^k) mod f for k = 0..n."""
    x = Poly.t(f.field) % f
    out = [x]
    for _ in range(n):
        out.append(out[-1].powmod(f.field.q, f))
    return out


def is_irreducible(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("the zero polynomial has no factorization")
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    F = f.field
    if n <= 4 and F.q ** (n // 2) <= 4096:
        return smallest_factor(f) is None
    frob = _frobenius_powers(f, n)
    if frob[n] != frob[0]:
        return False
    for ell in prime_factors(n):
        if f.gcd(frob[n // ell] - frob[0]).degree > 0:
            return False
    return True


def smallest_factor(f: Poly) -> Poly | None:
    """Least monic factor of degree between 1 and deg(f)/2, by trial division; None if irreducible."""
    F = f.field
    for k in range(1, f.degree // 2 + 1):
        _check_ceiling(F.q, k)
        for g in enumerate_monic(F, k):
            if (f % g).is_zero():
                return g
    return None


def _tables(F: FieldSpec):
    return F.numpy_tables()


def irreducibles(F: FieldSpec, d: int, use_cache: bool = True) -> list[Poly]:
    """Monic irreducibles of degree d in code order (sieved, cached on disk as JSON)."""
    return list(_irreducibles(F, d, use_cache))


@functools.lru_cache(maxsize=None)
def _irreducibles(F: FieldSpec, d: int, use_cache: bool) -> tuple:
    if d < 1:
        return ()
    key = f"irred_p{F.p}_r{F.r}_m{'-'.join(map(str, F.modulus))}_d{d}"
    if use_cache:
        data = cache.load(key)
        if data is not None and data.get("q") == F.q and data.get("degree") == d:
            return tuple(Poly(F, v) for v in data["polys"])
    _check_ceiling(F.q, d)
    if F.q**d * max(1, d // 2) <= 2**26:
        mask = K.reducible_mask(_tables(F), F.q, d)
        polys = tuple(Poly.from_code(F, int(c), monic_degree=d) for c in np.flatnonzero(mask == 0))
    else:
        polys = tuple(f for f in enumerate_monic(F, d) if is_irreducible(f))
    if use_cache:
        cache.store(key, {"q": F.q, "degree": d, "modulus": list(F.modulus),
                          "polys": [list(f.coeffs) for f in polys]})
    return polys


@dataclass(frozen=True)
class Place:
    """A place of F_q(t): the infinite place, or a monic irreducible P."""

    field: FieldSpec
    poly: Poly | None = None

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic() or not is_irreducible(self.poly):
                raise ValueError(f"{self.poly} is not a monic irreducible polynomial")

    @classmethod
    def infinity(cls, F: FieldSpec) -> "Place":
        return cls(F, None)

    @classmethod
    def finite(cls, P: Poly) -> "Place":
        return cls(P.field, P)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self):
        return "inf" if self.poly is None else f"({self.poly})"
