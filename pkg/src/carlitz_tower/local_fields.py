"""Truncated arithmetic at infinity (Laurent series in pi = 1/t) and at a finite prime P."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .coeff_rings import PadicNum
from .errors import PrecisionError
from .field import FieldSpec, FFElem
from .poly import Poly


# -- infinity -------------------------------------------------------------
class LaurentInf:
    """sum_{k >= v} c_k pi^k known modulo pi^(v + N); pi = 1/t.

    Normalized: the first stored coefficient is nonzero.  Zero to
    precision is stored with no coefficients and ``v`` equal to the
    absolute precision.
    """

    __slots__ = ("field", "v", "coeffs")

    def __init__(self, field: FieldSpec, v: int, coeffs):
        c = list(coeffs)
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        self.field = field
        self.v = v + k
        self.coeffs = tuple(c[k:])

    @property
    def N(self) -> int:
        """Relative precision (number of known terms)."""
        return len(self.coeffs)

    @property
    def abs_prec(self) -> int:
        return self.v + len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def zero(cls, F, abs_prec: int):
        return cls(F, abs_prec, ())

    @classmethod
    def pi_power(cls, F, k: int, N: int):
        return cls(F, k, [1] + [0] * (N - 1))

    @classmethod
    def from_poly(cls, f: Poly, N: int | None = None):
        """A polynomial in t; with N >= deg f + 1 every coefficient up to pi^0 is exact."""
        F = f.field
        if f.is_zero():
            return cls.zero(F, N or 1)
        d = f.degree
        N = d + 1 if N is None else N
        c = [f.coeffs[d - k] if k <= d else 0 for k in range(N)]
        return cls(F, -d, c)

    def coefficient(self, k: int) -> int:
        if k >= self.abs_prec:
            raise PrecisionError(f"coefficient of pi^{k} is beyond the precision pi^{self.abs_prec}")
        i = k - self.v
        return self.coeffs[i] if i >= 0 else 0

    def truncate(self, abs_prec: int) -> "LaurentInf":
        if abs_prec >= self.abs_prec:
            return self
        return LaurentInf(self.field, self.v, self.coeffs[: max(0, abs_prec - self.v)]) if abs_prec > self.v \
            else LaurentInf.zero(self.field, abs_prec)

    def __add__(self, o: "LaurentInf") -> "LaurentInf":
        F = self.field
        ap = min(self.abs_prec, o.abs_prec)
        lo = min(self.v, o.v)
        if lo >= ap:
            return LaurentInf.zero(F, ap)
        out = [0] * (ap - lo)
        for x in (self, o):
            for i, c in enumerate(x.coeffs):
                k = x.v + i - lo
                if k < len(out):
                    out[k] = F.add(out[k], c)
        return LaurentInf(F, lo, out)

    def __neg__(self):
        F = self.field
        return LaurentInf(F, self.v, [F.neg(c) for c in self.coeffs])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "LaurentInf") -> "LaurentInf":
        F = self.field
        if self.is_zero() or o.is_zero():
            if self.is_zero() and o.is_zero():
                return LaurentInf.zero(F, self.v + o.v)
            z, nz = (self, o) if self.is_zero() else (o, self)
            return LaurentInf.zero(F, z.v + nz.v)
        n = min(self.N, o.N)
        out = [0] * n
        a, b = self.coeffs, o.coeffs
        for i in range(n):
            if a[i]:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]))
        return LaurentInf(F, self.v + o.v, out)

    def scale(self, c: int) -> "LaurentInf":
        F = self.field
        return LaurentInf(F, self.v, [F.mul(x, c) for x in self.coeffs])

    def inverse(self) -> "LaurentInf":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a Laurent series that is zero to precision")
        F, a, n = self.field, self.coeffs, self.N
        inv0 = F.inv(a[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                if a[i]:
                    s = F.add(s, F.mul(a[i], out[k - i]))
            out[k] = F.neg(F.mul(s, inv0))
        return LaurentInf(F, -self.v, out)

    def __pow__(self, e: int) -> "LaurentInf":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = LaurentInf.pi_power(self.field, 0, self.N if self.coeffs else 1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_one_unit(self) -> bool:
        return self.v == 0 and bool(self.coeffs) and self.coeffs[0] == 1

    def to_poly(self) -> Poly:
        """The polynomial in t equal to self, if the known terms determine one."""
        if self.abs_prec < 1:
            raise PrecisionError("constant term is not known")
        if any(self.coefficient(k) for k in range(1, self.abs_prec)):
            raise ValueError("not a polynomial in t")
        if self.is_zero() or self.v > 0:
            return Poly.zero(self.field)
        return Poly(self.field, [self.coefficient(-i) for i in range(-self.v + 1)])

    def agrees(self, o: "LaurentInf", abs_prec: int | None = None) -> bool:
        """Equality of all coefficients below min(precisions, abs_prec)."""
        ap = min(self.abs_prec, o.abs_prec)
        if abs_prec is not None:
            ap = min(ap, abs_prec)
        lo = min(self.v, o.v)
        return all(self.coefficient(k) == o.coefficient(k) for k in range(lo, ap))

    def __eq__(self, o):
        return isinstance(o, LaurentInf) and (self.field, self.v, self.coeffs) == (o.field, o.v, o.coeffs)

    def __hash__(self):
        return hash((self.v, self.coeffs))

    def __repr__(self):
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                k = self.v + i
                mon = "" if k == 0 else ("pi" if k == 1 else f"pi^{k}")
                terms.append(F.format(c) if not mon else (mon if c == 1 else F.format(c) + "*" + mon))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(pi^{self.abs_prec})"


@dataclass(frozen=True)
class PiPower:
    """Symbolic x-component pi^k of an exponent s = (x, y)."""

    k: int


@dataclass(frozen=True)
class InftyExponent:
    x: object  # PiPower or LaurentInf unit
    y: object  # int or PadicNum

    @classmethod
    def s(cls, j: int) -> "InftyExponent":
        """The integer point s_j = (pi^-j, j)."""
        return cls(PiPower(-j), j)

    def __neg__(self):
        x = PiPower(-self.x.k) if isinstance(self.x, PiPower) else self.x.inverse()
        return InftyExponent(x, -self.y)

    def __add__(self, o: "InftyExponent"):
        if isinstance(self.x, PiPower) and isinstance(o.x, PiPower):
            x = PiPower(self.x.k + o.x.k)
        else:
            x = _x_series(self.x, o.x) * _x_series(o.x, self.x)
        return InftyExponent(x, self.y + o.y)


def _x_series(x, other):
    if isinstance(x, LaurentInf):
        return x
    N = other.N if isinstance(other, LaurentInf) else 1
    F = other.field
    return LaurentInf.pi_power(F, x.k, N)


def infty_decompose(alpha, N: int):
    """(v, sgn, u) with alpha = pi^v * sgn * u, u a one-unit known to N terms."""
    if isinstance(alpha, Poly):
        if alpha.is_zero():
            raise ValueError("zero has no sign decomposition")
        F, d = alpha.field, alpha.degree
        s = alpha.leading
        sinv = F.inv(s)
        u = [F.mul(alpha[d - k], sinv) if k <= d else 0 for k in range(N)]
        return -d, FFElem(F, s), LaurentInf(F, 0, u)
    if alpha.is_zero():
        raise ValueError("zero has no sign decomposition")
    F = alpha.field
    s = alpha.coeffs[0]
    u = alpha.scale(F.inv(s))
    return alpha.v, FFElem(F, s), LaurentInf(F, 0, u.coeffs[:N])


def ideal_exp_infty(alpha: Poly, s: InftyExponent, N: int) -> LaurentInf:
    """x^deg(alpha) <alpha>^y for monic alpha, with N terms of relative precision."""
    if not alpha.is_monic():
        raise ValueError(f"{alpha} is not monic; decompose it first")
    F, d = alpha.field, alpha.degree
    _, _, u = infty_decompose(alpha, N)
    uy = one_unit_pow(u, s.y)
    if isinstance(s.x, PiPower):
        return LaurentInf(F, s.x.k * d + uy.v, uy.coeffs)
    if not isinstance(s.x, LaurentInf):
        raise TypeError("unrepresentable x-component")
    return (s.x ** d) * uy


# -- finite primes ---------------------------------------------------------
@functools.lru_cache(maxsize=None)
def _pmod(P: Poly, m: int) -> Poly:
    return P**m


class NuAdic:
    """A residue mod P^m."""

    __slots__ = ("P", "m", "rep")

    def __init__(self, P: Poly, m: int, rep: Poly):
        if m < 1:
            raise ValueError("precision must be at least 1")
        self.P, self.m = P, m
        self.rep = rep % _pmod(P, m)

    @property
    def modulus(self) -> Poly:
        return _pmod(self.P, self.m)

    @classmethod
    def one(cls, P, m):
        return cls(P, m, Poly.one(P.field))

    def _coerce(self, o):
        if isinstance(o, NuAdic):
            if o.P != self.P:
                raise ValueError("residues for different primes")
            return o
        if isinstance(o, (int, Poly)):
            return NuAdic(self.P, self.m, o if isinstance(o, Poly) else Poly.const(self.P.field, o % self.P.field.p))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else NuAdic(self.P, min(self.m, o.m), self.rep + o.rep)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else NuAdic(self.P, min(self.m, o.m), self.rep - o.rep)

    def __neg__(self):
        return NuAdic(self.P, self.m, -self.rep)

    def __mul__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else NuAdic(self.P, min(self.m, o.m), self.rep * o.rep)

    __rmul__ = __mul__

    def inverse(self) -> "NuAdic":
        return NuAdic(self.P, self.m, self.rep.inverse_mod(self.modulus))

    def __pow__(self, e: int) -> "NuAdic":
        if e < 0:
            return self.inverse() ** (-e)
        return NuAdic(self.P, self.m, self.rep.powmod(e, self.modulus))

    def __eq__(self, o):
        o = self._coerce(o) if not isinstance(o, NuAdic) else o
        return isinstance(o, NuAdic) and o.P == self.P and o.m == self.m and o.rep == self.rep

    def __hash__(self):
        return hash((self.P, self.m, self.rep))

    def is_zero(self):
        return self.rep.is_zero()

    def is_unit(self):
        return not (self.rep % self.P).is_zero()

    def is_one_unit(self):
        return ((self.rep - 1) % self.P).is_zero()

    def valuation(self) -> int:
        v, x = 0, self.rep
        while v < self.m and not x.is_zero() and (x % self.P).is_zero():
            x = x // self.P
            v += 1
        return self.m if x.is_zero() else v

    def __repr__(self):
        return f"{self.rep} mod ({self.P})^{self.m}"


@dataclass(frozen=True)
class NuExponent:
    """s_nu = (x, y, j); x is a NuAdic unit or None for 1."""

    x: object
    y: object
    j: int

    @classmethod
    def s(cls, j: int) -> "NuExponent":
        return cls(None, j, j)


def nu_decompose(alpha, P: Poly, m: int):
    """(omega, u): Teichmueller representative and one-unit with alpha = omega * u mod P^m."""
    a = alpha if isinstance(alpha, NuAdic) else NuAdic(P, m, alpha)
    if not a.is_unit():
        raise ValueError(f"{a.rep} is not coprime to {P}")
    qd = P.field.q ** P.degree
    w = a
    while True:
        nxt = w ** qd
        if nxt == w:
            break
        w = nxt
    return w, a * w.inverse()


def ideal_exp_nu(alpha: Poly, P: Poly, s: NuExponent, m: int) -> NuAdic:
    """x^deg(alpha) omega(alpha)^j <alpha>^y at precision m."""
    if not alpha.is_monic():
        raise ValueError(f"{alpha} is not monic")
    w, u = nu_decompose(alpha, P, m)
    qd1 = P.field.q ** P.degree - 1
    out = (w ** (s.j % qd1)) * one_unit_pow(u, s.y)
    if s.x is not None:
        out = out * (s.x ** alpha.degree)
    return out


# -- one-unit powers -------------------------------------------------------
def _legendre(n: int, p: int) -> int:
    v = 0
    while n:
        n //= p
        v += n
    return v


def padic_binomial(y, n: int, p: int | None = None) -> int:
    """binom(y, n) mod p for a p-adic (or integer) y.

    The falling factorial y(y-1)...(y-n+1) is computed on an integer
    lift of y modulo p^(v+1) with v = v_p(n!), then divided by n!.  By
    Lucas the answer depends only on y mod p^L with p^L > n.
    """
    if isinstance(y, PadicNum):
        p = y.p
        L = 0
        while p**L <= n:
            L += 1
        if y.prec < L:
            raise PrecisionError(f"binom(y, {n}) mod {p} needs {L} p-adic digits of y, have {y.prec}")
        y0 = y.value
    else:
        y0 = y
    v = _legendre(n, p)
    M = p ** (v + 1)
    num, fact = 1, 1
    for i in range(n):
        num = num * (y0 - i) % M
        fact *= i + 1
    unit = (fact // p**v) % p
    assert num % p**v == 0
    return (num // p**v) * pow(unit, -1, p) % p


def one_unit_pow(u, y):
    """u^y for a one-unit u (LaurentInf or NuAdic) and y an integer or PadicNum."""
    if not u.is_one_unit():
        raise ValueError("not a one-unit")
    if isinstance(y, int):
        return u**y
    if not isinstance(y, PadicNum):
        raise TypeError("exponent must be an int or PadicNum")
    if isinstance(u, LaurentInf):
        F, N = u.field, u.N
        w = u - LaurentInf.pi_power(F, 0, N)
        acc = LaurentInf.pi_power(F, 0, N)
        if w.is_zero():
            return acc
        wn = LaurentInf.pi_power(F, 0, N)
        n = 0
        while True:
            n += 1
            wn = wn * w
            if wn.v >= N:
                break
            b = padic_binomial(y, n)
            if b:
                acc = acc + wn.scale(F.from_int(b))
        return acc.truncate(N)
    F = u.P.field
    w = u - 1
    acc = NuAdic.one(u.P, u.m)
    wn = NuAdic.one(u.P, u.m)
    n = 0
    while True:
        n += 1
        wn = wn * w
        if wn.is_zero():
            break
        b = padic_binomial(y, n)
        if b:
            acc = acc + NuAdic(u.P, u.m, wn.rep.scale(F.from_int(b)))
    return acc
