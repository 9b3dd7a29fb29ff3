"""Power sums, Bernoulli-Goss values, Goss zeta truncations and nu-adic L-series over A = F_q[t]."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from . import config
from .coeff_rings import PadicNum
from .errors import CeilingError, PrecisionError, VerificationError
from .field import FieldSpec, field_for_q
from .local_fields import (InftyExponent, LaurentInf, NuAdic, NuExponent, PiPower, ideal_exp_infty,
                           ideal_exp_nu, nu_decompose)
from .poly import Place, Poly, enumerate_monic, irreducibles


def _field(q) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_for_q(q)


def degree_bound(q: int, j: int) -> int:
    """Largest n with S_n(j) possibly nonzero."""
    return 1 + j // (q - 1)


# -- power sums ------------------------------------------------------------
@functools.lru_cache(maxsize=None)
def _inv_factorials(p: int) -> tuple:
    f = [1] * p
    for i in range(1, p):
        f[i] = f[i - 1] * i % p
    return tuple(pow(x, -1, p) for x in f)


def _power_sum_lucas(F: FieldSpec, j: int, n: int) -> Poly:
    """sum over monic a of degree n of a^j, by the multinomial expansion.

    Writing a = t^n + sum_{i<n} b_i t^i, summing b_i over F_q kills
    every term unless each k_i (i < n) is a positive multiple of q-1,
    where the character sum is -1.  Multinomials are taken mod p by
    Lucas, so only digit-disjoint splittings of j survive.
    """
    p, q = F.p, F.q
    digits = []
    x = j
    while x:
        digits.append(x % p)
        x //= p
    ifac = _inv_factorials(p)
    fac_j = 1
    for dgt in digits:
        for v in range(2, dgt + 1):
            fac_j = fac_j * v % p

    def weight(k: int) -> int:
        w = 1
        while k:
            w = w * ifac[k % p] % p
            k //= p
        return w

    def submasks(r: int):
        ds = []
        while r:
            ds.append(r % p)
            r //= p
        out = [0]
        for pos, dgt in enumerate(ds):
            out = [s + c * p**pos for s in out for c in range(dgt + 1)]
        return out

    @functools.lru_cache(maxsize=None)
    def rest(i: int, r: int) -> tuple:
        # sorted ((exponent, coefficient mod p), ...) for positions i..n
        if i == n:
            return ((n * r, weight(r)),)
        acc: dict[int, int] = {}
        for k in submasks(r):
            if k == 0 or k % (q - 1):
                continue
            wk = weight(k)
            for ex, c in rest(i + 1, r - k):
                key = ex + i * k
                acc[key] = (acc.get(key, 0) + wk * c) % p
        return tuple(sorted((e, c) for e, c in acc.items() if c))

    terms = rest(0, j)
    sign = -1 if n % 2 else 1
    if not terms:
        return Poly.zero(F)
    deg = max(e for e, _ in terms)
    coeffs = [0] * (deg + 1)
    for ex, c in terms:
        coeffs[ex] = F.from_int(sign * c * fac_j)
    return Poly(F, coeffs)


def _redP_table(P: Poly, upto: int) -> np.ndarray:
    F, d = P.field, P.degree
    out = np.zeros((upto + 1, d), dtype=np.int64)
    x = Poly.one(F)
    for i in range(upto + 1):
        for k, c in enumerate(x.coeffs):
            out[i, k] = c
        x = (x * Poly.t(F)) % P
    return out


def power_sums_table(F: FieldSpec, n: int, J: int, coprime_to: Poly | None = None) -> list[Poly]:
    """[sum a^j for j in 0..J] over monic a of degree n (optionally prime to P), by enumeration."""
    if F.q**n > config.ENUM_CEILING:
        raise CeilingError(f"{F.q}^{n} monics exceed the enumeration ceiling")
    redP = None if coprime_to is None else _redP_table(coprime_to, n)
    rows = K.monic_power_sums(F.numpy_tables(), F.q, n, J, redP)
    return [Poly(F, [int(c) for c in row]) for row in rows]


def power_sum(q, j: int, n: int, coprime_to: Poly | None = None, method: str = "auto") -> Poly:
    """S_n(j) = sum of a^j over monic a of degree n; with coprime_to, only a prime to that P."""
    if j < 0 or n < 0:
        raise ValueError("j and n must be non-negative")
    F = _field(q)
    if method == "auto":
        method = "enumerate" if coprime_to is not None else "lucas"
    if method == "lucas":
        if coprime_to is not None:
            raise ValueError("the Lucas expansion does not support a coprimality filter")
        return _power_sum_lucas(F, j, n)
    if method == "enumerate":
        return power_sums_table(F, n, j, coprime_to)[j]
    raise ValueError(f"unknown method {method!r}")


# -- Z(X, j) ---------------------------------------------------------------
@dataclass(frozen=True)
class ZPoly:
    q: int
    j: int
    coeffs: tuple  # S_0(j), S_1(j), ... up to the last nonzero one
    bound: int
    horizon: int  # S_n(j) checked to vanish for bound < n <= horizon

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Poly:
        if n < len(self.coeffs):
            return self.coeffs[n]
        return Poly.zero(self.coeffs[0].field)

    def at_one(self) -> Poly:
        F = self.coeffs[0].field
        total = Poly.zero(F)
        for c in self.coeffs:
            total = total + c
        return total

    def format(self, var: str = "X") -> str:
        return format_apoly(self.coeffs, var)


def format_apoly(coeffs, var: str = "X") -> str:
    """Render a polynomial in X with coefficients in A."""
    parts = []
    for n, c in enumerate(coeffs):
        if c.is_zero():
            continue
        mon = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        body = str(c)
        if mon:
            if c.is_one():
                body = ""
            elif len(c.coeffs) > 1:
                body = f"({body})"
        parts.append(body + mon)
    return " + ".join(parts) if parts else "0"


def z_poly(q, j: int, extra: int = 3) -> ZPoly:
    F = _field(q)
    bound = degree_bound(F.q, j)
    sums = [power_sum(F, j, n) for n in range(bound + extra + 1)]
    bad = [n for n in range(bound + 1, bound + extra + 1) if not sums[n].is_zero()]
    if bad:
        raise VerificationError(f"S_n({j}) nonzero beyond the degree bound at n = {bad}")
    last = max((n for n, s in enumerate(sums) if not s.is_zero()), default=0)
    return ZPoly(F.q, j, tuple(sums[: last + 1]), bound, bound + extra)


def bernoulli_goss(q, j: int) -> Poly:
    """Z(1, j), the value of zeta_A at -s_j."""
    return z_poly(q, j).at_one()


# -- Goss zeta truncation ----------------------------------------------------
@dataclass(frozen=True)
class GossTrunc:
    value: LaurentInf
    tail_valuation: int | None  # valuation of the last summed term; None if it vanished


def _exponent_mod(y, E: int, what: str) -> int:
    """y mod E for an int or PadicNum y, E a power of p."""
    if isinstance(y, PadicNum):
        if y.p ** y.prec % E:
            raise PrecisionError(f"{what} needs y modulo {E}, y is known modulo {y.p}^{y.prec}")
        return y.value % E
    return y % E


def _reverse(f: Poly, deg: int) -> Poly:
    """t^deg f(1/t) read as a polynomial in pi."""
    c = list(f.coeffs) + [0] * (deg + 1 - len(f.coeffs))
    return Poly(f.field, c[::-1])


def _one_unit_sum(F: FieldSpec, n: int, y, N: int) -> list[int]:
    """sum over monic alpha of degree n of <alpha>^y modulo pi^N, as coefficient codes."""
    p = F.p
    E = 1
    while E < N:
        E *= p
    e = _exponent_mod(y, E, "a one-unit power at infinity")
    piN = Poly.monomial(F, N)
    total = Poly.zero(F)
    for a in enumerate_monic(F, n):
        total = total + _reverse(a, n).powmod(e, piN)
    return list(total.coeffs) + [0] * (N - len(total.coeffs))


def goss_zeta_trunc(q, s: InftyExponent, N: int, D: int) -> GossTrunc:
    """sum_{n <= D} x^-n (sum_{deg alpha = n} <alpha>^-y), relative precision N per term."""
    F = _field(q)
    if not isinstance(s.x, (PiPower, LaurentInf)):
        raise TypeError("unrepresentable x-component")
    if F.q**D > config.ENUM_CEILING:
        raise CeilingError(f"{F.q}^{D} monics exceed the enumeration ceiling")
    neg_y = -s.y
    total = None
    last = None
    for n in range(D + 1):
        a_n = LaurentInf(F, 0, _one_unit_sum(F, n, neg_y, N))
        if isinstance(s.x, PiPower):
            term = LaurentInf(F, a_n.v - s.x.k * n, a_n.coeffs)
        else:
            term = (s.x.inverse() ** n) * a_n
        last = None if term.is_zero() else term.v
        total = term if total is None else total + term
    return GossTrunc(total, last)


# -- nu-adic L-series --------------------------------------------------------
@dataclass
class NuLSeries:
    P: Poly
    y: object
    i: int
    D: int
    m: int
    coeffs: list[NuAdic]

    def at_one(self) -> NuAdic:
        total = NuAdic(self.P, self.m, Poly.zero(self.P.field))
        for c in self.coeffs:
            total = total + c
        return total

    def reps(self) -> list[Poly]:
        return [c.rep for c in self.coeffs]


def _pow_p_at_least(p: int, m: int) -> int:
    E = 1
    while E < m:
        E *= p
    return E


class _NuTables:
    """Per-degree unit power tables T[c, k] for (P, m), filled lazily."""

    def __init__(self, P: Poly, m: int):
        F = P.field
        self.P, self.m, self.F = P, m, F
        self.q, self.d = F.q, P.degree
        self.e = m * self.d
        self.M = P**m
        self.E = _pow_p_at_least(F.p, m)
        qd = self.q**self.d
        self.teich = [None] * qd
        self.teich_inv = np.zeros((qd, self.e), dtype=np.int64)
        for c in range(1, qd):
            w, _ = nu_decompose(Poly.from_code(F, c), P, m)
            self.teich[c] = w.rep
            for k, x in enumerate(w.inverse().rep.coeffs):
                self.teich_inv[c, k] = x
        self.tables: dict[int, np.ndarray] = {}

    def table(self, n: int) -> np.ndarray:
        if n not in self.tables:
            if self.q**n > config.ENUM_CEILING:
                raise CeilingError(f"{self.q}^{n} monics exceed the enumeration ceiling")
            F, M = self.F, self.M
            red = np.zeros((n + 1, self.e), dtype=np.int64)
            x = Poly.one(F)
            for i in range(n + 1):
                for k, c in enumerate(x.coeffs):
                    red[i, k] = c
                x = (x * Poly.t(F)) % M
            self.tables[n] = K.unit_power_table(F.numpy_tables(), self.q, n, red, _redP_table(self.P, n),
                                                np.array(M.coeffs), self.teich_inv, self.E)
        return self.tables[n]

    def coefficient(self, n: int, y, i: int) -> Poly:
        F, M = self.F, self.M
        if n > self.e:
            # monics of degree n > deg M hit every residue q^(n - deg M) times
            return Poly.zero(F)
        T = self.table(n)
        k = _exponent_mod(y, self.E, "the nu-adic L-series")
        qd1 = self.q**self.d - 1
        total = Poly.zero(F)
        for c in range(1, self.q**self.d):
            s = Poly(F, [int(v) for v in T[c, k]])
            if s.is_zero():
                continue
            total = total + (self.teich[c].powmod(i % qd1, M) * s) % M
        return total % M


@functools.lru_cache(maxsize=32)
def _nu_tables(P: Poly, m: int) -> _NuTables:
    return _NuTables(P, m)


def _check_prime(P: Poly):
    Place.finite(P)  # validates monic irreducible


def nu_L(P: Poly, y, i: int, D: int, m: int, method: str = "kernel") -> NuLSeries:
    """L_nu(X, y, omega^i) to degree D modulo P^m.

    method='direct' sums ideal_exp_nu over enumerate_monic, with
    one_unit_pow handling p-adic y by its binomial series.
    """
    _check_prime(P)
    if m < 1:
        raise ValueError("precision m must be at least 1")
    if method == "kernel":
        T = _nu_tables(P, m)
        coeffs = [NuAdic(P, m, T.coefficient(n, y, i)) for n in range(D + 1)]
    elif method == "direct":
        s = NuExponent(None, y, i)
        place = Place.finite(P)
        coeffs = []
        for n in range(D + 1):
            acc = NuAdic(P, m, Poly.zero(P.field))
            for a in enumerate_monic(P.field, n, coprime_to=place):
                acc = acc + ideal_exp_nu(a, P, s, m)
            coeffs.append(acc)
    else:
        raise ValueError(f"unknown method {method!r}")
    return NuLSeries(P, y, i, D, m, coeffs)


def nu_L_euler(P: Poly, y: int, i: int, D: int, m: int) -> list[NuAdic]:
    """prod over monic irreducible Q != P of (1 - omega(Q)^i <Q>^y X^deg Q)^-1, to degree D."""
    F = P.field
    s = NuExponent(None, y, i)
    zero = NuAdic(P, m, Poly.zero(F))
    S = [NuAdic.one(P, m)] + [zero] * D
    for dQ in range(1, D + 1):
        for Q in irreducibles(F, dQ):
            if Q == P:
                continue
            g = ideal_exp_nu(Q, P, s, m)
            for n in range(dQ, D + 1):
                S[n] = S[n] + g * S[n - dQ]
    return S


# -- verification reports ----------------------------------------------------
@dataclass
class Verdict:
    name: str
    per_degree: list[bool]
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.per_degree)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "per_degree": self.per_degree, **self.details}


def verify_vadic_identity(P: Poly, j: int, i: int, m: int) -> Verdict:
    """L_nu(X, j, omega^i) against Z(X, j)(1 - P^j X^d) modulo P^m."""
    _check_prime(P)
    q, d = P.field.q, P.degree
    if j < 0 or (i - j) % (q**d - 1):
        raise ValueError(f"congruence precondition: need j >= 0 and i = j mod {q**d - 1}")
    Z = z_poly(P.field, j)
    D = Z.bound + d
    L = nu_L(P, j, i, D, m)
    Pj = P**j
    per = []
    for n in range(D + 1):
        rhs = Z.coefficient(n) - (Pj * Z.coefficient(n - d) if n >= d else Poly.zero(P.field))
        per.append(L.coeffs[n] == NuAdic(P, m, rhs))
    return Verdict("vadic_identity", per, {"j": j, "i": i, "m": m, "D": D})


def congruence_exponent(P: Poly, i: int) -> int:
    """Exponent used for Z(X, .) in the mod-P congruence: i itself, or q^d - 1 when i = 0."""
    qd1 = P.field.q ** P.degree - 1
    return i if i > 0 else (i % qd1 or qd1)


def verify_vadic_congruence(P: Poly, y, i: int, m: int = 1) -> Verdict:
    """L_nu(X, y, omega^i) = Z(X, i) mod P, for integer or p-adic y."""
    _check_prime(P)
    ii = congruence_exponent(P, i)
    Z = z_poly(P.field, ii)
    D = Z.bound + P.degree + 2
    L = nu_L(P, y, i, D, m)
    per = [L.coeffs[n].rep % P == Z.coefficient(n) % P for n in range(D + 1)]
    return Verdict("vadic_congruence", per, {"i": i, "z_exponent": ii, "D": D, "y": str(y)})


def verify_infty_interpolation(P: Poly, j: int, D: int) -> Verdict:
    """sum_{(a,P)=1} <a>^j X^deg a against Z(pi^j X, j)(1 - <P>^j X^d), exactly in F_q[pi]."""
    _check_prime(P)
    if j < 0:
        raise ValueError("j must be non-negative")
    F, d = P.field, P.degree
    Pj = _reverse(P**j, j * d)
    per = []
    for n in range(D + 1):
        lhs = _reverse(power_sum(F, j, n, coprime_to=P, method="enumerate"), j * n)
        rhs = _reverse(power_sum(F, j, n), j * n)
        if n >= d:
            rhs = rhs - Pj * _reverse(power_sum(F, j, n - d), j * (n - d))
        per.append(lhs == rhs)
    return Verdict("infty_interpolation", per, {"j": j, "D": D})


def infty_power_sum_local(P: Poly | None, F: FieldSpec, j: int, n: int) -> LaurentInf:
    """sum of <a>^j over monic a of degree n (prime to P) built from ideal_exp_infty."""
    N = j * n + 1
    s = InftyExponent(PiPower(0), j)
    place = None if P is None else Place.finite(P)
    total = LaurentInf.zero(F, N)
    for a in enumerate_monic(F, n, coprime_to=place):
        total = total + ideal_exp_infty(a, s, N)
    return total


def vanishing_lemma_check(q, k: int, i: int, x: Poly) -> bool:
    """sum over w of degree < k of (x + w)^i is zero (expected whenever i < (q-1) k)."""
    F = _field(q)
    total = Poly.zero(F)
    for w in range(F.q**k):
        total = total + (x + Poly.from_code(F, w)) ** i
    return total.is_zero()


def vanishing_profile(q, k: int, x: Poly, imax: int) -> list[bool]:
    """[vanishing_lemma_check(q, k, i, x) for i < imax], sharing the powers of each x + w."""
    F = _field(q)
    totals = [Poly.zero(F) for _ in range(imax)]
    for w in range(F.q**k):
        base = x + Poly.from_code(F, w)
        acc = Poly.one(F)
        for i in range(imax):
            totals[i] = totals[i] + acc
            acc = acc * base
    return [t.is_zero() for t in totals]
