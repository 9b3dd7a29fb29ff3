"""The Carlitz module over F_q[t], its torsion, and the groups (A/P^{n+1})^x."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import config
from ._intpoly import prime_factors
from ._kernels import _pykernels
from .errors import CeilingError
from .field import FieldSpec
from .poly import Place, Poly, is_irreducible


class SkewPoly:
    """c_0 + c_1 tau + ... + c_k tau^k with coefficients in A and tau f = f^q tau."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def scalar(cls, a: Poly) -> "SkewPoly":
        return cls(a.field, [a])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def x_degree(self) -> int:
        """Degree of the associated additive polynomial sum c_i x^(q^i)."""
        return self.field.q ** self.degree if self.coeffs else -1

    def __getitem__(self, i) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly.zero(self.field)

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        if not self.coeffs or not other.coeffs:
            return SkewPoly(self.field, [])
        q = self.field.q
        out = [Poly.zero(self.field)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            qi = q**i
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b.subs_power(qi)
        return SkewPoly(self.field, out)

    def __call__(self, x: Poly) -> Poly:
        """Evaluate the additive polynomial at an element of A."""
        q = self.field.q
        acc = Poly.zero(self.field)
        for i, c in enumerate(self.coeffs):
            acc = acc + c * x ** (q**i)
        return acc

    def x_terms(self) -> dict[int, Poly]:
        """{exponent q^i: coefficient} of the additive polynomial."""
        q = self.field.q
        return {q**i: c for i, c in enumerate(self.coeffs) if not c.is_zero()}

    def format(self, var: str = "tau") -> str:
        if not self.coeffs:
            return "0"
        q = self.field.q
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if var == "x":
                mon = "x" if i == 0 else f"x^{q**i}"
            else:
                mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = c.format()
            if not mon:
                parts.append(cs)
            elif c.is_one():
                parts.append(mon)
            else:
                parts.append(f"({cs}){mon}" if len(c.coeffs) > 1 and c.degree > 0 and "+" in cs else f"{cs}{mon}")
        return " + ".join(reversed(parts))

    def __repr__(self):
        return f"SkewPoly({self.format()})"


def carlitz_map(a: Poly) -> SkewPoly:
    """Phi_a, determined by Phi_t = t + tau."""
    F = a.field
    phi_t = SkewPoly(F, [Poly.t(F), Poly.one(F)])
    acc = SkewPoly(F, [])
    for c in reversed(a.coeffs):
        acc = acc * phi_t + SkewPoly.scalar(Poly.const(F, c))
    return acc


def _as_poly(P) -> Poly:
    if isinstance(P, Place):
        if P.is_infinite:
            raise ValueError("expected a finite place")
        return P.poly
    return P


def _check_prime(P: Poly):
    if not P.is_monic() or not is_irreducible(P):
        raise ValueError(f"{P} is not a monic irreducible polynomial")


def torsion_polynomial(P, n: int = 0) -> SkewPoly:
    """Phi_{P^(n+1)}; use ``x_terms``/``format('x')`` for the additive polynomial in x."""
    P = _as_poly(P)
    _check_prime(P)
    if n < 0:
        raise ValueError("level must be non-negative")
    return carlitz_map(P ** (n + 1))


@functools.lru_cache(maxsize=None)
def _modulus(P: Poly, n: int) -> Poly:
    return P ** (n + 1)


@dataclass(frozen=True)
class ResidueUnit:
    """A unit of A/P^(n+1), stored by its reduced representative."""

    rep: Poly
    n: int
    P: Poly

    @property
    def modulus(self) -> Poly:
        return _modulus(self.P, self.n)

    @property
    def code(self) -> int:
        return self.rep.code

    def _check(self, o):
        if o.n != self.n or o.P != self.P:
            raise ValueError("residues at different levels or conductors")

    def __mul__(self, o: "ResidueUnit") -> "ResidueUnit":
        self._check(o)
        return ResidueUnit((self.rep * o.rep) % self.modulus, self.n, self.P)

    def inverse(self) -> "ResidueUnit":
        return ResidueUnit(self.rep.inverse_mod(self.modulus), self.n, self.P)

    def __pow__(self, e: int) -> "ResidueUnit":
        return ResidueUnit(self.rep.powmod(e, self.modulus), self.n, self.P)

    def is_one(self) -> bool:
        return self.rep.is_one()

    def order(self) -> int:
        d = self.P.degree
        q = self.P.field.q
        k = q ** (self.n * d) * (q**d - 1)
        for ell in prime_factors(k):
            while k % ell == 0 and (self ** (k // ell)).is_one():
                k //= ell
        return k

    def reduce(self, level: int) -> "ResidueUnit":
        """Image at a lower level."""
        return ResidueUnit(self.rep % _modulus(self.P, level), level, self.P)

    def __str__(self):
        return str(self.rep)


def _vec_residues(tables, q, e, red, codes):
    """Residues (rows) of arbitrary polynomials of degree < len(red) given by codes."""
    addt, mult = tables[0], tables[1]
    res = np.zeros((len(codes), red.shape[1]), dtype=np.int64)
    for i in range(len(red)):
        digit = (codes // q**i) % q
        res = addt[res, mult[digit[:, None], red[i][None, :]]]
    return res


class GroupLevel:
    """G_n = (A/P^(n+1))^x with G_n = G_0 x Gamma_n (Teichmueller section)."""

    def __init__(self, P: Poly, n: int):
        _check_prime(P)
        if n < 0:
            raise ValueError("level must be non-negative")
        F = P.field
        self.P, self.n, self.field = P, n, F
        self.q, self.d = F.q, P.degree
        self.e = (n + 1) * self.d
        self.modulus = _modulus(P, n)
        self.order = self.q ** (n * self.d) * (self.q**self.d - 1)
        self.order0 = self.q**self.d - 1
        if self.order > config.GROUP_CEILING:
            raise CeilingError(f"|G_{n}| = {self.order} exceeds the group ceiling {config.GROUP_CEILING}")

    def __repr__(self):
        return f"GroupLevel(P={self.P}, n={self.n}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, GroupLevel) and self.P == other.P and self.n == other.n

    def __hash__(self):
        return hash((self.P, self.n))

    # -- elements ------------------------------------------------------
    def element(self, a) -> ResidueUnit:
        if isinstance(a, int):
            a = Poly.from_code(self.field, a)
        r = a % self.modulus
        if (r % self.P).is_zero():
            raise ValueError(f"{a} is not a unit modulo {self.P}")
        return ResidueUnit(r, self.n, self.P)

    def identity(self) -> ResidueUnit:
        return ResidueUnit(Poly.one(self.field) % self.modulus, self.n, self.P)

    def from_code(self, code: int) -> ResidueUnit:
        return ResidueUnit(Poly.from_code(self.field, code), self.n, self.P)

    @functools.cached_property
    def _redP(self):
        """t^i mod P for i < e, as a code array."""
        redP = np.zeros((self.e, self.d), dtype=np.int64)
        for i in range(self.e):
            for k, c in enumerate((Poly.monomial(self.field, i) % self.P).coeffs):
                redP[i, k] = c
        return redP

    @functools.cached_property
    def unit_codes(self) -> np.ndarray:
        codes = np.arange(self.q**self.e, dtype=np.int64)
        resP = _vec_residues(self.field.numpy_tables(), self.q, self.e, self._redP, codes)
        return codes[resP.any(axis=1)]

    def elements(self) -> list[ResidueUnit]:
        return [self.from_code(int(c)) for c in self.unit_codes]

    def _vectors(self, codes):
        q = self.q
        return np.stack([(codes // q**i) % q for i in range(self.e)], axis=1)

    def _codes(self, vecs):
        return vecs.astype(np.int64) @ (self.q ** np.arange(self.e, dtype=np.int64))

    def _vec_pow(self, vecs, k: int):
        addt, mult, negt, _ = self.field.numpy_tables()
        mod = np.array(self.modulus.coeffs, dtype=np.int64)
        result = np.zeros_like(vecs)
        result[:, 0] = 1
        base = vecs
        while k:
            if k & 1:
                result = _pykernels._mulmod(addt, mult, negt, result, base, mod)
            k >>= 1
            if k:
                base = _pykernels._mulmod(addt, mult, negt, base, base, mod)
        return result

    def _vec_mul(self, a, b):
        addt, mult, negt, _ = self.field.numpy_tables()
        mod = np.array(self.modulus.coeffs, dtype=np.int64)
        return _pykernels._mulmod(addt, mult, negt, a, b, mod)

    @functools.cached_property
    def inverse_table(self) -> np.ndarray:
        """inv[code] for every unit code; -1 on non-units."""
        units = self.unit_codes
        inv = self._codes(self._vec_pow(self._vectors(units), self.order - 1))
        table = np.full(self.q**self.e, -1, dtype=np.int64)
        table[units] = inv
        return table

    @functools.cached_property
    def split_table(self):
        """(delta, gamma) code arrays indexed by unit code: delta = a mod P, gamma = a / omega(a)."""
        units = self.unit_codes
        size = self.q**self.e
        delta = np.full(size, -1, dtype=np.int64)
        gamma = np.full(size, -1, dtype=np.int64)
        vecs = self._vectors(units)
        resP = _vec_residues(self.field.numpy_tables(), self.q, self.e, self._redP, units)
        delta[units] = resP.astype(np.int64) @ (self.q ** np.arange(self.d, dtype=np.int64))
        if self.n == 0:
            gamma[units] = 1
            return delta, gamma
        # Teichmueller: iterate a -> a^(q^d) to the fixed point
        w = vecs
        while True:
            nxt = self._vec_pow(w, self.q**self.d)
            if np.array_equal(nxt, w):
                break
            w = nxt
        winv = self._vec_pow(w, self.order0 - 1)
        gamma[units] = self._codes(self._vec_mul(vecs, winv))
        return delta, gamma

    def split(self, a: ResidueUnit) -> tuple[ResidueUnit, ResidueUnit]:
        """(delta in G_0, gamma in Gamma_n) with a = omega(delta) * gamma."""
        delta, gamma = self.split_table
        c = a.code
        return (ResidueUnit(Poly.from_code(self.field, int(delta[c])), 0, self.P),
                self.from_code(int(gamma[c])))

    # -- structure -----------------------------------------------------
    @functools.cached_property
    def generator0(self) -> ResidueUnit:
        """Least residue code generating the cyclic group G_0 = (A/P)^x."""
        N = self.order0
        for code in range(1, self.q**self.d):
            g = ResidueUnit(Poly.from_code(self.field, code), 0, self.P)
            if all(not (g ** (N // ell)).is_one() for ell in prime_factors(N)):
                return g
        raise AssertionError("(A/P)^x has no generator")

    @functools.cached_property
    def dlog0(self) -> dict[int, int]:
        """Discrete log base generator0 on level-0 residue codes."""
        g = self.generator0
        out, x = {}, ResidueUnit(Poly.one(self.field), 0, self.P)
        for k in range(self.order0):
            out[x.code] = k
            x = x * g
        return out

    def constants(self) -> list[int]:
        """Level-0 codes of F_q^x, the inertia group at infinity."""
        return list(range(1, self.q))

    @functools.cached_property
    def gamma_generators(self) -> list[tuple[ResidueUnit, int]]:
        """A basis of the p-group Gamma_n as (element, order) pairs."""
        if self.n == 0:
            return []
        delta, gamma = self.split_table
        one_units = sorted(set(int(c) for c in gamma[self.unit_codes]))
        elems = [self.from_code(c) for c in one_units]
        size = len(elems)
        H = {self.identity().code}
        basis = []
        while len(H) < size:
            # element of maximal order modulo H, then an order-preserving lift
            best, best_ord = None, 0
            for g in elems:
                k, x = 1, g
                while x.code not in H:
                    x = x ** self.field.p
                    k *= self.field.p
                if k > best_ord:
                    best, best_ord = g, k
            lift = None
            for h in H:
                cand = best * self.from_code(h)
                if cand.order() == best_ord:
                    lift = cand
                    break
            if lift is None:
                raise AssertionError("failed to split Gamma_n")
            powers, x = [], self.identity()
            for _ in range(best_ord):
                powers.append(x)
                x = x * lift
            H = {(self.from_code(h) * y).code for h in H for y in powers}
            basis.append((lift, best_ord))
        return basis

    @property
    def generators(self) -> list[tuple[ResidueUnit, int]]:
        """(omega(g0), q^d - 1) followed by the Gamma_n basis."""
        g0 = self.generator0
        rep = g0.rep
        if self.n:
            w = self.element(rep)
            while True:
                nxt = w ** (self.q**self.d)
                if nxt == w:
                    break
                w = nxt
            rep = w.rep
        return [(ResidueUnit(rep, self.n, self.P), self.order0)] + self.gamma_generators


@functools.lru_cache(maxsize=64)
def residue_group(P, n: int = 0) -> GroupLevel:
    return GroupLevel(_as_poly(P), n)


def frobenius_symbol(Q, P, n: int = 0) -> ResidueUnit:
    """Image of the Frobenius at Q in G_n: the class of Q mod P^(n+1)."""
    Q, P = _as_poly(Q), _as_poly(P)
    if Q == P:
        raise ValueError("the Frobenius symbol is undefined at the ramified prime")
    return residue_group(P, n).element(Q)


class SplittingData(NamedTuple):
    e: int
    f: int
    g: int


def splitting_data(nu: Place, P, n: int = 0) -> SplittingData:
    """(ramification index, residue degree, number of places) of nu in F(Lambda_{P^(n+1)})."""
    P = _as_poly(P)
    G = residue_group(P, n)
    if nu.is_infinite:
        e = G.q - 1
        return SplittingData(e, 1, G.order // e)
    if nu.poly == P:
        return SplittingData(G.order, 1, 1)
    f = frobenius_symbol(nu.poly, P, n).order()
    return SplittingData(1, f, G.order // f)
