"""p-adic integers mod p^m, the Witt ring W = Z_p[zeta_N] mod p^m, characters of G_0, group rings."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import _intpoly, config
from .carlitz import GroupLevel, ResidueUnit


# -- truncated p-adic integers --------------------------------------------
@dataclass(frozen=True)
class PadicNum:
    p: int
    value: int
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("p-adic precision must be at least 1")
        object.__setattr__(self, "value", self.value % self.p**self.prec)

    @classmethod
    def from_digits(cls, p: int, digits) -> "PadicNum":
        digits = list(digits)
        return cls(p, sum(d * p**i for i, d in enumerate(digits)), len(digits))

    def digits(self) -> list[int]:
        return [(self.value // self.p**i) % self.p for i in range(self.prec)]

    def _coerce(self, o):
        if isinstance(o, PadicNum):
            if o.p != self.p:
                raise ValueError("p-adic numbers for different primes")
            return o.value, min(self.prec, o.prec)
        if isinstance(o, int):
            return o, self.prec
        return None

    def __add__(self, o):
        c = self._coerce(o)
        return NotImplemented if c is None else PadicNum(self.p, self.value + c[0], c[1])

    __radd__ = __add__

    def __sub__(self, o):
        c = self._coerce(o)
        return NotImplemented if c is None else PadicNum(self.p, self.value - c[0], c[1])

    def __rsub__(self, o):
        c = self._coerce(o)
        return NotImplemented if c is None else PadicNum(self.p, c[0] - self.value, c[1])

    def __mul__(self, o):
        c = self._coerce(o)
        return NotImplemented if c is None else PadicNum(self.p, self.value * c[0], c[1])

    __rmul__ = __mul__

    def __neg__(self):
        return PadicNum(self.p, -self.value, self.prec)

    def valuation(self) -> int:
        """p-adic valuation; equals prec for an element that is zero to precision."""
        v, x = 0, self.value
        while v < self.prec and x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def reduce(self, prec: int) -> "PadicNum":
        return PadicNum(self.p, self.value, min(prec, self.prec))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} + O({self.p}^{self.prec})"


# -- the Witt ring -----------------------------------------------------------
def _order_mod(p: int, N: int) -> int:
    if N == 1:
        return 1
    D, x = 1, p % N
    while x != 1:
        x = x * p % N
        D += 1
    return D


def _primitive_factor(p: int, N: int, D: int) -> list[int]:
    """Least monic irreducible of degree D over F_p whose roots have order exactly N."""
    for code in range(p**D):
        f = [(code // p**i) % p for i in range(D)] + [1]
        if not _intpoly.is_irreducible_fp(f, p):
            continue
        if _intpoly.powmod([0, 1], N, f, p) != [1]:
            continue
        if all(_intpoly.powmod([0, 1], N // ell, f, p) != [1] for ell in _intpoly.prime_factors(N)):
            return f
    raise AssertionError(f"no primitive factor of x^{N} - 1 mod {p}")


def _hensel_lift(f0: list[int], N: int, p: int, m: int) -> list[int]:
    """Lift the factor f0 of x^N - 1 mod p to a monic factor mod p^m."""
    target = [-1] + [0] * (N - 1) + [1]
    h = list(f0)
    g = _intpoly.divmod_([c % p for c in target], h, p)[0]
    g0, h0 = list(g), list(h)
    _, s, _ = _intpoly.xgcd(g0, h0, p)  # s*g0 + t*h0 = 1 mod p
    pk = p
    for _ in range(1, m):
        mod_next = pk * p
        prod = _intpoly.mul(h, g, mod_next)
        err = _intpoly.sub([c % mod_next for c in target], prod, mod_next)
        E = [(c // pk) % p for c in err]  # err is divisible by p^k
        a = _intpoly.mod(_intpoly.mul(E, s, p), h0, p)
        b = _intpoly.divmod_(_intpoly.sub(E, _intpoly.mul(a, g0, p), p), h0, p)[0]
        h = _intpoly.add(h, [pk * c for c in a], mod_next)
        g = _intpoly.add(g, [pk * c for c in b], mod_next)
        pk = mod_next
    return h


@dataclass(frozen=True)
class WittRing:
    """W = (Z/p^m)[x]/(h); the class of x is the chosen primitive N-th root of unity."""

    p: int
    N: int
    D: int
    m: int
    h: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def elem(self, coeffs) -> "WittElem":
        return WittElem(self, coeffs)

    def zero(self) -> "WittElem":
        return WittElem(self, ())

    def one(self) -> "WittElem":
        return WittElem(self, (1,))

    def from_int(self, n: int) -> "WittElem":
        return WittElem(self, (n,))

    @functools.cached_property
    def _zeta_powers(self) -> tuple:
        out, x = [], [1]
        for _ in range(self.N):
            out.append(tuple(x))
            x = _intpoly.mod(_intpoly.mul(x, [0, 1], self.modulus), list(self.h), self.modulus)
        return tuple(out)

    def zeta(self, k: int = 1) -> "WittElem":
        return WittElem(self, self._zeta_powers[k % self.N])

    def from_exponents(self, vec) -> "WittElem":
        """sum_k vec[k] zeta^k for an integer vector indexed by exponents mod N."""
        M = self.modulus
        acc = [0] * self.D
        for k, c in enumerate(vec):
            if c:
                for i, z in enumerate(self._zeta_powers[k % self.N]):
                    acc[i] += c * z
        return WittElem(self, [a % M for a in acc])

    def with_precision(self, m: int) -> "WittRing":
        return witt_ring_for(self.p, self.N, m)


@functools.lru_cache(maxsize=None)
def witt_ring_for(p: int, N: int, m: int) -> WittRing:
    if m < 1:
        raise ValueError("Witt ring precision must be at least 1")
    D = _order_mod(p, N)
    f0 = _primitive_factor(p, N, D) if N > 1 else [p - 1, 1]  # N = 1: x - 1
    h = _hensel_lift(f0, N, p, m)
    return WittRing(p, N, D, m, tuple(c % p**m for c in h))


def witt_ring(q: int, d: int, m: int = config.WITT_PRECISION) -> WittRing:
    """W for |G_0| = q^d - 1 at precision p^m."""
    p = next(x for x in range(2, q + 1) if q % x == 0)
    return witt_ring_for(p, q**d - 1, m)


class WittElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WittRing, coeffs=()):
        M = ring.modulus
        c = [int(x) % M for x in coeffs]
        if len(c) > ring.D:
            c = _intpoly.mod(c, list(ring.h), M)
        c += [0] * (ring.D - len(c))
        self.ring = ring
        self.coeffs = tuple(c)

    def _coerce(self, o):
        if isinstance(o, WittElem):
            if o.ring != self.ring:
                raise ValueError("elements of different Witt rings")
            return o
        if isinstance(o, int):
            return WittElem(self.ring, (o,))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return WittElem(self.ring, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return WittElem(self.ring, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o - self

    def __neg__(self):
        return WittElem(self.ring, [-a for a in self.coeffs])

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        R = self.ring
        prod = _intpoly.mul(list(self.coeffs), list(o.coeffs), R.modulus)
        return WittElem(R, _intpoly.mod(prod, list(R.h), R.modulus))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, o):
        o = self._coerce(o) if not isinstance(o, WittElem) else o
        return isinstance(o, WittElem) and o.ring == self.ring and o.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """p-adic valuation (W is unramified); m when zero to precision."""
        p, m = self.ring.p, self.ring.m
        best = m
        for c in self.coeffs:
            v = 0
            while v < best and c % p == 0:
                c //= p
                v += 1
            best = min(best, v)
        return best

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def norm_valuation(self) -> int:
        """v_p of N_{W/Z_p}; equals D times the W-valuation."""
        return self.ring.D * self.valuation()

    def to_int(self) -> int:
        """The rational integer c with self == c * 1_W, in the symmetric range."""
        if any(self.coeffs[1:]):
            raise ValueError(f"{self} is not a rational integer in W")
        M = self.ring.modulus
        c = self.coeffs[0]
        return c - M if c > M // 2 else c

    def __repr__(self):
        terms = [f"{c}" if i == 0 else (f"{c}*z" if i == 1 else f"{c}*z^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


# -- exact cyclotomic integers -------------------------------------------
@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, low degree first."""
    num = [-1] + [0] * (N - 1) + [1]
    for dd in range(1, N):
        if N % dd == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(dd)))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = a[k] // b[-1]
        out[k - len(b) + 1] = c
        for i, bc in enumerate(b):
            a[k - len(b) + 1 + i] -= c * bc
    if any(a):
        raise ArithmeticError("inexact integer polynomial division")
    return out


def reduce_cyclotomic(vec, N: int) -> tuple[int, ...]:
    """Image of sum vec[k] x^k in Z[x]/Phi_N (coefficient tuple of length phi(N))."""
    phi = list(cyclotomic_polynomial(N))
    deg = len(phi) - 1
    a = [0] * max(len(vec), deg)
    for k, c in enumerate(vec):
        a[k] += c
    for k in range(len(a) - 1, deg - 1, -1):
        c = a[k]
        if c:
            for i, pc in enumerate(phi):
                a[k - deg + i] -= c * pc
    return tuple(a[:deg])


# -- characters ------------------------------------------------------------
@dataclass(frozen=True)
class Character:
    """chi(g0) = zeta^k on G_0 = (A/P)^x, g0 the least generator."""

    group: GroupLevel
    k: int
    type: int

    @property
    def N(self) -> int:
        return self.group.order0

    def exponent(self, delta_code: int) -> int:
        """Exponent of zeta in chi(delta) for a level-0 residue code."""
        return self.k * self.group.dlog0[delta_code] % self.N

    def exponent_of(self, u: ResidueUnit) -> int:
        delta, _ = self.group.split_table
        return self.exponent(int(delta[u.code])) if u.n == self.group.n else self.exponent(u.reduce(0).code)

    def value(self, u: ResidueUnit, ring: WittRing) -> WittElem:
        return ring.zeta(self.exponent_of(u))

    def conjugate(self) -> "Character":
        return Character(self.group, (-self.k) % self.N, self.type)

    def is_trivial(self) -> bool:
        return self.k % self.N == 0

    def label(self) -> str:
        return f"chi_{self.k}"


def _type_of(G: GroupLevel, k: int) -> int:
    N = G.order0
    if k % N == 0:
        return 3
    if any(k * G.dlog0[c] % N for c in G.constants()):
        return 1
    return 2


def characters_of(G: GroupLevel) -> list[Character]:
    """All characters of G_0 (through the level-0 quotient of G), ordered by exponent."""
    return [Character(G, k, _type_of(G, k)) for k in range(G.order0)]


def classify_character(chi: Character) -> int:
    """Type 1: nontrivial on F_q^x; type 3: trivial; type 2: otherwise."""
    return _type_of(chi.group, chi.k)


# -- group rings -------------------------------------------------------------
class GroupRingElem:
    """Finitely supported map G_n -> Z or W, keyed by residue codes."""

    __slots__ = ("group", "coeffs", "ring")

    def __init__(self, group: GroupLevel, coeffs: dict | None = None, ring: WittRing | None = None):
        self.group = group
        self.ring = ring
        self.coeffs = {int(k): v for k, v in (coeffs or {}).items() if not _is_zero(v)}

    @classmethod
    def identity(cls, group, ring=None):
        one = 1 if ring is None else ring.one()
        return cls(group, {group.identity().code: one}, ring)

    @classmethod
    def from_units(cls, group, units, ring=None):
        coeffs: dict = {}
        for u in units:
            coeffs[u.code] = coeffs.get(u.code, 0) + 1
        if ring is not None:
            coeffs = {k: ring.from_int(v) for k, v in coeffs.items()}
        return cls(group, coeffs, ring)

    def coefficient(self, u) -> object:
        code = u.code if isinstance(u, ResidueUnit) else int(u)
        return self.coeffs.get(code, 0 if self.ring is None else self.ring.zero())

    def support(self) -> list[ResidueUnit]:
        return [self.group.from_code(c) for c in sorted(self.coeffs)]

    def _check(self, o):
        if o.group != self.group:
            raise ValueError("group ring elements over different groups")

    def __add__(self, o: "GroupRingElem") -> "GroupRingElem":
        self._check(o)
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return GroupRingElem(self.group, out, self.ring or o.ring)

    def __neg__(self):
        return GroupRingElem(self.group, {k: -v for k, v in self.coeffs.items()}, self.ring)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, WittElem)):
            return GroupRingElem(self.group, {k: v * o for k, v in self.coeffs.items()}, self.ring)
        self._check(o)
        G = self.group
        out: dict = {}
        for a, x in self.coeffs.items():
            ua = G.from_code(a)
            for b, y in o.coeffs.items():
                c = (ua * G.from_code(b)).code
                out[c] = out[c] + x * y if c in out else x * y
        return GroupRingElem(G, out, self.ring or o.ring)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, GroupRingElem) and o.group == self.group and self.coeffs == o.coeffs

    def is_zero(self):
        return not self.coeffs

    def augmentation(self):
        total = 0 if self.ring is None else self.ring.zero()
        for v in self.coeffs.values():
            total = total + v
        return total

    def __repr__(self):
        items = ", ".join(f"[{self.group.from_code(k)}]: {v}" for k, v in sorted(self.coeffs.items()))
        return "{" + items + "}"


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def chi_apply_exact(x: GroupRingElem, chi: Character) -> dict[int, list[int]]:
    """{gamma code: integer vector over exponents of zeta} for integer-coefficient x."""
    if x.group != chi.group:
        raise ValueError("character and group ring element live on different groups")
    if x.ring is not None:
        raise ValueError("exact evaluation needs integer coefficients")
    delta, gamma = x.group.split_table
    N = chi.N
    out: dict[int, list[int]] = {}
    for code, c in x.coeffs.items():
        g = int(gamma[code])
        vec = out.setdefault(g, [0] * N)
        vec[chi.exponent(int(delta[code]))] += c
    return out


def chi_apply(x: GroupRingElem, chi: Character, ring: WittRing) -> GroupRingElem:
    """sum_gamma (sum_delta chi(delta) c_(delta, gamma)) gamma over W."""
    if x.group != chi.group:
        raise ValueError("character and group ring element live on different groups")
    if ring.N != chi.N:
        raise ValueError("Witt ring does not contain the character values")
    if x.ring is None:
        vals = {g: ring.from_exponents(v) for g, v in chi_apply_exact(x, chi).items()}
        return GroupRingElem(x.group, vals, ring)
    delta, gamma = x.group.split_table
    out: dict = {}
    for code, c in x.coeffs.items():
        g = int(gamma[code])
        term = c * ring.zeta(chi.exponent(int(delta[code])))
        out[g] = out[g] + term if g in out else term
    return GroupRingElem(x.group, out, ring)
