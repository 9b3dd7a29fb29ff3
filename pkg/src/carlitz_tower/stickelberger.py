"""Truncated Stickelberger series over Z[G_n] and their character parts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from . import config
from .carlitz import GroupLevel, frobenius_symbol, residue_group
from .coeff_rings import (Character, GroupRingElem, WittElem, WittRing, chi_apply_exact,
                          reduce_cyclotomic, witt_ring)
from .errors import CeilingError, InexactDivision
from .poly import Place, Poly, enumerate_monic, irreducibles


@dataclass
class ThetaSeries:
    """c_0 + c_1 X + ... + c_D X^D, c_m = sum over monic a of degree m prime to P of sigma_a^-1."""

    group: GroupLevel
    D: int
    coeffs: list[GroupRingElem]

    @property
    def P(self) -> Poly:
        return self.group.P

    @property
    def n(self) -> int:
        return self.group.n

    def counts(self) -> list[int]:
        """Augmentation of each coefficient: number of monics of that degree prime to P."""
        return [c.augmentation() for c in self.coeffs]

    def as_array(self) -> np.ndarray:
        """(D+1, |G|) integer array indexed by position in group.unit_codes."""
        units = self.group.unit_codes
        pos = {int(c): i for i, c in enumerate(units)}
        out = np.zeros((self.D + 1, len(units)), dtype=np.int64)
        for m, c in enumerate(self.coeffs):
            for code, v in c.coeffs.items():
                out[m, pos[code]] = v
        return out

    def to_json(self) -> dict:
        G = self.group
        return {
            "q": G.q, "P": str(G.P), "n": G.n, "D": self.D,
            "coefficients": [[[str(G.from_code(k)), v] for k, v in sorted(c.coeffs.items())]
                             for c in self.coeffs],
        }


def _powers_mod(G: GroupLevel, upto: int) -> np.ndarray:
    """t^i mod P^(n+1) for i = 0..upto as a code array (upto+1, e)."""
    F = G.field
    out = np.zeros((upto + 1, G.e), dtype=np.int64)
    x = Poly.one(F)
    t = Poly.t(F)
    for i in range(upto + 1):
        for k, c in enumerate(x.coeffs):
            out[i, k] = c
        x = (x * t) % G.modulus
    return out


def default_degree(P: Poly, n: int = 0) -> int:
    return (n + 1) * P.degree + 6


def theta_truncate(P, n: int = 0, D: int | None = None, method: str = "kernel") -> ThetaSeries:
    """Theta_n(X) to degree D.  method='direct' walks enumerate_monic and frobenius_symbol."""
    G = residue_group(P, n)
    if D is None:
        D = default_degree(G.P, n)
    if D < 0:
        raise ValueError("truncation degree must be non-negative")
    q = G.q
    if q**D > config.ENUM_CEILING:
        raise CeilingError(f"degree {D} needs {q}^{D} monics, above the ceiling")
    coeffs = []
    if method == "direct":
        place = Place.finite(G.P)
        for m in range(D + 1):
            acc: dict[int, int] = {}
            for a in enumerate_monic(G.field, m, coprime_to=place):
                c = frobenius_symbol(a, G.P, n).inverse().code if m else G.identity().code
                acc[c] = acc.get(c, 0) + 1
            coeffs.append(GroupRingElem(G, acc))
        return ThetaSeries(G, D, coeffs)
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    red = _powers_mod(G, D)
    units = G.unit_codes
    inv = G.inverse_table[units]
    tables = G.field.numpy_tables()
    for m in range(D + 1):
        hist = K.residue_histogram(tables, q, m, red[: m + 1])
        counts = hist[units]
        nz = np.flatnonzero(counts)
        coeffs.append(GroupRingElem(G, {int(inv[i]): int(counts[i]) for i in nz}))
    return ThetaSeries(G, D, coeffs)


@dataclass
class CheckReport:
    name: str
    per_degree: list[bool]
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.per_degree)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "per_degree": self.per_degree, **self.details}


def euler_product_array(G: GroupLevel, D: int) -> np.ndarray:
    """prod over monic irreducible Q != P of (1 - sigma_Q^-1 X^deg Q)^-1, to degree D."""
    units = G.unit_codes
    pos = np.full(G.q**G.e, -1, dtype=np.int64)
    pos[units] = np.arange(len(units))
    vecs = G._vectors(units)
    S = np.zeros((D + 1, len(units)), dtype=np.int64)
    S[0, pos[G.identity().code]] = 1
    perms: dict[int, np.ndarray] = {}
    for dQ in range(1, D + 1):
        for Q in irreducibles(G.field, dQ):
            if Q == G.P:
                continue
            g = G.inverse_table[(Q % G.modulus).code]
            if g not in perms:
                gv = np.broadcast_to(G._vectors(np.array([g]))[0], vecs.shape)
                perms[g] = pos[G._codes(G._vec_mul(vecs, gv))]
            perm = perms[g]
            # multiply by 1/(1 - g X^dQ): new[m] = old[m] + g * new[m - dQ]
            for m in range(dQ, D + 1):
                shifted = np.zeros(len(units), dtype=np.int64)
                shifted[perm] = S[m - dQ]
                S[m] += shifted
    return S


def euler_vs_sum_check(P, n: int = 0, D: int = 10) -> CheckReport:
    G = residue_group(P, n)
    theta = theta_truncate(G.P, n, D).as_array()
    euler = euler_product_array(G, D)
    per = [bool(np.array_equal(theta[m], euler[m])) for m in range(D + 1)]
    return CheckReport("euler_vs_sum", per, {"D": D})


def theta_chi0_closed_form(P, D: int = 12) -> CheckReport:
    """sum_m #{monic deg m prime to P} X^m against (1 - X^d)/(1 - qX)."""
    G = residue_group(P, 0)
    counts = theta_truncate(G.P, 0, D).counts()
    q, d = G.q, G.d
    expected = [q**m - (q ** (m - d) if m >= d else 0) for m in range(D + 1)]
    return CheckReport("chi0_closed_form", [a == b for a, b in zip(counts, expected)],
                       {"D": D, "counts": counts, "expected": expected})


@dataclass
class CharTheta:
    """Theta_n(X, chi): coefficients over W[Gamma_n] plus the exact cyclotomic vectors."""

    chi: Character
    ring: WittRing
    D: int
    coeffs: list[GroupRingElem]
    exact: list[dict[int, list[int]]]
    stabilized: bool

    @property
    def type(self) -> int:
        return self.chi.type

    @property
    def group(self) -> GroupLevel:
        return self.chi.group

    def scalar_coeffs(self) -> list[WittElem]:
        """Level 0: the coefficients as elements of W."""
        if self.group.n != 0:
            raise ValueError("scalar coefficients only exist at level 0")
        one = self.group.identity().code
        return [c.coefficient(one) if c.coeffs else self.ring.zero() for c in self.coeffs]

    def degree(self) -> int:
        for m in range(self.D, -1, -1):
            if not self.coeffs[m].is_zero():
                return m
        return -1

    def cyclotomic_coeffs(self) -> list[tuple[int, ...]]:
        """Level 0: exact coefficients in Z[x]/Phi_N."""
        one = self.group.identity().code
        N = self.chi.N
        return [reduce_cyclotomic(e.get(one, [0] * N), N) for e in self.exact]

    def format(self) -> str:
        if self.group.n != 0:
            return repr(self.coeffs)
        return format_wpoly(self.scalar_coeffs()[: self.degree() + 1])


def format_wpoly(coeffs, var: str = "X") -> str:
    """'1 - X' style rendering; W elements that are not rational integers print in the zeta basis."""
    parts = []
    for m, c in enumerate(coeffs):
        if c.is_zero():
            continue
        try:
            v = c.to_int()
            body, neg = str(abs(v)), v < 0
        except ValueError:
            body, neg = f"({c!r})", False
        mon = "" if m == 0 else (var if m == 1 else f"{var}^{m}")
        if mon and body == "1":
            body = ""
        term = body + mon
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts) if parts else "0"


def stabilization_window(D: int) -> int:
    return max(3, math.ceil(D / 4))


def theta_chi(theta: ThetaSeries, chi: Character, ring: WittRing | None = None) -> CharTheta:
    if chi.group != theta.group:
        raise ValueError("character is defined on a different group")
    if ring is None:
        ring = witt_ring(theta.group.q, theta.group.d)
    exact = [chi_apply_exact(c, chi) for c in theta.coeffs]
    coeffs = [GroupRingElem(theta.group, {g: ring.from_exponents(v) for g, v in e.items()}, ring)
              for e in exact]
    w = stabilization_window(theta.D)
    stable = all(c.is_zero() for c in coeffs[max(0, theta.D + 1 - w):])
    return CharTheta(chi, ring, theta.D, coeffs, exact, stable)


def _divide_one_minus_x(ct: CharTheta) -> list[dict]:
    """Quotient of Theta(X, chi) by (1 - X), per gamma; raises on a nonzero remainder."""
    ring = ct.ring
    gammas = sorted({g for c in ct.coeffs for g in c.coeffs})
    quot = [dict() for _ in range(ct.D)]
    for g in gammas:
        run = ring.zero()
        for m in range(ct.D + 1):
            run = run + ct.coeffs[m].coefficient(g)
            if m < ct.D:
                quot[m][g] = run
        if not run.is_zero():
            raise InexactDivision(f"(1 - X) does not divide Theta(X, {ct.chi.label()}) at precision {ring.m}")
    return quot


def theta_sharp(ct: CharTheta):
    """Theta^#(1, chi); a WittElem at level 0, an element of W[Gamma_n] otherwise."""
    if ct.type == 3:
        raise ValueError("type 3 unsupported: the trivial character needs a different treatment")
    if not ct.stabilized:
        raise ValueError(f"Theta(X, {ct.chi.label()}) has not stabilized by degree {ct.D}")
    G, ring = ct.group, ct.ring
    if ct.type == 1:
        total = GroupRingElem(G, {}, ring)
        for c in ct.coeffs:
            total = total + c
    else:
        total = GroupRingElem(G, {}, ring)
        for q in _divide_one_minus_x(ct):
            total = total + GroupRingElem(G, q, ring)
    if G.n == 0:
        return total.coefficient(G.identity().code) if total.coeffs else ring.zero()
    return total
