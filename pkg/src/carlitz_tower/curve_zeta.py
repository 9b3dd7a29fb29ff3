"""Zeta numerator of F_0 = F(Lambda_P) two ways: Stickelberger polynomials and point counting."""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _intpoly
from . import _kernels as K
from . import config
from .carlitz import residue_group, splitting_data, torsion_polynomial
from .coeff_rings import WittElem, characters_of, chi_apply_exact, reduce_cyclotomic, witt_ring
from .errors import CeilingError, InexactDivision, VerificationError
from .poly import Place, Poly
from .stickelberger import CharTheta, theta_chi, theta_sharp, theta_truncate

GOLDEN_DIR = Path(__file__).parent / "golden"


# -- the plane model -----------------------------------------------------------
class PlaneModel:
    """f(t, x) = Phi_P(x)/x = sum_i c_i(t) x^(q^i - 1)."""

    def __init__(self, P: Poly):
        Place.finite(P)
        self.P = P
        self.field = P.field
        self.q, self.d = P.field.q, P.degree
        terms = torsion_polynomial(P, 0).x_terms()
        self.terms = {k - 1: c for k, c in sorted(terms.items())}  # exponent of x in f
        self.split_P = splitting_data(Place.finite(P), P)
        self.split_inf = splitting_data(Place.infinity(self.field), P)

    @property
    def x_degree(self) -> int:
        return max(self.terms)

    def check_smooth(self) -> bool:
        """Phi_P'(x) = P, so x0 * df/dx = P(t0) != 0 at every affine point off P = 0."""
        if self.terms.get(0) != self.P:
            raise VerificationError("the linear coefficient of Phi_P is not P")
        if self.x_degree != self.q**self.d - 1:
            raise VerificationError("unexpected x-degree of the torsion model")
        return True

    def format(self) -> str:
        parts = []
        for k, c in sorted(self.terms.items(), reverse=True):
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = str(c)
            if mon and c.is_one():
                cs = ""
            elif mon and len([x for x in c.coeffs if x]) > 1:
                cs = f"({cs})"
            parts.append(cs + mon)
        return " + ".join(parts)


def genus(P: Poly) -> int:
    """Riemann-Hurwitz for the tame extension F_0/F, from the splitting data at P and infinity."""
    G = residue_group(P, 0)
    total = -2 * G.order0
    for nu in (Place.finite(P), Place.infinity(P.field)):
        e, f, g = splitting_data(nu, P)
        total += (e - 1) * f * g * nu.degree
    if total % 2:
        raise VerificationError("odd different degree")
    return total // 2 + 1


# -- F_{p^n} with log tables --------------------------------------------------
class _LogField:
    """F_{p^n} = F_p[z]/(f) with f primitive; elements are base-p codes."""

    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.Q = p**n
        if self.Q > 2**24:
            raise CeilingError(f"F_{p}^{n} is too large for log tables")
        self.f = _primitive_poly(p, n)
        Q1 = self.Q - 1
        exp = np.zeros(Q1, dtype=np.int64)
        digits = [1] + [0] * (n - 1)
        weights = [p**i for i in range(n)]
        for i in range(Q1):
            exp[i] = sum(c * w for c, w in zip(digits, weights))
            top = digits[-1]
            digits = [0] + digits[:-1]
            if top:
                digits = [(c - top * fc) % p for c, fc in zip(digits, self.f)]
        self.exp = exp
        log = np.full(self.Q, -1, dtype=np.int64)
        log[exp] = np.arange(Q1)
        self.log = log
        self.zech = log[self.add(exp, np.ones_like(exp))]

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.n):
            w = self.p**i
            out += ((a // w + b // w) % self.p) * w
        return out

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        prod = self.exp[(la + lb) % (self.Q - 1)]
        return np.where((la < 0) | (lb < 0), 0, prod)

    def pow_scalar(self, a: int, k: int) -> int:
        la = int(self.log[a])
        if la < 0:
            return 0 if k else 1
        return int(self.exp[la * k % (self.Q - 1)])

    def embedding(self, F) -> np.ndarray:
        """Image in this field of every F_q code, F = F_p[y]/(modulus)."""
        if F.r == 1:
            return np.arange(F.p, dtype=np.int64)
        if self.n % F.r:
            raise ValueError("F_q does not embed")
        beta = None
        for cand in range(1, self.Q):
            acc = 0
            for c in reversed(F.modulus):
                acc = int(self.add(self.mul(acc, cand), c))
            if acc == 0:
                beta = cand
                break
        out = np.zeros(F.q, dtype=np.int64)
        for code in range(F.q):
            v = F.to_vector(code)
            acc = 0
            for i, c in enumerate(v):
                if c:
                    acc = int(self.add(acc, self.mul(c, self.pow_scalar(beta, i))))
            out[code] = acc
        return out

    def evaluate(self, f: Poly, emb: np.ndarray, x: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(x)
        for c in reversed(f.coeffs):
            acc = self.add(self.mul(acc, x), emb[c])
        return acc


def _primitive_poly(p: int, n: int) -> list[int]:
    """Least monic primitive polynomial of degree n over F_p (by code)."""
    Q1 = p**n - 1
    primes = _intpoly.prime_factors(Q1)
    for code in range(p**n):
        f = [(code // p**i) % p for i in range(n)] + [1]
        if f[0] == 0 or not _intpoly.is_irreducible_fp(f, p):
            continue
        if all(_intpoly.powmod([0, 1], Q1 // ell, f, p) != [1] for ell in primes):
            return f
    raise AssertionError("no primitive polynomial found")


@functools.lru_cache(maxsize=8)
def log_field(p: int, n: int) -> _LogField:
    return _LogField(p, n)


def _rank_mod_p(cols: list[int], p: int, n: int) -> int:
    if p == 2:
        basis: list[int] = []
        for v in cols:
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
        return len(basis)
    rows = [[(c // p**i) % p for i in range(n)] for c in cols]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [(x - c * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _place_points(model: PlaneModel, k: int) -> int:
    total = 0
    for (e, f, g), deg in ((model.split_P, model.d), (model.split_inf, 1)):
        if k % (f * deg) == 0:
            total += g * f * deg
    return total


def point_count(P: Poly, k: int, method: str = "auto", budget: int = config.POINT_BUDGET) -> int:
    """N_k: degree-one places of F_0 over F_(q^k)."""
    if k < 1:
        raise ValueError("k must be positive")
    model = PlaneModel(P)
    model.check_smooth()
    F = P.field
    n = F.r * k
    Q = F.p**n
    if method == "auto":
        method = "pairs" if Q * Q <= budget else "additive"
    cost = Q * Q if method == "pairs" else Q * n * n
    if cost > budget:
        raise CeilingError(f"point count over F_{Q} needs ~{cost} evaluations, budget {budget}")
    L = log_field(F.p, n)
    emb = L.embedding(F)
    T = np.arange(Q, dtype=np.int64)
    skip = L.evaluate(P, emb, T) == 0
    vals = {ex: L.evaluate(c, emb, T) for ex, c in model.terms.items()}
    if method == "pairs":
        exps = np.array(sorted(vals), dtype=np.int64)
        logs = np.stack([L.log[vals[ex]] for ex in exps], axis=1)
        affine = K.count_sparse_roots(L.zech, Q - 1, logs, exps, skip)
    elif method == "additive":
        # x -> Phi_P(t0)(x) is F_p-linear on F_Q; its kernel has p^(n - rank) elements
        cols = np.zeros((n, Q), dtype=np.int64)
        for b in range(n):
            acc = np.zeros(Q, dtype=np.int64)
            for ex, v in vals.items():
                acc = L.add(acc, L.mul(v, L.exp[b * (ex + 1) % (Q - 1)]))
            cols[b] = acc
        affine = 0
        for t0 in np.flatnonzero(~skip):
            r = _rank_mod_p([int(c) for c in cols[:, t0]], F.p, n)
            affine += F.p ** (n - r) - 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return int(affine) + _place_points(model, k)


# -- L-polynomials ------------------------------------------------------------
def lpoly_from_counts(q: int, g: int, counts: list[int]) -> list[int]:
    """Newton identities on s_k = q^k + 1 - N_k; the functional equation fills degrees > len(counts)."""
    if len(counts) < g:
        raise ValueError(f"need at least N_1..N_{g}")
    K_ = min(len(counts), 2 * g)
    s = [None] + [q**k + 1 - counts[k - 1] for k in range(1, K_ + 1)]
    a = [1]
    for k in range(1, K_ + 1):
        acc = sum(s[i] * a[k - i] for i in range(1, k + 1))
        if acc % k:
            raise VerificationError("Newton identity produced a non-integer coefficient")
        a.append(-acc // k)
    full = a + [0] * (2 * g + 1 - len(a))
    for i in range(g):
        want = q ** (g - i) * a[i]
        if 2 * g - i <= K_:
            if full[2 * g - i] != want:
                raise VerificationError(f"counts violate the functional equation at degree {2 * g - i}")
        else:
            full[2 * g - i] = want
    return full


def functional_equation_holds(num: list[int], q: int, g: int) -> bool:
    if len(num) != 2 * g + 1:
        return False
    return all(num[2 * g - i] == q ** (g - i) * num[i] for i in range(g + 1))


def p_part(h: int, p: int) -> int:
    out = 1
    while h % p == 0:
        h //= p
        out *= p
    return out


def _pval(h: int, p: int) -> int:
    v = 0
    while h % p == 0:
        h //= p
        v += 1
    return v


@dataclass
class ZetaData:
    q: int
    P: str
    genus: int
    numerator: list[int]
    counts: list[int] | None = None
    source: str = "analytic"
    precision: int | None = None
    completed_by_functional_equation: bool = False

    @property
    def h(self) -> int:
        return sum(self.numerator)

    def to_json(self) -> dict:
        return {"q": self.q, "P": self.P, "genus": self.genus, "numerator": self.numerator, "h": self.h,
                "N_k": self.counts, "source": self.source, "precision": self.precision,
                "completed_by_functional_equation": self.completed_by_functional_equation}


def counting_zeta(P: Poly, budget: int = config.POINT_BUDGET) -> ZetaData:
    """Numerator from N_1..N_2g (or N_1..N_g and the functional equation when 2g is out of budget)."""
    q, g = P.field.q, genus(P)
    counts = []
    for k in range(1, 2 * g + 1):
        try:
            counts.append(point_count(P, k, budget=budget))
        except CeilingError:
            if k <= g:
                raise
            break
    num = lpoly_from_counts(q, g, counts)
    return ZetaData(q, str(P), g, num, counts, "point_count",
                    completed_by_functional_equation=len(counts) < 2 * g)


def _weil_precision(p: int, q: int, g: int) -> int:
    bound = max(math.comb(2 * g, i) * (math.isqrt(q**i) + 1) for i in range(2 * g + 1))
    m = config.WITT_PRECISION
    while p**m <= 2 * bound:
        m += 1
    return m


def _divide_by(coeffs: list[WittElem], a: WittElem, deg: int) -> list[WittElem]:
    """Exact quotient of sum c_i X^i by (1 - a X^deg)."""
    out = list(coeffs)
    for i in range(deg, len(out)):
        out[i] = out[i] + a * out[i - deg]
    tail = out[len(out) - deg:]
    if any(not c.is_zero() for c in tail):
        raise InexactDivision("Euler factor at infinity does not divide Theta(X, chi)")
    return out[: len(out) - deg]


def artin_L(ct: CharTheta) -> list[WittElem]:
    """Theta_0(X, chi) with the Euler factors at unramified places of S removed."""
    chi = ct.chi
    if chi.is_trivial():
        raise ValueError("the trivial character has no polynomial L-function here")
    if not ct.stabilized:
        raise ValueError(f"Theta(X, {chi.label()}) has not stabilized")
    G = ct.group
    coeffs = ct.scalar_coeffs()[: ct.degree() + 1]
    # P is totally ramified.  Infinity is unramified in the fixed field of ker chi
    # iff chi kills the inertia group F_q^x; then its Frobenius is trivial (f = 1 there).
    if all(chi.exponent(c) == 0 for c in G.constants()):
        e, f, g = splitting_data(Place.infinity(G.field), G.P)
        coeffs = _divide_by(coeffs, ct.ring.one(), f)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _wpoly_mul(a: list[WittElem], b: list[WittElem]) -> list[WittElem]:
    ring = a[0].ring
    out = [ring.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _char_thetas(P: Poly, m: int) -> list[CharTheta]:
    G = residue_group(P, 0)
    ring = witt_ring(G.q, G.d, m)
    theta = theta_truncate(P, 0)
    return [theta_chi(theta, chi, ring) for chi in characters_of(G)]


def analytic_zeta(P: Poly, m: int | None = None) -> ZetaData:
    """prod over chi != chi_0 of artin_L(chi), read back as an integer polynomial."""
    F = P.field
    q, g = F.q, genus(P)
    if m is None:
        m = _weil_precision(F.p, q, g)
    cts = _char_thetas(P, m)
    ring = cts[0].ring
    prod = [ring.one()]
    for ct in cts:
        if ct.chi.is_trivial():
            continue
        prod = _wpoly_mul(prod, artin_L(ct))
    try:
        num = [c.to_int() for c in prod]
    except ValueError as exc:
        raise VerificationError(f"zeta numerator is not integral: {exc}") from None
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if len(num) - 1 != 2 * g:
        raise VerificationError(f"numerator degree {len(num) - 1} but genus {g}")
    if not functional_equation_holds(num, q, g):
        raise VerificationError("functional equation fails")
    return ZetaData(q, str(P), g, num, None, "analytic", m)


def zeta_numerator(P: Poly, m: int | None = None) -> ZetaData:
    return analytic_zeta(P, m)


def class_number(P: Poly, budget: int = config.POINT_BUDGET) -> tuple[int, int]:
    """(h, p-part of h); both paths must agree."""
    a = analytic_zeta(P)
    c = counting_zeta(P, budget)
    if a.numerator != c.numerator:
        raise VerificationError(f"analytic numerator {a.numerator} != point-count numerator {c.numerator}")
    return a.h, p_part(a.h, P.field.p)


# -- Fitting ideal experiment ----------------------------------------------------
@dataclass
class FittingEntry:
    label: str
    type: int
    theta_sharp: str | None
    valuation: int | None  # v_W of Theta^#(1, chi)
    w_cardinality: int | None  # |W/(Theta^#)| = p^(D v)
    norm_valuation: int | None  # v_p of the norm from W to Z_p
    status: str  # "consistent-with" or "deferred"

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class FittingReport:
    P: str
    q: int
    entries: list[FittingEntry]
    predicted_p_part: int  # p^(sum of v_W)
    h: int
    actual_p_part: int
    degree_D: int
    precision: int
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.predicted_p_part == self.actual_p_part

    def to_json(self) -> dict:
        return {"P": self.P, "q": self.q, "entries": [e.to_json() for e in self.entries],
                "predicted_p_part": self.predicted_p_part, "h": self.h,
                "actual_p_part": self.actual_p_part, "W_degree": self.degree_D,
                "precision": self.precision, "verdict": "pass" if self.verdict else "fail", **self.details}


def fitting_check(P: Poly, h: int | None = None, m: int | None = None, retries: int = 3) -> FittingReport:
    F = P.field
    p = F.p
    if h is None:
        h = class_number(P)[0]
    if m is None:
        m = max(config.WITT_PRECISION, _pval(h, p) + 2)
    for _ in range(retries + 1):
        cts = _char_thetas(P, m)
        entries, total_v, saturated = [], 0, False
        for ct in cts:
            if ct.type == 3:
                entries.append(FittingEntry(ct.chi.label(), 3, None, None, None, None, "deferred"))
                continue
            s = theta_sharp(ct)
            v = s.valuation()
            if v >= m:
                saturated = True
                break
            D = s.ring.D
            entries.append(FittingEntry(ct.chi.label(), ct.type, repr(s), v, p ** (D * v), D * v,
                                        "consistent-with"))
            total_v += v
        if not saturated:
            ring = cts[0].ring
            return FittingReport(str(P), F.q, entries, p**total_v, h, p_part(h, p), ring.D, m,
                                 {"sum_valuations": total_v, "p_part_power_D": p_part(h, p) ** ring.D,
                                  "product_of_cardinalities": p ** (ring.D * total_v)})
        m *= 2
    raise VerificationError("Theta^#(1, chi) vanishes at every tried precision")


# -- exact conjugate pairing -------------------------------------------------------
def _cyc_poly_mul(a: list[tuple], b: list[tuple], N: int) -> list[tuple]:
    L = len(a[0])
    out = [[0] * L for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            conv = [0] * (2 * L - 1)
            for u, xu in enumerate(x):
                if xu:
                    for v, yv in enumerate(y):
                        conv[u + v] += xu * yv
            r = reduce_cyclotomic(conv, N)
            out[i + j] = [s + t for s, t in zip(out[i + j], r)]
    return [tuple(c) for c in out]


def conjugate_pairing_report(P: Poly) -> dict:
    """Exact checks in Z[x]/Phi_N: conjugation swaps chi and chi-bar; Galois-orbit products lie in Z[X]."""
    G = residue_group(P, 0)
    theta = theta_truncate(P, 0)
    N = G.order0
    one = G.identity().code
    exact = {}
    for chi in characters_of(G):
        exact[chi.k] = [chi_apply_exact(c, chi).get(one, [0] * N) for c in theta.coeffs]
    swap_ok = True
    for k, vecs in exact.items():
        conj = [[v[(-i) % N] for i in range(N)] for v in vecs]
        other = exact[(-k) % N]
        if [reduce_cyclotomic(c, N) for c in conj] != [reduce_cyclotomic(c, N) for c in other]:
            swap_ok = False
    orbits = {}
    for k in range(1, N):
        order = N // math.gcd(k, N)
        orbits.setdefault(order, []).append(k)
    orbit_rational = {}
    for order, ks in orbits.items():
        prod = None
        for k in ks:
            poly = [reduce_cyclotomic(v, N) for v in exact[k]]
            prod = poly if prod is None else _cyc_poly_mul(prod, poly, N)
        orbit_rational[order] = all(not any(c[1:]) for c in prod)
    return {"conjugation_swaps": swap_ok, "orbit_products_rational": orbit_rational,
            "passed": swap_ok and all(orbit_rational.values())}


# -- golden files ---------------------------------------------------------------
def golden_slug(q: int, P: Poly) -> str:
    return f"{q}_{str(P).replace(' ', '').replace('^', '')}"


def golden_path(q: int, P: Poly) -> Path:
    return GOLDEN_DIR / golden_slug(q, P) / "curve.json"


def golden_record(analytic: ZetaData, counted: ZetaData, fit: FittingReport) -> dict:
    return {"q": analytic.q, "P": analytic.P, "genus": analytic.genus, "N_k": counted.counts,
            "numerator": analytic.numerator, "h": analytic.h, "p_part": fit.actual_p_part,
            "theta_sharp_orders": {e.label: e.valuation for e in fit.entries if e.valuation is not None}}


def golden_compare(record: dict, path: Path, write: bool = False) -> str:
    """'match', 'written', 'missing' or raises on a mismatch."""
    if path.exists():
        stored = json.loads(path.read_text())
        if stored != record:
            raise VerificationError(f"golden file {path} disagrees with this run")
        return "match"
    if not write:
        return "missing"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record, indent=1, sort_keys=True) + "\n")
    return "written"
