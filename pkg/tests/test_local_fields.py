import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_tower.coeff_rings import PadicNum
from carlitz_tower.field import FFElem, make_field
from carlitz_tower.local_fields import (InftyExponent, LaurentInf, NuAdic, NuExponent, PiPower, ideal_exp_infty,
                                        ideal_exp_nu, infty_decompose, nu_decompose, one_unit_pow)
from carlitz_tower.poly import Poly, parse_poly

F3 = make_field(3)
F2 = make_field(2)


def series(F, coeffs, v=0):
    return LaurentInf(F, v, coeffs)


def test_infty_decompose_examples():
    v, s, u = infty_decompose(Poly.one(F3), 4)
    assert (v, s.code) == (0, 1) and u == series(F3, [1, 0, 0, 0])
    v, s, u = infty_decompose(parse_poly(F3, "2t"), 4)
    assert (v, s.code) == (-1, 2) and u == series(F3, [1, 0, 0, 0])
    v, s, u = infty_decompose(parse_poly(F3, "t^2+1"), 4)
    assert (v, s.code) == (-2, 1) and u == series(F3, [1, 0, 1, 0])
    with pytest.raises(ValueError):
        infty_decompose(Poly.zero(F3), 4)


def test_one_unit_pow_examples():
    u = series(F2, [1, 1, 0, 0])
    assert one_unit_pow(u, 0) == series(F2, [1, 0, 0, 0])
    assert one_unit_pow(u, -1) == series(F2, [1, 1, 1, 1])
    assert one_unit_pow(u, PadicNum(2, -1, 8)) == series(F2, [1, 1, 1, 1])
    # freshman's dream
    u3 = series(F3, [1, 1, 0, 0, 0, 0])
    assert one_unit_pow(u3, 3) == series(F3, [1, 0, 0, 1, 0, 0])
    with pytest.raises(ValueError):
        one_unit_pow(series(F3, [2, 1, 0]), 1)


def test_ideal_exp_infty_examples():
    t = Poly.t(F3)
    assert ideal_exp_infty(t, InftyExponent.s(2), 4).to_poly() == t * t
    a = parse_poly(F3, "t^3+2t+1")
    assert ideal_exp_infty(a, InftyExponent.s(0), 5) == series(F3, [1, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        ideal_exp_infty(parse_poly(F3, "2t"), InftyExponent.s(1), 4)


def test_nu_examples():
    P = Poly.t(F3)
    w, u = nu_decompose(parse_poly(F3, "t+2"), P, 2)
    assert w.rep == Poly.const(F3, 2) and u.rep == parse_poly(F3, "2t+1")
    a = parse_poly(F3, "t+1")
    w, u = nu_decompose(a, P, 3)
    assert w.rep == Poly.one(F3) and u.rep == a
    w, u = nu_decompose(Poly.const(F3, 2), P, 3)
    assert w.rep == Poly.const(F3, 2) and u.rep == Poly.one(F3)
    b = parse_poly(F3, "t+2")
    assert ideal_exp_nu(b, P, NuExponent.s(0), 2).rep == Poly.one(F3)
    assert ideal_exp_nu(b, P, NuExponent.s(1), 2).rep == b
    assert ideal_exp_nu(b, P, NuExponent(None, 1, 0), 2).rep == parse_poly(F3, "2t+1")
    with pytest.raises(ValueError):
        nu_decompose(Poly.t(F3) * b, P, 2)


polys = st.lists(st.integers(0, 2), min_size=1, max_size=10).filter(lambda c: any(c))


@given(polys, st.integers(3, 12))
def test_infty_reconstruction(c, N):
    a = Poly(F3, c)
    v, s, u = infty_decompose(a, N)
    back = LaurentInf.pi_power(F3, v, N) * u.scale(s.code)
    assert back.agrees(LaurentInf.from_poly(a, N), v + N)


@given(polys, polys)
def test_infty_multiplicative(a, b):
    A, B = Poly(F3, a), Poly(F3, b)
    va, sa, ua = infty_decompose(A, 8)
    vb, sb, ub = infty_decompose(B, 8)
    v, s, u = infty_decompose(A * B, 8)
    assert v == va + vb and s == sa * sb and u == ua * ub


def _coprime(c, P):
    a = Poly(P.field, c)
    return a if not (a % P).is_zero() else None


@given(polys, polys)
def test_nu_multiplicative_and_teichmuller(a, b):
    P = parse_poly(F3, "t^2+1")
    A, B = _coprime(a, P), _coprime(b, P)
    if A is None or B is None:
        return
    m = 3
    wa, ua = nu_decompose(A, P, m)
    wb, ub = nu_decompose(B, P, m)
    w, u = nu_decompose(A * B, P, m)
    assert w == wa * wb and u == ua * ub
    assert w ** 9 == w
    assert u.is_one_unit()
    assert w * u == NuAdic(P, m, A * B)


@settings(max_examples=40)
@given(st.integers(0, 3**8 - 1), st.integers(0, 3**8 - 1), st.lists(st.integers(0, 2), min_size=6, max_size=6))
def test_one_unit_pow_additive_infty(y1, y2, tail):
    u = series(F3, [1] + tail[1:])
    Y1, Y2 = PadicNum(3, y1, 8), PadicNum(3, y2, 8)
    assert one_unit_pow(u, Y1 + Y2) == one_unit_pow(u, Y1) * one_unit_pow(u, Y2)
    # integers embedded p-adically agree with repeated multiplication
    assert one_unit_pow(u, PadicNum(3, 17, 8)) == u**17


@settings(max_examples=40)
@given(st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_one_unit_pow_additive_nu(y1, y2, c):
    P = parse_poly(F2, "t^2+t+1")
    m = 4
    u = NuAdic(P, m, Poly.one(F2) + P * Poly(F2, c))
    Y1, Y2 = PadicNum(2, y1, 10), PadicNum(2, y2, 10)
    assert one_unit_pow(u, Y1 + Y2) == one_unit_pow(u, Y1) * one_unit_pow(u, Y2)
    assert one_unit_pow(u, PadicNum(2, 5, 10)) == u**5


def test_exponent_laws_infty():
    rng = random.Random(3)
    N = 8
    for _ in range(20):
        a = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 4))] + [1])
        b = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 4))] + [1])
        s = InftyExponent(PiPower(-rng.randint(0, 5)), PadicNum(3, rng.randrange(3**8), 8))
        t = InftyExponent.s(rng.randint(0, 10))
        assert ideal_exp_infty(a * b, s, N) == ideal_exp_infty(a, s, N) * ideal_exp_infty(b, s, N)
        assert ideal_exp_infty(a, s + t, N) == ideal_exp_infty(a, s, N) * ideal_exp_infty(a, t, N)
        # integer points give honest powers
        j = rng.randint(0, 6)
        assert ideal_exp_infty(a, InftyExponent.s(j), a.degree * j + 1).to_poly() == a**j


def test_exponent_laws_nu():
    rng = random.Random(5)
    P = parse_poly(F3, "t^2+1")
    m = 3
    for _ in range(20):
        a = Poly(F3, [rng.randrange(1, 3)] + [rng.randrange(3) for _ in range(3)] + [1])
        b = Poly(F3, [rng.randrange(1, 3), rng.randrange(3), 1])
        if (a % P).is_zero() or (b % P).is_zero():
            continue
        j = rng.randint(0, 30)
        s = NuExponent.s(j)
        assert ideal_exp_nu(a * b, P, s, m) == ideal_exp_nu(a, P, s, m) * ideal_exp_nu(b, P, s, m)
        assert ideal_exp_nu(a, P, s, m) == NuAdic(P, m, a**j)
        y = PadicNum(3, rng.randrange(3**6), 6)
        s1, s2 = NuExponent(None, y, 2), NuExponent(None, PadicNum(3, 5, 6), 3)
        both = NuExponent(None, y + PadicNum(3, 5, 6), 5)
        assert ideal_exp_nu(a, P, both, m) == ideal_exp_nu(a, P, s1, m) * ideal_exp_nu(a, P, s2, m)


def test_laurent_inverse_and_sign():
    x = LaurentInf.from_poly(parse_poly(F3, "2t^2+t+1"), 6)
    one = x * x.inverse()
    assert one.agrees(LaurentInf.pi_power(F3, 0, 6), 6)
    assert FFElem(F3, x.coeffs[0]).code == 2
