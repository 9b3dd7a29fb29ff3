import math
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_tower.carlitz import residue_group
from carlitz_tower.coeff_rings import (GroupRingElem, PadicNum, characters_of, chi_apply, classify_character,
                                       witt_ring, witt_ring_for)
from carlitz_tower.field import field_for_q
from carlitz_tower.local_fields import padic_binomial
from carlitz_tower.poly import parse_poly


def group(q, text, n=0):
    return residue_group(parse_poly(field_for_q(q), text), n)


def test_witt_examples():
    W = witt_ring(3, 1, 4)
    assert (W.N, W.D, W.modulus) == (2, 1, 81)
    assert W.zeta(1) == W.from_int(-1)
    W = witt_ring(2, 2, 4)
    assert (W.N, W.D) == (3, 2)
    assert [c % 2 for c in W.h] == [1, 1, 1]
    W = witt_ring(2, 1, 5)
    assert W.N == 1 and W.modulus == 32


@pytest.mark.parametrize("p,N", [(2, 3), (2, 7), (3, 8), (5, 4), (2, 15), (3, 26), (5, 24)])
@pytest.mark.parametrize("m", [1, 3, 8])
def test_zeta_exact_order(p, N, m):
    W = witt_ring_for(p, N, m)
    z = W.zeta(1)
    assert z**N == W.one()
    for k in range(1, N):
        assert z**k != W.one()


def test_characters_examples():
    assert len(characters_of(group(3, "t"))) == 2
    chis = characters_of(group(2, "t^2+t+1"))
    assert len(chis) == 3
    assert len(characters_of(group(3, "t^2+1"))) == 8
    chis = characters_of(group(3, "t"))
    assert [classify_character(c) for c in chis] == [3, 1]
    chis = characters_of(group(2, "t^2+t+1"))
    assert [classify_character(c) for c in chis] == [3, 2, 2]


@pytest.mark.parametrize("q,text", [(3, "t"), (3, "t^2+1"), (5, "t"), (4, "t^2+t+[0,1]"), (5, "t^2+2"), (7, "t+1")])
def test_type_counts(q, text):
    G = group(q, text)
    N = G.order0
    types = [classify_character(c) for c in characters_of(G)]
    assert types.count(3) == 1
    assert types.count(1) == N - N // (q - 1)
    assert types.count(2) == N // (q - 1) - 1


def test_chi_apply_examples():
    G = group(2, "t^2+t+1")
    W = witt_ring_for(2, 3, 6)
    chis = characters_of(G)
    norm = GroupRingElem.from_units(G, G.elements())
    for chi in chis[1:]:
        assert chi_apply(norm, chi, W).is_zero()
    for chi in chis:
        assert chi_apply(GroupRingElem.identity(G), chi, W) == GroupRingElem.identity(G, W)
    F = G.P.field
    x = GroupRingElem.from_units(G, [G.element(parse_poly(F, "t")), G.element(parse_poly(F, "t+1"))])
    chi = next(c for c in chis if c.exponent_of(G.element(parse_poly(F, "t"))) == 1)
    assert chi_apply(x, chi, W) == GroupRingElem.identity(G, W) * W.from_int(-1)


def _random_element(G, rng, support=6):
    units = G.elements()
    return GroupRingElem(G, {rng.choice(units).code: rng.randint(-5, 5) for _ in range(support)})


@pytest.mark.parametrize("q,text,n", [(2, "t^2+t+1", 1), (3, "t", 2), (3, "t^2+1", 0), (4, "t", 1)])
def test_fourier_inversion(q, text, n):
    G = group(q, text, n)
    W = witt_ring_for(G.P.field.p, G.order0, 6)
    rng = random.Random(7)
    chis = characters_of(G)
    for _ in range(3):
        x = _random_element(G, rng)
        images = [chi_apply(x, chi, W) for chi in chis]
        for u in G.elements():
            delta, gamma = G.split(u)
            total = W.zero()
            for chi, img in zip(chis, images):
                total = total + chi.conjugate().value(delta, W) * img.coefficient(gamma)
            assert total == W.from_int(G.order0 * x.coefficient(u))


@pytest.mark.parametrize("q,text,n", [(2, "t^2+t+1", 1), (3, "t^2+1", 0), (5, "t", 1)])
def test_chi_apply_multiplicative(q, text, n):
    G = group(q, text, n)
    W = witt_ring_for(G.P.field.p, G.order0, 5)
    rng = random.Random(11)
    for chi in characters_of(G):
        x, y = _random_element(G, rng, 4), _random_element(G, rng, 4)
        assert chi_apply(x * y, chi, W) == chi_apply(x, chi, W) * chi_apply(y, chi, W)


def _lucas(y, n, p):
    out = 1
    while n or y:
        out = out * comb(y % p, n % p) % p
        y, n = y // p, n // p
    return out


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6), st.integers(0, 200))
def test_binomial_matches_lucas(p, y, n):
    assert padic_binomial(y, n, p) == _lucas(y, n, p)
    assert padic_binomial(PadicNum(p, y, 8), n) == _lucas(y % p**8, n, p)


@given(st.integers(-(10**6), 10**6), st.integers(0, 60))
def test_binomial_negative_integers(y, n):
    # for an integer y the p-adic binomial is the integer one mod p
    num = 1
    for i in range(n):
        num *= y - i
    assert padic_binomial(y, n, 3) == (num // math.factorial(n)) % 3


@settings(max_examples=50)
@given(st.integers(0, 3**6 - 1), st.integers(0, 3**6 - 1))
def test_padic_ring_ops(a, b):
    x, y = PadicNum(3, a, 6), PadicNum(3, b, 4)
    assert (x + y).prec == 4
    assert int(x * y) == a * b % 81
    assert int(x - y) == (a - b) % 81
    assert PadicNum.from_digits(3, x.digits()) == x


def test_padic_rejects_bad_precision():
    with pytest.raises(ValueError):
        PadicNum(3, 1, 0)
