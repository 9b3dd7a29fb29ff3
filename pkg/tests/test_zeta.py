import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_tower.coeff_rings import PadicNum
from carlitz_tower.errors import PrecisionError
from carlitz_tower.field import field_for_q
from carlitz_tower.local_fields import InftyExponent, LaurentInf, NuAdic, PiPower
from carlitz_tower.poly import Poly, enumerate_monic, parse_poly
from carlitz_tower.zeta import (_reverse, bernoulli_goss, congruence_exponent, degree_bound, goss_zeta_trunc,
                                infty_power_sum_local, nu_L, nu_L_euler, power_sum, power_sums_table,
                                vanishing_lemma_check, verify_infty_interpolation, verify_vadic_congruence,
                                verify_vadic_identity, z_poly)


def pp(q, text):
    return parse_poly(field_for_q(q), text)


def brute_power_sum(F, j, n, P=None):
    total = Poly.zero(F)
    for a in enumerate_monic(F, n):
        if P is None or not (a % P).is_zero():
            total = total + a**j
    return total


def test_power_sum_examples():
    F2 = field_for_q(2)
    assert power_sum(2, 1, 1) == Poly.one(F2)
    for q in (2, 3, 5):
        F = field_for_q(q)
        assert power_sum(q, 7, 0) == Poly.one(F)
        assert all(power_sum(q, 0, n).is_zero() for n in range(1, 4))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_lucas_matches_enumeration(q):
    F = field_for_q(q)
    for n in range(0, 4 if q < 4 else 3):
        for j in range(0, 3 * q + 4):
            assert power_sum(q, j, n, method="lucas") == brute_power_sum(F, j, n), (j, n)


def test_kernel_table_matches_brute():
    F = field_for_q(3)
    P = pp(3, "t^2+1")
    table = power_sums_table(F, 3, 12, coprime_to=P)
    for j in range(13):
        assert table[j] == brute_power_sum(F, j, 3, P)


def test_z_poly_examples():
    assert z_poly(2, 0).format() == "1"
    assert z_poly(2, 1).format() == "1 + X"
    assert z_poly(3, 1).format() == "1"
    assert bernoulli_goss(2, 0) == Poly.one(field_for_q(2))
    assert bernoulli_goss(2, 1).is_zero()
    assert bernoulli_goss(3, 1) == Poly.one(field_for_q(3))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_z_poly_degree_bound(q):
    for j in range(0, 25):
        Z = z_poly(q, j)
        assert Z.degree <= degree_bound(q, j)
        assert Z.coefficient(0) == Poly.one(field_for_q(q))


@pytest.mark.parametrize("q,k", [(2, 3), (3, 2), (4, 2), (5, 1)])
def test_vanishing_lemma(q, k):
    F = field_for_q(q)
    rng = random.Random(q * 10 + k)
    for i in range((q - 1) * k):
        x = Poly(F, [rng.randrange(q) for _ in range(5)])
        assert vanishing_lemma_check(q, k, i, x)
    # for k = 1 the bound is sharp: the sum of c^(q-1) over F_q is -1
    assert not vanishing_lemma_check(q, 1, q - 1, Poly.zero(F))


def test_goss_trivial_and_bernoulli():
    F3 = field_for_q(3)
    r = goss_zeta_trunc(3, InftyExponent.s(0), 6, 4)
    assert r.value == LaurentInf(F3, 0, [1, 0, 0, 0, 0, 0])
    for q, j in [(3, 2), (2, 3), (3, 5), (4, 3)]:
        F = field_for_q(q)
        Z = z_poly(q, j)
        # every summed term must be known through the constant coefficient
        N = j * Z.horizon + 1
        r = goss_zeta_trunc(q, -InftyExponent.s(j), N, Z.horizon)
        assert r.value.to_poly() == bernoulli_goss(q, j)


def test_goss_padic_continuity():
    """y = j0 + p^k converges to the p-adic value as k grows."""
    q, N, D = 3, 5, 4
    j0 = 2
    limit = goss_zeta_trunc(q, InftyExponent(PiPower(0), PadicNum(3, -j0, 4)), N, D).value
    for k in (2, 3, 4):
        approx = goss_zeta_trunc(q, InftyExponent(PiPower(0), -(j0 + 3**k)), N, D).value
        if 3**k >= N:
            assert approx.agrees(limit, N)


def test_goss_precision_guard():
    with pytest.raises(PrecisionError):
        goss_zeta_trunc(3, InftyExponent(PiPower(0), PadicNum(3, 1, 1)), 8, 2)


def test_nu_L_examples():
    P = pp(3, "t")
    L = nu_L(P, 1, 1, 3, 4)
    assert [str(r) for r in L.reps()][:2] == ["1", "2t"]
    L0 = nu_L(pp(3, "t^2+1"), 0, 0, 4, 3)
    for n, c in enumerate(L0.coeffs):
        count = 3**n - (3 ** (n - 2) if n >= 2 else 0)
        assert c == NuAdic(L0.P, 3, Poly.const(field_for_q(3), count % 3))


@pytest.mark.parametrize("q,text,m", [(3, "t", 3), (2, "t^2+t+1", 4), (3, "t^2+1", 2)])
def test_nu_L_kernel_direct_euler(q, text, m):
    P = pp(q, text)
    rng = random.Random(1)
    p = field_for_q(q).p
    for _ in range(3):
        j = rng.randint(0, 20)
        i = rng.randint(0, 10)
        D = 4
        a = nu_L(P, j, i, D, m)
        b = nu_L(P, j, i, D, m, method="direct")
        assert a.coeffs == b.coeffs
        assert a.coeffs == nu_L_euler(P, j, i, D, m)
        y = PadicNum(p, rng.randrange(p**6), 6)
        assert nu_L(P, y, i, D, m).coeffs == nu_L(P, y, i, D, m, method="direct").coeffs


def test_vadic_identity_examples():
    t2 = pp(2, "t")
    v = verify_vadic_identity(t2, 1, 1, 6)
    assert v.passed
    L = nu_L(t2, 1, 1, 2, 6)
    # (1 + X)(1 - tX) = 1 + (1 + t)X + tX^2 in characteristic 2
    assert [str(r) for r in L.reps()] == ["1", "t + 1", "t"]
    assert verify_vadic_identity(pp(3, "t"), 2, 2, 6).passed
    assert verify_vadic_identity(pp(3, "t"), 0, 0, 6).passed
    with pytest.raises(ValueError, match="congruence precondition"):
        verify_vadic_identity(pp(3, "t^2+1"), 4, 1, 3)


def test_vadic_congruent_pairs():
    P = pp(3, "t^2+1")
    for j, i in [(9, 1), (10, 2), (16, 0)]:
        assert verify_vadic_identity(P, j, i, 3).passed


def test_vadic_congruence_examples():
    P = pp(3, "t")
    assert verify_vadic_congruence(P, PadicNum(3, 13, 3), 1).passed
    assert verify_vadic_congruence(P, 4, 4).passed
    assert verify_vadic_congruence(pp(2, "t^2+t+1"), PadicNum(2, 77, 7), 0).passed
    assert congruence_exponent(P, 0) == 2 and congruence_exponent(P, 5) == 5


def test_infty_interpolation_examples():
    assert verify_infty_interpolation(pp(3, "t"), 0, 5).passed
    assert verify_infty_interpolation(pp(3, "t"), 1, 5).passed
    assert verify_infty_interpolation(pp(2, "t^2+t+1"), 2, 6).passed


@pytest.mark.parametrize("q,text", [(3, "t"), (2, "t^2+t+1")])
def test_local_field_path_matches_reversal(q, text):
    """The 1/t-expansion built from ideal_exp_infty equals the reversed polynomial sum."""
    P = pp(q, text)
    F = P.field
    for j in range(0, 6):
        for n in range(0, 4):
            loc = infty_power_sum_local(P, F, j, n)
            rev = _reverse(brute_power_sum(F, j, n, P), j * n)
            for k in range(j * n + 1):
                assert loc.coefficient(k) == rev[k]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, "t"), (3, "t"), (2, "t^2+t+1")]), st.integers(0, 12), st.integers(1, 3))
def test_identity_property(case, j, m):
    q, text = case
    P = pp(q, text)
    qd1 = q**P.degree - 1
    assert verify_vadic_identity(P, j, j % qd1 + qd1, m).passed
