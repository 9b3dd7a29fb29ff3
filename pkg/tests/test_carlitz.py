import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_tower.carlitz import (SkewPoly, carlitz_map, frobenius_symbol, residue_group, splitting_data,
                                   torsion_polynomial)
from carlitz_tower.curve_zeta import log_field
from carlitz_tower.field import field_for_q, make_field
from carlitz_tower.poly import Place, Poly, enumerate_monic, irreducibles, parse_poly


def pp(q, text):
    return parse_poly(field_for_q(q), text)


def test_carlitz_map_examples():
    assert carlitz_map(pp(3, "t")).format("x") == "x^3 + tx"
    assert carlitz_map(pp(2, "t+1")).format() == "tau + t + 1"
    phi = carlitz_map(pp(3, "t^2"))
    assert [str(c) for c in phi.coeffs] == ["t^2", "t^3 + t", "1"]


def test_torsion_examples():
    assert torsion_polynomial(pp(3, "t")).format("x") == "x^3 + tx"
    P = pp(2, "t^2+t+1")
    phi_t = carlitz_map(pp(2, "t"))
    one = SkewPoly.scalar(Poly.one(P.field))
    assert torsion_polynomial(P) == phi_t * phi_t + phi_t + one
    assert torsion_polynomial(P).x_degree == 4
    assert torsion_polynomial(pp(3, "t"), 1).x_degree == 9


@pytest.mark.parametrize("q,Ptext,n", [(2, "t", 2), (3, "t^2+1", 0), (4, "t+[0,1]", 1), (5, "t", 0)])
def test_torsion_shape(q, Ptext, n):
    P = pp(q, Ptext)
    T = torsion_polynomial(P, n)
    assert T.x_degree == q ** ((n + 1) * P.degree)
    assert T.x_terms()[1] == P ** (n + 1)
    assert T.coeffs[-1] == Poly.one(P.field)


def test_torsion_rejects_reducible():
    with pytest.raises(ValueError):
        torsion_polynomial(pp(2, "t^2+1"))


small = st.lists(st.integers(0, 2), max_size=4)


@settings(max_examples=40)
@given(small, small)
def test_carlitz_map_is_ring_hom(a, b):
    F = make_field(3)
    A, B = Poly(F, a), Poly(F, b)
    assert carlitz_map(A * B) == carlitz_map(A) * carlitz_map(B)
    assert carlitz_map(A + B) == carlitz_map(A) + carlitz_map(B)


@settings(max_examples=40)
@given(small, small, small)
def test_torsion_additive_in_x(a, x, y):
    F = make_field(3)
    phi = carlitz_map(Poly(F, a) + Poly.t(F))
    X, Y = Poly(F, x), Poly(F, y)
    assert phi(X + Y) == phi(X) + phi(Y)


def test_carlitz_action_structure():
    # degree in tau equals degree of a, constant term a, leading coefficient the sign
    F = field_for_q(4)
    a = parse_poly(F, "[0,1]t^3+t+1")
    phi = carlitz_map(a)
    assert phi.degree == 3 and phi[0] == a
    assert phi[3] == Poly.const(F, a.leading)


def test_residue_group_examples():
    G = residue_group(pp(3, "t"))
    assert G.order == 2 and sorted(str(u) for u in G.elements()) == ["1", "2"]
    G = residue_group(pp(2, "t^2+t+1"))
    assert G.order == 3 and {str(u) for u in G.elements()} == {"1", "t", "t + 1"}
    G = residue_group(pp(2, "t"), 1)
    assert G.order == 2 and {str(u) for u in G.elements()} == {"1", "t + 1"}


@pytest.mark.parametrize("q,Ptext,n", [(2, "t", 3), (3, "t", 2), (2, "t^2+t+1", 2), (3, "t^2+1", 1), (4, "t", 1),
                                       (5, "t+2", 1)])
def test_generators_cover_group(q, Ptext, n):
    G = residue_group(pp(q, Ptext), n)
    d = G.P.degree
    assert G.order == q ** (n * d) * (q**d - 1)
    gens = G.generators
    assert np.prod([o for _, o in gens]) == G.order
    for g, o in gens:
        assert g.order() == o
    # the generated subgroup is everything
    span = {G.identity().code}
    for g, o in gens:
        span = {(G.from_code(c) * g**k).code for c in span for k in range(o)}
    assert len(span) == G.order


def test_constants_are_inertia():
    G = residue_group(pp(5, "t^2+2"))
    consts = G.constants()
    assert len(consts) == 4
    assert all(G.from_code(c).order() in (1, 2, 4) for c in consts)


def test_frobenius_examples():
    P = pp(3, "t")
    assert str(frobenius_symbol(pp(3, "t+1"), P)) == "1"
    assert str(frobenius_symbol(pp(3, "t+2"), P)) == "2"
    assert str(frobenius_symbol(pp(2, "t"), pp(2, "t^2+t+1"))) == "t"
    with pytest.raises(ValueError):
        frobenius_symbol(P, P)


def test_frobenius_multiplicative():
    F = make_field(3)
    P = parse_poly(F, "t^2+1")
    for a in enumerate_monic(F, 2, coprime_to=Place.finite(P)):
        for b in enumerate_monic(F, 1, coprime_to=Place.finite(P)):
            assert frobenius_symbol(a * b, P, 1) == frobenius_symbol(a, P, 1) * frobenius_symbol(b, P, 1)


def test_splitting_examples():
    F3, F2 = make_field(3), make_field(2)
    assert tuple(splitting_data(Place.infinity(F3), pp(3, "t"))) == (2, 1, 1)
    P = pp(2, "t^2+t+1")
    assert tuple(splitting_data(Place.infinity(F2), P)) == (1, 1, 3)
    assert tuple(splitting_data(Place.finite(pp(2, "t")), P)) == (1, 3, 1)


@pytest.mark.parametrize("q,Ptext,n", [(2, "t^3+t+1", 0), (3, "t", 1), (3, "t^2+1", 0), (4, "t", 0)])
def test_efg_product(q, Ptext, n):
    P = pp(q, Ptext)
    F = P.field
    G = residue_group(P, n)
    places = [Place.infinity(F)]
    for deg in range(1, 7):
        if q**deg > 5000:
            break
        places += [Place.finite(Q) for Q in irreducibles(F, deg)]
    for nu in places:
        e, f, g = splitting_data(nu, P, n)
        assert e * f * g == G.order


def _frobenius_fixed_torsion(P, Q, k):
    """Number of roots of Phi_P, specialized at t = a root of Q, inside F_{q^(deg Q * k)}."""
    F = P.field
    L = log_field(F.p, F.r * Q.degree * k)
    emb = L.embedding(F)
    xs = np.arange(L.Q, dtype=np.int64)
    t0 = int(xs[L.evaluate(Q, emb, xs) == 0][0])
    t0 = np.full(1, t0, dtype=np.int64)
    total = np.zeros(L.Q, dtype=np.int64)
    logs = L.log[xs]
    for e, c in torsion_polynomial(P).x_terms().items():
        cval = int(L.evaluate(c, emb, t0)[0])
        xe = np.where(logs < 0, 0, L.exp[(logs * e) % (L.Q - 1)])
        total = L.add(total, L.mul(xe, np.full(L.Q, cval)))
    return int((total == 0).sum())


@pytest.mark.parametrize("q,Ptext,Qs", [(3, "t", ["t+1", "t+2", "t^2+1"]), (2, "t^2+t+1", ["t", "t+1", "t^3+t+1"]),
                                        (3, "t^2+1", ["t", "t+1", "t+2"])])
def test_carlitz_reciprocity(q, Ptext, Qs):
    """Frobenius at Q acts on P-torsion through Q mod P: an independent root count."""
    P = pp(q, Ptext)
    for Qt in Qs:
        Q = pp(q, Qt)
        order = frobenius_symbol(Q, P).order()
        for k in range(1, 4):
            if q ** (Q.degree * k) > 2**16:
                break
            expect = q**P.degree if k % order == 0 else 1
            assert _frobenius_fixed_torsion(P, Q, k) == expect, (Qt, k)
