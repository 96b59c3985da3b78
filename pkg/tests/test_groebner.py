import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from singcat import DEGREVLEX, GF, LEX, QQ, PolyRing
from singcat.groebner import (
    INFINITE,
    Ideal,
    ResourceCapError,
    buchberger,
    hilbert_samuel_multiplicity,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    is_locally_finite,
    krull_dimension,
    local_length,
    module_groebner,
    module_member,
    multiplicity_via_reduction,
    normal_form,
    quotient_length,
    saturation,
    bounded_lift,
    verify_combination,
)
from singcat.ring import RingPresentation

from conftest import from_sympy, naive_remainder, polys, ring_of, to_sympy


def sympy_gb(gens, ring, order="grevlex"):
    syms = sympy.symbols(ring.variables)
    G = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order=order)
    return [from_sympy(g, ring) for g in G.exprs]


def test_reduced_basis_known(S2):
    x, y = S2.gens()
    G = buchberger(Ideal(S2, [x ** 2 - y, x * y - 1]))
    assert set(G.basis) == set(sympy_gb([x ** 2 - y, x * y - 1], S2))


def test_unit_and_empty(S2):
    x, y = S2.gens()
    assert Ideal(S2, [x, x + 1]).is_unit_ideal()
    assert buchberger(Ideal(S2, [])).basis == ()
    assert normal_form(x, buchberger(Ideal(S2, []))) == x


def test_membership_certificate(S2):
    x, y = S2.gens()
    I = Ideal(S2, [4 * x ** 3, -5 * y ** 4])
    ok, cert = ideal_member(x ** 4 - y ** 5, I, certificate=True)
    assert ok and cert.verify() and cert.expand() == x ** 4 - y ** 5
    ok, cert = ideal_member(x ** 2, Ideal(S2, [x ** 3, y ** 4, x ** 4 - y ** 5]), certificate=True)
    assert not ok and cert is None


def test_ideal_equal_and_contains(S2):
    x, y = S2.gens()
    assert ideal_equal(Ideal(S2, [x, y]), Ideal(S2, [x + y, x - y]))
    assert ideal_contains(Ideal(S2, [x, y]), Ideal(S2, [x * y, y ** 3]))
    assert not ideal_contains(Ideal(S2, [x * y]), Ideal(S2, [x]))


def test_quotient(S2):
    x, y = S2.gens()
    Q = ideal_quotient(Ideal(S2, [x ** 2 * y, y ** 3]), y)
    assert ideal_equal(Q, Ideal(S2, [x ** 2, y ** 2]))
    assert ideal_equal(saturation(Ideal(S2, [x ** 2 * y]), y), Ideal(S2, [x ** 2]))


def test_lengths_and_dimension(S2):
    x, y = S2.gens()
    assert quotient_length(Ideal(S2, [x ** 3, y ** 4])) == 12
    assert quotient_length(Ideal(S2, [x ** 3])) is INFINITE
    assert quotient_length(Ideal(S2, [x, x - 1])) == 0
    assert krull_dimension(Ideal(S2, [x ** 3])) == 1
    assert krull_dimension(Ideal(S2, [])) == 2
    assert krull_dimension(Ideal(S2, [x, y])) == 0


def test_local_length_ignores_far_points(S2):
    x, y = S2.gens()
    # (x^2, y(y-1)) has a double point at the origin and another at (0,1)
    I = Ideal(S2, [x ** 2, y * (y - 1)])
    assert quotient_length(I) == 4
    assert local_length(I) == 2
    assert is_locally_finite(I)
    assert not is_locally_finite(Ideal(S2, [x]))
    assert local_length(Ideal(S2, [x])) is INFINITE
    assert local_length(Ideal(S2, [x - 1, y])) == 0


def test_hilbert_samuel_on_polynomial_ring(S2):
    x, y = S2.gens()
    R = RingPresentation(S2, [])
    assert hilbert_samuel_multiplicity(R, Ideal(S2, [x ** 2, y ** 3])) == 6
    assert hilbert_samuel_multiplicity(R, Ideal(S2, [x, y])) == 1


def test_reduction_errors(S2):
    x, y = S2.gens()
    R = RingPresentation(S2, [x ** 4 - y ** 5])
    J = Ideal(S2, [x ** 3, y ** 4])
    with pytest.raises(ResourceCapError):
        multiplicity_via_reduction(R, J, Ideal(S2, [x ** 4]), cap=3)
    with pytest.raises(ValueError):
        multiplicity_via_reduction(R, J, Ideal(S2, [x ** 3, y ** 4]))
    res = multiplicity_via_reduction(R, Ideal(S2, [x ** 3]), Ideal(S2, [x ** 3]))
    assert res.reduction_exponent == 0 and res.multiplicity == 15


def test_module_membership(S1):
    (x,) = S1.gens()
    M = [[x ** 2, S1.zero()], [S1.zero(), x]]
    ok, cof = module_member([x ** 3, x ** 2], M)
    assert ok and verify_combination([x ** 3, x ** 2], M, cof)
    ok, cof = module_member([x, S1.zero()], M)
    assert not ok and cof is None


def test_bounded_lift_hit_is_a_proof(S1):
    (x,) = S1.gens()
    M = [[x ** 2, S1.one()]]
    cof = bounded_lift([x ** 3, x], M, 1)
    assert cof is not None and verify_combination([x ** 3, x], M, cof)
    assert bounded_lift([x ** 3, x], M, 0) is None


def test_module_groebner_is_reduced(S2):
    x, y = S2.gens()
    z = S2.zero()
    G = module_groebner([[x, y], [y, z], [z, x]], 2, S2)
    assert G.basis and all(len(v) == 2 for v in G.basis)


def test_prime_field_cyclic():
    S = PolyRing(GF(32003), ["a", "b", "c"])
    a, b, c = S.gens()
    gens = [a + b + c, a * b + b * c + c * a, a * b * c - 1]
    G = buchberger(Ideal(S, gens))
    assert quotient_length(Ideal(S, G.basis)) == 6


ideal_gens = st.integers(1, 3).flatmap(
    lambda n: st.lists(polys(ring_of(n), max_degree=3, max_terms=3), min_size=1, max_size=3))


@given(ideal_gens, st.data())
def test_normal_form_against_sympy_and_naive_division(gens, data):
    S = gens[0].ring
    I = Ideal(S, gens)
    G = buchberger(I)
    assert set(G.basis) == {g.monic() for g in sympy_gb(gens, S)}
    f = data.draw(polys(S))
    r = normal_form(f, G)
    assert r == naive_remainder(f, G.basis, DEGREVLEX)
    syms = sympy.symbols(S.variables)
    if G.basis:
        SG = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex")
        assert to_sympy(r, syms) == sympy.expand(SG.reduce(to_sympy(f, syms))[1])
    lead = G.leading_monomials()
    assert not any(all(a >= b for a, b in zip(m, l)) for m, _ in r.items() for l in lead)


@given(ideal_gens)
def test_basis_is_idempotent_and_order_unique(gens):
    I = Ideal(gens[0].ring, gens)
    G = buchberger(I)
    again = buchberger(Ideal(I.ring, G.basis))
    assert set(again.basis) == set(G.basis)
    lex = buchberger(I, LEX)
    assert set(lex.basis) == {g.monic(LEX) for g in sympy_gb(gens, I.ring, "lex")}


@given(ideal_gens, st.data())
def test_membership_certificates_expand(gens, data):
    S = gens[0].ring
    I = Ideal(S, gens)
    cofs = [data.draw(polys(S, max_degree=2, max_terms=2)) for _ in gens]
    f = sum((c * g for c, g in zip(cofs, gens)), S.zero())
    ok, cert = ideal_member(f, I, certificate=True)
    assert ok and cert.verify()


@given(st.integers(1, 2).flatmap(lambda n: st.tuples(
    st.lists(st.lists(polys(ring_of(n), max_degree=2, max_terms=2), min_size=2, max_size=2),
             min_size=1, max_size=3),
    st.lists(polys(ring_of(n), max_degree=2, max_terms=2), min_size=3, max_size=3))))
def test_module_member_certificates(args):
    M, cofs = args
    S = M[0][0].ring
    v = [sum((c * m[i] for c, m in zip(cofs, M)), S.zero()) for i in range(2)]
    if all(c.is_zero() for c in v):
        return
    ok, cof = module_member(v, M)
    assert ok and verify_combination(v, M, cof)
