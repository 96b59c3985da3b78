import pytest
from hypothesis import given
from hypothesis import strategies as st

from singcat import QQ, PolyRing
from singcat.mf import (
    Homotopy,
    MatrixFactorization,
    MFMorphism,
    PreconditionError,
    binomial_multiplicities,
    compose,
    cone,
    direct_sum,
    dumps_mf,
    identity_morphism,
    is_homotopy_equivalence,
    is_nullhomotopic,
    koszul_factorization,
    koszul_tensor,
    loads_mf,
    mat_add,
    mat_scale,
    mult_morphism,
    shift,
    split_product_triangle,
    stable_annihilator_probe,
    validate,
    verify_koszul_binomial,
    verify_koszul_split,
    zero_object,
)

from conftest import polys, ring_of

S = PolyRing(QQ, ["x"])
(x,) = S.gens()
f = x ** 3
X = MatrixFactorization.of(S, f, [[x ** 2]], [[x]])
Y = MatrixFactorization.of(S, f, [[x]], [[x ** 2]])


def test_validate():
    assert validate(X) and validate(Y)
    assert not validate(MatrixFactorization.of(S, f, [[x]], [[x]]))
    assert validate(zero_object(S, f))


def test_shift_is_involutive():
    assert shift(shift(X)) == X
    assert validate(shift(X))


def test_multiplication_by_x_is_nullhomotopic():
    H = is_nullhomotopic(mult_morphism(X, x))
    assert H is not None and H.verify()


def test_identity_on_nonzero_object_is_not_nullhomotopic():
    assert is_nullhomotopic(identity_morphism(Y)) is None
    assert is_nullhomotopic(identity_morphism(X)) is None
    assert is_nullhomotopic(mult_morphism(X, x ** 0)) is None


def test_trivial_factorization_is_contractible():
    T = MatrixFactorization.of(S, f, [[S.one()]], [[f]])
    H = is_nullhomotopic(identity_morphism(T))
    assert H is not None and H.verify()


def test_cone_structure_maps_are_morphisms():
    phi = mult_morphism(X, x)
    C = cone(phi)
    assert validate(C.obj)
    assert C.inclusion.is_valid() and C.projection.is_valid()
    H = is_nullhomotopic(compose(C.projection, C.inclusion))
    assert H is not None and H.verify()


def test_koszul_split():
    cert = verify_koszul_split(X, x)
    assert cert.verify()
    assert cert.forward.source == koszul_tensor(X, x)
    assert cert.forward.target == direct_sum(X, shift(X))


def test_koszul_split_requires_annihilation():
    with pytest.raises(PreconditionError):
        verify_koszul_split(X, S.one())


def test_split_product_triangle():
    sp = split_product_triangle(X, x, x)
    assert sp.triangle.verify()
    assert sp.equivalence.verify()
    assert sp.middle == koszul_tensor(X, x * x)
    assert sp.triangle.first.source == koszul_tensor(X, x)
    assert sp.triangle.second.target == koszul_tensor(X, x)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_binomial(n):
    cert = verify_koszul_binomial(X, [x] * n)
    assert cert.verify()
    assert cert.multiplicities == binomial_multiplicities(n)


def test_binomial_multiplicities_values():
    assert binomial_multiplicities(2) == (1, 2, 1)
    assert binomial_multiplicities(4) == (1, 4, 6, 4, 1)


def test_homotopy_equivalence_of_split():
    cert = verify_koszul_split(X, x)
    found = is_homotopy_equivalence(cert.forward)
    assert found is not None and found.verify()
    assert is_homotopy_equivalence(mult_morphism(X, x)) is None


def test_stable_annihilator_probe():
    found = stable_annihilator_probe(X, 2)
    assert [str(r) for r, _ in found] == ["x", "x^2"]
    assert all(H.verify() for _, H in found)


def test_serialization_roundtrip():
    K = koszul_tensor(X, x)
    assert loads_mf(dumps_mf(K)) == K
    with pytest.raises(ValueError):
        loads_mf("{\"ring\": 3}")


def test_koszul_factorization():
    T = ring_of(2)
    a, b = T.gens()
    K = koszul_factorization(T, a * b + a ** 3, a)
    assert validate(K)


# random factorizations of a product potential over QQ[x, y]
T2 = ring_of(2)


@st.composite
def factorizations(draw):
    u = draw(polys(T2, max_degree=2, max_terms=2).filter(lambda p: not p.is_zero()))
    v = draw(polys(T2, max_degree=2, max_terms=2).filter(lambda p: not p.is_zero()))
    pot = u * v
    pieces = [MatrixFactorization.of(T2, pot, [[u]], [[v]])]
    if draw(st.booleans()):
        pieces.append(MatrixFactorization.of(T2, pot, [[v]], [[u]]))
    return direct_sum(*pieces) if len(pieces) > 1 else pieces[0]


@given(factorizations(), polys(T2, max_degree=2, max_terms=2))
def test_constructions_preserve_validity(F, r):
    assert validate(F)
    assert validate(shift(F))
    assert validate(direct_sum(F, shift(F)))
    phi = mult_morphism(F, r)
    assert phi.is_valid()
    assert validate(cone(phi).obj)
    assert validate(koszul_tensor(F, r))


@given(factorizations())
def test_potential_times_identity_is_nullhomotopic(F):
    H = is_nullhomotopic(mult_morphism(F, F.potential))
    assert H is not None and H.verify()


@given(factorizations(), polys(T2, max_degree=1, max_terms=2), st.integers(-3, 3))
def test_nullhomotopic_morphisms_are_closed_under_sum_and_scaling(F, r, c):
    u = F.A[0][0]
    v = F.B[0][0]
    phi, psi = mult_morphism(F, u * r), mult_morphism(F, v)
    H1, H2 = is_nullhomotopic(phi), is_nullhomotopic(psi)
    assert H1 is not None and H2 is not None
    total = Homotopy(phi + psi, mat_add(H1.s, H2.s), mat_add(H1.t, H2.t))
    assert total.verify()
    scaled = Homotopy(phi.scale(c), mat_scale(H1.s, c), mat_scale(H1.t, c))
    assert scaled.verify()
    H = is_nullhomotopic(phi + psi.scale(c))
    assert H is not None and H.verify()
