"""Worked examples re-derived end to end; backs ``singcat verify all``."""

from __future__ import annotations

from typing import Callable, List

from .bounds import best_bound_report, isolated_singularity_bound, omega, theorem_C_bound
from .groebner import (
    Ideal,
    hilbert_samuel_multiplicity,
    ideal_equal,
    ideal_member,
    multiplicity_via_reduction,
)
from .mf import (
    MatrixFactorization,
    identity_morphism,
    is_nullhomotopic,
    mult_morphism,
    split_product_triangle,
    verify_koszul_binomial,
    verify_koszul_split,
)
from .poly import QQ, PolyRing
from .ring import (
    RingPresentation,
    alpha_exponent,
    dsg_dimension_lookup,
    is_regular_sequence,
    jacobian_ideal,
    loewy_length,
    quotient_ring,
)


def cusp_family() -> str:
    S = PolyRing(QQ, ["x", "y"])
    x, y = S.gens()
    R = RingPresentation(S, [x ** 4 - y ** 5])
    J = jacobian_ideal(R)
    assert ideal_equal(J, Ideal(S, [x ** 3, y ** 4])), "jacobian"
    assert loewy_length(R, J) == 6, "loewy length"
    red = multiplicity_via_reduction(R, J, Ideal(S, [x ** 3]))
    assert (red.multiplicity, red.reduction_exponent) == (15, 3), "reduction"
    assert hilbert_samuel_multiplicity(R, J) == 15, "hilbert-samuel"
    rep = best_bound_report(R)
    got = {c: rep.get(c).value for c in ("Corollary 9", "Loewy comparison", "multiplicity comparison")}
    assert got == {"Corollary 9": 2, "Loewy comparison": 11, "multiplicity comparison": 14}, got
    assert rep.best.value == 2
    return "jac=(x^3,y^4), ll=6, e=15, bounds 2/11/14, best 2"


def four_variable() -> str:
    S = PolyRing(QQ, ["x", "y", "z", "w"])
    x, y, z, w = S.gens()
    R = RingPresentation(S, [x ** 3 + y ** 3 + x * y * z + w ** 2])
    J = jacobian_ideal(R)
    for g in (x ** 3, y ** 3, x * y):
        ok, cert = ideal_member(g, J, certificate=True)
        assert ok and cert.verify(), f"{g} in jac"
    assert is_regular_sequence([x, y], R)
    Q = quotient_ring(R, [x, y])
    assert Q.spec() == "QQ[z,w]/(w^2)", Q.spec()
    assert dsg_dimension_lookup(Q).value == 1
    assert theorem_C_bound(omega((3, 3), (1, 1)), 1) == 11
    return "x^3, y^3, xy in jac; (x,y) regular; R/(x,y)=QQ[z,w]/(w^2), dim 1; bound 11"


def cyclic_covers() -> str:
    for e in (2, 3, 4, 5):
        S = PolyRing(QQ, ["x0", "y"])
        x0, y = S.gens()
        R = RingPresentation(S, [x0 ** e + y ** 3])
        res = alpha_exponent(x0, jacobian_ideal(R), R)
        assert res.value is not None and res.value <= e - 1 and res.certificate.verify(), e
        assert isolated_singularity_bound(e - 1, 0) == e - 2
    return "alpha(x0) <= e-1 and bound e-2 for e=2..5"


def matrix_factorizations() -> str:
    S = PolyRing(QQ, ["x"])
    (x,) = S.gens()
    X = MatrixFactorization.of(S, x ** 3, [[x ** 2]], [[x]])
    H = is_nullhomotopic(mult_morphism(X, x))
    assert H is not None and H.verify()
    assert verify_koszul_split(X, x).verify()
    sp = split_product_triangle(X, x, x)
    assert sp.triangle.verify() and sp.equivalence.verify()
    b = verify_koszul_binomial(X, [x, x])
    assert b.verify() and b.multiplicities == (1, 2, 1)
    return "homotopy, koszul split, split triangle, binomial (1,2,1)"


def negative_controls() -> str:
    S = PolyRing(QQ, ["x"])
    (x,) = S.gens()
    Y = MatrixFactorization.of(S, x ** 3, [[x]], [[x ** 2]])
    assert is_nullhomotopic(identity_morphism(Y)) is None
    T = PolyRing(QQ, ["x", "y"])
    a, b = T.gens()
    ok, _ = ideal_member(a ** 2, Ideal(T, [a ** 3, b ** 4, a ** 4 - b ** 5]))
    assert not ok
    return "id on (x, x^2) not null-homotopic; x^2 not in (x^3, y^4, x^4-y^5)"


def sharpness_annotation() -> str:
    S = PolyRing(QQ, ["x", "y"])
    x, y = S.gens()
    rep = best_bound_report(RingPresentation(S, [x ** 3 - y ** 7]))
    assert rep.annotations and rep.annotations[0]["computed"] is False
    return "a=3, b=7 carries the known value as an annotation"


CHECKS: List[Callable[[], str]] = [cusp_family, four_variable, cyclic_covers,
                                    matrix_factorizations, negative_controls, sharpness_annotation]


def run_all() -> List[dict]:
    out = []
    for check in CHECKS:
        try:
            detail = check()
            out.append({"name": check.__name__, "passed": True, "detail": detail})
        except AssertionError as e:
            out.append({"name": check.__name__, "passed": False, "detail": f"mismatch: {e}"})
    return out
