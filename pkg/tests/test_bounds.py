import json
import math
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singcat import QQ, PolyRing
from singcat.bounds import (
    BoundConfig,
    BoundError,
    best_bound_report,
    isolated_singularity_bound,
    loewy_comparison_bound,
    multiplicity_comparison_bound,
    omega,
    theorem_A_decomposition_bound,
    theorem_C_bound,
)
from singcat.groebner import Ideal, ideal_member
from singcat.ring import UNKNOWN, RingPresentation, jacobian_ideal

S2 = PolyRing(QQ, ["x", "y"])
S4 = PolyRing(QQ, ["x", "y", "z", "w"])
x, y = S2.gens()
CERT_TERM = re.compile(r"\(([^()]*)\)\*\(([^()]*)\)")

sizes = st.integers(1, 4)


def test_formula_values():
    assert omega((3, 3), (1, 1)) == 6
    assert theorem_C_bound(omega((3, 3), (1, 1)), 1) == 11
    assert theorem_C_bound(omega((3, 3), (3, 0)), 1) == 17
    assert theorem_A_decomposition_bound([0, 0, 0]) == 2
    assert isolated_singularity_bound(3, 0) == 2
    assert loewy_comparison_bound(6) == 11
    assert loewy_comparison_bound(1) == 1
    assert multiplicity_comparison_bound(15) == 14
    assert multiplicity_comparison_bound(1) == 0


def test_formula_errors():
    with pytest.raises(BoundError):
        omega((2,), (0,))
    with pytest.raises(BoundError):
        omega((2, 3), (1,))
    with pytest.raises(BoundError):
        theorem_A_decomposition_bound([0, UNKNOWN])
    with pytest.raises(BoundError):
        isolated_singularity_bound(None, 0)
    with pytest.raises(BoundError):
        multiplicity_comparison_bound(0)
    from singcat.groebner import INFINITE
    with pytest.raises(BoundError):
        loewy_comparison_bound(INFINITE)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.integers(0, 5))
def test_omega_reduces_to_product(m, d):
    a = [m[0]] + [0] * (len(m) - 1)
    assert omega(m, a) == math.prod(m)
    assert theorem_C_bound(omega(m, a), d) == math.prod(m) * (d + 1) - 1


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3), st.data(), st.integers(0, 4))
def test_bounds_are_monotone(m, data, d):
    a = [data.draw(st.integers(0, mi)) for mi in m]
    if not any(a):
        a[0] = 1
    i = data.draw(st.integers(0, len(m) - 1))
    bigger = list(a)
    bigger[i] += 1
    w = omega(m, a)
    assert omega(m, bigger) >= w
    assert theorem_C_bound(w, d + 1) >= theorem_C_bound(w, d)
    assert theorem_C_bound(w + 1, d) >= theorem_C_bound(w, d)
    assert isolated_singularity_bound(w + 1, d) >= isolated_singularity_bound(w, d)
    assert loewy_comparison_bound(w + 1) >= loewy_comparison_bound(w)
    assert multiplicity_comparison_bound(w + 1) >= multiplicity_comparison_bound(w)
    ds = [data.draw(st.integers(0, 3)) for _ in range(len(m))]
    assert theorem_A_decomposition_bound(ds + [0]) >= theorem_A_decomposition_bound(ds)
    assert all(b >= 0 for b in (w, theorem_C_bound(w, d), loewy_comparison_bound(w)))


def _check_certificates(report, ring, J):
    for entry in report.bounds:
        for text in entry.certificates:
            lhs, rhs = text.split(" = ", 1)
            total = ring.zero()
            for cof, gen in CERT_TERM.findall(rhs):
                g = ring.parse(gen)
                assert ideal_member(g, J)[0]
                total = total + ring.parse(cof) * g
            assert total == ring.parse(lhs), text


def test_cusp_report():
    R = RingPresentation(S2, [x ** 4 - y ** 5])
    rep = best_bound_report(R)
    assert rep.get("Corollary 9").value == 2
    assert rep.get("Loewy comparison").value == 11
    assert rep.get("multiplicity comparison").value == 14
    assert rep.best.value == 2
    assert all(e.value >= 0 for e in rep.bounds)
    _check_certificates(rep, S2, jacobian_ideal(R))
    assert json.loads(rep.to_json()) == rep.to_dict()


def test_four_variable_report():
    R = RingPresentation(S4, [S4.parse("x^3+y^3+x*y*z+w^2")])
    rep = best_bound_report(R)
    c = rep.get("Theorem C")
    assert c.value == 11
    assert rep.get("Loewy comparison") is None
    _check_certificates(rep, S4, jacobian_ideal(R))


def test_regular_ring_report():
    rep = best_bound_report(RingPresentation(S2, []))
    assert rep.best is None
    assert "D_sg = 0" in rep.render()


def test_report_is_deterministic():
    R = RingPresentation(S2, [x ** 3 - y ** 4])
    assert best_bound_report(R).to_json() == best_bound_report(R).to_json()


def test_best_prefers_fewer_assertions_on_ties():
    rep = best_bound_report(RingPresentation(S2, [x ** 4 - y ** 5]))
    tied = [e for e in rep.bounds if e.value == rep.best.value]
    assert rep.best.asserted == min(e.asserted for e in tied)


def test_sharpness_annotation_is_not_computed():
    for b in (6, 7):
        rep = best_bound_report(RingPresentation(S2, [x ** 3 - y ** b]))
        assert rep.annotations and rep.annotations[0]["computed"] is False
    assert not best_bound_report(RingPresentation(S2, [x ** 4 - y ** 5])).annotations


def test_config_limits_candidates():
    R = RingPresentation(S2, [x ** 4 - y ** 5])
    rep = best_bound_report(R, BoundConfig(degree_cap=1, comparisons=False))
    assert rep.get("Loewy comparison") is None
    assert rep.best is not None
