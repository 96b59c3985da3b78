import pytest
from hypothesis import given
from hypothesis import strategies as st

from singcat import GF, kernel
from singcat.groebner import Ideal, buchberger, normal_form, quotient_length

from conftest import polys, ring_of

needs_compiled = pytest.mark.skipif("cython" not in kernel.available_backends(),
                                    reason="compiled kernel not built")


def _both(fn):
    prev = kernel.BACKEND
    try:
        kernel.set_backend("python")
        slow = fn()
        kernel.set_backend("cython")
        fast = fn()
    finally:
        kernel.set_backend(prev)
    return slow, fast


def test_backend_names():
    assert kernel.BACKEND in kernel.available_backends()
    with pytest.raises(ValueError):
        kernel.set_backend("fortran")


@needs_compiled
@given(st.sampled_from([0, 7, 32003]).flatmap(lambda p: st.tuples(
    st.lists(polys(ring_of(3, GF(p)) if p else ring_of(3), max_degree=3, max_terms=3), min_size=1, max_size=3),
    polys(ring_of(3, GF(p)) if p else ring_of(3)))))
def test_backends_agree(case):
    gens, f = case
    I = Ideal(f.ring, gens)

    def work():
        G = buchberger(Ideal(I.ring, gens))
        return G.basis, normal_form(f, G), quotient_length(Ideal(I.ring, G.basis))

    slow, fast = _both(work)
    assert slow == fast


@needs_compiled
def test_count_standard_agrees():
    leads = [(3, 0, 0), (0, 4, 0), (1, 1, 1), (0, 0, 2)]
    slow, fast = _both(lambda: kernel.count_standard((3, 4, 2), leads))
    assert slow == fast == 3 * 4 * 2 - 2 * 3 * 1


def test_large_modulus_falls_back_to_python():
    p = (1 << 61) - 1
    S = ring_of(2, GF(p))
    x, y = S.gens()
    G = buchberger(Ideal(S, [x ** 2 - 3 * y, x * y - 5]))
    assert all(g.ring == S for g in G.basis)
    assert quotient_length(Ideal(S, G.basis)) == 3
