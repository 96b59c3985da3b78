from fractions import Fraction

import pytest
import sympy
from hypothesis import settings
from hypothesis import strategies as st

from singcat import QQ, PolyRing

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

NAMES = ("x", "y", "z")


@pytest.fixture
def S2():
    return PolyRing(QQ, ["x", "y"])


@pytest.fixture
def S1():
    return PolyRing(QQ, ["x"])


def ring_of(nvars, field=QQ):
    return PolyRing(field, NAMES[:nvars])


@st.composite
def polys(draw, ring, max_degree=4, max_terms=4, coeffs=st.integers(-3, 3)):
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(0, max_degree))
        cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
        exps = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
        terms[exps] = terms.get(exps, 0) + draw(coeffs)
    return ring.zero() + sum((ring.monomial(m, c) for m, c in terms.items() if c), ring.zero())


def to_sympy(f, symbols):
    out = sympy.Integer(0)
    for m, c in f.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, e in zip(symbols, m):
            term *= s ** e
        out += term
    return sympy.expand(out)


def from_sympy(expr, ring):
    symbols = sympy.symbols(ring.variables)
    P = sympy.Poly(expr, *symbols)
    out = ring.zero()
    for m, c in P.terms():
        out = out + ring.monomial(tuple(m), Fraction(int(c.p), int(c.q)))
    return out


def naive_remainder(f, basis, order):
    """Textbook multivariate division, written without the engine."""
    leads = [(g.lead(order)[0], g.lead(order)[1], g) for g in basis]
    p, r = f, f.ring.zero()
    while not p.is_zero():
        m, c = p.lead(order)
        for lm, lc, g in leads:
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                p = p - g.mul_monomial(shift, c * f.ring.field.inv(lc))
                break
        else:
            r = r + f.ring.monomial(m, c)
            p = p - f.ring.monomial(m, c)
    return r
