"""Ring presentations ``R = k[x]/(g)`` read at the origin, and their invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    INFINITE,
    Ideal,
    ResourceCapError,
    MembershipCertificate,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    is_locally_finite,
    krull_dimension,
    local_closure,
    local_length,
    normal_form,
    quotient_length,
    vanishes_at_origin_only,
)
from .poly import Field, Polynomial, PolyRing, iter_monomials


class ZeroRingError(ValueError):
    """The requested quotient is the zero ring at the origin."""


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"

    __str__ = __repr__


UNKNOWN = _Unknown()


def positive_weights(polys: Sequence[Polynomial], nvars: int) -> Optional[Tuple[int, ...]]:
    """Positive integer weights making every polynomial weighted homogeneous.

    Exact: sums the extreme rays of ``{w >= 0 : A w = 0}`` (minimal-support
    solutions) and checks the sum is strictly positive.
    """
    rows = []
    for f in polys:
        monos = [m for m, _ in f.items()]
        for m in monos[1:]:
            rows.append([Fraction(a - b) for a, b in zip(m, monos[0])])
    if not rows:
        return (1,) * nvars
    total = [Fraction(0)] * nvars
    for size in range(1, nvars + 1):
        for T in itertools.combinations(range(nvars), size):
            sub = [[r[j] for j in T] for r in rows]
            ns = _nullspace(sub, size)
            if len(ns) != 1:
                continue
            v = ns[0]
            if all(a > 0 for a in v) or all(a < 0 for a in v):
                sign = 1 if v[0] > 0 else -1
                for j, a in zip(T, v):
                    total[j] += sign * a
    if not all(t > 0 for t in total):
        return None
    den = lcm(*(t.denominator for t in total))
    w = [int(t * den) for t in total]
    from math import gcd
    g = 0
    for a in w:
        g = gcd(g, a)
    return tuple(a // g for a in w)


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


class RingPresentation:
    """``k[x_1..x_n]/(g_1..g_m)`` localized at the origin.

    ``semantics`` is ``"graded-exact"`` when the relations are weighted
    homogeneous for positive weights (then global and local answers agree
    for homogeneous ideals), else ``"truncated"``.
    """

    def __init__(self, ring: PolyRing, relations: Sequence = (), closure_cap: int = 40):
        self.ring = ring
        self.closure_cap = closure_cap
        self.relation_ideal = Ideal(ring, relations)
        self.relations: Tuple[Polynomial, ...] = self.relation_ideal.generators
        self.weights = positive_weights(self.relations, ring.nvars)
        self._closures: Dict[tuple, object] = {}
        self._sums: Dict[tuple, Ideal] = {}

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.variables

    @property
    def semantics(self) -> str:
        return "graded-exact" if self.weights is not None else "truncated"

    @property
    def is_hypersurface(self) -> bool:
        return len(self.relations) == 1

    @property
    def potential(self) -> Polynomial:
        if not self.is_hypersurface:
            raise ValueError("not a hypersurface presentation")
        return self.relations[0]

    def __call__(self, obj) -> Polynomial:
        return self.ring(obj)

    def __repr__(self) -> str:
        return f"RingPresentation({self.spec()!r})"

    def spec(self) -> str:
        return f"{self.field.name}[{','.join(self.variables)}]/({', '.join(map(str, self.relations))})"

    __str__ = spec

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingPresentation) and self.ring == other.ring
                and self.relations == other.relations)

    def __hash__(self) -> int:
        return hash((self.ring, self.relations))

    def is_local_zero(self) -> bool:
        return any(g.constant_coeff() for g in self.relations)

    def ideal(self, gens: Sequence) -> Ideal:
        return Ideal(self.ring, gens)

    def with_relations(self, J: Ideal) -> Ideal:
        """``J + relations``, memoized so Groebner bases are reused."""
        key = J.generators
        if key not in self._sums:
            self._sums[key] = J + self.relation_ideal
        return self._sums[key]

    def colength(self, J) -> object:
        """``length(R/J)`` at the origin; global when everything is weighted homogeneous."""
        K = self.with_relations(_as_ideal(self, J))
        if self.weights is not None and K.is_homogeneous(self.weights):
            return quotient_length(K)
        return local_length(K, self.closure_cap)

    # -- membership at the origin -------------------------------------------
    def _closure(self, K: Ideal):
        key = K.generators
        if key not in self._closures:
            L = quotient_length(K)
            if L is not INFINITE and L and vanishes_at_origin_only(K, L):
                self._closures[key] = (K, None)
            elif is_locally_finite(K):
                self._closures[key] = local_closure(K, self.closure_cap)
            else:
                self._closures[key] = None
        return self._closures[key]

    def member(self, g, J: Ideal, certificate: bool = False):
        """Decide ``g in J R_m`` (relations added); returns ``(bool, cert, tag)``.

        The tag says how the answer was obtained: ``graded-exact``,
        ``truncated(N)`` (exact for m-primary targets) or ``global`` (a
        positive answer is still a local proof; a negative one is not).
        """
        g = self.ring(g)
        K = self.with_relations(J)
        if self.weights is not None and K.is_homogeneous(self.weights):
            ok, cert = ideal_member(g, K, certificate)
            return ok, cert, "graded-exact"
        res = self._closure(K)
        if res is not None:
            K2, N = res
            ok, cert = ideal_member(g, K2, certificate)
            return ok, cert, ("graded-exact" if N is None else f"truncated({N})")
        ok, cert = ideal_member(g, K, certificate)
        return ok, cert, "global"


@dataclass
class CertifiedSubideal:
    """An ideal known to lie inside the annihilator of the singularity category."""

    ideal: Ideal
    justification: str
    certificates: List[object] = field(default_factory=list)
    note: str = ""


def explicit_subideal(R: RingPresentation, certified: Sequence[Tuple[Polynomial, Sequence[object]]]) -> CertifiedSubideal:
    """Subideal generated by elements each carrying verified null-homotopies.

    ``certified`` pairs an element with the homotopies showing it acts as
    zero on the objects the caller vouches generate the category.
    """
    gens, certs = [], []
    for g, homotopies in certified:
        g = R.ring(g)
        for H in homotopies:
            if H.morphism.alpha0 and H.morphism.alpha0[0][0] != g or not H.verify():
                raise ValueError(f"certificate for {g} does not verify")
        gens.append(g)
        certs.append((g, tuple(homotopies)))
    return CertifiedSubideal(Ideal(R.ring, gens), "explicit-certificates", certs,
                             note="generation of the category by the certified objects is user-asserted")


# -- jacobian ------------------------------------------------------------------

def _det(M: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(M)
    if n == 0:
        return ring.one()
    if n == 1:
        return M[0][0]
    total = ring.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def relation_height(R: RingPresentation) -> int:
    if R.relation_ideal.is_unit_ideal():
        raise ZeroRingError("relations generate the unit ideal")
    return R.ring.nvars - krull_dimension(R.relation_ideal)


def jacobian_ideal(R: RingPresentation) -> Ideal:
    """Ideal of ``R`` generated by the ``h``-minors of the Jacobian matrix plus the relations."""
    if not R.relations:
        raise ValueError("jacobian ideal needs at least one relation")
    h = relation_height(R)
    if len(R.relations) != h:
        raise ValueError(
            f"{len(R.relations)} relations for height {h}: not a complete intersection "
            "presentation, so equidimensionality cannot be certified")
    n = R.ring.nvars
    jac = [[g.diff(j) for j in range(n)] for g in R.relations]
    minors = []
    for rows in itertools.combinations(range(len(jac)), h):
        for cols in itertools.combinations(range(n), h):
            d = _det([[jac[r][c] for c in cols] for r in rows], R.ring)
            if not d.is_zero():
                minors.append(d)
    return Ideal(R.ring, minors + list(R.relations))


def certified_jacobian(R: RingPresentation, assert_hypotheses: bool = False) -> CertifiedSubideal:
    """The Jacobian ideal as a certified subideal of the annihilator."""
    J = jacobian_ideal(R)
    if assert_hypotheses:
        return CertifiedSubideal(J, "jacobian",
                                 note="hypotheses for jac R in ca(R) asserted by flag")
    return CertifiedSubideal(J, "user-asserted",
                             note="jac R in ca(R) taken on trust; hypotheses flag not set")


# -- exponents and lengths -----------------------------------------------------

@dataclass(frozen=True)
class AlphaResult:
    value: object  # int, or None when not found within cap
    cap: int
    certificate: Optional[MembershipCertificate]
    semantics: str

    @property
    def found(self) -> bool:
        return self.value is not None


def _as_ideal(R: RingPresentation, J) -> Ideal:
    if isinstance(J, CertifiedSubideal):
        return J.ideal
    if isinstance(J, Ideal):
        return J
    return Ideal(R.ring, J)


def alpha_exponent(x, J, R: RingPresentation, cap: int = 16) -> AlphaResult:
    """Least ``n <= cap`` with ``x^n`` in ``J + relations``: an upper bound for alpha(x)."""
    x = R.ring(x)
    if x.constant_coeff():
        raise ValueError(f"{x} is a unit at the origin")
    Jd = _as_ideal(R, J)
    tag = "graded-exact"
    for n in range(1, cap + 1):
        ok, cert, tag = R.member(x ** n, Jd, certificate=True)
        if ok:
            return AlphaResult(n, cap, cert, tag)
    return AlphaResult(None, cap, None, tag)


def loewy_length(R: RingPresentation, J=()) -> object:
    """Least ``n`` with ``m^n = 0`` in ``R/J`` at the origin, or ``INFINITE``."""
    K = R.with_relations(_as_ideal(R, J))
    if any(g.constant_coeff() for g in K.generators):
        return 0
    L = R.colength(K)
    if L is INFINITE:
        return INFINITE
    if L == 0:
        return 0
    res = R._closure(K)
    if res is None:
        raise ResourceCapError(f"local closure did not stabilize by N = {R.closure_cap}")
    K2 = res[0]
    G = K2.gb()
    n = 1
    while True:
        if all(normal_form(R.ring.monomial(m), G).is_zero()
               for m in iter_monomials(R.ring.nvars, n)):
            return n
        n += 1


# -- zero divisors and regular sequences --------------------------------------

@dataclass(frozen=True)
class ElementStatus:
    unit: bool
    nonzerodivisor: bool
    note: str = ""


def element_status(x, R: RingPresentation) -> ElementStatus:
    x = R.ring(x)
    if x.is_zero():
        return ElementStatus(False, False, "zero is a zerodivisor in a nonzero ring")
    if x.constant_coeff():
        return ElementStatus(True, True, "unit at the origin; not accepted for bounds")
    rel = R.relation_ideal
    if not rel.generators:
        return ElementStatus(False, True)
    nzd = ideal_equal(ideal_quotient(rel, x), Ideal(R.ring, rel.gb().basis))
    note = "" if R.semantics == "graded-exact" else "decided globally; positive answers hold locally"
    return ElementStatus(False, nzd, note)


def is_nonzerodivisor(x, R: RingPresentation) -> bool:
    """True iff ``(relations : x) == relations``."""
    return element_status(x, R).nonzerodivisor


def is_regular_sequence(xs: Sequence, R: RingPresentation) -> bool:
    """Each ``x_i`` is a nonzerodivisor modulo its predecessors; quotient nonzero at the origin."""
    xs = [R.ring(x) for x in xs]
    if not xs:
        raise ValueError("empty sequence")
    if any(x.constant_coeff() for x in xs) or R.is_local_zero():
        return False
    current = R.relation_ideal
    for x in xs:
        if current.generators:
            base = Ideal(R.ring, current.gb().basis)
            if not ideal_equal(ideal_quotient(base, x), base):
                return False
        elif x.is_zero():
            return False
        current = current + Ideal(R.ring, [x])
    return not current.is_unit_ideal()


def quotient_ring(R: RingPresentation, xs: Sequence = ()) -> RingPresentation:
    """``R/(xs)``, eliminating any ``x_i`` that is a scaled variable."""
    xs = [R.ring(x) for x in xs]
    rels = list(R.relations) + [x for x in xs if not x.is_zero()]
    if any(g.constant_coeff() for g in rels):
        raise ZeroRingError("quotient is the zero ring at the origin")
    ring = R.ring
    while True:
        var = None
        for g in rels:
            if len(g) == 1:
                (m, _), = g.items()
                if sum(m) == 1:
                    var = m.index(1)
                    break
        if var is None:
            break
        rels = [g.substitute_zero([var]) for g in rels]
        keep = [v for i, v in enumerate(ring.variables) if i != var]
        new = PolyRing(ring.field, keep)
        rels = [g.to_ring(new) for g in rels if not g.is_zero()]
        ring = new
    out: List[Polynomial] = []
    for g in rels:
        if g.constant_coeff():
            raise ZeroRingError("quotient is the zero ring at the origin")
        if g not in out:
            out.append(g)
    Q = RingPresentation(ring, out)
    if Q.relation_ideal.is_unit_ideal():
        raise ZeroRingError("quotient is the zero ring")
    return Q


# -- dimension table -----------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    name: str
    cm_type: str
    dimension: int


class SimpleSingularityTable:
    """Literal normal forms of ADE singularities plus the countable-type ``w^2`` in two variables.

    Matching is by monomial support up to renaming variables; nonzero
    coefficients are accepted (they scale to 1 over an algebraically closed
    field).  No right-equivalence is attempted.
    """

    def lookup(self, f: Polynomial) -> Optional[TableEntry]:
        n = f.ring.nvars
        support = {m for m, _ in f.items()}
        if n == 2 and len(support) == 1:
            (m,) = support
            if sorted(m) == [0, 2]:
                return TableEntry("A_inf", "countable", 1)
        for core_size, family in ((1, self._a), (2, self._d), (2, self._e)):
            if core_size > n:
                continue
            for core in itertools.permutations(range(n), core_size):
                rest = [i for i in range(n) if i not in core]
                squares = {tuple(2 if j == i else 0 for j in range(n)) for i in rest}
                if not squares <= support:
                    continue
                core_support = support - squares
                name = family([tuple(m[i] for i in core) for m in core_support]
                              if all(all(m[i] == 0 for i in rest) for m in core_support) else None)
                if name:
                    return TableEntry(name, "finite", 0)
        return None

    @staticmethod
    def _a(monos):
        if monos and len(monos) == 1 and monos[0][0] >= 2:
            return f"A_{monos[0][0] - 1}"
        return None

    @staticmethod
    def _d(monos):
        if not monos or len(monos) != 2:
            return None
        s = set(monos)
        for k in range(4, 64):
            if s == {(2, 1), (0, k - 1)}:
                return f"D_{k}"
        return None

    @staticmethod
    def _e(monos):
        if not monos or len(monos) != 2:
            return None
        s = set(monos)
        if s == {(3, 0), (0, 4)}:
            return "E_6"
        if s == {(3, 0), (1, 3)}:
            return "E_7"
        if s == {(3, 0), (0, 5)}:
            return "E_8"
        return None


TABLE = SimpleSingularityTable()


@dataclass(frozen=True)
class DsgDimension:
    value: object  # int or UNKNOWN
    provenance: str

    @property
    def known(self) -> bool:
        return self.value is not UNKNOWN


def dsg_dimension_lookup(R: RingPresentation, assertions: Optional[Dict[str, int]] = None) -> DsgDimension:
    """Dimension of the singularity category from the table or user assertions; never guessed."""
    if not R.relations:
        return DsgDimension(0, "regular (no relations); zero category")
    if R.is_local_zero():
        return DsgDimension(0, "zero ring at the origin; zero category")
    if assertions and R.spec() in assertions:
        return DsgDimension(int(assertions[R.spec()]), "user assertion")
    if R.is_hypersurface:
        f = R.potential
        if any(sum(m) == 1 for m, _ in f.items()):
            return DsgDimension(0, "regular (linear term); zero category")
        entry = TABLE.lookup(f)
        if entry is not None:
            return DsgDimension(entry.dimension, f"table: {entry.name} ({entry.cm_type} CM type)")
    return DsgDimension(UNKNOWN, "not in table")
