"""Groebner bases for ideals and submodules of free modules.

One Buchberger engine serves both: a term is ``(pos, e_1, ..., e_n)`` and
the order is position-over-term (position 0 largest).  Ideals live in
position 0.  Membership certificates come from "tag" positions appended
after the real ones: generator ``i`` is entered as ``(g_i, e_i)``, so any
reduction of ``(f, 0)`` to ``(0, -c)`` expands as ``f = sum c_i g_i``.
Elements whose leading term falls in a tag position are syzygies and are
discarded unless explicitly requested.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernel
from .poly import DEGREVLEX, AmbientMismatch, MonomialOrder, Polynomial, PolyRing

Term = Tuple[int, ...]
Vec = Dict[Term, object]


class ResourceCapError(RuntimeError):
    """A configured iteration cap was hit; ``partial`` holds what was computed."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE")

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITE = _Infinite()


# -- engine -------------------------------------------------------------------

class _Ctx:
    __slots__ = ("order", "modulus", "key", "negkey")

    def __init__(self, order: MonomialOrder, modulus: int):
        self.order = order
        self.modulus = modulus
        okey = order.key
        kcache: Dict[Term, tuple] = {}
        ncache: Dict[Term, tuple] = {}

        def key(m):
            k = kcache.get(m)
            if k is None:
                k = kcache[m] = (-m[0],) + okey(m[1:])
            return k

        def negkey(m):
            k = ncache.get(m)
            if k is None:
                k = ncache[m] = tuple(-a for a in key(m))
            return k

        self.key = key
        self.negkey = negkey

    def lead(self, f: Vec) -> Term:
        return max(f, key=self.key)

    def inv(self, c):
        return pow(c, -1, self.modulus) if self.modulus else 1 / c

    def monic(self, f: Vec) -> Vec:
        lm = self.lead(f)
        c = self.inv(f[lm])
        p = self.modulus
        if p:
            return {m: v * c % p for m, v in f.items()}
        return {m: v * c for m, v in f.items()}


def _lcm(a: Term, b: Term) -> Term:
    return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))


def _disjoint(a: Term, b: Term) -> bool:
    return all(not (x and y) for x, y in zip(a[1:], b[1:]))


def _spoly(f: Vec, lf: Term, g: Vec, lg: Term, l: Term, modulus: int) -> Vec:
    # f, g monic
    sf = tuple(x - y for x, y in zip(l, lf))
    sg = tuple(x - y for x, y in zip(l, lg))
    out: Vec = {}
    for m, c in f.items():
        if m != lf:
            out[tuple(x + y for x, y in zip(m, sf))] = c
    for m, c in g.items():
        if m == lg:
            continue
        nm = tuple(x + y for x, y in zip(m, sg))
        v = out.get(nm)
        v = -c if v is None else v - c
        if modulus:
            v %= modulus
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _buchberger(gens: Sequence[Vec], ctx: _Ctx, drop_from: Optional[int] = None,
                product_criterion: bool = True) -> List[Vec]:
    """Groebner basis with Gebauer-Moeller pair elimination.

    Elements whose leading position is ``>= drop_from`` are discarded.  The
    product criterion is only valid for ideals (rank-one real part).
    """
    polys: List[Vec] = []
    leads: List[Term] = []
    G: List[int] = []
    B: List[Tuple[int, int]] = []
    entries: List[tuple] = []
    lcms: Dict[Tuple[int, int], Term] = {}
    one = 1 if ctx.modulus else Fraction(1)

    def pair_lcm(i, j):
        k = (i, j) if i < j else (j, i)
        l = lcms.get(k)
        if l is None:
            l = lcms[k] = _lcm(leads[i], leads[j])
        return l

    def disjoint(i, j):
        return product_criterion and _disjoint(leads[i], leads[j])

    def update(h):
        nonlocal G, B, entries
        lh = leads[h]
        C = [g for g in G if leads[g][0] == lh[0]]
        D: List[int] = []
        while C:
            g1 = C.pop(0)
            if disjoint(h, g1):
                D.append(g1)
                continue
            l1 = pair_lcm(h, g1)
            if not any(kernel.divides(pair_lcm(h, g2), l1) for g2 in itertools.chain(C, D)):
                D.append(g1)
        E = [(h, g) for g in D if not disjoint(h, g)]
        newB = []
        for g1, g2 in B:
            l12 = pair_lcm(g1, g2)
            if (kernel.divides(lh, l12) and pair_lcm(g1, h) != l12
                    and pair_lcm(h, g2) != l12):
                continue
            newB.append((g1, g2))
        newB.extend(E)
        B = newB
        G = [g for g in G if not kernel.divides(lh, leads[g])] + [h]
        entries = [(leads[g], one, polys[g]) for g in G]

    def add(f):
        f = ctx.monic(f)
        polys.append(f)
        leads.append(ctx.lead(f))
        update(len(polys) - 1)

    def keep(f):
        if not f:
            return False
        if drop_from is not None and ctx.lead(f)[0] >= drop_from:
            return False
        return True

    for g in sorted((g for g in gens if g), key=lambda v: ctx.key(ctx.lead(v))):
        r = kernel.reduce(g, entries, ctx.negkey, ctx.modulus) if entries else g
        if keep(r):
            add(r)

    while B:
        best = min(range(len(B)), key=lambda k: (sum(pair_lcm(*B[k])[1:]), ctx.key(pair_lcm(*B[k]))))
        i, j = B.pop(best)
        s = _spoly(polys[i], leads[i], polys[j], leads[j], pair_lcm(i, j), ctx.modulus)
        if not s:
            continue
        r = kernel.reduce(s, entries, ctx.negkey, ctx.modulus)
        if keep(r):
            add(r)
    return [polys[g] for g in G]


def _interreduce(basis: List[Vec], ctx: _Ctx) -> List[Vec]:
    """Reduced basis: minimal leading terms, irreducible tails, monic."""
    basis = [ctx.monic(b) for b in basis if b]
    basis.sort(key=lambda v: ctx.key(ctx.lead(v)))
    minimal: List[Vec] = []
    mleads: List[Term] = []
    for b in basis:
        lb = ctx.lead(b)
        if any(kernel.divides(l, lb) for l in mleads):
            continue
        keep = [k for k, l in enumerate(mleads) if not kernel.divides(lb, l)]
        minimal = [minimal[k] for k in keep] + [b]
        mleads = [mleads[k] for k in keep] + [lb]
    one = 1 if ctx.modulus else Fraction(1)
    out = []
    for k, b in enumerate(minimal):
        others = [(mleads[j], one, minimal[j]) for j in range(len(minimal)) if j != k]
        out.append(kernel.reduce(b, others, ctx.negkey, ctx.modulus) if others else b)
    out.sort(key=lambda v: ctx.key(ctx.lead(v)))
    return out


# -- conversions --------------------------------------------------------------

def _poly_to_vec(f: Polynomial, pos: int = 0) -> Vec:
    return {(pos,) + m: c for m, c in f.items()}


def _vector_to_vec(v: Sequence[Polynomial], offset: int = 0) -> Vec:
    out: Vec = {}
    for i, f in enumerate(v):
        for m, c in f.items():
            out[(i + offset,) + m] = c
    return out


def _vec_component(v: Vec, ring: PolyRing, pos: int) -> Polynomial:
    return Polynomial(ring, {m[1:]: c for m, c in v.items() if m[0] == pos})


def _check_ring(ring: PolyRing, polys) -> None:
    for f in polys:
        if f.ring != ring:
            raise AmbientMismatch(f"{f.ring} vs {ring}")


# -- ideals -------------------------------------------------------------------

class Ideal:
    """Finitely generated ideal; zero generators are dropped."""

    def __init__(self, ring: PolyRing, generators: Sequence = ()):
        gens = []
        for g in generators:
            g = ring(g)
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._tagged: Dict[MonomialOrder, List[tuple]] = {}

    def __repr__(self) -> str:
        return f"Ideal({self.ring!r}, [{', '.join(map(str, self.generators))}])"

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.generators)) + ")"

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise AmbientMismatch(f"{self.ring} vs {other.ring}")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise AmbientMismatch(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __contains__(self, f) -> bool:
        return ideal_member(self.ring(f), self)[0]

    def gb(self, order: MonomialOrder = DEGREVLEX) -> "GroebnerBasis":
        if order not in self._gb:
            self._gb[order] = buchberger(self, order)
        return self._gb[order]

    def is_unit_ideal(self) -> bool:
        return any(f.is_constant() for f in self.gb().basis)

    def power(self, k: int) -> "Ideal":
        if k == 0:
            return Ideal(self.ring, [self.ring.one()])
        out = self
        for _ in range(k - 1):
            out = Ideal(self.ring, out.gb().basis) * self
        return out

    def is_homogeneous(self, weights: Sequence[int]) -> bool:
        return all(_weighted_homogeneous(g, weights) for g in self.generators)


def _weighted_homogeneous(f: Polynomial, weights: Sequence[int]) -> bool:
    degs = {sum(w * a for w, a in zip(weights, m)) for m, _ in f.items()}
    return len(degs) <= 1


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of ``source`` for ``order``."""

    order: MonomialOrder
    basis: Tuple[Polynomial, ...]
    source: Ideal = field(compare=False, repr=False)

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [f.lead(self.order)[0] for f in self.basis]

    def _entries(self):
        one = self.ring.field.one
        return [((0,) + f.lead(self.order)[0], one, _poly_to_vec(f)) for f in self.basis]

    def is_unit(self) -> bool:
        return any(f.is_constant() for f in self.basis)


def buchberger(I: Ideal, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``; idempotent and order-unique."""
    ctx = _Ctx(order, I.ring.field.modulus)
    raw = _buchberger([_poly_to_vec(g) for g in I.generators], ctx)
    red = _interreduce(raw, ctx)
    basis = tuple(_vec_component(v, I.ring, 0) for v in red)
    return GroebnerBasis(order, basis, I)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` with no term divisible by a leading term of ``G``."""
    if f.ring != G.ring:
        raise AmbientMismatch(f"{f.ring} vs {G.ring}")
    if f.is_zero() or not G.basis:
        return f
    ctx = _Ctx(G.order, f.ring.field.modulus)
    r = kernel.reduce(_poly_to_vec(f), G._entries(), ctx.negkey, ctx.modulus)
    return _vec_component(r, f.ring, 0)


@dataclass(frozen=True)
class MembershipCertificate:
    """``element == sum(coeff * generators[index])``."""

    element: Polynomial
    combination: Tuple[Tuple[Polynomial, int], ...]
    generators: Tuple[Polynomial, ...]

    def expand(self) -> Polynomial:
        total = self.element.ring.zero()
        for c, i in self.combination:
            total = total + c * self.generators[i]
        return total

    def verify(self) -> bool:
        return self.expand() == self.element


def _tagged_basis(ring: PolyRing, rows: Sequence[Vec], rank: int, order: MonomialOrder):
    """Cofactor-tracking basis for the module spanned by ``rows`` (rank ``rank``)."""
    ctx = _Ctx(order, ring.field.modulus)
    gens = []
    one = ring.field.one
    zero_exp = (0,) * ring.nvars
    for i, row in enumerate(rows):
        v = dict(row)
        v[(rank + i,) + zero_exp] = one
        gens.append(v)
    basis = _buchberger(gens, ctx, drop_from=rank, product_criterion=(rank == 1))
    entries = [(ctx.lead(b), one, b) for b in basis]
    return ctx, entries


def _lift(ring: PolyRing, target: Vec, rows: Sequence[Vec], rank: int, entries, ctx):
    r = kernel.reduce(target, entries, ctx.negkey, ctx.modulus)
    if any(m[0] < rank for m in r):
        return None
    p = ring.field.modulus
    cofactors = []
    for i in range(len(rows)):
        c = _vec_component(r, ring, rank + i)
        cofactors.append(-c)
    return cofactors


def ideal_member(f: Polynomial, I: Ideal, certificate: bool = False,
                 order: MonomialOrder = DEGREVLEX):
    """Decide ``f in I``; optionally return a verified certificate."""
    _check_ring(I.ring, [f])
    if f.is_zero():
        cert = MembershipCertificate(f, (), I.generators) if certificate else None
        return True, cert
    if not I.generators:
        return False, None
    member = normal_form(f, I.gb(order)).is_zero()
    if not member or not certificate:
        return member, None
    if order not in I._tagged:
        rows = [_poly_to_vec(g) for g in I.generators]
        I._tagged[order] = _tagged_basis(I.ring, rows, 1, order)
    ctx, entries = I._tagged[order]
    cof = _lift(I.ring, _poly_to_vec(f), I.generators, 1, entries, ctx)
    if cof is None:  # pragma: no cover - contradicts the reduced-basis decision
        raise AssertionError("certificate lift disagrees with normal form")
    combo = tuple((c, i) for i, c in enumerate(cof) if not c.is_zero())
    cert = MembershipCertificate(f, combo, I.generators)
    if not cert.verify():  # pragma: no cover
        raise AssertionError("certificate failed to expand")
    return True, cert


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """``J subset of I``."""
    G = I.gb()
    return all(normal_form(g, G).is_zero() for g in J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise AmbientMismatch(f"{I.ring} vs {J.ring}")
    return I.gb().basis == J.gb().basis


def ideal_quotient(I: Ideal, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """``(I : f)`` from the module spanned by ``(f, 1)`` and ``(g, 0)``."""
    _check_ring(I.ring, [f])
    if f.is_zero():
        raise ValueError("ideal quotient by zero")
    ring = I.ring
    ctx = _Ctx(order, ring.field.modulus)
    gens = [_vector_to_vec([f, ring.one()])] + [_poly_to_vec(g) for g in I.generators]
    basis = _buchberger(gens, ctx, product_criterion=False)
    quot = [_vec_component(b, ring, 1) for b in basis if ctx.lead(b)[0] == 1]
    Q = Ideal(ring, quot)
    return Ideal(ring, Q.gb(order).basis)


# -- dimension and length -----------------------------------------------------

def quotient_length(I: Ideal):
    """``dim_k S/I`` by counting standard monomials, or ``INFINITE``."""
    n = I.ring.nvars
    G = I.gb()
    if G.is_unit():
        return 0
    leads = G.leading_monomials()
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if m[i] and all(m[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    return kernel.count_standard(bounds, leads)


def krull_dimension(I: Ideal) -> int:
    """Dimension of ``S/I`` from maximal independent sets of the lead ideal."""
    G = I.gb()
    if G.is_unit():
        raise ValueError("the unit ideal has no Krull dimension")
    n = I.ring.nvars
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in G.leading_monomials()]
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0  # pragma: no cover


def vanishes_at_origin_only(I: Ideal, length: int) -> bool:
    """True when every variable is nilpotent mod ``I`` (so ``V(I) = {0}``)."""
    ring = I.ring
    G = I.gb()
    return all(normal_form(ring.gen(i) ** max(length, 1), G).is_zero() for i in range(ring.nvars))


def maximal_ideal_power(ring: PolyRing, N: int) -> List[Polynomial]:
    from .poly import iter_monomials
    return [ring.monomial(m) for m in iter_monomials(ring.nvars, N)]


def local_closure(I: Ideal, cap: int = 40):
    """``(I + m^N, N)`` with ``N`` the first stable truncation order, or ``None``.

    Stability ``l(S/(I+m^N)) == l(S/(I+m^(N+1)))`` gives ``m^N in I S_m`` by
    Nakayama, so ``I + m^N`` is exactly the contraction of ``I S_m``.
    """
    ring = I.ring
    prev = None
    for N in range(1, cap + 2):
        K = I + Ideal(ring, maximal_ideal_power(ring, N))
        L = quotient_length(K)
        if prev is not None and L == prev[1]:
            return prev[0], N - 1
        prev = (K, L)
    return None


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f^infinity``."""
    J = Ideal(I.ring, I.gb().basis)
    while True:
        J2 = ideal_quotient(J, f)
        if ideal_equal(J, J2):
            return J
        J = Ideal(I.ring, J2.gb().basis)


def is_locally_finite(I: Ideal) -> bool:
    """True iff ``S_m / I S_m`` has finite length, i.e. the origin is isolated in ``V(I)``.

    ``I : x_i^infinity`` cuts ``V(I)`` down to the closure of its part off
    ``x_i = 0``; the origin is isolated iff it lies on none of these.
    """
    if any(g.constant_coeff() for g in I.generators) or I.is_unit_ideal():
        return True
    ring = I.ring
    for x in ring.gens():
        J = saturation(I, x)
        if not (J + Ideal(ring, ring.gens())).is_unit_ideal():
            return False
    return True


def local_length(I: Ideal, cap: int = 40):
    """Length of ``S_m / I S_m`` or ``INFINITE``."""
    L = quotient_length(I)
    if L is not INFINITE and (L == 0 or vanishes_at_origin_only(I, L)):
        return L
    if any(g.constant_coeff() for g in I.generators):
        # some generator is a unit at the origin
        return 0
    if not is_locally_finite(I):
        return INFINITE
    res = local_closure(I, cap)
    if res is None:
        raise ResourceCapError(f"local truncation did not stabilize by N = {cap}")
    return quotient_length(res[0])


# -- multiplicity -------------------------------------------------------------

def _relations_of(R) -> Ideal:
    if isinstance(R, Ideal):
        return R
    return R.relation_ideal


def _is_m_primary(K: Ideal) -> bool:
    return local_length(K) is not INFINITE


def hilbert_samuel_multiplicity(R, I: Ideal, cap: int = 12, window: int = 3) -> int:
    """``e(I)`` on ``R`` from the stabilized ``d``-th difference of ``n -> l(R/I^(n+1))``."""
    rel = _relations_of(R)
    ring = rel.ring
    if I.ring != ring:
        raise AmbientMismatch(f"{I.ring} vs {ring}")
    if not _is_m_primary(I + rel):
        raise ValueError("ideal is not primary to the maximal ideal")
    d = krull_dimension(rel)
    if d == 0:
        return local_length(rel)
    H: List[int] = []
    K = Ideal(ring, (I + rel).gb().basis)
    for n in range(cap + 1):
        H.append(local_length(K))
        diffs = H
        for _ in range(d):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if len(diffs) >= window and len(set(diffs[-window:])) == 1 and diffs[-1] > 0:
            return diffs[-1]
        K = Ideal(ring, (Ideal(ring, K.gb().basis) * I + rel).gb().basis)
    raise ResourceCapError(f"Hilbert-Samuel function did not stabilize by n = {cap}",
                           partial={"lengths": H, "dimension": d})


@dataclass(frozen=True)
class ReductionResult:
    multiplicity: int
    reduction_exponent: int


def multiplicity_via_reduction(R, I: Ideal, Q: Ideal, cap: int = 10,
                               cohen_macaulay: bool = True) -> ReductionResult:
    """``e(I) = l(R/Q)`` after verifying ``I^(k+1) = Q I^k`` for some ``k <= cap``."""
    rel = _relations_of(R)
    ring = rel.ring
    if not cohen_macaulay:
        raise ValueError("multiplicity via reduction needs a Cohen-Macaulay ring")
    d = krull_dimension(rel)
    if len(Q.generators) != d:
        raise ValueError(f"parameter ideal must have {d} generators, got {len(Q.generators)}")
    if not ideal_contains(I + rel, Q):
        raise ValueError("Q is not contained in I")
    if not _is_m_primary(Q + rel):
        raise ValueError("Q is not primary to the maximal ideal")
    Ik = Ideal(ring, [ring.one()])
    for k in range(cap + 1):
        Ik1 = Ideal(ring, (Ideal(ring, Ik.gb().basis) * I + rel).gb().basis)
        QIk = Q * Ideal(ring, Ik.gb().basis) + rel
        if ideal_equal(Ik1, QIk):
            return ReductionResult(local_length(Q + rel), k)
        Ik = Ik1
    raise ResourceCapError(f"reduction I^(k+1) = Q I^k not verified for k <= {cap}")


# -- modules ------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleGB:
    """Reduced position-over-term basis of a submodule of ``S^rank``."""

    rank: int
    order: MonomialOrder
    basis: Tuple[Tuple[Polynomial, ...], ...]


def _check_vectors(ring: PolyRing, vectors, rank: int):
    for v in vectors:
        if len(v) != rank:
            raise ValueError(f"rank mismatch: expected {rank}, got {len(v)}")
        _check_ring(ring, v)


def module_groebner(M: Sequence[Sequence[Polynomial]], rank: int, ring: PolyRing,
                    order: MonomialOrder = DEGREVLEX) -> ModuleGB:
    _check_vectors(ring, M, rank)
    ctx = _Ctx(order, ring.field.modulus)
    raw = _buchberger([_vector_to_vec(v) for v in M], ctx, product_criterion=(rank == 1))
    red = _interreduce(raw, ctx)
    basis = tuple(tuple(_vec_component(b, ring, i) for i in range(rank)) for b in red)
    return ModuleGB(rank, order, basis)


def module_member(v: Sequence[Polynomial], M: Sequence[Sequence[Polynomial]],
                  order: MonomialOrder = DEGREVLEX):
    """Decide ``v`` in the span of ``M``; on success return verified cofactors."""
    rank = len(v)
    if not v:
        raise ValueError("empty vector")
    ring = v[0].ring
    _check_vectors(ring, [v], rank)
    _check_vectors(ring, M, rank)
    target = _vector_to_vec(v)
    if not target:
        return True, [ring.zero() for _ in M]
    rows = [_vector_to_vec(m) for m in M]
    if not any(rows):
        return False, None
    ctx, entries = _tagged_basis(ring, rows, rank, order)
    cof = _lift(ring, target, rows, rank, entries, ctx)
    if cof is None:
        return False, None
    if not verify_combination(v, M, cof):  # pragma: no cover
        raise AssertionError("module certificate failed to expand")
    return True, cof


def verify_combination(v, M, cofactors) -> bool:
    """Independent expansion check of ``v == sum c_j M_j``."""
    rank = len(v)
    ring = v[0].ring
    for i in range(rank):
        total = ring.zero()
        for c, m in zip(cofactors, M):
            total = total + c * m[i]
        if total != v[i]:
            return False
    return True


# -- bounded linear pass ------------------------------------------------------

def _solve_sparse(rows, ncols: int, modulus: int):
    """Solve sparse ``{col: coeff}`` rows with right-hand sides; ``None`` if inconsistent."""
    pivots: Dict[int, Tuple[dict, object]] = {}
    for row, rhs in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                break
            prow, prhs = pivots[col]
            c = row[col]
            for k, a in prow.items():
                v = row.get(k)
                v = -c * a if v is None else v - c * a
                if modulus:
                    v %= modulus
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
            rhs = rhs - c * prhs
            if modulus:
                rhs %= modulus
        if not row:
            if rhs:
                return None
            continue
        col = min(row)
        inv = pow(row[col], -1, modulus) if modulus else 1 / row[col]
        row = {k: (a * inv % modulus if modulus else a * inv) for k, a in row.items()}
        rhs = rhs * inv % modulus if modulus else rhs * inv
        pivots[col] = (row, rhs)
    sol: Dict[int, object] = {}
    # a pivot row only holds columns >= its pivot, so solve right to left
    for col in sorted(pivots, reverse=True):
        row, rhs = pivots[col]
        val = rhs
        for k, a in row.items():
            if k != col:
                val = val - a * sol.get(k, 0)
        if modulus:
            val %= modulus
        sol[col] = val
    return sol


def bounded_lift(v: Sequence[Polynomial], M: Sequence[Sequence[Polynomial]], degree: int):
    """Look for cofactors of degree ``<= degree`` by exact linear algebra.

    A hit is a proof of membership; a miss proves nothing.
    """
    from .poly import iter_monomials
    ring = v[0].ring
    rank = len(v)
    p = ring.field.modulus
    monos = [m for d in range(degree + 1) for m in iter_monomials(ring.nvars, d)]
    unknowns = [(j, mu) for j in range(len(M)) for mu in monos]
    eqs: Dict[Tuple[int, tuple], Dict[int, object]] = {}
    for u, (j, mu) in enumerate(unknowns):
        for i in range(rank):
            for m, c in M[j][i].items():
                key = (i, tuple(a + b for a, b in zip(m, mu)))
                eqs.setdefault(key, {})[u] = c
    rhs = {}
    for i in range(rank):
        for m, c in v[i].items():
            rhs[(i, m)] = c
    zero = 0 if p else Fraction(0)
    for key in rhs:
        if key not in eqs:
            return None
    rows = [(row, rhs.get(key, zero)) for key, row in sorted(eqs.items())]
    sol = _solve_sparse(rows, len(unknowns), p)
    if sol is None:
        return None
    cof = [dict() for _ in M]
    for u, val in sol.items():
        if val:
            j, mu = unknowns[u]
            cof[j][mu] = val
    cofactors = [Polynomial(ring, c) for c in cof]
    return cofactors if verify_combination(v, M, cofactors) else None
