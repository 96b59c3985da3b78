"""Matrix factorizations of a potential ``f`` over ``S = k[x]``.

Conventions (fixed here, pinned by the tests):

* ``X = (A, B)`` with ``A: F1 -> F0``, ``B: F0 -> F1`` and ``AB = BA = f I``.
* A morphism ``(a0, a1): X -> X'`` satisfies ``a0 A = A' a1`` and ``a1 B = B' a0``.
* A homotopy ``(s: F0 -> F1', t: F1 -> F0')`` witnesses
  ``a0 = A' s + t B`` and ``a1 = s A + B' t``.
* ``shift(X) = (-B, -A)``; the cone of ``(a0, a1)`` is
  ``([[A', a0], [0, -B]], [[B', a1], [0, -A]])`` on ``F0' + F1`` / ``F1' + F0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Sequence, Tuple

from .groebner import bounded_lift, module_member
from .poly import Polynomial, PolyRing, field_from_name, format_polynomial, iter_monomials

Matrix = Tuple[Tuple[Polynomial, ...], ...]


class PreconditionError(ValueError):
    """A construction was requested whose hypothesis does not hold."""


# -- matrices -----------------------------------------------------------------

def zeros(ring: PolyRing, rows: int, cols: int) -> Matrix:
    z = ring.zero()
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(ring: PolyRing, n: int, scale=1) -> Matrix:
    c, z = ring(scale), ring.zero()
    return tuple(tuple(c if i == j else z for j in range(n)) for i in range(n))


def as_matrix(ring: PolyRing, rows) -> Matrix:
    return tuple(tuple(ring(e) for e in row) for row in rows)


def ncols(M: Matrix, default: int = 0) -> int:
    return len(M[0]) if M else default


def mat_mul(P: Matrix, Q: Matrix, ring: PolyRing, inner: Optional[int] = None) -> Matrix:
    n = len(P)
    m = ncols(Q)
    k = ncols(P, len(Q) if inner is None else inner)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero()
            for l in range(k):
                a = P[i][l]
                if a:
                    b = Q[l][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(P: Matrix, Q: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(p, q)) for p, q in zip(P, Q))


def mat_sub(P: Matrix, Q: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(p, q)) for p, q in zip(P, Q))


def mat_scale(P: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in row) for row in P)


def mat_neg(P: Matrix) -> Matrix:
    return tuple(tuple(-a for a in row) for row in P)


def block(rows: Sequence[Sequence[Matrix]], row_sizes: Sequence[int],
          col_sizes: Sequence[int], ring: PolyRing) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    z = ring.zero()
    out = []
    for bi, brow in enumerate(rows):
        for i in range(row_sizes[bi]):
            line = []
            for bj, blk in enumerate(brow):
                if blk is None:
                    line.extend(z for _ in range(col_sizes[bj]))
                else:
                    line.extend(blk[i])
            out.append(tuple(line))
    return tuple(out)


def _block_diag(blocks: Sequence[Matrix], sizes: Sequence[int], ring: PolyRing) -> Matrix:
    rows = [[b if i == j else None for j in range(len(blocks))] for i, b in enumerate(blocks)]
    return block(rows, sizes, sizes, ring)


def _sub(M: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return tuple(tuple(row[c0:c1]) for row in M[r0:r1])


def _shape(M: Matrix, rows: int, cols: int) -> bool:
    return len(M) == rows and all(len(r) == cols for r in M)


# -- objects and maps ---------------------------------------------------------

@dataclass(frozen=True)
class MatrixFactorization:
    ring: PolyRing
    potential: Polynomial
    A: Matrix
    B: Matrix

    @classmethod
    def of(cls, ring: PolyRing, potential, A, B) -> "MatrixFactorization":
        return cls(ring, ring(potential), as_matrix(ring, A), as_matrix(ring, B))

    @property
    def rank(self) -> int:
        return len(self.A)

    def __str__(self) -> str:
        fmt = lambda M: "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in M) + "]"
        return f"MF(rank {self.rank}, A={fmt(self.A)}, B={fmt(self.B)})"


def validate(X: MatrixFactorization) -> bool:
    """True iff ``AB = BA = f I``; raises on malformed shapes."""
    r = len(X.A)
    if not _shape(X.A, r, r) or not _shape(X.B, r, r):
        raise ValueError("matrix factorization needs two square matrices of equal size")
    fI = identity(X.ring, r, X.potential)
    return mat_mul(X.A, X.B, X.ring) == fI and mat_mul(X.B, X.A, X.ring) == fI


def _require_valid(*objs: MatrixFactorization) -> None:
    for X in objs:
        if not validate(X):
            raise ValueError("not a matrix factorization")


def _same_ambient(X: MatrixFactorization, Y: MatrixFactorization) -> None:
    if X.ring != Y.ring or X.potential != Y.potential:
        raise ValueError("matrix factorizations of different potentials")


def zero_object(ring: PolyRing, potential) -> MatrixFactorization:
    return MatrixFactorization(ring, ring(potential), (), ())


def koszul_factorization(ring: PolyRing, potential, x) -> MatrixFactorization:
    """Rank-one factorization ``(x, f/x)``; ``x`` must divide ``f``."""
    f, x = ring(potential), ring(x)
    from .groebner import Ideal, ideal_member
    ok, cert = ideal_member(f, Ideal(ring, [x]), certificate=True)
    if not ok:
        raise ValueError(f"{x} does not divide {f}")
    cof = cert.combination[0][0] if cert.combination else ring.zero()
    return MatrixFactorization.of(ring, f, [[x]], [[cof]])


def shift(X: MatrixFactorization) -> MatrixFactorization:
    return MatrixFactorization(X.ring, X.potential, mat_neg(X.B), mat_neg(X.A))


def direct_sum(*objs: MatrixFactorization) -> MatrixFactorization:
    if not objs:
        raise ValueError("empty direct sum")
    for Y in objs[1:]:
        _same_ambient(objs[0], Y)
    ring = objs[0].ring
    sizes = [Y.rank for Y in objs]
    return MatrixFactorization(ring, objs[0].potential,
                               _block_diag([Y.A for Y in objs], sizes, ring),
                               _block_diag([Y.B for Y in objs], sizes, ring))


@dataclass(frozen=True)
class MFMorphism:
    source: MatrixFactorization
    target: MatrixFactorization
    alpha0: Matrix
    alpha1: Matrix

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    def is_valid(self) -> bool:
        X, Y = self.source, self.target
        if not (_shape(self.alpha0, Y.rank, X.rank) and _shape(self.alpha1, Y.rank, X.rank)):
            return False
        R = self.ring
        return (mat_mul(self.alpha0, X.A, R, X.rank) == mat_mul(Y.A, self.alpha1, R, Y.rank)
                and mat_mul(self.alpha1, X.B, R, X.rank) == mat_mul(Y.B, self.alpha0, R, Y.rank))

    def __add__(self, other: "MFMorphism") -> "MFMorphism":
        return MFMorphism(self.source, self.target, mat_add(self.alpha0, other.alpha0),
                          mat_add(self.alpha1, other.alpha1))

    def __sub__(self, other: "MFMorphism") -> "MFMorphism":
        return MFMorphism(self.source, self.target, mat_sub(self.alpha0, other.alpha0),
                          mat_sub(self.alpha1, other.alpha1))

    def __neg__(self) -> "MFMorphism":
        return MFMorphism(self.source, self.target, mat_neg(self.alpha0), mat_neg(self.alpha1))

    def scale(self, g) -> "MFMorphism":
        g = self.ring(g)
        return MFMorphism(self.source, self.target, mat_scale(self.alpha0, g),
                          mat_scale(self.alpha1, g))

    def then(self, other: "MFMorphism") -> "MFMorphism":
        """``other`` after ``self``."""
        R = self.ring
        k = self.target.rank
        return MFMorphism(self.source, other.target, mat_mul(other.alpha0, self.alpha0, R, k),
                          mat_mul(other.alpha1, self.alpha1, R, k))


def compose(second: MFMorphism, first: MFMorphism) -> MFMorphism:
    return first.then(second)


def identity_morphism(X: MatrixFactorization) -> MFMorphism:
    I = identity(X.ring, X.rank)
    return MFMorphism(X, X, I, I)


def zero_morphism(X: MatrixFactorization, Y: MatrixFactorization) -> MFMorphism:
    Z = zeros(X.ring, Y.rank, X.rank)
    return MFMorphism(X, Y, Z, Z)


def mult_morphism(X: MatrixFactorization, r) -> MFMorphism:
    """Multiplication by the ring element ``r`` on ``X``."""
    I = identity(X.ring, X.rank, r)
    return MFMorphism(X, X, I, I)


def shift_morphism(phi: MFMorphism) -> MFMorphism:
    """``phi[1]``: the components swap."""
    return MFMorphism(shift(phi.source), shift(phi.target), phi.alpha1, phi.alpha0)


@dataclass(frozen=True)
class Homotopy:
    morphism: MFMorphism
    s: Matrix
    t: Matrix

    def verify(self) -> bool:
        """Re-expand both identities from scratch."""
        phi = self.morphism
        X, Y = phi.source, phi.target
        R = phi.ring
        if not (_shape(self.s, Y.rank, X.rank) and _shape(self.t, Y.rank, X.rank)):
            return False
        d0 = mat_add(mat_mul(Y.A, self.s, R, Y.rank), mat_mul(self.t, X.B, R, X.rank))
        d1 = mat_add(mat_mul(self.s, X.A, R, X.rank), mat_mul(Y.B, self.t, R, Y.rank))
        return d0 == phi.alpha0 and d1 == phi.alpha1


@dataclass(frozen=True)
class EquivalenceCertificate:
    forward: MFMorphism
    backward: MFMorphism
    back_forth: Homotopy   # for backward . forward - id
    forth_back: Homotopy   # for forward . backward - id
    layout: Tuple[int, ...] = field(default=())

    def verify(self) -> bool:
        f, b = self.forward, self.backward
        if not (f.is_valid() and b.is_valid()):
            return False
        if f.source != b.target or f.target != b.source:
            return False
        bf = f.then(b) - identity_morphism(f.source)
        fb = b.then(f) - identity_morphism(f.target)
        return (self.back_forth.morphism == bf and self.back_forth.verify()
                and self.forth_back.morphism == fb and self.forth_back.verify())

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        if not self.layout:
            return ()
        return tuple(self.layout.count(i) for i in range(max(self.layout) + 1))


def _zero_homotopy(phi: MFMorphism) -> Homotopy:
    Z = zeros(phi.ring, phi.target.rank, phi.source.rank)
    return Homotopy(phi, Z, Z)


def strict_equivalence(forward: MFMorphism, backward: MFMorphism,
                       layout: Tuple[int, ...] = ()) -> EquivalenceCertificate:
    """Certificate for mutually inverse morphisms (zero homotopies)."""
    bf = forward.then(backward) - identity_morphism(forward.source)
    fb = backward.then(forward) - identity_morphism(forward.target)
    return EquivalenceCertificate(forward, backward, _zero_homotopy(bf), _zero_homotopy(fb), layout)


# -- cones ---------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    obj: MatrixFactorization
    inclusion: MFMorphism   # target -> cone
    projection: MFMorphism  # cone -> shift(source)


def cone(phi: MFMorphism) -> Cone:
    if not phi.is_valid():
        raise ValueError("not a morphism of matrix factorizations")
    X, Y = phi.source, phi.target
    R = X.ring
    r, q = X.rank, Y.rank
    CA = block([[Y.A, phi.alpha0], [None, mat_neg(X.B)]], [q, r], [q, r], R)
    CB = block([[Y.B, phi.alpha1], [None, mat_neg(X.A)]], [q, r], [q, r], R)
    C = MatrixFactorization(R, X.potential, CA, CB)
    inc = block([[identity(R, q)], [None]], [q, r], [q], R)
    proj = block([[None, identity(R, r)]], [r], [q, r], R)
    return Cone(C, MFMorphism(Y, C, inc, inc), MFMorphism(C, shift(X), proj, proj))


def koszul_tensor(X: MatrixFactorization, *xs) -> MatrixFactorization:
    """``K(x_1..x_n) (x) X`` as iterated cones of multiplication."""
    for x in xs:
        X = cone(mult_morphism(X, x)).obj
    return X


# -- null-homotopy -------------------------------------------------------------

def _homotopy_system(phi: MFMorphism):
    """Columns of the linear map ``(s, t) -> (A's + tB, sA + B't)`` and the target vector."""
    X, Y = phi.source, phi.target
    R = phi.ring
    r, q = X.rank, Y.rank
    z = R.zero()
    size = 2 * q * r

    def pos(eq, i, j):
        return eq * q * r + i * r + j

    cols = []
    for k in range(q):          # s[k][l]: F0 -> F1'
        for l in range(r):
            v = [z] * size
            for i in range(q):
                if Y.A[i][k]:
                    v[pos(0, i, l)] = v[pos(0, i, l)] + Y.A[i][k]
            for j in range(r):
                if X.A[l][j]:
                    v[pos(1, k, j)] = v[pos(1, k, j)] + X.A[l][j]
            cols.append(v)
    for k in range(q):          # t[k][l]: F1 -> F0'
        for l in range(r):
            v = [z] * size
            for j in range(r):
                if X.B[l][j]:
                    v[pos(0, k, j)] = v[pos(0, k, j)] + X.B[l][j]
            for i in range(q):
                if Y.B[i][k]:
                    v[pos(1, i, l)] = v[pos(1, i, l)] + Y.B[i][k]
            cols.append(v)
    target = [phi.alpha0[i][j] for i in range(q) for j in range(r)]
    target += [phi.alpha1[i][j] for i in range(q) for j in range(r)]
    return cols, target


def _max_degree(M: Matrix) -> int:
    return max((e.degree() for row in M for e in row if e), default=0)


def is_nullhomotopic(phi: MFMorphism, fast_degree: Optional[int] = None) -> Optional[Homotopy]:
    """A verified homotopy ``phi ~ 0``, or ``None`` when none exists.

    A degree-bounded linear solve is tried first; a negative answer always
    comes from the exact module membership test.
    """
    if not phi.is_valid():
        raise ValueError("not a morphism of matrix factorizations")
    X, Y = phi.source, phi.target
    R = phi.ring
    r, q = X.rank, Y.rank
    if r == 0 or q == 0:
        return Homotopy(phi, zeros(R, q, r), zeros(R, q, r))
    cols, target = _homotopy_system(phi)
    if all(not e for e in target):
        return _zero_homotopy(phi)
    if fast_degree is None:
        fast_degree = max(_max_degree(phi.alpha0), _max_degree(phi.alpha1))
    cof = None
    for d in sorted({0, min(1, fast_degree), fast_degree}):
        cof = bounded_lift(target, cols, d)
        if cof is not None:
            break
    if cof is None:
        ok, cof = module_member(target, cols)
        if not ok:
            return None
    n = q * r
    s = tuple(tuple(cof[k * r + l] for l in range(r)) for k in range(q))
    t = tuple(tuple(cof[n + k * r + l] for l in range(r)) for k in range(q))
    H = Homotopy(phi, s, t)
    if not H.verify():  # pragma: no cover
        raise AssertionError("homotopy failed to re-verify")
    return H


def stable_annihilator_probe(X: MatrixFactorization, degree_cap: int) -> List[Tuple[Polynomial, Homotopy]]:
    """Monomials of degree ``<= degree_cap`` acting as zero on ``X``, with homotopies."""
    _require_valid(X)
    R = X.ring
    hits: List[Tuple[Polynomial, Homotopy]] = []
    found = {}
    for d in range(degree_cap + 1):
        for e in iter_monomials(R.nvars, d):
            m = R.monomial(e)
            H = None
            for fe, (fm, fH) in found.items():
                if all(a >= b for a, b in zip(e, fe)):
                    g = R.monomial(tuple(a - b for a, b in zip(e, fe)))
                    H = Homotopy(mult_morphism(X, m), mat_scale(fH.s, g), mat_scale(fH.t, g))
                    break
            if H is None:
                H = is_nullhomotopic(mult_morphism(X, m))
            if H is not None:
                found[e] = (m, H)
                hits.append((m, H))
    return hits


def is_homotopy_equivalence(phi: MFMorphism) -> Optional[EquivalenceCertificate]:
    """Decide via a contraction of the cone; extract the inverse and both homotopies."""
    X, Y = phi.source, phi.target
    R = phi.ring
    r, q = X.rank, Y.rank
    C = cone(phi).obj
    H = is_nullhomotopic(identity_morphism(C))
    if H is None:
        return None
    s, t = H.s, H.t
    # C0 = F0' + F1, C1 = F1' + F0
    psi = MFMorphism(Y, X, _sub(s, q, q + r, 0, q), _sub(t, q, q + r, 0, q))
    s11, t11 = _sub(s, 0, q, 0, q), _sub(t, 0, q, 0, q)
    s22, t22 = _sub(s, q, q + r, q, q + r), _sub(t, q, q + r, q, q + r)
    bf = phi.then(psi) - identity_morphism(X)
    fb = psi.then(phi) - identity_morphism(Y)
    cert = EquivalenceCertificate(phi, psi, Homotopy(bf, t22, s22),
                                  Homotopy(fb, mat_neg(s11), mat_neg(t11)))
    if not cert.verify():  # pragma: no cover
        raise AssertionError("extracted equivalence failed to verify")
    return cert


# -- splittings ----------------------------------------------------------------

def _require_homotopy(X: MatrixFactorization, x, homotopy: Optional[Homotopy]) -> Homotopy:
    phi = mult_morphism(X, x)
    if homotopy is not None:
        if homotopy.morphism != phi or not homotopy.verify():
            raise PreconditionError("supplied homotopy does not certify the multiplication")
        return homotopy
    H = is_nullhomotopic(phi)
    if H is None:
        raise PreconditionError(f"multiplication by {X.ring(x)} is not null-homotopic")
    return H


def _split_maps(X: MatrixFactorization, x, H: Homotopy, source: MatrixFactorization):
    """Strict iso ``cone(x) -> X + X[1]`` built from ``x = A s + t B``."""
    R = X.ring
    r = X.rank
    target = direct_sum(X, shift(X))
    I = identity(R, r)
    fwd0 = block([[I, H.t], [None, I]], [r, r], [r, r], R)
    fwd1 = block([[I, H.s], [None, I]], [r, r], [r, r], R)
    bwd0 = block([[I, mat_neg(H.t)], [None, I]], [r, r], [r, r], R)
    bwd1 = block([[I, mat_neg(H.s)], [None, I]], [r, r], [r, r], R)
    return MFMorphism(source, target, fwd0, fwd1), MFMorphism(target, source, bwd0, bwd1)


def verify_koszul_split(X: MatrixFactorization, x, homotopy: Optional[Homotopy] = None) -> EquivalenceCertificate:
    """``K(x) (x) X`` is equivalent to ``X + X[1]`` when ``x`` acts as zero on ``X``."""
    _require_valid(X)
    H = _require_homotopy(X, x, homotopy)
    fwd, bwd = _split_maps(X, x, H, koszul_tensor(X, x))
    cert = strict_equivalence(fwd, bwd, (0, 1))
    if not cert.verify():  # pragma: no cover
        raise AssertionError("koszul splitting failed to verify")
    return cert


@dataclass(frozen=True)
class Triangle:
    """``first: P -> Q``, ``second: Q -> T``, ``third: T -> P[1]``."""

    first: MFMorphism
    second: MFMorphism
    third: MFMorphism
    composite_homotopy: Homotopy  # second . first ~ 0

    def verify(self) -> bool:
        return (self.first.is_valid() and self.second.is_valid() and self.third.is_valid()
                and self.composite_homotopy.morphism == self.first.then(self.second)
                and self.composite_homotopy.verify()
                and self.third.target == shift(self.first.source))


@dataclass(frozen=True)
class SplitProduct:
    middle: MatrixFactorization
    triangle: Triangle
    equivalence: EquivalenceCertificate


def split_product_triangle(X: MatrixFactorization, x, y) -> SplitProduct:
    """Triangle ``K(x)X -> K(xy)X -> K(y)X`` whose middle term splits as ``X + X[1]``."""
    _require_valid(X)
    R = X.ring
    x, y = R(x), R(y)
    r = X.rank
    H = _require_homotopy(X, x * y, None)
    Kx, Kxy, Ky = koszul_tensor(X, x), koszul_tensor(X, x * y), koszul_tensor(X, y)
    I = identity(R, r)
    sizes = [r, r]
    yI, xI = identity(R, r, y), identity(R, r, x)
    into = block([[yI, None], [None, I]], sizes, sizes, R)
    out = block([[I, None], [None, xI]], sizes, sizes, R)
    first = MFMorphism(Kx, Kxy, into, into)
    second = MFMorphism(Kxy, Ky, out, out)
    lower = block([[None, None], [I, None]], sizes, sizes, R)
    hom = Homotopy(first.then(second), lower, lower)
    upper = block([[None, I], [None, None]], sizes, sizes, R)
    third = MFMorphism(Ky, shift(Kx), upper, upper)
    tri = Triangle(first, second, third, hom)
    if not tri.verify():  # pragma: no cover
        raise AssertionError("triangle failed to verify")
    fwd, bwd = _split_maps(X, x * y, H, Kxy)
    cert = strict_equivalence(fwd, bwd, (0, 1))
    if not cert.verify():  # pragma: no cover
        raise AssertionError("split failed to verify")
    return SplitProduct(Kxy, tri, cert)


def _shift_homotopy(X: MatrixFactorization, x, H: Homotopy, times: int) -> Tuple[Matrix, Matrix]:
    # on shift(X) the pair (-t, -s) witnesses x; shift^2 = id literally
    if times % 2 == 0:
        return H.s, H.t
    return mat_neg(H.t), mat_neg(H.s)


def verify_koszul_binomial(X: MatrixFactorization, xs: Sequence) -> EquivalenceCertificate:
    """``K(x_1..x_n) (x) X`` equivalent to ``sum_i X[i]^C(n,i)``, strictly."""
    _require_valid(X)
    R = X.ring
    r = X.rank
    homs = [_require_homotopy(X, x, None) for x in xs]
    D = X
    layout: List[int] = [0]
    fwd = identity_morphism(X)
    bwd = identity_morphism(X)
    for x, H in zip(xs, homs):
        x = R(x)
        E = fwd.target
        n = len(layout) * r
        # lift the current iso to the cones of x
        coneD, coneE = cone(mult_morphism(D, x)).obj, cone(mult_morphism(E, x)).obj
        sz = [n, n]
        lf = MFMorphism(coneD, coneE, block([[fwd.alpha0, None], [None, fwd.alpha1]], sz, sz, R),
                        block([[fwd.alpha1, None], [None, fwd.alpha0]], sz, sz, R))
        lb = MFMorphism(coneE, coneD, block([[bwd.alpha0, None], [None, bwd.alpha1]], sz, sz, R),
                        block([[bwd.alpha1, None], [None, bwd.alpha0]], sz, sz, R))
        pieces = [_shift_homotopy(X, x, H, i) for i in layout]
        sizes = [r] * len(layout)
        HE = Homotopy(mult_morphism(E, x), _block_diag([p[0] for p in pieces], sizes, R),
                      _block_diag([p[1] for p in pieces], sizes, R))
        sf, sb = _split_maps(E, x, HE, coneE)
        fwd, bwd = lf.then(sf), sb.then(lb)
        D = coneD
        layout = layout + [i + 1 for i in layout]
    # reorder summands by shift
    perm = sorted(range(len(layout)), key=lambda k: (layout[k], k))
    target = direct_sum(*[X if layout[k] % 2 == 0 else shift(X) for k in perm]) if layout else X
    N = len(layout) * r
    z, one = R.zero(), R.one()
    P = [[z] * N for _ in range(N)]
    for new, old in enumerate(perm):
        for i in range(r):
            P[new * r + i][old * r + i] = one
    P = tuple(tuple(row) for row in P)
    Pt = tuple(tuple(P[j][i] for j in range(N)) for i in range(N))
    E = fwd.target
    fwd = fwd.then(MFMorphism(E, target, P, P))
    bwd = MFMorphism(target, E, Pt, Pt).then(bwd)
    cert = strict_equivalence(fwd, bwd, tuple(sorted(layout)))
    if not cert.verify():  # pragma: no cover
        raise AssertionError("binomial decomposition failed to verify")
    return cert


def binomial_multiplicities(n: int) -> Tuple[int, ...]:
    return tuple(comb(n, i) for i in range(n + 1))


# -- interchange ---------------------------------------------------------------

def _matrix_text(M: Matrix) -> List[List[str]]:
    return [[format_polynomial(e) for e in row] for row in M]


def mf_to_dict(X: MatrixFactorization) -> dict:
    return {
        "field": X.ring.field.name,
        "variables": list(X.ring.variables),
        "potential": format_polynomial(X.potential),
        "rank": X.rank,
        "A": _matrix_text(X.A),
        "B": _matrix_text(X.B),
    }


def dumps_mf(X: MatrixFactorization) -> str:
    return json.dumps(mf_to_dict(X), indent=2) + "\n"


def mf_from_dict(doc: dict) -> MatrixFactorization:
    for key in ("field", "variables", "potential", "rank", "A", "B"):
        if key not in doc:
            raise ValueError(f"missing field {key!r}")
    ring = PolyRing(field_from_name(doc["field"]), doc["variables"])
    r = int(doc["rank"])
    A = tuple(tuple(ring.parse(e) for e in row) for row in doc["A"])
    B = tuple(tuple(ring.parse(e) for e in row) for row in doc["B"])
    if not (_shape(A, r, r) and _shape(B, r, r)):
        raise ValueError("matrix shape does not match rank")
    return MatrixFactorization(ring, ring.parse(doc["potential"]), A, B)


def loads_mf(text: str) -> MatrixFactorization:
    return mf_from_dict(json.loads(text))


def homotopy_to_dict(H: Homotopy) -> dict:
    return {"s": _matrix_text(H.s), "t": _matrix_text(H.t)}
