"""Dimension bounds for singularity categories and the comparative report."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from operator import mul
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import INFINITE, MembershipCertificate, hilbert_samuel_multiplicity
from .poly import Polynomial, format_polynomial, iter_monomials
from .ring import (
    TABLE,
    UNKNOWN,
    CertifiedSubideal,
    RingPresentation,
    ZeroRingError,
    alpha_exponent,
    certified_jacobian,
    dsg_dimension_lookup,
    element_status,
    is_regular_sequence,
    loewy_length,
    quotient_ring,
)


class BoundError(ValueError):
    """A bound was requested without its hypotheses."""


# -- formulas ------------------------------------------------------------------

def omega(m: Sequence[int], a: Sequence[int]) -> int:
    """``sum_i a_i * prod(m) / m_i`` in integer arithmetic."""
    if len(m) != len(a):
        raise BoundError("exponent lists differ in length")
    if not m:
        raise BoundError("empty exponent lists")
    if any(mi < 1 for mi in m) or any(ai < 0 for ai in a):
        raise BoundError("need m_i >= 1 and a_i >= 0")
    if not any(a):
        raise BoundError("all product exponents are zero")
    total = reduce(mul, m, 1)
    return sum(ai * (total // mi) for mi, ai in zip(m, a))


def _known(d) -> int:
    if d is UNKNOWN or d is None:
        raise BoundError("quotient dimension unknown")
    if d < 0:
        raise BoundError("negative dimension")
    return int(d)


def theorem_A_decomposition_bound(d: Sequence) -> int:
    """``sum d_i + n - 1`` for nonunit nonzerodivisors whose product annihilates."""
    if not d:
        raise BoundError("need at least one element")
    return sum(_known(x) for x in d) + len(d) - 1


def theorem_C_bound(omega_value: int, d) -> int:
    if omega_value < 1:
        raise BoundError("omega must be positive")
    return omega_value * (_known(d) + 1) - 1


def isolated_singularity_bound(alpha, d) -> int:
    if alpha is None or alpha is INFINITE:
        raise BoundError("no annihilating power found")
    if alpha < 1:
        raise BoundError("alpha must be positive")
    return alpha * (_known(d) + 1) - 1


def loewy_comparison_bound(llen) -> int:
    if llen is INFINITE or llen is None:
        raise BoundError("Loewy length is infinite")
    return 2 * llen - 1


def multiplicity_comparison_bound(e: int) -> int:
    if e < 1:
        raise BoundError("multiplicity must be positive")
    return e - 1


# -- report --------------------------------------------------------------------

CHECKED, ASSERTED = "checked", "asserted"

CITATIONS = {
    "product-decomposition": "Theorem A",
    "finite-type-quotients": "Corollary 8",
    "cyclic-cover": "Corollary 9",
    "regular-sequence-omega": "Theorem C",
    "regular-sequence-product": "Theorem C(2)",
    "isolated-singularity": "Corollary E",
    "loewy-comparison": "Loewy comparison",
    "multiplicity-comparison": "multiplicity comparison",
}


@dataclass
class BoundConfig:
    degree_cap: int = 4
    max_candidates: int = 200
    alpha_cap: int = 16
    max_factors: int = 5
    assert_jacobian: bool = False
    assertions: Dict[str, int] = field(default_factory=dict)
    comparisons: bool = True


@dataclass(frozen=True)
class Hypothesis:
    statement: str
    status: str


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: int
    citation: str
    hypotheses: Tuple[Hypothesis, ...]
    certificates: Tuple[str, ...] = ()
    data: Tuple[Tuple[str, object], ...] = ()

    @property
    def asserted(self) -> int:
        return sum(h.status == ASSERTED for h in self.hypotheses)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "citation": self.citation,
            "hypotheses": [{"statement": h.statement, "status": h.status} for h in self.hypotheses],
            "certificates": list(self.certificates),
            "data": {k: v for k, v in self.data},
        }


@dataclass(frozen=True)
class Candidate:
    """Per-element data: the input of every bound evaluated on it."""

    element: Polynomial
    nonzerodivisor: bool
    unit: bool
    alpha: Optional[int]
    alpha_certificate: Optional[MembershipCertificate]
    quotient_dim: object
    quotient_provenance: str

    @property
    def usable(self) -> bool:
        return self.nonzerodivisor and not self.unit

    def to_dict(self) -> dict:
        return {
            "element": format_polynomial(self.element),
            "nonzerodivisor": self.nonzerodivisor,
            "unit": self.unit,
            "alpha": self.alpha,
            "quotient_dim": None if self.quotient_dim is UNKNOWN else self.quotient_dim,
            "quotient_provenance": self.quotient_provenance,
        }


@dataclass
class BoundReport:
    ring: str
    semantics: str
    subideal: Optional[dict]
    candidates: List[Candidate]
    bounds: List[BoundEntry]
    best: Optional[BoundEntry]
    annotations: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def get(self, name_or_citation: str) -> Optional[BoundEntry]:
        for b in self.bounds:
            if name_or_citation in (b.name, b.citation):
                return b
        return None

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "semantics": self.semantics,
            "subideal": self.subideal,
            "candidates": [c.to_dict() for c in self.candidates],
            "bounds": [b.to_dict() for b in self.bounds],
            "best": None if self.best is None else {
                "name": self.best.name, "value": self.best.value, "citation": self.best.citation},
            "annotations": self.annotations,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render(self) -> str:
        lines = [f"ring: {self.ring}", f"semantics: {self.semantics}"]
        if self.subideal:
            lines.append(f"subideal ({self.subideal['justification']}): "
                         f"({', '.join(self.subideal['generators'])})")
        for b in self.bounds:
            hyp = "; ".join(f"{h.statement} [{h.status}]" for h in b.hypotheses)
            lines.append(f"  {b.citation}: dim <= {b.value}   ({hyp})")
        for a in self.annotations:
            lines.append(f"  known value: {a['statement']} ({a['source']}; not computed)")
        if self.best is not None:
            lines.append(f"best: {self.best.value} ({self.best.citation})")
        else:
            lines.append("best: none")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def certificate_text(cert: MembershipCertificate) -> str:
    parts = [f"({format_polynomial(c)})*({format_polynomial(cert.generators[i])})"
             for c, i in cert.combination]
    return f"{format_polynomial(cert.element)} = " + (" + ".join(parts) if parts else "0")


def _jac_hypothesis(J: CertifiedSubideal) -> Hypothesis:
    status = CHECKED if J.justification == "jacobian" else ASSERTED
    return Hypothesis("jacobian ideal annihilates the singularity category", status)


def _field_hypotheses(R: RingPresentation, e: int) -> List[Hypothesis]:
    p = R.field.characteristic
    ok = p == 0 or (p not in (2, 3, 5) and e % p != 0)
    return [Hypothesis("residue field algebraically closed (dimension read over the closure)", ASSERTED),
            Hypothesis(f"characteristic {p} avoids 2, 3, 5 and does not divide e={e}",
                       CHECKED if ok else "failed")]


def _candidates(R: RingPresentation, config: BoundConfig) -> List[Polynomial]:
    out = []
    for d in range(1, config.degree_cap + 1):
        for e in iter_monomials(R.ring.nvars, d):
            out.append(R.ring.monomial(e))
            if len(out) >= config.max_candidates:
                return out
    return out


def _quotient_dim(R: RingPresentation, xs, config: BoundConfig):
    try:
        Q = quotient_ring(R, xs)
    except ZeroRingError:
        return 0, "zero ring"
    res = dsg_dimension_lookup(Q, config.assertions)
    return res.value, f"{Q.spec()}: {res.provenance}"


def _is_regular_ring(R: RingPresentation, J: CertifiedSubideal) -> bool:
    return not R.relations or R.is_local_zero() or any(
        g.constant_coeff() for g in J.ideal.generators)


def _annotations(R: RingPresentation) -> List[dict]:
    if not R.is_hypersurface or R.ring.nvars != 2:
        return []
    support = {m for m, _ in R.potential.items()}
    if len(support) != 2:
        return []
    for i, j in ((0, 1), (1, 0)):
        cube = tuple(3 if k == i else 0 for k in range(2))
        if cube in support:
            (other,) = support - {cube}
            if other[i] == 0 and other[j] >= 6:
                return [{"statement": "dim = 1",
                         "source": "a=3, b>=6: not of finite CM type, and the cyclic-cover bound is sharp",
                         "computed": False}]
    return []


def best_bound_report(R: RingPresentation, config: Optional[BoundConfig] = None) -> BoundReport:
    """Evaluate every applicable bound on ``R`` and pick the smallest."""
    config = config or BoundConfig()
    report = BoundReport(R.spec(), R.semantics, None, [], [], None, _annotations(R))
    if not R.relations or R.is_local_zero():
        report.notes.append("regular ring: D_sg = 0")
        return report
    J = certified_jacobian(R, config.assert_jacobian)
    report.subideal = {"justification": J.justification,
                       "generators": [format_polynomial(g) for g in J.ideal.generators]}
    if _is_regular_ring(R, J):
        report.notes.append("regular ring: D_sg = 0")
        return report
    jac_h = _jac_hypothesis(J)

    cands: List[Candidate] = []
    for x in _candidates(R, config):
        st = element_status(x, R)
        a = alpha_exponent(x, J, R, config.alpha_cap)
        qd, prov = _quotient_dim(R, [x], config) if st.nonzerodivisor else (UNKNOWN, "zerodivisor")
        cands.append(Candidate(x, st.nonzerodivisor, st.unit, a.value, a.certificate, qd, prov))
    report.candidates = cands
    entries: List[BoundEntry] = []

    # products of nonzerodivisors with known quotient dimension
    good = [c for c in cands if c.usable and c.quotient_dim is not UNKNOWN][:8]
    best_a: Optional[BoundEntry] = None
    best_8: Optional[BoundEntry] = None
    for n in range(1, config.max_factors + 1):
        for combo in itertools.combinations_with_replacement(good, n):
            value = theorem_A_decomposition_bound([c.quotient_dim for c in combo])
            zero = all(c.quotient_dim == 0 for c in combo)
            need_a = best_a is None or value < best_a.value
            need_8 = zero and (best_8 is None or n - 1 < best_8.value)
            if not (need_a or need_8):
                continue
            prod = reduce(mul, (c.element for c in combo))
            ok, cert, tag = R.member(prod, J.ideal, certificate=True)
            if not ok:
                continue
            elems = ", ".join(format_polynomial(c.element) for c in combo)
            hyps = (jac_h,
                    Hypothesis(f"{elems}: nonunits and nonzerodivisors", CHECKED),
                    Hypothesis(f"product in subideal ({tag})", CHECKED))
            data = (("elements", [format_polynomial(c.element) for c in combo]),
                    ("quotient_dims", [c.quotient_dim for c in combo]))
            e = BoundEntry("product-decomposition", value, CITATIONS["product-decomposition"],
                           hyps, (certificate_text(cert),), data)
            if need_a:
                best_a = e
            if need_8:
                best_8 = BoundEntry("finite-type-quotients", n - 1, CITATIONS["finite-type-quotients"],
                                    hyps + (Hypothesis("R Gorenstein (complete intersection)", CHECKED),
                                            Hypothesis("each R/x_iR of finite CM type", CHECKED)),
                                    (certificate_text(cert),), data)
    entries.extend(e for e in (best_a, best_8) if e is not None)

    cyc = _cyclic_cover(R, J, jac_h, config)
    if cyc is not None:
        entries.append(cyc)

    entries.extend(_omega_bounds(R, J, jac_h, cands, config))

    isolated = R.colength(J.ideal) is not INFINITE
    if isolated:
        single = [c for c in cands if c.usable and c.alpha is not None and c.quotient_dim is not UNKNOWN]
        if single:
            c = min(single, key=lambda c: isolated_singularity_bound(c.alpha, c.quotient_dim))
            entries.append(BoundEntry(
                "isolated-singularity", isolated_singularity_bound(c.alpha, c.quotient_dim),
                CITATIONS["isolated-singularity"],
                (jac_h, Hypothesis("isolated singularity (subideal m-primary)", CHECKED),
                 Hypothesis(f"{format_polynomial(c.element)} nonzerodivisor in m", CHECKED),
                 Hypothesis("alpha measured against the subideal (an upper bound)", CHECKED)),
                (certificate_text(c.alpha_certificate),),
                (("element", format_polynomial(c.element)), ("alpha", c.alpha),
                 ("quotient_dim", c.quotient_dim))))
        if config.comparisons:
            ll = loewy_length(R, J.ideal)
            entries.append(BoundEntry(
                "loewy-comparison", loewy_comparison_bound(ll), CITATIONS["loewy-comparison"],
                (jac_h, Hypothesis("subideal m-primary", CHECKED)), (), (("loewy_length", ll),)))
            e = hilbert_samuel_multiplicity(R, J.ideal)
            entries.append(BoundEntry(
                "multiplicity-comparison", multiplicity_comparison_bound(e),
                CITATIONS["multiplicity-comparison"],
                (jac_h, Hypothesis("subideal m-primary", CHECKED)), (), (("multiplicity", e),)))
    else:
        report.notes.append("subideal not m-primary: Loewy and multiplicity comparisons skipped")

    report.bounds = entries
    if entries:
        report.best = min(entries, key=lambda b: (b.value, b.asserted))
    else:
        report.notes.append("no applicable bound: quotient dimensions unknown or no annihilating powers")
    report.notes.append("best is taken over a finite candidate set; the true infimum may be smaller")
    return report


def _cyclic_cover(R: RingPresentation, J: CertifiedSubideal, jac_h: Hypothesis,
                  config: BoundConfig) -> Optional[BoundEntry]:
    """``f = c v^e + g(other variables)`` with ``g`` a simple singularity gives ``e - 2``."""
    if not R.is_hypersurface or R.ring.nvars < 2:
        return None
    f = R.potential
    best = None
    for v in range(R.ring.nvars):
        pure = [(m, c) for m, c in f.items() if m[v] > 0]
        if len(pure) != 1:
            continue
        (m, _), = pure
        e = m[v]
        if e < 2 or sum(m) != e:
            continue
        g = f - R.ring.monomial(m, pure[0][1])
        if not g or g.constant_coeff() or any(sum(mm) == 1 for mm, _ in g.items()):
            continue
        Q = quotient_ring(R, [R.ring.gen(v)])
        entry = TABLE.lookup(Q.potential) if Q.is_hypersurface else None
        if entry is None or entry.cm_type != "finite":
            continue
        hyps = _field_hypotheses(R, e)
        if any(h.status == "failed" for h in hyps):
            continue
        x = R.ring.gen(v)
        ok, cert, tag = R.member(x ** (e - 1), J.ideal, certificate=True)
        if not ok:
            continue
        value = theorem_A_decomposition_bound([0] * (e - 1))
        cand = BoundEntry(
            "cyclic-cover", value, CITATIONS["cyclic-cover"],
            (jac_h, *hyps,
             Hypothesis(f"{Q.spec()} is the simple singularity {entry.name}", CHECKED),
             Hypothesis(f"{format_polynomial(x)}^{e - 1} in subideal ({tag})", CHECKED)),
            (certificate_text(cert),),
            (("variable", R.variables[v]), ("e", e), ("quotient", entry.name)))
        if best is None or cand.value < best.value:
            best = cand
    return best


def _omega_bounds(R: RingPresentation, J: CertifiedSubideal, jac_h: Hypothesis,
                  cands: List[Candidate], config: BoundConfig) -> List[BoundEntry]:
    by_elem = {c.element: c for c in cands}
    gens = R.ring.gens()
    best_c: Optional[BoundEntry] = None
    best_c2: Optional[BoundEntry] = None
    for size in range(1, R.ring.nvars + 1):
        for sub in itertools.combinations(gens, size):
            cs = [by_elem.get(x) for x in sub]
            if any(c is None or c.alpha is None for c in cs):
                continue
            if not is_regular_sequence(list(sub), R):
                continue
            d, prov = _quotient_dim(R, list(sub), config)
            if d is UNKNOWN:
                continue
            ms = [c.alpha for c in cs]
            best = None
            for a in itertools.product(*(range(mi + 1) for mi in ms)):
                if not any(a):
                    continue
                w = omega(ms, a)
                if best is not None and w >= best[0]:
                    continue
                prod = reduce(mul, (x ** ai for x, ai in zip(sub, a)))
                ok, cert, tag = R.member(prod, J.ideal, certificate=True)
                if ok:
                    best = (w, a, cert)
            names = ", ".join(map(str, sub))
            base = (jac_h, Hypothesis(f"{names} regular sequence", CHECKED),
                    Hypothesis(f"dim D_sg(R/({names})) = {d}: {prov}", CHECKED))
            powers = tuple(certificate_text(c.alpha_certificate) for c in cs)
            if best is not None:
                w, a, cert = best
                e = BoundEntry("regular-sequence-omega", theorem_C_bound(w, d),
                               CITATIONS["regular-sequence-omega"], base,
                               powers + (certificate_text(cert),),
                               (("elements", [str(x) for x in sub]), ("m", list(ms)),
                                ("a", list(a)), ("omega", w), ("quotient_dim", d)))
                if best_c is None or e.value < best_c.value:
                    best_c = e
            m_total = reduce(mul, ms, 1)
            e2 = BoundEntry("regular-sequence-product", theorem_C_bound(m_total, d),
                            CITATIONS["regular-sequence-product"], base, powers,
                            (("elements", [str(x) for x in sub]), ("m", list(ms)),
                             ("quotient_dim", d)))
            if best_c2 is None or e2.value < best_c2.value:
                best_c2 = e2
    return [e for e in (best_c, best_c2) if e is not None]
