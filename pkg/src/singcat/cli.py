"""Command-line front end.

Exit status: 0 computed, 1 hypothesis failure, 2 parse or usage error,
3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional, Sequence

from . import __version__
from .bounds import BoundConfig, BoundError, best_bound_report, certificate_text
from .groebner import (
    INFINITE,
    Ideal,
    ResourceCapError,
    hilbert_samuel_multiplicity,
    multiplicity_via_reduction,
)
from .mf import (
    PreconditionError,
    homotopy_to_dict,
    loads_mf,
    split_product_triangle,
    stable_annihilator_probe,
    validate,
    verify_koszul_binomial,
    verify_koszul_split,
)
from .poly import DEGREVLEX, LEX, Field, PolyParseError, PolyRing, format_polynomial
from .ring import (
    RingPresentation,
    ZeroRingError,
    alpha_exponent,
    certified_jacobian,
    is_regular_sequence,
    loewy_length,
)

FORMAT_ENV = "SINGCAT_FORMAT"
EXIT_OK, EXIT_HYPOTHESIS, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- ring specs ------------------------------------------------------------------

_HEAD = re.compile(r"\s*(QQ|F(\d+))\s*\[")


def _boff(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _split_top(text: str, start: int, end: int) -> List[tuple]:
    """Comma-separated pieces of ``text[start:end]`` at parenthesis depth 0."""
    pieces, depth, begin = [], 0, start
    for i in range(start, end):
        c = text[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            pieces.append((begin, i))
            begin = i + 1
    pieces.append((begin, end))
    return pieces


def parse_ring_spec(text: str, closure_cap: int = 40) -> RingPresentation:
    """Parse ``FIELD[v1,...]/(g1,...)``; the ``/(...)`` part may be omitted."""
    m = _HEAD.match(text)
    if not m:
        raise PolyParseError("expected QQ[...] or F<p>[...]", _boff(text, len(text) - len(text.lstrip())), text)
    if m.group(2):
        try:
            field = Field(int(m.group(2)))
        except ValueError:
            raise PolyParseError(f"{m.group(2)} is not prime", _boff(text, m.start(2)), text) from None
    else:
        field = Field(0)
    close = text.find("]", m.end())
    if close < 0:
        raise PolyParseError("missing ']'", _boff(text, len(text)), text)
    names = []
    for a, b in _split_top(text, m.end(), close):
        name = text[a:b].strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise PolyParseError(f"bad variable name {name!r}", _boff(text, a), text)
        if name in names:
            raise PolyParseError(f"duplicate variable {name!r}", _boff(text, a + text[a:b].index(name)), text)
        names.append(name)
    ring = PolyRing(field, names)
    rest = close + 1
    tail = text[rest:].strip()
    if not tail:
        return RingPresentation(ring, [], closure_cap)
    slash = text.index(tail[0], rest)
    if tail[0] != "/":
        raise PolyParseError("expected '/'", _boff(text, slash), text)
    lp = slash + 1
    while lp < len(text) and text[lp].isspace():
        lp += 1
    if lp >= len(text) or text[lp] != "(":
        raise PolyParseError("expected '('", _boff(text, lp), text)
    rp = text.rstrip().rfind(")")
    if rp <= lp:
        raise PolyParseError("missing ')'", _boff(text, len(text)), text)
    if text[rp + 1:].strip():
        raise PolyParseError("trailing text", _boff(text, rp + 1), text)
    rels = []
    if text[lp + 1:rp].strip():
        for a, b in _split_top(text, lp + 1, rp):
            rels.append(_parse_at(ring, text, a, b))
    return RingPresentation(ring, [g for g in rels if not g.is_zero()], closure_cap)


def _parse_at(ring: PolyRing, text: str, a: int, b: int):
    try:
        return ring.parse(text[a:b])
    except PolyParseError as e:
        raise PolyParseError(e.message, _boff(text, a) + e.offset, text) from None


def _parse_list(R: RingPresentation, text: str):
    return [_parse_at(R.ring, text, a, b) for a, b in _split_top(text, 0, len(text))]


# -- config ------------------------------------------------------------------------

def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    known = {"degree_cap", "max_candidates", "alpha_cap", "max_factors", "assert_jacobian",
             "assertions", "truncation", "format"}
    bad = set(cfg) - known
    if bad:
        raise UsageError(f"unknown config keys: {', '.join(sorted(bad))}")
    return cfg


def _opt(args, cfg: dict, name: str, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return cfg.get(name, default)


def _ring(args, cfg) -> RingPresentation:
    return parse_ring_spec(args.ring, _opt(args, cfg, "truncation", 40))


def _subideal(R: RingPresentation, args, cfg):
    if getattr(args, "ideal", None):
        gens = _parse_list(R, args.ideal)
        return Ideal(R.ring, gens), "user-supplied"
    J = certified_jacobian(R, bool(_opt(args, cfg, "assert_jacobian", False)))
    return J.ideal, J.justification


def _fmt_value(v):
    if v is INFINITE:
        return "infinite"
    return v


# -- commands ---------------------------------------------------------------------

def cmd_jacobian(args, cfg):
    R = _ring(args, cfg)
    J = certified_jacobian(R, bool(_opt(args, cfg, "assert_jacobian", False)))
    order = LEX if args.order == "lex" else DEGREVLEX
    gb = J.ideal.gb(order).basis
    return EXIT_OK, {
        "ring": R.spec(),
        "justification": J.justification,
        "generators": [format_polynomial(g) for g in J.ideal.generators],
        "groebner_basis": [format_polynomial(g, order) for g in gb],
        "order": args.order,
    }


def cmd_alpha(args, cfg):
    R = _ring(args, cfg)
    (x,) = _parse_list(R, args.element)
    J, just = _subideal(R, args, cfg)
    cap = _opt(args, cfg, "alpha_cap", 16)
    res = alpha_exponent(x, J, R, cap)
    doc = {"ring": R.spec(), "element": format_polynomial(x), "subideal": just,
           "alpha": res.value, "cap": cap, "semantics": res.semantics,
           "certificate": certificate_text(res.certificate) if res.certificate else None}
    if res.value is None:
        doc["note"] = f"no power up to {cap} lies in the subideal"
        return EXIT_CAP, doc
    return EXIT_OK, doc


def cmd_loewy(args, cfg):
    R = _ring(args, cfg)
    J, just = _subideal(R, args, cfg)
    ll = loewy_length(R, J)
    return EXIT_OK, {"ring": R.spec(), "subideal": just, "loewy_length": _fmt_value(ll),
                     "semantics": R.semantics}


def cmd_mult(args, cfg):
    R = _ring(args, cfg)
    J, just = _subideal(R, args, cfg)
    doc = {"ring": R.spec(), "subideal": just}
    if args.reduction:
        Q = Ideal(R.ring, _parse_list(R, args.reduction))
        res = multiplicity_via_reduction(R, J, Q)
        doc.update(method="reduction", reduction=[format_polynomial(q) for q in Q.generators],
                   reduction_exponent=res.reduction_exponent, multiplicity=res.multiplicity)
    else:
        doc.update(method="hilbert-samuel", multiplicity=hilbert_samuel_multiplicity(R, J))
    return EXIT_OK, doc


def cmd_regular_seq(args, cfg):
    R = _ring(args, cfg)
    xs = _parse_list(R, args.elements)
    ok = is_regular_sequence(xs, R)
    return (EXIT_OK if ok else EXIT_HYPOTHESIS), {
        "ring": R.spec(), "elements": [format_polynomial(x) for x in xs],
        "regular_sequence": ok, "semantics": R.semantics}


def _bound_config(args, cfg) -> BoundConfig:
    assertions = dict(cfg.get("assertions", {}))
    for item in getattr(args, "assert_dim", None) or []:
        spec, _, val = item.rpartition("=")
        if not spec or not val.strip().isdigit():
            raise UsageError(f"--assert-dim expects SPEC=N, got {item!r}")
        assertions[parse_ring_spec(spec).spec()] = int(val)
    return BoundConfig(
        degree_cap=_opt(args, cfg, "degree_cap", 4),
        max_candidates=_opt(args, cfg, "max_candidates", 200),
        alpha_cap=_opt(args, cfg, "alpha_cap", 16),
        max_factors=_opt(args, cfg, "max_factors", 5),
        assert_jacobian=bool(_opt(args, cfg, "assert_jacobian", False)),
        assertions=assertions,
    )


def cmd_bounds(args, cfg):
    R = _ring(args, cfg)
    report = best_bound_report(R, _bound_config(args, cfg))
    status = EXIT_OK if (report.best is not None or not report.bounds and "regular ring: D_sg = 0" in report.notes) \
        else EXIT_HYPOTHESIS
    return status, report


def _read_mf(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    try:
        return loads_mf(text)
    except PolyParseError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{path}: malformed matrix factorization: {e}") from None


def cmd_mf(args, cfg):
    X = _read_mf(args.file)
    R = X.ring
    doc = {"action": args.action, "rank": X.rank, "potential": format_polynomial(X.potential)}
    if args.action == "validate":
        ok = validate(X)
        doc["valid"] = ok
        return (EXIT_OK if ok else EXIT_HYPOTHESIS), doc
    if not validate(X):
        doc["valid"] = False
        return EXIT_HYPOTHESIS, doc
    if args.action == "ann":
        hits = stable_annihilator_probe(X, _opt(args, cfg, "degree_cap", 3))
        doc["annihilators"] = [{"element": format_polynomial(m), "homotopy": homotopy_to_dict(H)}
                               for m, H in hits]
    elif args.action == "koszul-split":
        x = R.parse(args.x)
        cert = verify_koszul_split(X, x)
        doc.update(element=format_polynomial(x), verified=cert.verify(),
                   source_rank=cert.forward.source.rank, layout=list(cert.layout))
    elif args.action == "prop5":
        x, y = R.parse(args.x), R.parse(args.y)
        sp = split_product_triangle(X, x, y)
        doc.update(x=format_polynomial(x), y=format_polynomial(y),
                   triangle_verified=sp.triangle.verify(),
                   splitting_verified=sp.equivalence.verify(),
                   middle_rank=sp.middle.rank, layout=list(sp.equivalence.layout))
    elif args.action == "binomial":
        xs = [R.parse(t) for t in args.xs.split(",")] if args.xs else []
        cert = verify_koszul_binomial(X, xs)
        doc.update(elements=[format_polynomial(x) for x in xs], verified=cert.verify(),
                   source_rank=cert.forward.source.rank,
                   multiplicities=list(cert.multiplicities))
    return EXIT_OK, doc


def cmd_verify(args, cfg):
    from .regression import run_all
    results = run_all()
    ok = all(r["passed"] for r in results)
    return (EXIT_OK if ok else EXIT_HYPOTHESIS), {"checks": results, "passed": ok}


# -- output -----------------------------------------------------------------------

def _render_text(command: str, doc) -> str:
    if hasattr(doc, "render"):
        return doc.render()
    if command == "verify":
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}: {r['detail']}" for r in doc["checks"]]
        return "\n".join(lines) + "\n"
    lines = []
    for k, v in doc.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=None,
                        help=f"output format (default from ${FORMAT_ENV}, else text)")
    common.add_argument("--config", help="JSON file with default options")
    common.add_argument("--truncation", type=int, default=None,
                        help="cap on the truncation order used for local answers")

    p = argparse.ArgumentParser(prog="singcat", description="Dimension bounds for singularity categories.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def ideal_opts(sp):
        sp.add_argument("--ideal", help="comma-separated generators (default: jacobian ideal)")
        sp.add_argument("--assert-jacobian", action="store_true", default=None,
                        help="assert the hypotheses under which the jacobian ideal annihilates")

    s = sub.add_parser("jacobian", parents=[common], help="jacobian ideal")
    s.add_argument("ring")
    s.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    s.add_argument("--assert-jacobian", action="store_true", default=None)
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("alpha", parents=[common], help="least power of an element in the subideal")
    s.add_argument("element")
    s.add_argument("ring")
    s.add_argument("--alpha-cap", type=int, default=None)
    ideal_opts(s)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("loewy", parents=[common], help="Loewy length of R/J")
    s.add_argument("ring")
    ideal_opts(s)
    s.set_defaults(func=cmd_loewy)

    s = sub.add_parser("mult", parents=[common], help="Hilbert-Samuel multiplicity of J")
    s.add_argument("ring")
    s.add_argument("--reduction", help="comma-separated generators of a parameter reduction Q")
    ideal_opts(s)
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("regular-seq", parents=[common], help="regular sequence test")
    s.add_argument("elements", help="comma-separated elements")
    s.add_argument("ring")
    s.set_defaults(func=cmd_regular_seq)

    s = sub.add_parser("bounds", parents=[common], help="comparative bound report")
    s.add_argument("ring")
    s.add_argument("--degree-cap", type=int, default=None)
    s.add_argument("--max-candidates", type=int, default=None)
    s.add_argument("--alpha-cap", type=int, default=None)
    s.add_argument("--max-factors", type=int, default=None)
    s.add_argument("--assert-jacobian", action="store_true", default=None)
    s.add_argument("--assert-dim", action="append", metavar="SPEC=N",
                   help="user-asserted dimension of a quotient's singularity category")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("mf", parents=[common], help="matrix factorization checks")
    s.add_argument("action", choices=["validate", "ann", "koszul-split", "prop5", "binomial"])
    s.add_argument("--file", required=True, help="matrix factorization JSON file")
    s.add_argument("--x")
    s.add_argument("--y")
    s.add_argument("--xs", help="comma-separated elements for binomial")
    s.add_argument("--degree-cap", type=int, default=None)
    s.set_defaults(func=cmd_mf)

    s = sub.add_parser("verify", parents=[common], help="regression suite")
    s.add_argument("which", choices=["all"])
    s.set_defaults(func=cmd_verify)
    return p


def _check_mf_args(args):
    if args.command != "mf":
        return
    need = {"koszul-split": ["x"], "prop5": ["x", "y"]}.get(args.action, [])
    missing = [n for n in need if getattr(args, n) is None]
    if missing:
        raise UsageError(f"mf {args.action} needs --{' --'.join(missing)}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) if e.code in (0, None) else EXIT_USAGE
    try:
        cfg = _load_config(args.config)
        fmt = args.format or cfg.get("format") or os.environ.get(FORMAT_ENV) or "text"
        if fmt not in ("json", "text"):
            raise UsageError(f"unknown format {fmt!r}")
        _check_mf_args(args)
        status, doc = args.func(args, cfg)
    except (PolyParseError, UsageError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except ResourceCapError as e:
        print(f"resource cap: {e}", file=err)
        return EXIT_CAP
    except (BoundError, PreconditionError, ZeroRingError, ValueError) as e:
        print(f"hypothesis failure: {e}", file=err)
        return EXIT_HYPOTHESIS
    if fmt == "json":
        body = doc.to_dict() if hasattr(doc, "to_dict") else doc
        envelope = {"command": args.command, "status": status, "result": body}
        out.write(json.dumps(envelope, indent=2) + "\n")
    else:
        out.write(_render_text(args.command, doc))
    return status


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
