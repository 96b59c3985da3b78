"""Exact multivariate polynomials over QQ and prime fields.

Polynomials are immutable maps from dense exponent tuples to coefficients.
Rational coefficients are :class:`fractions.Fraction`; prime-field
coefficients are plain ints in ``[0, p)``.  The monomial order is not part of
a polynomial's identity: it is passed to whatever needs one (printing uses
degrevlex so that the text form is canonical).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]


class AmbientMismatch(ValueError):
    """Operands live in different polynomial rings."""


class PolyParseError(ValueError):
    """Syntax error in a polynomial or ring specification.

    ``offset`` is the byte offset into the parsed text.
    """

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _is_prime(p: int) -> bool:
    # Miller-Rabin with these bases is exact below 3.3e24
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """Coefficient field: ``QQ`` (modulus 0) or ``F_p``."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int = 0):
        if modulus and not _is_prime(modulus):
            raise ValueError(f"{modulus} is not prime")
        self.modulus = modulus

    @property
    def name(self) -> str:
        return f"F{self.modulus}" if self.modulus else "QQ"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("Field", self.modulus))

    def __call__(self, value) -> Union[Fraction, int]:
        p = self.modulus
        if p:
            if isinstance(value, Fraction):
                return value.numerator % p * pow(value.denominator % p, -1, p) % p
            return int(value) % p
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    @property
    def zero(self):
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self):
        return 1 if self.modulus else Fraction(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / a

    def mul(self, a, b):
        return a * b % self.modulus if self.modulus else a * b

    def add(self, a, b):
        return (a + b) % self.modulus if self.modulus else a + b

    def neg(self, a):
        return (-a) % self.modulus if self.modulus else -a


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_from_name(name: str) -> Field:
    """Inverse of ``Field.name``: ``"QQ"`` or ``"F<p>"``."""
    if name == "QQ":
        return QQ
    if len(name) > 1 and name[0] == "F" and name[1:].isdigit():
        return Field(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


@dataclass(frozen=True)
class MonomialOrder:
    """Lex or degree-reverse-lex, optionally after permuting variables.

    ``perm[i]`` is the index of the i-th largest variable.  Keys compare
    larger for larger monomials.
    """

    kind: str = "degrevlex"
    perm: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Monomial) -> Tuple[int, ...]:
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        if self.kind == "lex":
            return tuple(e)
        return (sum(e),) + tuple(-a for a in reversed(e))

    def negkey(self, e: Monomial) -> Tuple[int, ...]:
        return tuple(-k for k in self.key(e))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """``k[v1, ..., vn]``; identity is the field plus the variable names."""

    __slots__ = ("field", "variables", "_index")

    def __init__(self, field: Field, variables: Sequence[str]):
        variables = tuple(variables)
        for v in variables:
            if not _NAME.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variables in {variables}")
        self.field = field
        self.variables = variables
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __repr__(self) -> str:
        return f"{self.field.name}[{','.join(self.variables)}]"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PolyRing) and other.field == self.field
                and other.variables == self.variables)

    def __hash__(self) -> int:
        return hash((self.field, self.variables))

    def index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise ValueError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise ValueError(f"unknown variable {var!r} in {self}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, var: Union[str, int]) -> "Polynomial":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise AmbientMismatch(f"{obj.ring} vs {self}")
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        return self.const(obj)


class Polynomial:
    """Immutable polynomial; ``terms`` never stores zero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object], _clean: bool = True):
        self.ring = ring
        if _clean:
            self._terms = {m: c for m, c in terms.items() if c}
        else:
            self._terms = dict(terms)
        self._hash = None

    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def constant_coeff(self):
        return self._terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def lead(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Monomial, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for m in self._terms:
            used.update(i for i, a in enumerate(m) if a)
        return tuple(sorted(used))

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AmbientMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.modulus
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.modulus
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self._terms.items()}, _clean=False)
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()}, _clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.modulus
        out: Dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                v = out.get(m)
                out[m] = c if v is None else v + c
        if p:
            out = {m: c % p for m, c in out.items()}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        p = self.ring.field.modulus
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self._terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_monomial(self, exps: Monomial, c=1) -> "Polynomial":
        c = self.ring.field(c)
        p = self.ring.field.modulus
        out = {}
        for m, v in self._terms.items():
            w = v * c
            out[tuple(a + b for a, b in zip(m, exps))] = w % p if p else w
        return Polynomial(self.ring, out)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, lc = self.lead(order)
        return self.scale(self.ring.field.inv(lc))

    def diff(self, var: Union[str, int]) -> "Polynomial":
        i = self.ring.index(var)
        p = self.ring.field.modulus
        out = {}
        for m, c in self._terms.items():
            a = m[i]
            if a:
                n = list(m)
                n[i] = a - 1
                v = c * a
                out[tuple(n)] = v % p if p else v
        return Polynomial(self.ring, out)

    def substitute_zero(self, indices: Iterable[int]) -> "Polynomial":
        """Set the given variables to zero (same ring)."""
        idx = tuple(indices)
        return Polynomial(self.ring, {m: c for m, c in self._terms.items()
                                      if not any(m[i] for i in idx)})

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-embed into a ring whose variables include every variable used here."""
        if ring.field != self.ring.field:
            raise AmbientMismatch(f"field {self.ring.field} vs {ring.field}")
        mapping = []
        for i in self.variables_used():
            mapping.append((i, ring.index(self.ring.variables[i])))
        out = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for i, j in mapping:
                e[j] = m[i]
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # -- comparison and text ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.ring!r}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def partial_derivative(f: Polynomial, var: Union[str, int]) -> Polynomial:
    return f.diff(var)


# -- printing -----------------------------------------------------------------

def _format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for a, v in zip(m, names):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    """Canonical text form, re-parseable by :func:`parse_polynomial`."""
    if f.is_zero():
        return "0"
    names = f.ring.variables
    out = []
    for k, (m, c) in enumerate(f.sorted_terms(order)):
        neg = (not f.ring.field.modulus) and c < 0
        a = -c if neg else c
        mono = _format_monomial(m, names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolyParseError(f"unexpected character {ch!r}", _byte_offset(text, m.start(3)), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg: str, tok=None):
        tok = tok or self.toks[self.i]
        raise PolyParseError(msg, _byte_offset(self.text, tok[2]), self.text)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch: str):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("num", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed")
            self.error(f"unexpected {tok[1]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.peek()
            if e[0] != "num":
                self.error("exponent must be a nonnegative integer")
            self.take()
            return base ** int(e[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "num":
                    self.error("expected integer denominator")
                self.take()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                q = Fraction(int(val), int(den[1]))
                if self.ring.field.modulus and q.denominator % self.ring.field.modulus == 0:
                    self.error("denominator not invertible in field", den)
                return self.ring.const(q)
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                self.i -= 1
                self.error(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        self.i -= 1
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` in the polynomial grammar (``+ - * ^``, ``p/q`` literals)."""
    return _Parser(text, ring).parse()


def iter_monomials(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of exactly ``degree`` in ``nvars`` variables."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for a in range(degree, -1, -1):
        for rest in iter_monomials(nvars - 1, degree - a):
            yield (a,) + rest
