"""Mixed polynomials in ``z_1..z_n`` and their conjugates, with exact coefficients.

A term ``c * z^nu * zb^mu`` is keyed by the exponent pair ``(nu, mu)``; the
coefficient ``c`` is a :class:`GaussianRational`.  Text syntax::

    z1^2 + zb2^2
    (1/2+3i)*z1*zb1 - conj(z2^3)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GaussianRational",
    "MixedPolynomial",
    "ParseError",
    "parse",
    "evaluate",
    "wirtinger",
    "multiply",
    "conjugate",
]

MAX_EXPONENT = 2**63 - 1

Key = tuple[tuple[int, ...], tuple[int, ...]]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not exact; pass a Fraction or string")
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def of(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(_frac(x), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def magnitude(self) -> float:
        return abs(complex(self))

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "-" if self.im < 0 else "+"
        return f"({format_rational(self.re)}{sign}{format_rational(abs(self.im))}i)"

    def to_json(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]

    @classmethod
    def from_json(cls, pair: Sequence[str]) -> GaussianRational:
        re_, im_ = pair
        return cls(Fraction(str(re_)), Fraction(str(im_)))


ZERO = GaussianRational()
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _check_exponent(e: int) -> int:
    if not isinstance(e, int) or isinstance(e, bool):
        raise TypeError(f"exponent must be an integer, got {e!r}")
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    if e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return e


class MixedPolynomial:
    """Immutable finite sum of mixed monomials.

    ``terms`` maps ``(nu, mu)`` to the nonzero coefficient of
    ``z^nu * conj(z)^mu``.  Terms are collected and zero coefficients dropped
    on construction, so the zero polynomial has an empty term map.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Key, object] | Iterable[tuple[Key, object]] = ()):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"variable count must be a positive integer, got {n!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Key, GaussianRational] = {}
        for (nu, mu), c in items:
            nu = tuple(_check_exponent(e) for e in nu)
            mu = tuple(_check_exponent(e) for e in mu)
            if len(nu) != n or len(mu) != n:
                raise ValueError(f"exponent vectors must have length {n}")
            c = GaussianRational.of(c)
            key = (nu, mu)
            collected[key] = collected.get(key, ZERO) + c
        self._n = n
        self._terms = MappingProxyType(
            {k: collected[k] for k in sorted(collected) if collected[k]}
        )
        self._hash = None

    # -- construction helpers ---------------------------------------------
    @classmethod
    def zero(cls, n: int) -> MixedPolynomial:
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> MixedPolynomial:
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def variable(cls, n: int, j: int, conj: bool = False) -> MixedPolynomial:
        if not 1 <= j <= n:
            raise IndexError(f"variable index {j} outside 1..{n}")
        e = tuple(1 if i == j - 1 else 0 for i in range(n))
        z = (0,) * n
        return cls(n, {(z, e) if conj else (e, z): 1})

    @classmethod
    def monomial(cls, nu: Sequence[int], mu: Sequence[int], c=1) -> MixedPolynomial:
        return cls(len(nu), {(tuple(nu), tuple(mu)): c})

    # -- accessors ---------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Key, GaussianRational]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def radial_exponents(self) -> list[tuple[int, ...]]:
        """Distinct ``nu + mu`` vectors, sorted."""
        pts = {tuple(a + b for a, b in zip(nu, mu)) for nu, mu in self._terms}
        return sorted(pts)

    def degree(self) -> int:
        return max((sum(nu) + sum(mu) for nu, mu in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic --------------------------------------------------------
    def _same_n(self, other: MixedPolynomial):
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n} variables")

    def _coerce(self, other) -> MixedPolynomial:
        if isinstance(other, MixedPolynomial):
            self._same_n(other)
            return other
        return MixedPolynomial.constant(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return MixedPolynomial(self.n, list(self._terms.items()) + list(o._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return multiply(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("power must be a nonnegative integer")
        result = MixedPolynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> MixedPolynomial:
        return conjugate(self)

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.n == other.n and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def restrict(self, keep) -> MixedPolynomial:
        """Sub-polynomial of the terms whose key satisfies ``keep(nu, mu)``."""
        return MixedPolynomial(self.n, {k: c for k, c in self._terms.items() if keep(*k)})

    # -- printing / serialization ------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((nu, mu), c) in enumerate(self._terms.items()):
            mono = _format_monomial(nu, mu)
            negative = (not c.im and c.re < 0) or (not c.re and c.im < 0)
            shown = -c if negative else c
            if mono:
                body = mono if shown == ONE else f"{shown}*{mono}"
            else:
                body = str(shown)
            if i == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MixedPolynomial(n={self.n}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"nu": list(nu), "mu": list(mu), "c": c.to_json()}
                for (nu, mu), c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MixedPolynomial:
        n = data["n"]
        return cls(
            n,
            [((tuple(t["nu"]), tuple(t["mu"])), GaussianRational.from_json(t["c"])) for t in data["terms"]],
        )


def _format_monomial(nu, mu) -> str:
    factors = []
    for j, e in enumerate(nu, start=1):
        if e:
            factors.append(f"z{j}" if e == 1 else f"z{j}^{e}")
    for j, e in enumerate(mu, start=1):
        if e:
            factors.append(f"zb{j}" if e == 1 else f"zb{j}^{e}")
    return "*".join(factors)


# ---------------------------------------------------------------------------
# operations


def multiply(p: MixedPolynomial, q: MixedPolynomial) -> MixedPolynomial:
    p._same_n(q)
    out: dict[Key, GaussianRational] = {}
    for (nu1, mu1), c1 in p.terms.items():
        for (nu2, mu2), c2 in q.terms.items():
            key = (
                tuple(a + b for a, b in zip(nu1, nu2)),
                tuple(a + b for a, b in zip(mu1, mu2)),
            )
            out[key] = out.get(key, ZERO) + c1 * c2
    return MixedPolynomial(p.n, out)


def conjugate(p: MixedPolynomial) -> MixedPolynomial:
    return MixedPolynomial(p.n, {(mu, nu): c.conjugate() for (nu, mu), c in p.terms.items()})


def evaluate(p: MixedPolynomial, w: Sequence[complex]) -> complex:
    """Value of ``p`` at the point ``w`` in double precision."""
    w = [complex(x) for x in w]
    if len(w) != p.n:
        raise ValueError(f"dimension mismatch: point has {len(w)} coordinates, polynomial {p.n}")
    if any(x.real != x.real or x.imag != x.imag or abs(x) == float("inf") for x in w):
        raise ValueError("point must have finite coordinates")
    wb = [x.conjugate() for x in w]
    total = 0j
    for (nu, mu), c in p.terms.items():
        v = complex(c)
        for x, e in zip(w, nu):
            if e:
                v *= x**e
        for x, e in zip(wb, mu):
            if e:
                v *= x**e
        total += v
    return total


_HOLO = {"holomorphic", "holo", "z"}
_ANTI = {"antiholomorphic", "anti", "zb"}


def wirtinger(p: MixedPolynomial, kind: str, j: int) -> MixedPolynomial:
    """``d p / d z_j`` (``kind='holomorphic'``) or ``d p / d zbar_j``."""
    if not 1 <= j <= p.n:
        raise IndexError(f"variable index {j} outside 1..{p.n}")
    if kind in _HOLO:
        anti = False
    elif kind in _ANTI:
        anti = True
    else:
        raise ValueError(f"unknown derivative kind {kind!r}")
    i = j - 1
    out = {}
    for (nu, mu), c in p.terms.items():
        vec = mu if anti else nu
        e = vec[i]
        if not e:
            continue
        lowered = vec[:i] + (e - 1,) + vec[i + 1 :]
        key = (nu, lowered) if anti else (lowered, mu)
        out[key] = c * e
    return MixedPolynomial(p.n, out)


# ---------------------------------------------------------------------------
# parser


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>\d+(?:/\d+)?i?)
  | (?P<zb>zb(?P<zbi>\d+))
  | (?P<z>z(?P<zi>\d+))
  | (?P<conj>conj)
  | (?P<imag>i)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int
    value: object = None


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        col = pos - line_start + 1
        if not m:
            bad = src[pos]
            if bad == "." or bad.isdigit():
                raise ParseError("non-integer number", line, col)
            raise ParseError(f"unexpected character {bad!r}", line, col)
        kind = m.lastgroup
        text = m.group(0)
        if kind == "zbi":
            kind = "zb"
        elif kind == "zi":
            kind = "z"
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ws":
            pass
        elif kind == "num":
            # a trailing '.' means a decimal literal, which is not part of the grammar
            if m.end() < len(src) and src[m.end()] == ".":
                raise ParseError("non-integer number", line, col)
            imag = text.endswith("i")
            body = text[:-1] if imag else text
            if "/" in body:
                a, b = body.split("/")
                if int(b) == 0:
                    raise ParseError("zero denominator", line, col)
            q = Fraction(body)
            toks.append(_Tok("num", text, line, col, GaussianRational(0, q) if imag else GaussianRational(q)))
        elif kind in ("z", "zb"):
            toks.append(_Tok(kind, text, line, col, int(m.group("zbi" if kind == "zb" else "zi"))))
        elif kind == "imag":
            toks.append(_Tok("num", text, line, col, I))
        elif kind == "conj":
            toks.append(_Tok("conj", text, line, col))
        else:
            toks.append(_Tok(text, text, line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, src: str, n: int | None):
        self.toks = _tokenize(src)
        self.pos = 0
        if n is None:
            idx = [t.value for t in self.toks if t.kind in ("z", "zb")]
            n = max(idx, default=1)
            if n < 1:
                n = 1
        self.n = n

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.pos]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self) -> MixedPolynomial:
        p = self.expr()
        self.take("eof")
        return p

    def expr(self) -> MixedPolynomial:
        if self.peek().kind in ("+", "-"):
            sign = self.take().kind
            p = self.term()
            if sign == "-":
                p = -p
        else:
            p = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MixedPolynomial:
        p = self.factor()
        while self.peek().kind == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> MixedPolynomial:
        base = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num":
                raise ParseError("exponent must be a natural number", tok.line, tok.col)
            self.take()
            v = tok.value
            if v.im or v.re.denominator != 1:
                raise ParseError("non-integer exponent", tok.line, tok.col)
            try:
                e = _check_exponent(int(v.re))
            except OverflowError as exc:
                raise ParseError(str(exc), tok.line, tok.col) from None
            base = base**e
        return base

    def base(self) -> MixedPolynomial:
        tok = self.peek()
        if tok.kind in ("z", "zb"):
            self.take()
            if tok.value < 1 or tok.value > self.n:
                raise ParseError(f"variable index {tok.value} outside 1..{self.n}", tok.line, tok.col)
            return MixedPolynomial.variable(self.n, tok.value, conj=tok.kind == "zb")
        if tok.kind == "num":
            self.take()
            return MixedPolynomial.constant(self.n, tok.value)
        if tok.kind == "conj":
            self.take()
            self.take("(")
            p = self.expr()
            self.take(")")
            return conjugate(p)
        if tok.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {got}", tok.line, tok.col)


def parse(source: str, n: int | None = None) -> MixedPolynomial:
    """Parse ``source`` into a collected :class:`MixedPolynomial`.

    ``n`` fixes the number of variables; when omitted it is the largest
    variable index that occurs (at least 1).
    """
    if n is not None and (not isinstance(n, int) or n < 1):
        raise ValueError("n must be a positive integer")
    return _Parser(source, n).parse()
