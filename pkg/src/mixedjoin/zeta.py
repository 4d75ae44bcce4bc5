"""Divisors in Z(C*), monodromy zeta functions, and their behaviour under join.

A divisor ``sum <a_i> - sum <b_j>`` is stored as the reduced pair
``(num, den)`` of primitive integer polynomials with positive leading
coefficient whose roots are the ``a_i`` and ``b_j``.  Leading scalars carry no
information and are normalised away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .intpoly import IntPolynomial, poly_gcd, resultant

__all__ = [
    "ZeroRootError",
    "Divisor",
    "ZetaFunction",
    "divisor_of",
    "zeta_from_charpolys",
    "reduced_zeta",
    "composed_product",
    "divisor_join",
    "simple_fiber_charpolys",
]

T_MINUS_1 = IntPolynomial((-1, 1))
ONE = IntPolynomial((1,))


class ZeroRootError(ValueError):
    """A polynomial with a root at 0 cannot define a divisor on C*."""


def _as_poly(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial(p)


def _normalize(p: IntPolynomial, what: str) -> IntPolynomial:
    if not p:
        raise ValueError(f"{what} is the zero polynomial")
    if p[0] == 0:
        raise ZeroRootError(f"{what} = {p} vanishes at t = 0")
    return p.primitive()


@dataclass(frozen=True)
class Divisor:
    num: IntPolynomial
    den: IntPolynomial = field(default=ONE)

    def is_zero(self) -> bool:
        return self.num == ONE and self.den == ONE

    def degree(self) -> int:
        """Total multiplicity ``deg num - deg den``."""
        return self.num.degree - self.den.degree

    def to_json(self) -> dict:
        return {"num": self.num.to_list(), "den": self.den.to_list()}

    @classmethod
    def from_json(cls, data) -> Divisor:
        return divisor_of(data["num"], data.get("den", [1]))

    def __str__(self) -> str:
        if self.den == ONE:
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"


def divisor_of(num, den=(1,)) -> Divisor:
    """Divisor of the rational function ``num/den`` on C*."""
    num = _normalize(_as_poly(num), "numerator")
    den = _normalize(_as_poly(den), "denominator")
    return _reduce(num, den)


def _reduce(num: IntPolynomial, den: IntPolynomial) -> Divisor:
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exquo(g), den.exquo(g)
    return Divisor(num.primitive(), den.primitive())


@dataclass(frozen=True)
class ZetaFunction:
    charpolys: tuple[IntPolynomial, ...]
    divisor: Divisor

    def to_json(self) -> dict:
        return {"charpolys": [p.to_list() for p in self.charpolys], **self.divisor.to_json()}


def zeta_from_charpolys(ps: Sequence) -> ZetaFunction:
    """``zeta(t) = prod_j P_j(t) ** (-1) ** (j + 1)``, as a reduced divisor.

    Numerator and denominator products are accumulated separately and
    reduced once at the end.
    """
    polys = tuple(_as_poly(p) for p in ps)
    num, den = ONE, ONE
    for j, p in enumerate(polys):
        q = _normalize(p, f"P_{j}")
        if j % 2:
            num = num * q
        else:
            den = den * q
    return ZetaFunction(polys, _reduce(num, den))


def reduced_zeta(z: ZetaFunction | Divisor) -> Divisor:
    """Divisor of ``(t - 1) * zeta(t)``."""
    d = z.divisor if isinstance(z, ZetaFunction) else z
    return _reduce(d.num * T_MINUS_1, d.den)


def simple_fiber_charpolys(middle, k: int) -> list[IntPolynomial]:
    """Characteristic polynomials ``P_0..P_k`` of a fiber whose reduced homology
    is concentrated in degree ``k``, with ``middle`` acting there.

    ``P_0 = 1 - t`` accounts for the connected component class; for ``k = 0``
    both contributions share degree 0.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    middle = _as_poly(middle)
    base = IntPolynomial((1, -1))
    if k == 0:
        return [base * middle]
    return [base] + [ONE] * (k - 1) + [middle]


def composed_product(p, q) -> IntPolynomial:
    """Polynomial whose roots are all products ``a*b`` (``p(a) = 0``, ``q(b) = 0``).

    Computed as ``Res_y(p(y), y^deg(q) * q(t/y))`` over ``Z[t]`` and returned
    primitive with positive leading coefficient.
    """
    p = _normalize(_as_poly(p), "p")
    q = _normalize(_as_poly(q), "q")
    if p.degree == 0 or q.degree == 0:
        return ONE
    dq = q.degree
    a = [IntPolynomial((c,)) for c in p.coeffs]
    # coefficient of y^(dq - k) is q_k * t^k
    b = [IntPolynomial.monomial(q[dq - j], dq - j) for j in range(dq + 1)]
    r = resultant(a, b, ONE)
    return r.primitive()


def divisor_join(d1: Divisor, d2: Divisor) -> Divisor:
    """Multiply two divisors: ``<a> . <b> = <ab>``, extended bilinearly."""
    num = composed_product(d1.num, d2.num) * composed_product(d1.den, d2.den)
    den = composed_product(d1.num, d2.den) * composed_product(d1.den, d2.num)
    return _reduce(num, den)
