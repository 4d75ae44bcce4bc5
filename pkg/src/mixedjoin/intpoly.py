"""Dense univariate polynomials over the integers, plus resultants.

Coefficients are stored constant term first.  The resultant and the
fraction-free determinant below are written against a tiny ring protocol
(``+ - *``, truthiness as nonzero test, and :func:`exact_div`), so the same
code runs over ``Z`` (plain ints) and over ``Z[t]`` (:class:`IntPolynomial`).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = ["IntPolynomial", "exact_div", "resultant", "bareiss_det", "poly_gcd", "charpoly"]


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"integer coefficient expected, got {c!r}")
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def t(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: int, k: int) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @staticmethod
    def _lift(x) -> IntPolynomial:
        return x if isinstance(x, IntPolynomial) else IntPolynomial((x,))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self), len(o))
        return IntPolynomial(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial(c * other for c in self.coeffs)
        o = self._lift(other)
        if not self or not o:
            return IntPolynomial()
        out = [0] * (len(self) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPolynomial((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> IntPolynomial:
        c = self.content()
        if c == 0:
            return self
        if self.lc < 0:
            c = -c
        return IntPolynomial(a // c for a in self.coeffs)

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by ``t^k``."""
        return IntPolynomial((0,) * k + self.coeffs) if self else self

    def reversed(self) -> IntPolynomial:
        """``t^deg * p(1/t)``."""
        return IntPolynomial(reversed(self.coeffs))

    def divmod_exact(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division with remainder; raises if a non-integer quotient coefficient appears."""
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(o) + 1, 0)
        d = o.degree
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if not c:
                continue
            f, r = divmod(c, o.lc)
            if r:
                raise ArithmeticError("inexact division over the integers")
            q[k - d] = f
            for j, b in enumerate(o.coeffs):
                rem[k - d + j] -= f * b
        return IntPolynomial(q), IntPolynomial(rem)

    def exquo(self, other) -> IntPolynomial:
        q, r = self.divmod_exact(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mono else "") + ("*" if mag != 1 and mono else "") + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


ONE = IntPolynomial((1,))


def exact_div(a, b):
    """Exact quotient in Z or Z[t]."""
    if isinstance(a, IntPolynomial) or isinstance(b, IntPolynomial):
        return IntPolynomial._lift(a).exquo(IntPolynomial._lift(b))
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def _deg(p: Sequence) -> int:
    k = len(p) - 1
    while k >= 0 and not p[k]:
        k -= 1
    return k


def _trim(p: Sequence) -> list:
    return list(p[: _deg(p) + 1])


def _rpow(x, k: int, one):
    r = one
    for _ in range(k):
        r = r * x
    return r


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of ``lc(b)^(deg a - deg b + 1) * a`` by ``b``."""
    da, db = _deg(a), _deg(b)
    r = list(a[: da + 1])
    lb = b[db]
    e = da - db + 1
    dr = da
    while dr >= db and dr >= 0:
        lr = r[dr]
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[dr - db + j] = r[dr - db + j] - lr * b[j]
        e -= 1
        dr = _deg(r)
    if e > 0:
        f = _rpow(lb, e, lb * 0 + 1)
        r = [f * x for x in r]
    return _trim(r)


def resultant(a: Sequence, b: Sequence, one=1):
    """Resultant of two polynomials given as coefficient lists (constant first).

    Coefficients may be ints or :class:`IntPolynomial`; the subresultant
    pseudo-remainder sequence keeps every intermediate in the coefficient
    ring (all divisions are exact).
    """
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return one * 0
    da, db = len(a) - 1, len(b) - 1
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    g = h = one
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        a = b
        if not r:
            return one * 0
        div = g * _rpow(h, delta, one)
        b = [exact_div(x, div) for x in r]
        g = a[-1]
        if delta == 0:
            pass
        else:
            h = exact_div(_rpow(g, delta, one), _rpow(h, delta - 1, one))
        da, db = len(a) - 1, len(b) - 1
    # db == 0
    h = exact_div(_rpow(b[0], da, one), _rpow(h, da - 1, one)) if da >= 1 else one
    return h * s if isinstance(h, IntPolynomial) else s * h


def bareiss_det(matrix: Sequence[Sequence], one=1):
    """Fraction-free determinant over Z or Z[t]."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d * sign if isinstance(d, IntPolynomial) else sign * d


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor over Z[t], with positive leading coefficient."""
    if not a:
        return b.primitive() * (b.content() or 1) if b else IntPolynomial()
    if not b:
        return a.primitive() * a.content()
    c = gcd(a.content(), b.content())
    x, y = a.primitive(), b.primitive()
    if x.degree < y.degree:
        x, y = y, x
    while y:
        r = IntPolynomial(_prem(list(x.coeffs), list(y.coeffs)))
        x, y = y, r.primitive() if r else r
    return x.primitive() * c


# ---------------------------------------------------------------------------
# characteristic polynomials by multi-modular Hessenberg reduction

_PRIME_BITS = 26  # keeps every int64 dot product of length <= 2^10 exact


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for d in range(2, int(m**0.5) + 1):
        if m % d == 0:
            return False
    return True


def _primes_below(bound: int):
    m = bound - 1
    while m > 2:
        if _is_prime(m):
            yield m
        m -= 1


def _charpoly_mod(a, p: int) -> list[int]:
    """Coefficients (constant first) of det(tI - A) mod p, A an int64 array."""
    import numpy as np

    h = a % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1], :] = h[[j + 1, i], :]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), -1, p)
        u = (h[j + 2 :, j] * inv) % p
        if not u.any():
            continue
        h[j + 2 :, :] = (h[j + 2 :, :] - (u[:, None] * h[j + 1, :][None, :]) % p) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, j + 2 :] @ u) % p) % p
    # p_k = (t - h_kk) p_{k-1} - sum_i h_ik (prod_{m=i+1..k} h_{m,m-1}) p_{i-1}
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - (int(h[k - 1, k - 1]) * prev) % p) % p
        prod = 1
        weights = np.zeros(k - 1, dtype=np.int64)
        for i in range(k - 1, 0, -1):
            prod = (prod * int(h[i, i - 1])) % p
            if not prod:
                break
            weights[i - 1] = (int(h[i - 1, k - 1]) * prod) % p
        if weights.any():
            cur = (cur - (weights @ polys[: k - 1]) % p) % p
        polys[k] = cur
    return [int(c) for c in polys[n]]


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(t I - M)`` for a square integer matrix, exactly.

    Computed modulo enough primes to exceed the coefficient bound
    ``|c_k| <= C(n, k) R^k`` (``R`` the largest Euclidean row norm, by
    Hadamard's inequality on principal minors) and recombined by CRT.
    """
    import numpy as np
    from math import comb, isqrt

    n = len(matrix)
    if n == 0:
        return IntPolynomial((1,))
    if n > 1024:
        raise ValueError("matrix too large for the modular charpoly")
    r = max(isqrt(sum(x * x for x in row)) + 1 for row in matrix)
    bound = max(comb(n, k) * r**k for k in range(n + 1))
    a = np.array([[int(x) for x in row] for row in matrix], dtype=object)
    residues, modulus = None, 1
    for p in _primes_below(1 << _PRIME_BITS):
        cs = _charpoly_mod((a % p).astype(np.int64), p)
        if residues is None:
            residues = cs
        else:
            # combine x = residues (mod modulus) with cs (mod p)
            inv = pow(modulus % p, -1, p)
            residues = [x + modulus * (((c - x) * inv) % p) for x, c in zip(residues, cs)]
        modulus *= p
        if modulus > 2 * bound:
            break
    half = modulus // 2
    return IntPolynomial(x - modulus if x > half else x for x in residues)
