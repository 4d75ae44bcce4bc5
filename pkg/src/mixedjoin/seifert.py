"""Integer Seifert-form algebra.

Matrices are tuples of integer tuples.  The monodromy attached to a Seifert
matrix ``L`` is ``H = L^-1 L^T`` by default (``convention="left"``); the
``"right"`` convention ``L^T L^-1`` is conjugate to it (``H' = L H L^-1``) and
has the same characteristic polynomial.  Both give ``t^2 - t + 1`` for the
trefoil and ``t^2 - 3t + 1`` for the figure-eight knot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intpoly import IntPolynomial, bareiss_det, charpoly

__all__ = [
    "Matrix",
    "NonUnimodularError",
    "SeifertForm",
    "CongruenceInvariants",
    "CongruenceVerdict",
    "lambda_matrix",
    "join_tensor",
    "brieskorn_form",
    "sum_of_squares_form",
    "extend",
    "congruence_invariants",
    "check_congruent",
    "monodromy_charpoly",
    "smith_diagonal",
    "signature_and_rank",
]

log = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]

TRANSVECTION_RANGE = 3
MAX_DEPTH = 8
STATE_CAP = 10**6


class NonUnimodularError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix helpers


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(r) != len(m) for r in m):
        raise ValueError("Seifert matrix must be square")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def congruent_transform(u: Matrix, a: Matrix) -> Matrix:
    """``U A U^T``."""
    return matmul(matmul(u, a), transpose(u))


def kron(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    return tuple(
        tuple(a[i // nb][j // nb] * b[i % nb][j % nb] for j in range(na * nb)) for i in range(na * nb)
    )


def scale(c: int, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def det(a: Matrix) -> int:
    return bareiss_det(a)


def int_inverse(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise NonUnimodularError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    inv = [row[n:] for row in m]
    if any(x.denominator != 1 for row in inv for x in row):
        raise NonUnimodularError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class SeifertForm:
    """Square integer matrix, optionally tagged with the link dimension ``k``
    (the link lives in ``S^(2k+1)``).

    The default constructor insists on ``|det| = 1``; :meth:`relaxed` builds an
    unchecked intermediate matrix and marks it ``unimodular=False`` unless the
    determinant happens to be a unit.
    """

    entries: Matrix
    k: int | None = None
    unimodular: bool = True

    def __post_init__(self):
        object.__setattr__(self, "entries", as_matrix(self.entries))
        if self.unimodular and abs(det(self.entries)) != 1:
            raise NonUnimodularError(f"|det| = {abs(det(self.entries))} != 1")

    @classmethod
    def relaxed(cls, entries, k: int | None = None) -> SeifertForm:
        m = as_matrix(entries)
        return cls(m, k, unimodular=abs(det(m)) == 1)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        out = {"matrix": [list(r) for r in self.entries]}
        if self.k is not None:
            out["k"] = self.k
        return out

    def require_unimodular(self):
        if not self.unimodular:
            raise NonUnimodularError("operation needs a unimodular Seifert form")


def _form(x) -> SeifertForm:
    return x if isinstance(x, SeifertForm) else SeifertForm.relaxed(x)


def lambda_matrix(m: int) -> SeifertForm:
    """``Lambda'_m``: ``(|m|-1)``-square, 1 on the diagonal and -1 just below it;
    transposed when ``m < 0``.  ``|m| = 1`` gives the empty form.
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    size = abs(m) - 1
    rows = [[1 if i == j else (-1 if i == j + 1 else 0) for j in range(size)] for i in range(size)]
    mat = as_matrix(rows)
    if m < 0:
        mat = transpose(mat)
    return SeifertForm(mat, k=0)


def join_tensor(l1: SeifertForm, n: int, l2: SeifertForm, m: int) -> SeifertForm:
    """Seifert form of ``f1 + f2`` from those of ``f1`` (``n`` variables) and
    ``f2`` (``m`` variables): ``(-1)^(n m) L1 (x) L2``."""
    l1, l2 = _form(l1), _form(l2)
    l1.require_unimodular()
    l2.require_unimodular()
    sign = -1 if (n * m) % 2 else 1
    k = l1.k + l2.k + 1 if l1.k is not None and l2.k is not None else None
    return SeifertForm(scale(sign, kron(l1.entries, l2.entries)), k=k)


def brieskorn_form(exponents: Sequence[int]) -> SeifertForm:
    """``(-1)^(n(n+1)/2) Lambda'_{m_1} (x) ... (x) Lambda'_{m_n}``."""
    exps = list(exponents)
    if not exps:
        raise ValueError("need at least one exponent")
    if any(abs(e) < 2 for e in exps):
        raise ValueError(f"exponents must satisfy |m| >= 2, got {exps}")
    n = len(exps)
    mat: Matrix = ((1,),)
    for e in exps:
        mat = kron(mat, lambda_matrix(e).entries)
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    return SeifertForm(scale(sign, mat), k=n - 1)


def sum_of_squares_form(m: int) -> SeifertForm:
    """1x1 Seifert form ``((-1)^(m(m-1)/2))`` of ``w_1^2 + ... + w_m^2``.

    This is the sign convention quoted for the quadratic factor in the
    join example; :func:`brieskorn_form` on ``(2,)*m`` uses its own sign
    ``(-1)^(m(m+1)/2)`` and the two are kept separate on purpose.
    """
    if m < 1:
        raise ValueError("m must be positive")
    return SeifertForm(((-1 if (m * (m - 1) // 2) % 2 else 1,),), k=m - 1)


def extend(l: SeifertForm, b: Sequence[int], eps: int) -> SeifertForm:
    """Border ``L`` with the row ``(b, eps)`` and a zero column above ``eps``."""
    l = _form(l)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    b = [int(x) for x in b]
    if len(b) != l.rank:
        raise ValueError(f"border row has length {len(b)}, expected {l.rank}")
    rows = [list(r) + [0] for r in l.entries] + [b + [eps]]
    return SeifertForm.relaxed(rows, k=l.k)


# ---------------------------------------------------------------------------
# invariants


def smith_diagonal(a: Matrix) -> tuple[int, ...]:
    """Invariant factors ``d_1 | d_2 | ...`` (nonnegative) of an integer matrix."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
            if not nz:
                return tuple(diag) + (0,) * (min(rows, cols) - t)
            _, pi, pj = min(nz)
            m[t], m[pi] = m[pi], m[t]
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            p = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                clean &= m[i][t] == 0
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                clean &= m[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p), None)
            if bad is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[bad])]
        diag.append(abs(m[t][t]))
    return tuple(diag)


def _sign_changes(coeffs: Sequence[int]) -> int:
    signs = [c > 0 for c in coeffs if c]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def signature_and_rank(s: Matrix) -> tuple[int, int]:
    """Signature and rank of a symmetric integer matrix.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule counts its positive and negative roots exactly.
    """
    n = len(s)
    if n == 0:
        return 0, 0
    t = IntPolynomial.t()
    char = bareiss_det(
        [[(t if i == j else IntPolynomial()) - s[i][j] for j in range(n)] for i in range(n)],
        IntPolynomial((1,)),
    )
    cs = list(char.coeffs)
    pos = _sign_changes(cs)
    neg = _sign_changes([c * (-1) ** k for k, c in enumerate(cs)])
    return pos - neg, pos + neg


def _normalize_sign(p: IntPolynomial) -> IntPolynomial:
    return p.primitive() if p else p


@dataclass(frozen=True)
class CongruenceInvariants:
    det: int
    smith: tuple[int, ...]
    signature: int
    symmetric_rank: int
    alexander: IntPolynomial

    def to_json(self) -> dict:
        return {
            "det": self.det,
            "smith": list(self.smith),
            "signature": self.signature,
            "symmetric_rank": self.symmetric_rank,
            "alexander": self.alexander.to_list(),
        }


def congruence_invariants(l: SeifertForm) -> CongruenceInvariants:
    a = _form(l).entries
    n = len(a)
    at = transpose(a)
    sym = tuple(tuple(a[i][j] + at[i][j] for j in range(n)) for i in range(n))
    sig, rk = signature_and_rank(sym)
    t = IntPolynomial.t()
    alex = bareiss_det([[t * a[i][j] - at[i][j] for j in range(n)] for i in range(n)], IntPolynomial((1,)))
    return CongruenceInvariants(det(a), smith_diagonal(a), sig, rk, _normalize_sign(alex))


# ---------------------------------------------------------------------------
# congruence search


@dataclass(frozen=True)
class CongruenceVerdict:
    status: str  # "CongruentWitness" | "DistinguishedByInvariant" | "Unknown"
    witness: Matrix | None = None
    separating_invariant: tuple[str, object, object] | None = None
    depth: int | None = None
    states: int = 0

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "states": self.states}
        if self.witness is not None:
            out["witness"] = [list(r) for r in self.witness]
            out["depth"] = self.depth
        if self.separating_invariant is not None:
            name, a, b = self.separating_invariant
            enc = lambda v: v.to_list() if isinstance(v, IntPolynomial) else (list(v) if isinstance(v, tuple) else v)
            out["separating_invariant"] = {"name": name, "left": enc(a), "right": enc(b)}
        return out


def _moves(n: int):
    """Elementary unimodular moves as (kind, i, j, c), in a fixed order."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in range(-TRANSVECTION_RANGE, TRANSVECTION_RANGE + 1):
                    if c:
                        out.append(("add", i, j, c))
    for i in range(n):
        for j in range(i + 1, n):
            out.append(("swap", i, j, 0))
    for i in range(n):
        out.append(("neg", i, 0, 0))
    return out


def _apply_rows(m: list[list[int]], move) -> None:
    kind, i, j, c = move
    if kind == "add":
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    elif kind == "swap":
        m[i], m[j] = m[j], m[i]
    else:
        m[i] = [-x for x in m[i]]


def _apply_congruence(a: Matrix, move) -> Matrix:
    m = [list(r) for r in a]
    _apply_rows(m, move)
    m = [list(r) for r in zip(*m)]
    _apply_rows(m, move)
    return tuple(tuple(r) for r in zip(*m))


def _apply_left(u: Matrix, move) -> Matrix:
    m = [list(r) for r in u]
    _apply_rows(m, move)
    return tuple(tuple(r) for r in m)


def _witness_key(w: Matrix):
    # smaller entries first, then lexicographically greatest
    return (sum(abs(x) for row in w for x in row), tuple(-x for row in w for x in row))


def check_congruent(a: SeifertForm, b: SeifertForm, depth: int = MAX_DEPTH, state_cap: int = STATE_CAP) -> CongruenceVerdict:
    """Decide ``U A U^T = B`` for some unimodular ``U``, within a search budget.

    Invariant mismatch settles non-congruence.  Otherwise a bidirectional
    breadth-first search over elementary moves (transvections with
    coefficients in ``[-3, 3]``, swaps, sign changes) runs from both ends up
    to ``depth`` moves in total.  Among the witnesses of minimal length the
    one with the smallest absolute entry sum wins, ties going to the
    lexicographically greatest, so the result does not depend on expansion
    order.
    """
    a, b = _form(a), _form(b)
    A, B = a.entries, b.entries
    if len(A) != len(B):
        return CongruenceVerdict("DistinguishedByInvariant", separating_invariant=("rank", len(A), len(B)))
    ia, ib = congruence_invariants(a), congruence_invariants(b)
    for name in ("det", "smith", "signature", "symmetric_rank", "alexander"):
        va, vb = getattr(ia, name), getattr(ib, name)
        if va != vb:
            return CongruenceVerdict("DistinguishedByInvariant", separating_invariant=(name, va, vb))
    n = len(A)
    if A == B:
        return CongruenceVerdict("CongruentWitness", witness=identity(n), depth=0, states=1)
    if depth > MAX_DEPTH:
        log.warning("congruence search depth %d capped at %d", depth, MAX_DEPTH)
        depth = MAX_DEPTH

    moves = _moves(n)
    # side 0 grows from A, side 1 from B; each maps a matrix to its transform
    seen = [{A: (identity(n), 0)}, {B: (identity(n), 0)}]
    frontier = [[A], [B]]
    reached = [0, 0]
    states = 2
    while reached[0] + reached[1] < depth:
        side = 0 if reached[0] <= reached[1] else 1
        other = seen[1 - side]
        nxt = []
        hits = []
        for mat in frontier[side]:
            u, d = seen[side][mat]
            for mv in moves:
                m2 = _apply_congruence(mat, mv)
                prior = seen[side].get(m2)
                if prior is not None:
                    # keep equal-length alternatives at meeting points for the tie-break
                    if prior[1] == d + 1 and m2 in other:
                        hits.append((m2, _apply_left(u, mv), d + 1))
                    continue
                u2 = _apply_left(u, mv)
                seen[side][m2] = (u2, d + 1)
                nxt.append(m2)
                states += 1
                if m2 in other:
                    hits.append((m2, u2, d + 1))
                if states >= state_cap:
                    break
            if states >= state_cap:
                break
        reached[side] += 1
        frontier[side] = nxt
        if hits:
            found = []
            for m2, u2, d2 in hits:
                v2, d_other = other[m2]
                ua, vb = (u2, v2) if side == 0 else (v2, u2)
                w = matmul(int_inverse(vb), ua)
                found.append((d2 + d_other, _witness_key(w), w))
            length, _, w = min(found)
            assert congruent_transform(w, A) == B
            return CongruenceVerdict("CongruentWitness", witness=w, depth=length, states=states)
        if states >= state_cap or not nxt:
            break
    return CongruenceVerdict("Unknown", states=states)


# ---------------------------------------------------------------------------
# monodromy


def monodromy_matrix(l: SeifertForm, convention: str = "left") -> Matrix:
    l = _form(l)
    l.require_unimodular()
    a = l.entries
    inv = int_inverse(a) if a else ()
    if convention == "left":
        return matmul(inv, transpose(a))
    if convention == "right":
        return matmul(transpose(a), inv)
    raise ValueError(f"unknown monodromy convention {convention!r}")


def monodromy_charpoly(l: SeifertForm, convention: str = "left") -> IntPolynomial:
    """``det(Id - t H)`` for the monodromy ``H`` of the Seifert form."""
    h = monodromy_matrix(l, convention)
    # det(I - tH) is the reversal of det(tI - H), which is monic of degree n
    return charpoly(h).reversed()
