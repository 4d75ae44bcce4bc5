"""Enhanced Milnor numbers of joins, and explicit join-type realisations.

An enhanced Milnor number is a pair ``(mu, lambda)`` with ``lambda`` in
``{0, 1}``, attached to a fibered link in ``S^{2k+1}``.  Under join the Milnor
numbers multiply and ``lambda`` follows a mod-2 product rule.  The fiber
parameter ``k`` is bookkeeping that the caller supplies; nothing here derives it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .polyparse import MixedPolynomial, parse

__all__ = [
    "EnhancedMilnor",
    "JoinWitness",
    "join_enhanced",
    "brieskorn_enhanced",
    "base_cases",
    "witness",
    "ALPHAS",
]

# any three distinct rationals work; these are the fixed choice
ALPHAS = (1, 2, 3)


@dataclass(frozen=True)
class EnhancedMilnor:
    mu: int
    lam: int
    k: int | None = None
    # standing hypothesis under which the join formula applies
    condition_assumed: bool = True

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if self.lam not in (0, 1):
            raise ValueError("lambda must be 0 or 1")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.mu, self.lam)

    def display(self) -> tuple[int, int]:
        """``((-1)^(k+1) mu, lambda)``; needs ``k``."""
        if self.k is None:
            raise ValueError("display form needs the fiber parameter k")
        return ((-1) ** (self.k + 1) * self.mu, self.lam)

    def to_json(self) -> dict:
        out = {"mu": self.mu, "lambda": self.lam, "k": self.k, "condition_assumed": self.condition_assumed}
        if self.k is not None:
            out["display"] = list(self.display())
        return out


def join_enhanced(e1: EnhancedMilnor, e2: EnhancedMilnor, k: int | None = None) -> EnhancedMilnor:
    """Enhanced Milnor number of a join; ``k`` of the result is the caller's."""
    mu = e1.mu * e2.mu
    lam = (e1.lam * e2.mu + e1.mu * e2.lam) % 2
    return EnhancedMilnor(mu, lam, k, e1.condition_assumed and e2.condition_assumed)


def brieskorn_enhanced(exponents: Sequence[int], k: int | None = None) -> EnhancedMilnor:
    """``sum w_i^{a_i}``: ``(prod (a_i - 1), 0)``."""
    exps = [int(a) for a in exponents]
    if not exps:
        raise ValueError("need at least one exponent")
    if any(a < 2 for a in exps):
        raise ValueError("Brieskorn exponents must be >= 2")
    return EnhancedMilnor(prod(a - 1 for a in exps), 0, k)


def _f1(p: int, offset: int = 0, n: int | None = None) -> MixedPolynomial:
    za, zb = f"z{offset + 1}", f"z{offset + 2}"
    a1, a2, a3 = ALPHAS
    lead = f"{za}^{p}" if p > 1 else za
    src = f"({lead} + {a1}*{zb})*({lead} + {a2}*{zb})*conj({lead} + {a3}*{zb})"
    return parse(src, n or offset + 2)


def _f2(offset: int = 0, n: int | None = None) -> MixedPolynomial:
    return parse(f"z{offset + 1}^2 + zb{offset + 2}^2", n or offset + 2)


def _brieskorn(exps: Sequence[int], offset: int, n: int) -> MixedPolynomial:
    return parse(" + ".join(f"z{offset + i + 1}^{a}" for i, a in enumerate(exps)), n)


def base_cases(max_p: int = 3) -> list[dict]:
    """Tabulated base entries with defining polynomials.

    The values are taken as known results, not computed here.
    """
    rows = []
    for p in range(1, max_p + 1):
        rows.append({"name": f"f1(p={p})", "polynomial": _f1(p), "invariant": EnhancedMilnor(2 * p, 1, 1)})
    rows.append({"name": "f2", "polynomial": _f2(), "invariant": EnhancedMilnor(1, 1, 1)})
    rows.append({"name": "f3=w1^2", "polynomial": parse("z1^2", 1), "invariant": brieskorn_enhanced([2], k=0)})
    return rows


@dataclass(frozen=True)
class JoinWitness:
    polynomial: MixedPolynomial
    variable_count: int
    invariant: EnhancedMilnor
    recipe: str  # "even" | "odd"
    parameters: dict = field(default_factory=dict)

    def recompute(self) -> EnhancedMilnor:
        """Recompute the invariant from the recipe's factor data."""
        exps = self.parameters["brieskorn"]
        k = self.variable_count - 1
        bk = brieskorn_enhanced(exps, k=len(exps) - 1)
        if self.recipe == "even":
            first = EnhancedMilnor(2 * self.parameters["p"], 1, 1)
        else:
            first = EnhancedMilnor(1, 1, 1)
        return join_enhanced(first, bk, k)

    def to_json(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "variable_count": self.variable_count,
            "recipe": self.recipe,
            "parameters": self.parameters,
            "invariant": self.invariant.to_json(),
        }


def witness(ell: int, k: int) -> JoinWitness:
    """A ``(k+1)``-variable join-type polynomial with ``(mu, lambda) = (ell, 1)``.

    Even ``ell``: ``f1`` with ``p = ell/2`` joined with ``k - 1`` squares.
    Odd ``ell``: ``z1^2 + zb2^2`` joined with ``w1^(ell+1) + w2^2 + ...``.
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    if k < 2:
        raise ValueError("k must be at least 2")
    n = k + 1
    tail_len = k - 1
    if ell % 2 == 0:
        p = ell // 2
        exps = [2] * tail_len
        first, first_inv, recipe, params = _f1(p, 0, n), EnhancedMilnor(2 * p, 1, 1), "even", {"p": p}
    else:
        exps = [ell + 1] + [2] * (tail_len - 1)
        first, first_inv, recipe, params = _f2(0, n), EnhancedMilnor(1, 1, 1), "odd", {}
    poly = first + _brieskorn(exps, 2, n)
    inv = join_enhanced(first_inv, brieskorn_enhanced(exps, k=tail_len - 1), k)
    params["brieskorn"] = exps
    w = JoinWitness(poly, n, inv, recipe, params)
    assert w.recompute() == inv
    return w
