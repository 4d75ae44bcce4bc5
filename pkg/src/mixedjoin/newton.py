"""Newton polyhedra, compact faces, and non-degeneracy checks for mixed polynomials.

The Newton polyhedron of ``P = sum c z^nu zb^mu`` is the convex hull of
``(nu + mu) + R^n_+`` over the terms.  Facets are enumerated exactly: every
facet is spanned by generator points and coordinate directions, so each
choice of ``n - 1`` such vectors gives a candidate normal (an integer
generalized cross product) which is kept if it supports the polyhedron.
Faces are intersections of facets; the compact ones are those with no
coordinate direction left in their recession cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Sequence

import numpy as np

from .intpoly import bareiss_det
from .polyparse import MixedPolynomial

__all__ = [
    "NewtonPolytope",
    "Face",
    "Budget",
    "NondegeneracyReport",
    "newton_polytope",
    "polytope_from_points",
    "compact_faces",
    "face_function",
    "is_convenient",
    "check_strong_nondegeneracy",
    "criticality_residual",
]

Point = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(math.gcd, v, 0)
    return tuple(x // g for x in v) if g else tuple(v)


def _cross(rows: list[Sequence[int]], n: int) -> tuple[int, ...]:
    """Integer normal to ``n - 1`` vectors in ``Z^n`` (zero if they are dependent)."""
    out = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in rows]
        out.append((-1) ** i * bareiss_det(minor))
    return tuple(out)


def affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class Face:
    normal: tuple[int, ...]
    points: tuple[Point, ...]
    dim: int
    value: int

    @property
    def weight(self) -> tuple[int, ...]:
        return self.normal

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "points": [list(p) for p in self.points], "dim": self.dim}


@dataclass(frozen=True)
class _Facet:
    normal: tuple[int, ...]
    points: frozenset
    directions: frozenset


@dataclass(frozen=True)
class NewtonPolytope:
    n: int
    generators: tuple[Point, ...]
    vertices: tuple[Point, ...]
    facets: tuple[_Facet, ...] = field(repr=False, compare=False)
    faces: tuple[Face, ...] = field(repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [list(g) for g in self.generators],
            "vertices": [list(v) for v in self.vertices],
        }


def _minimal(points: Sequence[Point]) -> list[Point]:
    """Points not dominated coordinatewise by another point."""
    pts = sorted(set(points))
    return [p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]


def _facets(n: int, pool: list[Point]) -> list[_Facet]:
    units = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    found: dict[tuple[int, ...], _Facet] = {}
    for base in pool:
        vecs = [tuple(a - b for a, b in zip(p, base)) for p in pool if p != base] + units
        for chosen in combinations(vecs, n - 1):
            a = _cross(list(chosen), n)
            if not any(a):
                continue
            if all(x <= 0 for x in a):
                a = tuple(-x for x in a)
            if any(x < 0 for x in a):
                continue
            a = _primitive(a)
            if a in found:
                continue
            level = _dot(a, base)
            if any(_dot(a, p) < level for p in pool):
                continue
            tight = frozenset(p for p in pool if _dot(a, p) == level)
            dirs = frozenset(j for j in range(n) if a[j] == 0)
            found[a] = _Facet(a, tight, dirs)
    return sorted(found.values(), key=lambda f: f.normal)


def polytope_from_points(n: int, points: Sequence[Sequence[int]]) -> NewtonPolytope:
    gens = tuple(sorted({tuple(int(x) for x in p) for p in points}))
    if not gens:
        raise ValueError("Newton polyhedron of the zero polynomial is undefined")
    if any(len(g) != n or min(g) < 0 for g in gens):
        raise ValueError("generators must be nonnegative vectors of length n")
    pool = _minimal(gens)
    facets = _facets(n, pool)

    # close the facet set under intersection
    cells = {(f.points, f.directions) for f in facets}
    frontier = set(cells)
    while frontier:
        new = set()
        for a in frontier:
            for b in cells:
                pts = a[0] & b[0]
                if pts:
                    c = (pts, a[1] & b[1])
                    if c not in cells:
                        new.add(c)
        cells |= new
        frontier = new

    faces = []
    for pts, dirs in cells:
        if dirs:
            continue
        containing = [f for f in facets if pts <= f.points]
        w = _primitive([sum(f.normal[j] for f in containing) for j in range(n)])
        value = min(_dot(w, g) for g in gens)
        on = tuple(sorted(g for g in gens if _dot(w, g) == value))
        faces.append(Face(w, on, affine_dim(on), value))
    faces.sort(key=lambda f: (-f.dim, f.points))
    vertices = tuple(sorted(f.points[0] for f in faces if f.dim == 0))
    return NewtonPolytope(n, gens, vertices, tuple(facets), tuple(faces))


def newton_polytope(p: MixedPolynomial) -> NewtonPolytope:
    if p.is_zero():
        raise ValueError("Newton polyhedron of the zero polynomial is undefined")
    return polytope_from_points(p.n, p.radial_exponents())


def compact_faces(np_: NewtonPolytope) -> list[Face]:
    """Faces with strictly positive supporting weight, largest dimension first."""
    return list(np_.faces)


def face_function(p: MixedPolynomial, f: Face) -> MixedPolynomial:
    """Terms of ``p`` whose radial exponent lies on the face ``f``."""
    radial = p.radial_exponents()
    if not radial:
        raise ValueError("zero polynomial has no faces")
    value = min(_dot(f.normal, g) for g in radial)
    on = tuple(sorted(g for g in radial if _dot(f.normal, g) == value))
    if value != f.value or on != tuple(f.points):
        raise ValueError("face does not belong to the Newton polyhedron of this polynomial")
    pts = set(f.points)
    return p.restrict(lambda nu, mu: tuple(a + b for a, b in zip(nu, mu)) in pts)


def is_convenient(p: MixedPolynomial) -> bool:
    """True iff ``p`` restricted to every coordinate axis is not identically zero."""
    if p.is_zero():
        return False
    hit = [False] * p.n
    for nu, mu in p.terms:
        support = [j for j in range(p.n) if nu[j] or mu[j]]
        if not support:
            return True  # nonzero constant term survives on every axis
        if len(support) == 1:
            hit[support[0]] = True
    return all(hit)


# ---------------------------------------------------------------------------
# criticality on the torus C*^n


@dataclass(frozen=True)
class Budget:
    samples: int = 256
    iterations: int = 50
    radius_min: float = 1e-2
    radius_max: float = 1e1
    tolerance: float = 1e-8
    surjectivity_targets: int = 8

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("budget needs at least one sample")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")
        if not 0 < self.radius_min <= self.radius_max:
            raise ValueError("need 0 < radius_min <= radius_max")


# log-radius box for the descent; keeps iterates on a compact part of the torus
_LOG_R_MIN = math.log(1e-4)
_LOG_R_MAX = math.log(1e3)


class _TorusMap:
    """``P`` on ``C*^n`` in coordinates ``x = (log|z_j|, arg z_j)``.

    In these coordinates the differential of a term ``c z^nu zb^mu`` is the
    term times ``(nu+mu).dlog r + i (nu-mu).dtheta``, so the real 2 x 2n
    Jacobian is assembled from the term values alone.
    """

    def __init__(self, p: MixedPolynomial):
        keys = list(p.terms)
        self.n = p.n
        self.coef = np.array([complex(p.terms[k]) for k in keys])
        nu = np.array([k[0] for k in keys], dtype=float).reshape(len(keys), p.n)
        mu = np.array([k[1] for k in keys], dtype=float).reshape(len(keys), p.n)
        self.radial = nu + mu
        self.winding = nu - mu

    def terms(self, x: np.ndarray) -> np.ndarray:
        """Term values divided by a positive per-point scale (argument preserved)."""
        n = self.n
        e = x[:, :n] @ self.radial.T
        e -= e.max(axis=1, keepdims=True)
        return self.coef * np.exp(e + 1j * (x[:, n:] @ self.winding.T))

    def residual(self, x: np.ndarray) -> np.ndarray:
        """Smallest singular value of the real Jacobian over ``sum |term|``."""
        t = self.terms(x)
        g = np.concatenate([t @ self.radial, 1j * (t @ self.winding)], axis=1)
        a = (g.real**2).sum(axis=1)
        c = (g.imag**2).sum(axis=1)
        b = (g.real * g.imag).sum(axis=1)
        smin2 = 0.5 * (a + c) - np.sqrt(0.25 * (a - c) ** 2 + b**2)
        scale = np.abs(t).sum(axis=1)
        return np.sqrt(np.maximum(smin2, 0.0)) / scale

    def value(self, x: np.ndarray) -> np.ndarray:
        n = self.n
        e = x[:, :n] @ self.radial.T
        return (self.coef * np.exp(e + 1j * (x[:, n:] @ self.winding.T))).sum(axis=1)


def _to_points(x: np.ndarray, n: int) -> np.ndarray:
    return np.exp(x[:, :n] + 1j * x[:, n:])


def _from_points(w: np.ndarray) -> np.ndarray:
    return np.concatenate([np.log(np.abs(w)), np.angle(w)], axis=1)


def criticality_residual(p: MixedPolynomial, w: Sequence[complex]) -> float:
    """Scale-free criticality residual of ``p`` at a point of ``C*^n``.

    Zero exactly when the real Jacobian of ``(Re p, Im p)`` has rank < 2.
    Unchanged by multiplying ``p`` by a nonzero constant.
    """
    w = np.asarray([complex(v) for v in w])
    if w.shape != (p.n,):
        raise ValueError("dimension mismatch")
    if np.any(w == 0):
        raise ValueError("point must lie in C*^n")
    if p.is_zero():
        return 0.0
    return float(_TorusMap(p).residual(_from_points(w[None, :]))[0])


def _descend(objective, x: np.ndarray, iterations: int, box: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Batched descent on ``log(objective)`` with normalised finite-difference
    gradients and per-point adaptive step lengths."""
    tiny = 1e-300
    m, d = x.shape
    n = d // 2
    f = np.log(objective(x) + tiny)
    step = np.full(m, 0.1)
    h = 1e-7
    eye = np.eye(d)
    for _ in range(iterations):
        probes = (x[:, None, :] + h * eye[None, :, :]).reshape(-1, d)
        fp = np.log(objective(probes) + tiny).reshape(m, d)
        grad = (fp - f[:, None]) / h
        norm = np.linalg.norm(grad, axis=1)
        norm[norm == 0] = 1.0
        trial = x - (step / norm)[:, None] * grad
        if box:
            trial[:, :n] = np.clip(trial[:, :n], _LOG_R_MIN, _LOG_R_MAX)
        ft = np.log(objective(trial) + tiny)
        better = ft < f
        x = np.where(better[:, None], trial, x)
        f = np.where(better, ft, f)
        step = np.where(better, step * 1.5, step * 0.5)
    return x, np.exp(f)


def _random_starts(rng: np.random.Generator, count: int, n: int, budget: Budget) -> np.ndarray:
    logr = rng.uniform(math.log(budget.radius_min), math.log(budget.radius_max), size=(count, n))
    theta = rng.uniform(-math.pi, math.pi, size=(count, n))
    return np.concatenate([logr, theta], axis=1)


@dataclass(frozen=True)
class NondegeneracyReport:
    verdict: str  # "DegenerateWitness" | "NoWitnessFound" | "ExactlyNondegenerate"
    face: Face
    method: str
    witness: tuple[complex, ...] | None = None
    residual: float | None = None
    samples_used: int = 0
    iterations_used: int = 0
    surjectivity: dict | None = None

    @property
    def probabilistic(self) -> bool:
        return self.verdict == "NoWitnessFound"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "face": self.face.to_json(),
            "method": self.method,
            "budget_used": {"samples": self.samples_used, "iterations": self.iterations_used},
        }
        if self.verdict == "NoWitnessFound":
            out["note"] = "probabilistic: no critical point found, not a proof"
        if self.witness is not None:
            out["witness"] = [[z.real, z.imag] for z in self.witness]
            out["residual"] = self.residual
        if self.surjectivity is not None:
            out["surjectivity"] = self.surjectivity
        return out


def _monomial_rule(face_fn: MixedPolynomial, face: Face, tol: float) -> NondegeneracyReport | None:
    """Exact verdict for a single mixed monomial ``c z^nu zb^mu``.

    Its differential in log-polar coordinates is the value times
    ``(nu+mu).dlog r + i (nu-mu).dtheta``; the real rank is 2 unless
    ``nu - mu = 0`` (``nu + mu`` is nonzero on a nonconstant term).  So the
    monomial is critical everywhere on ``C*^n`` when ``nu == mu`` and nowhere
    otherwise.
    """
    if len(face_fn) != 1:
        return None
    ((nu, mu),) = face_fn.terms
    if nu != mu:
        return NondegeneracyReport("ExactlyNondegenerate", face, "exact-monomial")
    w = (1 + 0j,) * face_fn.n
    r = criticality_residual(face_fn, w)
    assert r < tol
    return NondegeneracyReport("DegenerateWitness", face, "exact-monomial", witness=w, residual=r)


def _surjectivity(tm: _TorusMap, rng: np.random.Generator, budget: Budget) -> dict:
    """Try to solve ``P(w) = c`` for targets on two circles; advisory only."""
    count = budget.surjectivity_targets
    half = max(count // 2, 1)
    targets = [rho * np.exp(2j * math.pi * k / half) for rho in (0.5, 2.0) for k in range(half)][:count]
    starts_per = 16
    reached = 0
    for c in targets:
        x0 = _random_starts(rng, starts_per, tm.n, budget)
        _, f = _descend(lambda x: np.abs(tm.value(x) - c) / abs(c), x0, budget.iterations, box=False)
        if np.min(f) < 1e-6:
            reached += 1
    return {"targets": len(targets), "reached": reached, "advisory": True}


def check_strong_nondegeneracy(
    p: MixedPolynomial,
    budget: Budget | None = None,
    seed: int = 0,
    surjectivity: bool = True,
) -> list[NondegeneracyReport]:
    """One report per compact face, in :func:`compact_faces` order.

    Single-monomial faces are decided exactly.  Every other face function is
    searched for critical points on ``C*^n``: random starts with log-uniform
    radii, then descent on the criticality residual.  A residual below
    ``budget.tolerance`` yields ``DegenerateWitness``; otherwise the verdict is
    ``NoWitnessFound``, which is evidence and not a proof.
    """
    budget = budget or Budget()
    if p.is_zero():
        raise ValueError("zero polynomial")
    faces = compact_faces(newton_polytope(p))
    seqs = np.random.SeedSequence(seed).spawn(len(faces))
    reports = []
    for face, ss in zip(faces, seqs):
        rng = np.random.default_rng(ss)
        ff = face_function(p, face)
        exact = _monomial_rule(ff, face, budget.tolerance)
        if exact is not None:
            reports.append(exact)
            continue
        tm = _TorusMap(ff)
        x0 = _random_starts(rng, budget.samples, p.n, budget)
        x, res = _descend(tm.residual, x0, budget.iterations)
        best = int(np.argmin(res))
        surj = _surjectivity(tm, rng, budget) if surjectivity and face.dim >= 1 else None
        common = dict(samples_used=budget.samples, iterations_used=budget.iterations, surjectivity=surj)
        if res[best] < budget.tolerance:
            w = tuple(complex(z) for z in _to_points(x[best : best + 1], p.n)[0])
            r = criticality_residual(ff, w)
            reports.append(NondegeneracyReport("DegenerateWitness", face, "numeric", witness=w, residual=r, **common))
        else:
            reports.append(NondegeneracyReport("NoWitnessFound", face, "numeric", residual=float(res[best]), **common))
    return reports
