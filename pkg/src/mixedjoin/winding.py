"""Mapping degree of ``f/|f|`` on a small circle, for one-variable mixed polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polyparse import MixedPolynomial

__all__ = ["DegreeResult", "NearZeroOnCircle", "InsufficientSamples", "mapping_degree", "degree_at"]

DEFAULT_EPS = 1e-2
MAX_HALVINGS = 6
SAMPLE_CAP = 2**20
ZERO_THRESHOLD = 1e-12
MAX_JUMP = math.pi / 2


class NearZeroOnCircle(ValueError):
    """``|f|`` fell below the zero threshold at a sample on the circle."""

    def __init__(self, eps: float, theta: float):
        super().__init__(f"f nearly vanishes on |z| = {eps:g} (theta = {theta:.6g}); shrink eps")
        self.eps = eps
        self.theta = theta


class InsufficientSamples(RuntimeError):
    pass


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    radius_used: float
    samples: int
    stable: bool

    def to_json(self) -> dict:
        return {"degree": self.degree, "stable": self.stable, "eps": self.radius_used, "samples": self.samples}


class _CircleMap:
    """``f(eps e^{i theta}) / eps^d0`` for the lowest total degree ``d0``.

    Dividing by a positive real leaves the argument alone and keeps the values
    away from underflow for high-degree terms at small radius.
    """

    def __init__(self, f: MixedPolynomial, eps: float):
        degs, winds, coefs = [], [], []
        for (nu, mu), c in f.terms.items():
            degs.append(nu[0] + mu[0])
            winds.append(nu[0] - mu[0])
            coefs.append(complex(c))
        d0 = min(degs)
        self.mods = np.array([abs(c) * eps ** (d - d0) for c, d in zip(coefs, degs)])
        self.coefs = np.array(coefs) * np.array([eps ** (d - d0) for d in degs])
        self.winds = np.array(winds, dtype=float)
        self.threshold = ZERO_THRESHOLD * float(self.mods.sum())

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        phase = np.exp(1j * np.outer(theta, self.winds))
        return phase @ self.coefs


def degree_at(f: MixedPolynomial, eps: float, samples: int = 64) -> tuple[int, int]:
    """Degree at one radius; returns ``(degree, samples_used)``.

    The circle is sampled uniformly, then every interval whose argument
    increment reaches ``pi/2`` is bisected until none does.
    """
    if f.n != 1:
        raise ValueError(f"mapping degree needs a one-variable polynomial, got n = {f.n}")
    if f.is_zero():
        raise ValueError("zero polynomial has no mapping degree")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if samples < 4:
        raise ValueError("need at least 4 initial samples")
    g = _CircleMap(f, eps)
    theta = np.linspace(0.0, 2 * math.pi, samples + 1)
    vals = g(theta)
    while True:
        small = np.abs(vals) < g.threshold
        if small.any():
            raise NearZeroOnCircle(eps, float(theta[np.argmax(small)]))
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(steps) >= MAX_JUMP
        if not bad.any():
            break
        if len(theta) + int(bad.sum()) > SAMPLE_CAP:
            raise InsufficientSamples(f"argument tracking needs more than {SAMPLE_CAP} samples")
        mids = 0.5 * (theta[:-1][bad] + theta[1:][bad])
        theta = np.concatenate([theta, mids])
        vals = np.concatenate([vals, g(mids)])
        order = np.argsort(theta, kind="stable")
        theta, vals = theta[order], vals[order]
    turns = steps.sum() / (2 * math.pi)
    return int(round(turns)), len(theta) - 1


def mapping_degree(
    f: MixedPolynomial,
    eps: float = DEFAULT_EPS,
    samples: int = 64,
    max_halvings: int = MAX_HALVINGS,
) -> DegreeResult:
    """Mapping degree of ``f/|f|`` on ``|z| = eps``.

    On :class:`NearZeroOnCircle` the radius is halved, up to ``max_halvings``
    times.  ``stable`` reports agreement with the degree at half the radius.
    """
    r = eps
    for attempt in range(max_halvings + 1):
        try:
            d, used = degree_at(f, r, samples)
            break
        except NearZeroOnCircle:
            if attempt == max_halvings:
                raise
            r /= 2
    try:
        d_half, _ = degree_at(f, r / 2, samples)
        stable = d_half == d
    except (NearZeroOnCircle, InsufficientSamples):
        stable = False
    return DegreeResult(d, r, used, stable)
