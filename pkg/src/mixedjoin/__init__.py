"""Exact invariants of join-type mixed polynomial singularities.

Submodules: :mod:`.polyparse` (mixed polynomials), :mod:`.newton` (Newton
boundaries and non-degeneracy), :mod:`.winding` (mapping degrees),
:mod:`.seifert` (Seifert forms), :mod:`.zeta` (zeta-function divisors),
:mod:`.enhanced` (enhanced Milnor numbers) and :mod:`.cli`.
"""

__version__ = "0.1.0"
