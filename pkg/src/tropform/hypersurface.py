"""Tropical hypersurfaces of min-plus polynomials.

The corner locus of min_m (<m, x> + c_m) is the codimension-1 complex where
the minimum is attained at least twice.  Each facet is dual to an edge of
the regular subdivision of the Newton polytope induced by lifting each
exponent by its coefficient; the facet weight is the lattice length of that
edge.  The resulting weighted complex is balanced, which makes this a
generator of nontrivial tropical cycles for the rest of the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .cycle import WeightedComplex, zero_cycle
from .lattice import dot, is_zero_vec, vec_sub
from .polyhedra import from_halfspaces, vec_neg


@dataclass(frozen=True)
class TropicalPolynomial:
    """Finite collection of terms (exponent in Z^r, coefficient in Q) with a
    min or max convention."""

    ambient_dim: int
    terms: tuple  # tuple of (exponent tuple, Fraction)
    convention: str = "min"

    def __post_init__(self):
        if self.convention not in ("min", "max"):
            raise ValueError("convention must be 'min' or 'max'")
        if len(self.terms) < 2:
            raise ValueError("need at least two terms")
        seen = set()
        for m, _ in self.terms:
            if len(m) != self.ambient_dim:
                raise ValueError("exponent length does not match ambient dimension")
            if m in seen:
                raise ValueError("duplicate exponent %r" % (m,))
            seen.add(m)


def tropical_polynomial(terms, ambient_dim, convention="min"):
    return TropicalPolynomial(
        ambient_dim,
        tuple((tuple(int(x) for x in m), Fraction(c)) for m, c in terms),
        convention,
    )


def _lattice_length(a, b):
    g = 0
    for x in vec_sub(b, a):
        g = gcd(g, x)
    return abs(g)


def corner_locus(tp):
    """Weighted complex where the min (or max) is attained at least twice."""
    r = tp.ambient_dim
    if tp.convention == "max":
        terms = [(tuple(-x for x in m), -c) for m, c in tp.terms]
    else:
        terms = [(m, Fraction(c)) for m, c in tp.terms]
    facets = {}
    for (m1, c1), (m2, c2) in combinations(terms, 2):
        u = vec_sub(m1, m2)
        if is_zero_vec(u):
            continue
        hs = [(tuple(u), c2 - c1), (vec_neg(u), c1 - c2)]
        for m, c in terms:
            d = vec_sub(m1, m)
            if not is_zero_vec(d):
                hs.append((tuple(d), c - c1))
        cell = from_halfspaces(hs, r)
        if not cell.is_empty and cell.dim == r - 1:
            facets.setdefault(cell.key(), cell)
    if not facets:
        return zero_cycle()
    weighted = []
    for key in sorted(facets):
        cell = facets[key]
        x = cell.rel_interior_point()
        values = [dot(m, x) + c for m, c in terms]
        fmin = min(values)
        active = [m for (m, c), v in zip(terms, values) if v == fmin]
        lo = min(active)
        hi = max(active)
        weighted.append((cell, _lattice_length(lo, hi)))
    return WeightedComplex(weighted)
