"""Exact calculus of superforms on polyhedra and tropical cycles.

Everything is computed over the rationals: polynomial-coefficient
(p, q)-superforms with d'/d'' operators, lattice-normalized integration
over integral polytopes, Stokes/Green identities, balancing of weighted
complexes, Dirac supercurrents, push-forward with lattice multiplicities,
and corner loci of tropical polynomials.
"""

__version__ = "0.1.0"
