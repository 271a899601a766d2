"""Exact-arithmetic workbench for valued deformations of algebras.

Truncated power series over Q model the valuation ring K[[t]]; on top of
that the package decomposes vectors over the maximal ideal into finite
flag form, verifies deformation equations order by order, computes
Chevalley-Eilenberg cohomology by exact row reduction, analyses roots of
solvable algebras, and checks G-associative and Poisson identities.
"""

__version__ = "0.1.0"
