"""Circle product, super-bracket and Chevalley-Eilenberg cohomology.

The circle product composes alternating cochains over shuffles with the
shuffle sign; the displayed argument count in the source material is
inconsistent, so the standard degree p+q-1 composition over (p, q-1)
shuffles is used.  Signs are fixed once so that the coboundary satisfies
delta(delta(f)) = 0 (checked by tests); all reported cohomology
dimensions are independent of that global choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebra import AlgebraStructure, Cochain, _perm_sign_and_sorted, mu_cochain
from .errors import DimensionMismatch, UnsupportedDegree

ZERO = Fraction(0)


def circle(outer: Cochain, inner: Cochain) -> Cochain:
    """Shuffle composition outer(inner(...), ...) of degree p+q-1.

    The inner cochain must be adjoint-valued; the result inherits the
    outer target.
    """
    if inner.target != "adjoint":
        raise ValueError("inner cochain of a circle product must be adjoint")
    if outer.dim != inner.dim:
        raise DimensionMismatch("cochain dims differ")
    dim = outer.dim
    p, q = inner.degree, outer.degree
    deg = p + q - 1
    if deg > dim:
        return Cochain.zero(deg, dim, outer.target)
    adjoint = outer.target == "adjoint"
    vals = {}
    positions = list(range(deg))
    for key in combinations(range(dim), deg):
        acc = [ZERO] * dim if adjoint else ZERO
        for s_pos in combinations(positions, p):
            rest_pos = [i for i in positions if i not in s_pos]
            sign, _ = _perm_sign_and_sorted(list(s_pos) + rest_pos)
            inner_val = inner.value(tuple(key[i] for i in s_pos))
            rest = tuple(key[i] for i in rest_pos)
            for k, c in enumerate(inner_val):
                if not c:
                    continue
                outer_val = outer.eval_indices((k,) + rest)
                if adjoint:
                    for m, o in enumerate(outer_val):
                        if o:
                            acc[m] += sign * c * o
                else:
                    acc += sign * c * outer_val
        if adjoint:
            if any(acc):
                vals[key] = tuple(acc)
        elif acc:
            vals[key] = acc
    return Cochain(deg, dim, outer.target, vals)


def super_bracket(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber bracket f o g + g o f on degree-2 adjoint cochains."""
    if f.degree != 2 or g.degree != 2:
        raise UnsupportedDegree("super_bracket is defined here for degree 2")
    if f.target != "adjoint" or g.target != "adjoint":
        raise ValueError("super_bracket needs adjoint-valued cochains")
    return circle(f, g) + circle(g, f)


def coboundary(g: AlgebraStructure, f: Cochain) -> Cochain:
    """Chevalley-Eilenberg coboundary in degrees 1 and 2.

    Adjoint coefficients go through the super-bracket with the structure
    cochain; trivial coefficients use the cyclic pullback f o mu.
    """
    if g.kind != "lie":
        raise ValueError("coboundary needs a lie-kind algebra")
    if f.dim != g.dim:
        raise DimensionMismatch("cochain dim does not match the algebra")
    if f.degree not in (1, 2):
        raise UnsupportedDegree(f"degree {f.degree} coboundary not implemented")
    mu = mu_cochain(g)
    if f.target == "adjoint":
        if f.degree == 2:
            return circle(mu, f) + circle(f, mu)
        return circle(mu, f) - circle(f, mu)
    return circle(f, mu)


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    coeff: str  # "adjoint" | "trivial"
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int


def _space_dim(n: int, degree: int, coeff: str) -> int:
    from math import comb

    base = comb(n, degree)
    return base * n if coeff == "adjoint" else base


def coboundary_matrix(g: AlgebraStructure, degree: int, coeff: str):
    """Matrix of delta: C^degree -> C^(degree+1) over the flat bases.

    Rows index codomain coordinates, columns domain coordinates.  Degree 0
    is included so degree-1 reports can subtract inner coboundaries.
    """
    n = g.dim
    if degree == 0:
        if coeff == "trivial":
            return [[] for _ in range(_space_dim(n, 1, coeff))], 1
        cols = []
        for i in range(n):
            img = Cochain.build(
                1,
                n,
                "adjoint",
                {(j,): g.product_basis(i, j) for j in range(n)},
            )
            cols.append(img.flatten())
        rows = [
            [cols[c][r] for c in range(n)] for r in range(_space_dim(n, 1, coeff))
        ]
        return rows, n
    if degree not in (1, 2):
        raise UnsupportedDegree(f"degree {degree} not implemented")
    dom = _space_dim(n, degree, coeff)
    codom = _space_dim(n, degree + 1, coeff)
    cols = []
    for c in range(dom):
        flat = [ZERO] * dom
        flat[c] = Fraction(1)
        basis_cochain = Cochain.from_flat(degree, n, coeff, flat)
        cols.append(coboundary(g, basis_cochain).flatten())
    rows = [[cols[c][r] for c in range(dom)] for r in range(codom)]
    return rows, dom


def cohomology_dim(g: AlgebraStructure, degree: int, coeff: str) -> CohomologyReport:
    """Exact dimensions of Z, B and H in the requested degree."""
    if coeff not in ("adjoint", "trivial"):
        raise ValueError(f"unknown coefficient type {coeff!r}")
    if degree not in (1, 2):
        raise UnsupportedDegree(f"degree {degree} not implemented")
    out_matrix, dom = coboundary_matrix(g, degree, coeff)
    rank_out = linalg.rank(out_matrix) if out_matrix and out_matrix[0] else 0
    dim_cocycles = dom - rank_out
    in_matrix, _ = coboundary_matrix(g, degree - 1, coeff)
    rank_in = linalg.rank(in_matrix) if in_matrix and in_matrix[0] else 0
    return CohomologyReport(
        degree=degree,
        coeff=coeff,
        dim_cocycles=dim_cocycles,
        dim_coboundaries=rank_in,
        dim_H=dim_cocycles - rank_in,
    )


def is_coboundary(g: AlgebraStructure, f: Cochain) -> bool:
    """Exact membership of f in the image of the previous coboundary."""
    matrix, dom = coboundary_matrix(g, f.degree - 1, f.target)
    target = list(f.flatten())
    columns = [
        tuple(matrix[r][c] for r in range(len(matrix))) for c in range(dom)
    ]
    if not columns:
        return all(t == 0 for t in target)
    return linalg.in_span(columns, target)
