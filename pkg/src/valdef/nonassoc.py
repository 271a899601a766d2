"""G-associative identities, dual identities, tensor closure, Poisson checks.

For a subgroup G of the permutations of three letters, an algebra is
G-associative when the signature-weighted sum of permuted associators
vanishes; G = {Id} is plain associativity, the transposition subgroups
give pre-Lie/Vinberg type identities, and the full group gives
Lie-admissibility.  The signature weighting is the convention that
reproduces those classical identities; an unsigned variant is kept as a
switch for comparison.

The dual identity paired with each G is the one making the triple
product of an associative algebra invariant under G, which is exactly
what the tensor closure argument factors through.  For the two-element
subgroups this matches the usual pre-Lie/Vinberg duals; "3-commutative"
(the full-group dual) is implemented as invariance of triple products
under all argument permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product as iter_product

from .algebra import AlgebraStructure, associator
from .errors import InvalidPoisson

ZERO = Fraction(0)


class SubgroupTag(str, Enum):
    ID = "Id"
    T12 = "T12"
    T23 = "T23"
    T13 = "T13"
    A3 = "A3"
    S3 = "S3"


def _pattern_sign(pattern) -> int:
    sign = 1
    p = list(pattern)
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] > p[j]:
                sign = -sign
    return sign


# argument patterns (sigma^-1 applied to the slots) for each subgroup
PATTERNS = {
    SubgroupTag.ID: ((0, 1, 2),),
    SubgroupTag.T12: ((0, 1, 2), (1, 0, 2)),
    SubgroupTag.T23: ((0, 1, 2), (0, 2, 1)),
    SubgroupTag.T13: ((0, 1, 2), (2, 1, 0)),
    SubgroupTag.A3: ((0, 1, 2), (2, 0, 1), (1, 2, 0)),
    SubgroupTag.S3: (
        (0, 1, 2),
        (1, 0, 2),
        (0, 2, 1),
        (2, 1, 0),
        (2, 0, 1),
        (1, 2, 0),
    ),
}

DUAL_IDENTITY = {
    SubgroupTag.ID: "none",
    SubgroupTag.T12: "abc = bac",
    SubgroupTag.T23: "abc = acb",
    SubgroupTag.T13: "abc = cba",
    SubgroupTag.A3: "abc = bca = cab",
    SubgroupTag.S3: "abc invariant under all argument permutations",
}


def _associator_table(a: AlgebraStructure):
    basis = [a.basis_vector(i) for i in range(a.dim)]
    table = {}
    for t in iter_product(range(a.dim), repeat=3):
        table[t] = associator(a, basis[t[0]], basis[t[1]], basis[t[2]])
    return table


def g_associative_check(a: AlgebraStructure, tag: SubgroupTag, signed: bool = True):
    """(True, None) or (False, first failing basis triple).

    Checks sum over sigma in G of sign(sigma) * associator on permuted
    arguments, on every basis triple; signed=False drops the signature
    weights (the plain-sum reading, kept for comparison).
    """
    tag = SubgroupTag(tag)
    assoc = _associator_table(a)
    for t in iter_product(range(a.dim), repeat=3):
        acc = [ZERO] * a.dim
        for pattern in PATTERNS[tag]:
            vec = assoc[(t[pattern[0]], t[pattern[1]], t[pattern[2]])]
            sign = _pattern_sign(pattern) if signed else 1
            for k in range(a.dim):
                acc[k] += sign * vec[k]
        if any(acc):
            return False, t
    return True, None


def _triple_table(b: AlgebraStructure):
    basis = [b.basis_vector(i) for i in range(b.dim)]
    table = {}
    for t in iter_product(range(b.dim), repeat=3):
        table[t] = b.bilinear(b.bilinear(basis[t[0]], basis[t[1]]), basis[t[2]])
    return table


def dual_identity_check(b: AlgebraStructure, tag: SubgroupTag):
    """Associativity plus G-invariance of triple products.

    Returns (True, None) or (False, first failing basis triple): the
    witness is an associator failure when associativity breaks, else a
    triple where some permuted product differs.
    """
    tag = SubgroupTag(tag)
    assoc = _associator_table(b)
    for t in iter_product(range(b.dim), repeat=3):
        if any(assoc[t]):
            return False, t
    triples = _triple_table(b)
    for t in iter_product(range(b.dim), repeat=3):
        want = triples[t]
        for pattern in PATTERNS[tag][1:]:
            if triples[(t[pattern[0]], t[pattern[1]], t[pattern[2]])] != want:
                return False, t
    return True, None


def tensor_product(a: AlgebraStructure, b: AlgebraStructure) -> AlgebraStructure:
    """Componentwise product on the Kronecker basis e_i (x) f_j."""
    dim = a.dim * b.dim
    table = {}
    for i1 in range(a.dim):
        for i2 in range(a.dim):
            left = a._pairs(i1, i2)
            if not left:
                continue
            for j1 in range(b.dim):
                for j2 in range(b.dim):
                    right = b._pairs(j1, j2)
                    if not right:
                        continue
                    out = {}
                    for p, cp in left:
                        for q, cq in right:
                            key = p * b.dim + q
                            out[key] = out.get(key, ZERO) + cp * cq
                    entry = {k: c for k, c in out.items() if c}
                    if entry:
                        table[(i1 * b.dim + j1, i2 * b.dim + j2)] = entry
    return AlgebraStructure.assoc(dim, table)


# -- Poisson structures -----------------------------------------------


@dataclass(frozen=True)
class PoissonStructure:
    """Commutative associative product plus a bracket, both as full tables."""

    dim: int
    product: AlgebraStructure
    bracket: AlgebraStructure

    @classmethod
    def build(cls, dim, product_table, bracket_table) -> PoissonStructure:
        return cls(
            dim=dim,
            product=AlgebraStructure.assoc(dim, product_table),
            bracket=AlgebraStructure.assoc(dim, bracket_table),
        )


def poisson_verify(p: PoissonStructure):
    """(True, None) or (False, (axiom, witness)) over all basis tuples."""
    n = p.dim
    basis = [p.product.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            if p.product.bilinear(basis[i], basis[j]) != p.product.bilinear(
                basis[j], basis[i]
            ):
                return False, ("product not commutative", (i, j))
    for t in iter_product(range(n), repeat=3):
        if any(associator(p.product, basis[t[0]], basis[t[1]], basis[t[2]])):
            return False, ("product not associative", t)
    for i in range(n):
        for j in range(i, n):
            plus = p.bracket.bilinear(basis[i], basis[j])
            minus = p.bracket.bilinear(basis[j], basis[i])
            if any(a + b for a, b in zip(plus, minus)):
                return False, ("bracket not antisymmetric", (i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = [ZERO] * n
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = p.bracket.bilinear(basis[x], basis[y])
                    outer = p.bracket.bilinear(inner, basis[z])
                    for m in range(n):
                        acc[m] += outer[m]
                if any(acc):
                    return False, ("bracket fails Jacobi", (i, j, k))
    for a, b, c in iter_product(range(n), repeat=3):
        left = p.bracket.bilinear(basis[a], p.product.bilinear(basis[b], basis[c]))
        right1 = p.product.bilinear(basis[b], p.bracket.bilinear(basis[a], basis[c]))
        right2 = p.product.bilinear(p.bracket.bilinear(basis[a], basis[b]), basis[c])
        if any(l - r1 - r2 for l, r1, r2 in zip(left, right1, right2)):
            return False, ("Leibniz rule fails", (a, b, c))
    return True, None


def _require_poisson(p: PoissonStructure, label: str):
    ok, witness = poisson_verify(p)
    if not ok:
        raise InvalidPoisson(f"{label}: {witness[0]} at {witness[1]}")


def poisson_tensor(p: PoissonStructure, q: PoissonStructure) -> PoissonStructure:
    """Tensor Poisson structure: products multiply componentwise and
    [(a1 x a2),(b1 x b2)] = [a1,b1] x a2.b2 + a1.b1 x [a2,b2]."""
    _require_poisson(p, "left factor")
    _require_poisson(q, "right factor")
    product = tensor_product(p.product, q.product)
    dim = p.dim * q.dim
    table = {}
    for i1 in range(p.dim):
        for i2 in range(p.dim):
            br_left = dict(p.bracket._pairs(i1, i2))
            pr_left = dict(p.product._pairs(i1, i2))
            if not br_left and not pr_left:
                continue
            for j1 in range(q.dim):
                for j2 in range(q.dim):
                    pr_right = dict(q.product._pairs(j1, j2))
                    br_right = dict(q.bracket._pairs(j1, j2))
                    out = {}
                    for u, cu in br_left.items():
                        for v, cv in pr_right.items():
                            key = u * q.dim + v
                            out[key] = out.get(key, ZERO) + cu * cv
                    for u, cu in pr_left.items():
                        for v, cv in br_right.items():
                            key = u * q.dim + v
                            out[key] = out.get(key, ZERO) + cu * cv
                    entry = {k: c for k, c in out.items() if c}
                    if entry:
                        table[(i1 * q.dim + j1, i2 * q.dim + j2)] = entry
    return PoissonStructure(
        dim=dim,
        product=product,
        bracket=AlgebraStructure.assoc(dim, table),
    )


def opposite_poisson(p: PoissonStructure) -> PoissonStructure:
    """Opposite product a.b -> ba with negated bracket; Poisson again."""
    _require_poisson(p, "input")
    prod_table = {}
    for (i, j), entry in p.product.table.items():
        prod_table[(j, i)] = dict(entry)
    br_table = {}
    for (i, j), entry in p.bracket.table.items():
        br_table[(i, j)] = {k: -c for k, c in entry}
    out = PoissonStructure(
        dim=p.dim,
        product=AlgebraStructure.assoc(p.dim, prod_table),
        bracket=AlgebraStructure.assoc(p.dim, br_table),
    )
    _require_poisson(out, "opposite")
    return out
