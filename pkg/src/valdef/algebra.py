"""Finite-dimensional algebras by structure constants, and alternating cochains.

An AlgebraStructure stores the products of basis elements as sparse
integer-indexed tables over Q.  Lie tables keep only i < j entries and the
bracket is extended antisymmetrically; associative tables keep all pairs.
Cochains are alternating multilinear maps stored densely over strictly
increasing index tuples, the representation used by the cohomology and
deformation modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import DimensionMismatch

ZERO = Fraction(0)


def _clean_out(dim: int, out) -> tuple[tuple[int, Fraction], ...]:
    """Normalize a product value to a sorted ((k, coeff), ...) tuple."""
    acc: dict[int, Fraction] = {}
    items = out.items() if isinstance(out, dict) else out
    for k, c in items:
        if not 0 <= k < dim:
            raise ValueError(f"basis index {k} outside 0..{dim - 1}")
        c = Fraction(c)
        if c:
            acc[k] = acc.get(k, ZERO) + c
    return tuple((k, acc[k]) for k in sorted(acc) if acc[k])


@dataclass(frozen=True)
class AlgebraStructure:
    """Algebra over Q given by its structure constants."""

    dim: int
    kind: str  # "lie" | "assoc"
    table: dict
    basis: tuple[str, ...] | None = None

    @classmethod
    def lie(cls, dim: int, table, basis=None) -> AlgebraStructure:
        """Lie table: keys (i, j) with i < j only."""
        clean = {}
        for (i, j), out in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"pair ({i},{j}) outside 0..{dim - 1}")
            if i >= j:
                raise ValueError(
                    f"lie table key ({i},{j}) must satisfy i < j; "
                    "the bracket is extended antisymmetrically"
                )
            entry = _clean_out(dim, out)
            if entry:
                clean[(i, j)] = entry
        return cls(dim, "lie", clean, tuple(basis) if basis else None)

    @classmethod
    def assoc(cls, dim: int, table, basis=None) -> AlgebraStructure:
        clean = {}
        for (i, j), out in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"pair ({i},{j}) outside 0..{dim - 1}")
            entry = _clean_out(dim, out)
            if entry:
                clean[(i, j)] = entry
        return cls(dim, "assoc", clean, tuple(basis) if basis else None)

    @classmethod
    def abelian(cls, dim: int) -> AlgebraStructure:
        return cls.lie(dim, {})

    # -- evaluation ---------------------------------------------------

    def product_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Product of basis elements e_i e_j as a coefficient vector."""
        out = [ZERO] * self.dim
        if self.kind == "lie":
            if i == j:
                return tuple(out)
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            for k, c in self.table.get((i, j), ()):
                out[k] = sign * c
        else:
            for k, c in self.table.get((i, j), ()):
                out[k] = c
        return tuple(out)

    def bilinear(self, x, y) -> tuple[Fraction, ...]:
        """Bilinear extension of the table to coefficient vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(
                f"vectors of length {len(x)},{len(y)} in a dim-{self.dim} algebra"
            )
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in self._pairs(i, j):
                    out[k] += xi * yj * c
        return tuple(out)

    def _pairs(self, i, j):
        if self.kind == "lie":
            if i == j:
                return ()
            if i < j:
                return self.table.get((i, j), ())
            return tuple((k, -c) for k, c in self.table.get((j, i), ()))
        return self.table.get((i, j), ())

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) if k == i else ZERO for k in range(self.dim))


def bracket_eval(g: AlgebraStructure, x, y) -> tuple[Fraction, ...]:
    """Antisymmetric bilinear evaluation of a Lie table."""
    if g.kind != "lie":
        raise ValueError("bracket_eval needs a lie-kind algebra")
    return g.bilinear(x, y)


def associator(a: AlgebraStructure, x, y, z) -> tuple[Fraction, ...]:
    """(xy)z - x(yz) for an assoc-kind table."""
    if a.kind != "assoc":
        raise ValueError("associator needs an assoc-kind table")
    left = a.bilinear(a.bilinear(x, y), z)
    right = a.bilinear(x, a.bilinear(y, z))
    return tuple(p - q for p, q in zip(left, right))


def _perm_sign_and_sorted(indices):
    """Sort an index tuple, returning (sign, sorted) or (0, None) on repeats."""
    idx = list(indices)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
            elif idx[j] == idx[j + 1]:
                return 0, None
    return sign, tuple(idx)


@dataclass(frozen=True)
class Cochain:
    """Alternating p-linear map g^p -> g (adjoint) or -> K (trivial)."""

    degree: int
    dim: int
    target: str  # "adjoint" | "trivial"
    values: dict = field(default_factory=dict)

    @classmethod
    def build(cls, degree, dim, target, values) -> Cochain:
        """Normalize a {increasing tuple: value} mapping, dropping zeros."""
        clean = {}
        for key, val in values.items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"key {key} has wrong arity for degree {degree}")
            if any(not 0 <= i < dim for i in key):
                raise ValueError(f"key {key} outside 0..{dim - 1}")
            if list(key) != sorted(set(key)):
                raise ValueError(f"key {key} is not strictly increasing")
            if target == "adjoint":
                vec = tuple(Fraction(c) for c in val)
                if len(vec) != dim:
                    raise ValueError(f"value for {key} has length {len(vec)}")
                if any(vec):
                    clean[key] = vec
            else:
                c = Fraction(val)
                if c:
                    clean[key] = c
        return cls(degree, dim, target, clean)

    @classmethod
    def zero(cls, degree, dim, target="adjoint") -> Cochain:
        return cls(degree, dim, target, {})

    def is_zero(self) -> bool:
        return not self.values

    def value(self, key):
        """Value on a strictly increasing tuple."""
        if self.target == "adjoint":
            return self.values.get(tuple(key), (ZERO,) * self.dim)
        return self.values.get(tuple(key), ZERO)

    def eval_indices(self, indices):
        """Value on an arbitrary index tuple, by alternation."""
        sign, key = _perm_sign_and_sorted(indices)
        if sign == 0:
            return (ZERO,) * self.dim if self.target == "adjoint" else ZERO
        val = self.value(key)
        if sign == 1:
            return val
        if self.target == "adjoint":
            return tuple(-c for c in val)
        return -val

    def eval_vectors(self, *vectors):
        """Multilinear evaluation on coefficient vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatch(
                f"degree-{self.degree} cochain applied to {len(vectors)} vectors"
            )
        for v in vectors:
            if len(v) != self.dim:
                raise DimensionMismatch("vector length does not match cochain dim")
        out = [ZERO] * self.dim if self.target == "adjoint" else ZERO
        for key, val in self.values.items():
            # alternating sum over assignments of the key to argument slots
            for assignment, sign in _alternating_assignments(key):
                coeff = Fraction(sign)
                for slot, idx in enumerate(assignment):
                    coeff *= vectors[slot][idx]
                    if not coeff:
                        break
                if not coeff:
                    continue
                if self.target == "adjoint":
                    for k, c in enumerate(val):
                        if c:
                            out[k] += coeff * c
                else:
                    out += coeff * val
        return tuple(out) if self.target == "adjoint" else out

    # -- linear structure ----------------------------------------------

    def _binary(self, other, op) -> Cochain:
        if (self.degree, self.dim, self.target) != (
            other.degree,
            other.dim,
            other.target,
        ):
            raise DimensionMismatch("cochain shapes differ")
        keys = set(self.values) | set(other.values)
        vals = {}
        for key in keys:
            a, b = self.value(key), other.value(key)
            if self.target == "adjoint":
                v = tuple(op(x, y) for x, y in zip(a, b))
                if any(v):
                    vals[key] = v
            else:
                v = op(a, b)
                if v:
                    vals[key] = v
        return Cochain(self.degree, self.dim, self.target, vals)

    def __add__(self, other: Cochain) -> Cochain:
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: Cochain) -> Cochain:
        return self._binary(other, lambda a, b: a - b)

    def scale(self, scalar) -> Cochain:
        s = Fraction(scalar)
        if not s:
            return Cochain.zero(self.degree, self.dim, self.target)
        if self.target == "adjoint":
            vals = {k: tuple(s * c for c in v) for k, v in self.values.items()}
        else:
            vals = {k: s * v for k, v in self.values.items()}
        return Cochain(self.degree, self.dim, self.target, vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.dim == other.dim
            and self.target == other.target
            and self.values == other.values
        )

    # -- flat coordinates ------------------------------------------------

    def keys_order(self):
        return list(combinations(range(self.dim), self.degree))

    def flatten(self) -> tuple[Fraction, ...]:
        """Coordinates over (increasing tuple, output index) in lex order."""
        out = []
        for key in self.keys_order():
            val = self.value(key)
            if self.target == "adjoint":
                out.extend(val)
            else:
                out.append(val)
        return tuple(out)

    @classmethod
    def from_flat(cls, degree, dim, target, flat) -> Cochain:
        keys = list(combinations(range(dim), degree))
        vals = {}
        flat = list(flat)
        if target == "adjoint":
            assert len(flat) == len(keys) * dim
            for idx, key in enumerate(keys):
                vec = tuple(Fraction(c) for c in flat[idx * dim : (idx + 1) * dim])
                if any(vec):
                    vals[key] = vec
        else:
            assert len(flat) == len(keys)
            for idx, key in enumerate(keys):
                c = Fraction(flat[idx])
                if c:
                    vals[key] = c
        return cls(degree, dim, target, vals)


def _alternating_assignments(key):
    """All orderings of a strictly increasing tuple with their signs."""
    from itertools import permutations

    out = []
    for perm in permutations(key):
        sign, _ = _perm_sign_and_sorted(perm)
        out.append((perm, sign))
    return out


def mu_cochain(g: AlgebraStructure) -> Cochain:
    """The bracket of a Lie table as a degree-2 adjoint cochain."""
    if g.kind != "lie":
        raise ValueError("mu_cochain needs a lie-kind algebra")
    vals = {}
    for (i, j), entry in g.table.items():
        vec = [ZERO] * g.dim
        for k, c in entry:
            vec[k] = c
        vals[(i, j)] = tuple(vec)
    return Cochain(2, g.dim, "adjoint", vals)


def jacobiator(g: AlgebraStructure) -> Cochain:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] as a degree-3 adjoint cochain."""
    if g.kind != "lie":
        raise ValueError("jacobiator needs a lie-kind algebra")
    vals = {}
    for key in combinations(range(g.dim), 3):
        x, y, z = (g.basis_vector(i) for i in key)
        total = [ZERO] * g.dim
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            term = g.bilinear(g.bilinear(a, b), c)
            for k in range(g.dim):
                total[k] += term[k]
        if any(total):
            vals[key] = tuple(total)
    return Cochain(3, g.dim, "adjoint", vals)


def is_lie(g: AlgebraStructure):
    """(True, None) if the Jacobi identity holds, else (False, first triple)."""
    jac = jacobiator(g)
    for key in combinations(range(g.dim), 3):
        if any(jac.value(key)):
            return False, key
    return True, None


def change_basis(g: AlgebraStructure, matrix) -> AlgebraStructure:
    """Structure constants in the basis f_i = sum_j matrix[j][i] e_j.

    matrix must be invertible over Q; used by tests to randomize algebras
    without touching their isomorphism class.
    """
    inv = linalg.matrix_inverse([list(row) for row in matrix])
    if inv is None:
        raise ValueError("change of basis matrix is singular")
    n = g.dim
    cols = [tuple(matrix[r][c] for r in range(n)) for c in range(n)]

    def new_entry(i, j):
        prod = g.bilinear(cols[i], cols[j])
        coords = [sum(inv[r][k] * prod[k] for k in range(n)) for r in range(n)]
        return {k: c for k, c in enumerate(coords) if c}

    table = {}
    if g.kind == "lie":
        for i in range(n):
            for j in range(i + 1, n):
                entry = new_entry(i, j)
                if entry:
                    table[(i, j)] = entry
        return AlgebraStructure.lie(n, table)
    for i in range(n):
        for j in range(n):
            entry = new_entry(i, j)
            if entry:
                table[(i, j)] = entry
    return AlgebraStructure.assoc(n, table)
