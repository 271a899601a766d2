"""Valued deformations of Lie algebras over capped Q[[t]].

A Deformation holds a base Lie algebra and an ordered list of
(series coefficient in m, degree-2 cochain) terms; the deformed bracket
is mu + sum coeff_i * phi_i.  Coefficients of a decomposed deformation
are the cumulative products b1...bi produced by the flag decomposition
of the flattened perturbation, so the individual factors are recoverable
by exact division.  Validity always means "zero Jacobi residual up to
the cap": higher orders are unknown, and every report carries the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebra import AlgebraStructure, Cochain, mu_cochain
from .cohomology import circle, coboundary, super_bracket
from .decompose import decompose
from .errors import (
    DimensionMismatch,
    InvalidDeformation,
    NotInMaximalIdeal,
    PrecisionExhausted,
)
from .series import SeriesVector, TruncSeries

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Deformation:
    base: AlgebraStructure
    cap: int
    terms: tuple[tuple[TruncSeries, Cochain], ...]

    @classmethod
    def build(cls, base, cap, terms) -> Deformation:
        """Validate and normalize: coefficients in m, truncated to cap."""
        if base.kind != "lie":
            raise ValueError("deformations are built over a lie-kind base")
        if cap < 1:
            raise PrecisionExhausted(f"cap {cap} leaves no room for m")
        norm = []
        for coeff, phi in terms:
            if coeff.cap < cap:
                raise PrecisionExhausted(
                    f"coefficient cap {coeff.cap} below deformation cap {cap}"
                )
            coeff = coeff.truncate(cap)
            if not coeff.in_maximal_ideal():
                raise NotInMaximalIdeal(
                    "term coefficient has a nonzero constant term"
                )
            if phi.degree != 2 or phi.target != "adjoint" or phi.dim != base.dim:
                raise DimensionMismatch(
                    "terms need degree-2 adjoint cochains over the base"
                )
            if coeff.is_zero() or phi.is_zero():
                continue
            norm.append((coeff, phi))
        return cls(base=base, cap=cap, terms=tuple(norm))

    @classmethod
    def trivial(cls, base, cap) -> Deformation:
        return cls.build(base, cap, [])

    def perturbation(self) -> dict:
        """(i, j) -> SeriesVector giving mu_t(e_i, e_j) - mu(e_i, e_j)."""
        n = self.base.dim
        out = {}
        for i, j in combinations(range(n), 2):
            comps = [TruncSeries.zero(self.cap) for _ in range(n)]
            for coeff, phi in self.terms:
                vec = phi.value((i, j))
                for k, c in enumerate(vec):
                    if c:
                        comps[k] = comps[k] + coeff.scale(c)
            out[(i, j)] = SeriesVector(tuple(comps))
        return out


def deformed_bracket(d: Deformation, x, y) -> SeriesVector:
    """[x, y]_base at t^0 plus sum coeff_i * phi_i(x, y)."""
    n = d.base.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch("vectors do not match the base dimension")
    const = d.base.bilinear(x, y)
    comps = [TruncSeries.constant(c, d.cap) for c in const]
    for coeff, phi in d.terms:
        vec = phi.eval_vectors(x, y)
        for k, c in enumerate(vec):
            if c:
                comps[k] = comps[k] + coeff.scale(c)
    return SeriesVector(tuple(comps))


def jacobi_residual(d: Deformation) -> dict:
    """Expansion of mu_t o mu_t by t-order; {} means valid up to the cap."""
    mu = mu_cochain(d.base)
    residuals: dict[int, Cochain] = {}

    def accumulate(series_coeffs, cochain):
        if cochain.is_zero():
            return
        for p, c in enumerate(series_coeffs):
            if c:
                prev = residuals.get(p)
                term = cochain.scale(c)
                residuals[p] = term if prev is None else prev + term

    accumulate([ONE], circle(mu, mu))
    for coeff, phi in d.terms:
        accumulate(coeff.coeffs, circle(mu, phi) + circle(phi, mu))
    for ci, phi_i in d.terms:
        for cj, phi_j in d.terms:
            accumulate((ci * cj).coeffs, circle(phi_i, phi_j))
    return {p: c for p, c in residuals.items() if not c.is_zero()}


def is_valid(d: Deformation) -> bool:
    return not jacobi_residual(d)


def _require_valid(d: Deformation):
    bad = jacobi_residual(d)
    if bad:
        order = min(bad)
        raise InvalidDeformation(
            f"nonzero Jacobi residual at order t^{order} (cap {d.cap})"
        )


def pair_order(n: int):
    """Slot order of the flattened perturbation: (i<j) pairs, then k."""
    return list(combinations(range(n), 2))


def flatten_perturbation(base: AlgebraStructure, perturbation, cap) -> SeriesVector:
    """Stack the perturbation series into one vector of length n^2(n-1)/2."""
    n = base.dim
    comps = []
    for pair in pair_order(n):
        vec = perturbation.get(pair)
        if vec is None:
            comps.extend(TruncSeries.zero(cap) for _ in range(n))
            continue
        if vec.dim != n:
            raise DimensionMismatch("perturbation vectors must have length n")
        comps.extend(s.truncate(cap) for s in vec.components)
    return SeriesVector(tuple(comps))


def decompose_deformation(base: AlgebraStructure, perturbation, cap) -> Deformation:
    """Rewrite a raw bracket perturbation in decomposed (flag) form.

    The flattened perturbation is decomposed over m, each flag vector is
    reinterpreted as a 2-cochain, and the cumulative products b1...bi
    become the term coefficients.  The cochains are independent and the
    term count is bounded by n^2(n-1)/2.
    """
    n = base.dim
    for pair, vec in perturbation.items():
        for idx, s in enumerate(vec.components):
            if not s.in_maximal_ideal():
                raise NotInMaximalIdeal(
                    f"perturbation of {pair} has constant term in slot {idx}"
                )
    flat = flatten_perturbation(base, perturbation, cap)
    if flat.is_zero():
        return Deformation.trivial(base, cap)
    fd = decompose(flat)
    out_cap = fd.cap
    terms = []
    running = TruncSeries.one(fd.steps[0].coefficient.cap)
    for step in fd.steps:
        running = running * step.coefficient
        phi = Cochain.from_flat(2, n, "adjoint", step.vector)
        terms.append((running.truncate(out_cap), phi))
    return Deformation.build(base, out_cap, terms)


def step_factors(d: Deformation):
    """Individual factors b_i of the cumulative coefficients c_i = b_1...b_i.

    Exact division, so each factor's cap drops by the valuation of the
    previous cumulative coefficient.
    """
    out = []
    prev = None
    for coeff, _ in d.terms:
        out.append(coeff if prev is None else coeff.div_exact(prev))
        prev = coeff
    return out


def first_term_is_cocycle(d: Deformation) -> bool:
    """delta(phi_1) == 0; requires a valid deformation."""
    _require_valid(d)
    if not d.terms:
        return True
    return coboundary(d.base, d.terms[0][1]).is_zero()


@dataclass(frozen=True)
class MembershipVerdict:
    holds: bool
    coefficients: dict | None  # (i, j) -> Fraction when holds


@dataclass(frozen=True)
class GradedSystem:
    residuals: dict  # t-power -> 3-cochain (empty for a valid deformation)
    delta_memberships: dict  # k -> MembershipVerdict for delta(phi_k)
    bracket_memberships: dict  # (i, k) -> MembershipVerdict for [phi_i, phi_k]

    @property
    def satisfied(self) -> bool:
        return all(v.holds for v in self.delta_memberships.values()) and all(
            v.holds for v in self.bracket_memberships.values()
        )


def _membership(span_pairs, target_cochain) -> MembershipVerdict:
    vectors = [sb.flatten() for _, sb in span_pairs]
    coeffs = linalg.solve_combination(vectors, list(target_cochain.flatten()))
    if coeffs is None:
        return MembershipVerdict(holds=False, coefficients=None)
    return MembershipVerdict(
        holds=True,
        coefficients={
            pair: c for (pair, _), c in zip(span_pairs, coeffs) if c
        },
    )


def graded_system(d: Deformation) -> GradedSystem:
    """Per-index membership verdicts for the order-by-order equations.

    For each k >= 2 it reports whether delta(phi_k) and each [phi_i, phi_k]
    lie in span{[phi_i, phi_j] : 1 <= i <= j <= k-1}, with the recovered
    combination coefficients.  Indices are 1-based to match the term order.
    """
    _require_valid(d)
    phis = [phi for _, phi in d.terms]
    delta_memberships = {}
    bracket_memberships = {}
    for k in range(2, len(phis) + 1):
        span_pairs = [
            ((i + 1, j + 1), super_bracket(phis[i], phis[j]))
            for i in range(k - 1)
            for j in range(i, k - 1)
        ]
        dk = coboundary(d.base, phis[k - 1])
        delta_memberships[k] = _membership(span_pairs, dk)
        for i in range(k - 1):
            target = super_bracket(phis[i], phis[k - 1])
            bracket_memberships[(i + 1, k)] = _membership(span_pairs, target)
    return GradedSystem(
        residuals={},
        delta_memberships=delta_memberships,
        bracket_memberships=bracket_memberships,
    )


def max_rank_check(d: Deformation):
    """(dim V, is_maximal) for V = span{[phi_i,phi_j], [mu,phi_i] : i,j <= k-1}."""
    phis = [phi for _, phi in d.terms]
    k = len(phis)
    vectors = []
    for i in range(k - 1):
        for j in range(i, k - 1):
            vectors.append(list(super_bracket(phis[i], phis[j]).flatten()))
    for i in range(k - 1):
        vectors.append(list(coboundary(d.base, phis[i]).flatten()))
    dim = linalg.rank(vectors) if vectors else 0
    return dim, dim == k * (k - 1) // 2


# -- gauge transport --------------------------------------------------


def identity_plus(n: int, cap: int, nilpotent=None, power: int = 1):
    """Series endomorphism Id + t^power * N as an n x n matrix of series."""
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            coeffs = [ONE if r == c else ZERO]
            if nilpotent is not None and nilpotent[r][c]:
                coeffs += [ZERO] * (power - 1) + [Fraction(nilpotent[r][c])]
            row.append(TruncSeries.from_coeffs(coeffs, cap=cap))
        rows.append(tuple(row))
    return tuple(rows)


def _matrix_cap(f) -> int:
    return min(entry.cap for row in f for entry in row)


def _check_unipotent(f):
    for r, row in enumerate(f):
        for c, entry in enumerate(row):
            want = ONE if r == c else ZERO
            if entry.coeffs[0] != want:
                raise NotInMaximalIdeal(
                    f"endomorphism entry ({r},{c}) has constant term "
                    f"{entry.coeffs[0]}; expected Id + h with h into m"
                )


def series_matrix_mul(a, b, cap):
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = TruncSeries.zero(cap)
            for k in range(n):
                acc = acc + a[r][k].truncate(cap) * b[k][c].truncate(cap)
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def series_matrix_inverse(f, cap):
    """Neumann inverse of Id + H with H into m: sum of (-H)^i, i <= cap."""
    n = len(f)
    ident = identity_plus(n, cap)
    neg_h = tuple(
        tuple(
            (ident[r][c] - f[r][c].truncate(cap))
            for c in range(n)
        )
        for r in range(n)
    )
    total = ident
    power = ident
    for _ in range(cap):
        power = series_matrix_mul(power, neg_h, cap)
        total = tuple(
            tuple(total[r][c] + power[r][c] for c in range(n))
            for r in range(n)
        )
    return total


def series_matrix_apply(f, vec: SeriesVector, cap) -> SeriesVector:
    n = len(f)
    comps = []
    for r in range(n):
        acc = TruncSeries.zero(cap)
        for c in range(n):
            acc = acc + f[r][c].truncate(cap) * vec.components[c].truncate(cap)
        comps.append(acc)
    return SeriesVector(tuple(comps))


def transport(d: Deformation, f) -> Deformation:
    """Re-express (x, y) -> f^-1(mu_t(f(x), f(y))) over the same base.

    The result is in t-power form: one term per order with a monomial
    coefficient.  Valid iff the input is valid.
    """
    n = d.base.dim
    if len(f) != n or any(len(row) != n for row in f):
        raise DimensionMismatch("endomorphism must be n x n over the base")
    cap = min(d.cap, _matrix_cap(f))
    if cap < 1:
        raise PrecisionExhausted("no precision left below t^1")
    _check_unipotent(f)
    f_inv = series_matrix_inverse(f, cap)

    mu_t = {}
    pert = d.perturbation()
    for i, j in combinations(range(n), 2):
        const = d.base.product_basis(i, j)
        comps = [
            TruncSeries.constant(const[k], cap) + pert[(i, j)].components[k].truncate(cap)
            for k in range(n)
        ]
        mu_t[(i, j)] = SeriesVector(tuple(comps))

    def mu_t_bilinear(u, v):
        acc = SeriesVector.zero(n, cap)
        for a, b in combinations(range(n), 2):
            factor = u.components[a] * v.components[b] - u.components[b] * v.components[a]
            if factor.is_zero():
                continue
            acc = acc + mu_t[(a, b)].scale(factor)
        return acc

    columns = [
        SeriesVector(tuple(f[r][c].truncate(cap) for r in range(n)))
        for c in range(n)
    ]
    by_power: dict[int, dict] = {}
    for i, j in combinations(range(n), 2):
        transported = series_matrix_apply(
            f_inv, mu_t_bilinear(columns[i], columns[j]), cap
        )
        const = d.base.product_basis(i, j)
        for k in range(n):
            coeffs = transported.components[k].coeffs
            if coeffs[0] != const[k]:
                raise InvalidDeformation(
                    "transport did not preserve the base bracket at t^0"
                )
            for p in range(1, cap + 1):
                if coeffs[p]:
                    by_power.setdefault(p, {}).setdefault((i, j), [ZERO] * n)[
                        k
                    ] = coeffs[p]
    terms = []
    for p in sorted(by_power):
        phi = Cochain.build(
            2, n, "adjoint", {pair: tuple(vec) for pair, vec in by_power[p].items()}
        )
        terms.append((TruncSeries.monomial(p, cap), phi))
    return Deformation.build(d.base, cap, terms)


def perturbations_equal(d1: Deformation, d2: Deformation) -> bool:
    """Exact equality of the two raw perturbations at the common cap."""
    if d1.base.dim != d2.base.dim:
        return False
    cap = min(d1.cap, d2.cap)
    p1, p2 = d1.perturbation(), d2.perturbation()
    for pair in pair_order(d1.base.dim):
        a = p1[pair].truncate(cap)
        b = p2[pair].truncate(cap)
        if not (a - b).is_zero():
            return False
    return True


def polynomial_form_check(d: Deformation, poly, k: int) -> bool:
    """Whether Id * P(t) transports d onto a pure degree-<=k polynomial form.

    poly lists the coefficients of P from degree 0; P(0) must be 1 and
    deg P <= k.  Multiplying the deformed bracket by P is exactly the
    transport by the scalar endomorphism Id * P, so the check is that
    (P - 1) * mu + P * perturbation has no terms above t^k at the cap.
    """
    poly = [Fraction(c) for c in poly]
    if not poly or poly[0] != 1:
        raise ValueError("P(0) must equal 1")
    if len(poly) - 1 > k:
        raise ValueError(f"deg P = {len(poly) - 1} exceeds k = {k}")
    if d.cap <= k:
        raise PrecisionExhausted(
            f"cap {d.cap} cannot see any order above t^{k}"
        )
    p_series = TruncSeries.from_coeffs(poly, cap=d.cap)
    p_minus_1 = p_series - TruncSeries.one(d.cap)
    pert = d.perturbation()
    n = d.base.dim
    for i, j in combinations(range(n), 2):
        const = d.base.product_basis(i, j)
        for idx in range(n):
            s = p_minus_1.scale(const[idx]) + p_series * pert[(i, j)].components[idx]
            if any(s.coeffs[p] for p in range(k + 1, d.cap + 1)):
                return False
    return True
