"""Deformation construction, residuals, decomposed form, gauge transport."""

import random

from fractions import Fraction

import pytest

from valdef.algebra import AlgebraStructure, Cochain, mu_cochain
from valdef.cohomology import circle, coboundary, super_bracket
from valdef.deformation import (
    Deformation,
    decompose_deformation,
    deformed_bracket,
    first_term_is_cocycle,
    graded_system,
    identity_plus,
    is_valid,
    jacobi_residual,
    max_rank_check,
    perturbations_equal,
    polynomial_form_check,
    series_matrix_inverse,
    transport,
)
from valdef.errors import (
    InvalidDeformation,
    NotInMaximalIdeal,
    PrecisionExhausted,
)
from valdef.series import SeriesVector, TruncSeries

from gens import (
    PHI1,
    PHI2,
    R2,
    R2K,
    decomposed,
    random_direction,
    random_valid_deformation,
    two_term_instance,
)

AB3 = AlgebraStructure.abelian(3)
PHI_E12_E3 = Cochain.build(2, 3, "adjoint", {(0, 1): (0, 0, 1)})


def e(n, i):
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def test_two_term_instance_hand_checks():
    # oracle for [phi1, phi1] on (X, Y, Z): expand phi1(phi1(.,.),.) terms
    def phi1_eval(a, b):
        return PHI1.eval_vectors(a, b)

    x, y, z = e(3, 0), e(3, 1), e(3, 2)
    comp = lambda a, b, c: phi1_eval(phi1_eval(a, b), c)
    val = tuple(
        p - q + r
        for p, q, r in zip(comp(x, y, z), comp(x, z, y), comp(y, z, x))
    )
    assert val == (Fraction(0), Fraction(1), Fraction(0))
    sb = super_bracket(PHI1, PHI1)
    assert sb.value((0, 1, 2)) == tuple(2 * c for c in val)
    assert coboundary(R2K, PHI2) == sb.scale(-1)
    assert coboundary(R2K, PHI1).is_zero()
    assert super_bracket(PHI1, PHI2).is_zero()
    assert super_bracket(PHI2, PHI2).is_zero()


def test_deformed_bracket_cases():
    d0 = Deformation.trivial(R2K, 3)
    v = deformed_bracket(d0, e(3, 0), e(3, 1))
    assert v.components[1] == TruncSeries.one(3)
    assert v.components[0].is_zero() and v.components[2].is_zero()

    d1 = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), PHI_E12_E3)])
    v1 = deformed_bracket(d1, e(3, 0), e(3, 1))
    assert v1.components[2] == TruncSeries.monomial(1, 4)

    phi_x = Cochain.build(2, 2, "adjoint", {(0, 1): (1, 0)})
    d2 = Deformation.build(R2, 3, [(TruncSeries.monomial(1, 3), phi_x)])
    v2 = deformed_bracket(d2, e(2, 0), e(2, 1))
    assert v2.components == (TruncSeries.monomial(1, 3), TruncSeries.one(3))


def test_residual_cases():
    assert jacobi_residual(Deformation.trivial(R2K, 4)) == {}
    d1 = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), PHI_E12_E3)])
    # oracle: the only candidate order is t^2 carrying phi o phi
    assert circle(PHI_E12_E3, PHI_E12_E3).is_zero()
    assert jacobi_residual(d1) == {}

    phi_bad = Cochain.build(2, 3, "adjoint", {(0, 1): (1, 0, 0), (0, 2): (0, 0, 1)})
    assert not circle(phi_bad, phi_bad).is_zero()
    d2 = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), phi_bad)])
    res = jacobi_residual(d2)
    assert sorted(res) == [2]
    assert res[2] == circle(phi_bad, phi_bad)


def test_two_term_instance_validity_and_graded():
    d = two_term_instance()
    assert is_valid(d)
    assert first_term_is_cocycle(d)
    system = graded_system(d)
    assert system.satisfied
    verdict = system.delta_memberships[2]
    assert verdict.holds
    assert verdict.coefficients == {(1, 1): Fraction(-1)}
    assert system.bracket_memberships[(1, 2)].holds
    assert max_rank_check(d) == (1, True)


def test_graded_broken_input():
    cap = 6
    # break phi2 off the solution space: delta(phi') no longer in the span
    phi2_bad = Cochain.build(2, 3, "adjoint", {(1, 2): (0, 0, 1)})
    d = Deformation.build(
        R2K,
        cap,
        [
            (TruncSeries.monomial(1, cap), PHI1),
            (TruncSeries.monomial(2, cap, Fraction(1, 2)), PHI2 + phi2_bad),
        ],
    )
    res = jacobi_residual(d)
    if res:
        with pytest.raises(InvalidDeformation):
            graded_system(d)
    else:
        assert not graded_system(d).satisfied


def test_max_rank_degenerate_cases():
    d1 = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), PHI_E12_E3)])
    assert max_rank_check(d1) == (0, True)
    d2 = Deformation.build(
        AB3,
        4,
        [
            (TruncSeries.monomial(1, 4), PHI_E12_E3),
            (
                TruncSeries.monomial(2, 4),
                Cochain.build(2, 3, "adjoint", {(0, 2): (0, 0, 1)}),
            ),
        ],
    )
    dim, is_max = max_rank_check(d2)
    assert dim == 0 and not is_max


def test_decompose_deformation_cases():
    pert = {
        (0, 1): SeriesVector(
            (TruncSeries.zero(5), TruncSeries.zero(5), TruncSeries.monomial(1, 5))
        ),
        (0, 2): SeriesVector(
            (TruncSeries.zero(5), TruncSeries.zero(5), TruncSeries.monomial(2, 5))
        ),
    }
    dd = decompose_deformation(AB3, pert, 5)
    assert len(dd.terms) == 2
    assert dd.terms[0][0] == TruncSeries.monomial(1, dd.cap)
    assert dd.terms[0][1] == PHI_E12_E3
    assert dd.terms[1][0] == TruncSeries.monomial(2, dd.cap)
    assert dd.terms[1][1] == Cochain.build(2, 3, "adjoint", {(0, 2): (0, 0, 1)})

    # single-cochain perturbation: one term, pivot-normalized
    psi = Cochain.build(2, 3, "adjoint", {(0, 1): (0, 2, 0), (1, 2): (1, 0, 0)})
    raw = Deformation.build(AB3, 5, [(TruncSeries.monomial(1, 5), psi)])
    dd2 = decompose_deformation(AB3, raw.perturbation(), 5)
    assert len(dd2.terms) == 1
    assert dd2.terms[0][1].value((0, 1)) == (0, 1, 0)  # scaled so pivot = 1
    assert perturbations_equal(dd2, raw)

    assert decompose_deformation(AB3, {}, 4).terms == ()


def test_decompose_deformation_rejects_constant_terms():
    pert = {
        (0, 1): SeriesVector(
            (TruncSeries.one(3), TruncSeries.zero(3), TruncSeries.zero(3))
        )
    }
    with pytest.raises(NotInMaximalIdeal):
        decompose_deformation(AB3, pert, 3)


def test_roundtrip_random_decomposition():
    rng = random.Random(61)
    for _ in range(25):
        d = random_valid_deformation(rng, rng.randint(2, 4), rng.randint(3, 6))
        dd = decomposed(d)
        assert perturbations_equal(dd, d)
        # independence of the cochains
        from valdef import linalg

        vectors = [list(phi.flatten()) for _, phi in dd.terms]
        assert linalg.rank(vectors) == len(vectors)


def test_step_factors_recover_cumulative_products():
    from valdef.deformation import step_factors

    rng = random.Random(65)
    for _ in range(10):
        d = random_valid_deformation(rng, rng.randint(2, 4), rng.randint(3, 6))
        dd = decomposed(d)
        factors = step_factors(dd)
        assert all(f.in_maximal_ideal() for f in factors)
        running = None
        for f, (coeff, _) in zip(factors, dd.terms):
            running = f if running is None else running * f
            assert running == coeff.truncate(running.cap)


def test_first_term_requires_validity():
    phi_bad = Cochain.build(2, 3, "adjoint", {(0, 1): (1, 0, 0), (0, 2): (0, 0, 1)})
    d = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), phi_bad)])
    with pytest.raises(InvalidDeformation):
        first_term_is_cocycle(d)


def test_transport_identity_and_roundtrip():
    rng = random.Random(62)
    for _ in range(15):
        d = random_valid_deformation(rng, rng.randint(2, 4), rng.randint(3, 5))
        n, cap = d.base.dim, d.cap
        assert perturbations_equal(transport(d, identity_plus(n, cap)), d)
        f = identity_plus(n, cap, random_direction(rng, n))
        td = transport(d, f)
        assert is_valid(td)
        back = transport(td, series_matrix_inverse(f, cap))
        assert perturbations_equal(back, d)


def test_transport_direct_expansion_oracle():
    # abelian base, single term (t, phi), f = Id + t*N: the transported
    # bracket is f^-1(mu_t(f x, f y)) computed here with plain polynomial
    # arithmetic (truncated lists), independently of the series classes
    n, cap = 3, 3
    d = Deformation.build(AB3, cap, [(TruncSeries.monomial(1, cap), PHI_E12_E3)])
    N = [[Fraction(0), Fraction(1), Fraction(0)],
         [Fraction(0), Fraction(0), Fraction(2)],
         [Fraction(1), Fraction(0), Fraction(0)]]
    f = identity_plus(n, cap, N)
    td = transport(d, f)

    def pmul(a, b):
        out = [Fraction(0)] * (cap + 1)
        for i in range(cap + 1):
            for j in range(cap + 1 - i):
                out[i + j] += a[i] * b[j]
        return out

    npow = [[[Fraction(1 if r == c else 0) for c in range(n)] for r in range(n)]]
    for _ in range(cap):
        last = npow[-1]
        npow.append(
            [
                [
                    sum(last[r][k] * N[k][c] for k in range(n))
                    for c in range(n)
                ]
                for r in range(n)
            ]
        )

    def oracle(i, j):
        fi = [[Fraction(1 if r == i else 0), N[r][i]] + [Fraction(0)] * (cap - 1) for r in range(n)]
        fj = [[Fraction(1 if r == j else 0), N[r][j]] + [Fraction(0)] * (cap - 1) for r in range(n)]
        factor = [
            p - q for p, q in zip(pmul(fi[0], fj[1]), pmul(fi[1], fj[0]))
        ]
        w = [[Fraction(0)] * (cap + 1) for _ in range(n)]
        w[2] = pmul(factor, [Fraction(0), Fraction(1)] + [Fraction(0)] * (cap - 1))
        out = [[Fraction(0)] * (cap + 1) for _ in range(n)]
        for p in range(cap + 1):
            sgn = (-1) ** p
            for r in range(n):
                for c in range(n):
                    coeff = sgn * npow[p][r][c]
                    if coeff:
                        for q in range(cap + 1 - p):
                            out[r][p + q] += coeff * w[c][q]
        return out

    pert = td.perturbation()
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        want = oracle(i, j)
        got = [list(s.coeffs) for s in pert[(i, j)].components]
        assert got == want


def test_transport_rejects_non_unipotent():
    d = Deformation.build(AB3, 3, [(TruncSeries.monomial(1, 3), PHI_E12_E3)])
    f = identity_plus(3, 3)
    broken = tuple(
        tuple(
            TruncSeries.constant(2, 3) if (r, c) == (0, 0) else f[r][c]
            for c in range(3)
        )
        for r in range(3)
    )
    with pytest.raises(NotInMaximalIdeal):
        transport(d, broken)


def test_polynomial_form_check_cases():
    d = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), PHI_E12_E3)])
    assert polynomial_form_check(d, [1], 1)
    c = TruncSeries.monomial(1, 4).div_exact(TruncSeries.from_coeffs([1, 1], cap=4))
    d2 = Deformation.build(AB3, 4, [(c, PHI_E12_E3)])
    assert polynomial_form_check(d2, [1, 1], 1)
    assert not polynomial_form_check(d2, [1], 1)
    with pytest.raises(ValueError):
        polynomial_form_check(d2, [2], 1)
    with pytest.raises(ValueError):
        polynomial_form_check(d2, [1, 1, 1], 1)
    with pytest.raises(PrecisionExhausted):
        polynomial_form_check(d2, [1], 4)


def find_polynomial_form(d, k):
    """Solve for P (deg <= k, P(0) = 1) killing all orders above t^k.

    Independent of polynomial_form_check: the constraints are assembled
    directly from the perturbation coefficients and solved exactly.
    """
    from itertools import combinations

    from valdef import linalg

    pert = d.perturbation()
    n, cap = d.base.dim, d.cap
    slots = [
        pert[pair].components[coord].coeffs
        for pair in combinations(range(n), 2)
        for coord in range(n)
    ]
    columns = []
    for q in range(1, k + 1):
        col = []
        for s in slots:
            for p in range(k + 1, cap + 1):
                col.append(s[p - q])
        columns.append(tuple(col))
    target = []
    for s in slots:
        for p in range(k + 1, cap + 1):
            target.append(-s[p])
    sol = linalg.solve_combination(columns, target)
    if sol is None:
        return None
    return [Fraction(1)] + list(sol)


def test_maximal_rank_deformations_admit_polynomial_form():
    # scale a polynomial maximal-rank deformation by 1/P0 and recover a P
    rng = random.Random(64)
    for _ in range(10):
        cap = 6
        k = 2
        base_d = two_term_instance(cap)
        coeffs = [Fraction(1)] + [
            Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(k)
        ]
        p0 = TruncSeries.from_coeffs(coeffs, cap=cap)
        q = p0.invert()
        pert = base_d.perturbation()
        mu = mu_cochain(R2K)
        terms = []
        q_minus_1 = q - TruncSeries.one(cap)
        by_power = {}
        from itertools import combinations as combs

        for pair in combs(range(3), 2):
            base_vec = mu.value(pair)
            for coord in range(3):
                s = q_minus_1.scale(base_vec[coord]) + q * pert[pair].components[coord]
                for p in range(1, cap + 1):
                    if s.coeffs[p]:
                        by_power.setdefault(p, {}).setdefault(pair, [Fraction(0)] * 3)[
                            coord
                        ] = s.coeffs[p]
        for p in sorted(by_power):
            phi = Cochain.build(
                2, 3, "adjoint", {pr: tuple(v) for pr, v in by_power[p].items()}
            )
            terms.append((TruncSeries.monomial(p, cap), phi))
        d = Deformation.build(R2K, cap, terms)
        assert is_valid(d)
        assert max_rank_check(decomposed(d))[1]
        found = find_polynomial_form(d, k)
        assert found is not None
        assert polynomial_form_check(d, found, k)


def test_validity_gauge_invariance_includes_invalid():
    # transporting an invalid deformation stays invalid
    phi_bad = Cochain.build(2, 3, "adjoint", {(0, 1): (1, 0, 0), (0, 2): (0, 0, 1)})
    d = Deformation.build(AB3, 4, [(TruncSeries.monomial(1, 4), phi_bad)])
    rng = random.Random(63)
    f = identity_plus(3, 4, random_direction(rng, 3))
    assert not is_valid(d)
    assert not is_valid(transport(d, f))
