from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isospec import spectra as sp
from isospec.errors import DomainError, InvalidInputError, SingularCoefficientError
from isospec.q8 import Q8, q8_multiply

HALF = Fraction(1, 2)
inner_b = st.floats(0.02, 0.98)


@pytest.mark.parametrize("m", list(range(0, 26)))
def test_generator_brackets(m):
    g = sp.generator_matrices(m)
    assert g.bracket_residual() < 1e-12 * max(1, m * m)
    assert g.skew_residual() == 0.0
    assert sp.monomial_generators(m).bracket_residual() < 1e-12 * max(1, m * m)


def test_generator_examples():
    g = sp.generator_matrices(1)
    assert np.array_equal(g.rho_j, np.diag([1j, -1j]))
    # u0 -> -u1, u1 -> u0
    assert np.array_equal(g.rho_i, np.array([[0, 1], [-1, 0]], dtype=complex))
    lit = sp.monomial_generators(3)
    assert lit.rho_i[0, 1] == 1 and lit.rho_i[2, 1] == -2 and lit.rho_k[2, 1] == -2j


def test_generator_bases_are_similar():
    for m in range(6):
        a = np.linalg.eigvals(sp.monomial_generators(m).rho_i)
        b = np.linalg.eigvals(sp.generator_matrices(m).rho_i)
        assert np.allclose(np.sort(a.imag), np.sort(b.imag), atol=1e-9)
        assert np.allclose(a.real, 0, atol=1e-9) and np.allclose(b.real, 0, atol=1e-9)


def test_laplacian_coefficients():
    c = sp.laplacian_coefficients(HALF, 1)
    assert c.as_tuple() == (1, Fraction(1, 4), 1)
    c1, c2 = sp.laplacian_coefficients(0.3, 2.0), sp.laplacian_coefficients(0.7, 2.0)
    assert (c1.c_i, c1.c_j, c1.c_k) == pytest.approx((c2.c_k, c2.c_j, c2.c_i))
    for bad in (0, 1, 0.0, 1.0):
        with pytest.raises(SingularCoefficientError):
            sp.laplacian_coefficients(bad, 1)
    with pytest.raises(DomainError):
        sp.laplacian_coefficients(1.5, 1)
    with pytest.raises(DomainError):
        sp.laplacian_coefficients(0.5, 0)


def test_full_casimir_examples():
    assert np.array_equal(sp.full_casimir(0, 0.3).entries, [[0.0]])
    assert np.allclose(sp.full_casimir(1, 0.5).entries, 2.25 * np.eye(2))
    u = np.array([1.0, 0.0, 1.0]) / np.sqrt(2)
    c = sp.full_casimir(2, 0.5).entries
    assert np.allclose(c @ u, 5 * u)


def test_q8_action_on_Qm():
    a = sp.q8_action_on_Qm(Q8.J, 2)
    assert a[1, 1] == 1  # z1 z2 fixed
    b = sp.q8_action_on_Qm(Q8.I, 2)
    assert b[0, 2] == 1  # z2^2 (k=0) is the image of z1^2 (k=2)
    for m in range(7):
        mats = {g: sp.q8_action_on_Qm(g, m) for g in Q8}
        for g in Q8:
            assert np.allclose(mats[g] @ mats[g].conj().T, np.eye(m + 1))
            for h in Q8:
                assert np.allclose(mats[g] @ mats[h], mats[q8_multiply(g, h)], atol=1e-12)


def test_isotypic_casimir_examples():
    assert np.allclose(sp.isotypic_casimir(2, 0.5, 1, 1).entries, [[5.0]])
    assert np.allclose(sp.isotypic_casimir(2, 0.5, 1, 2).entries, [[8.0]])
    assert sp.isotypic_casimir(1, 0.5, 1, 1).n == 0
    for m in range(9):
        dims = [sp.isotypic_casimir(m, 0.4, 1, b).n for b in (1, 2, 3)]
        # odd m: Q_m restricts to copies of the 2-dimensional irrep only
        assert sum(dims) <= m + 1 and (m % 2 == 0 or sum(dims) == 0)


def test_omega_examples():
    assert sp.omega1(1, HALF).exact_eigvals() == [Fraction(5, 4)]
    assert sp.omega1(3, HALF).exact_eigvals() == [Fraction(21, 4), Fraction(45, 4)]
    assert sp.omega1(2, HALF).exact_eigvals() == [Fraction(21, 4)]
    assert sp.omega2(1, HALF).exact_eigvals() == [2]
    assert sp.omega3(1, HALF).exact_eigvals() == [Fraction(5, 4)]


def test_omega2_even_entry_variants():
    # the even-m diagonal as printed gives 2 at m=2; the closed form and the
    # b -> 1-b symmetry both need the corrected factor, which gives 3
    assert sp.omega2(2, HALF).exact_eigvals() == [2]
    assert sp.omega2(2, HALF, variant="corrected").exact_eigvals() == [3]
    assert sp.closed_form_half(2, 2) == [3]


def test_omega1_even_entry_variants():
    for m in range(2, 21, 2):
        corrected = sp.omega1(m, HALF, variant="corrected").exact_eigvals()
        assert corrected == sp.closed_form_half(1, m)
    assert sp.omega1(4, HALF).exact_eigvals() == [Fraction(61, 4), Fraction(77, 4)]
    assert sp.closed_form_half(1, 4) == [Fraction(53, 4), Fraction(77, 4)]


@pytest.mark.parametrize("bundle", [1, 2])
def test_closed_forms_for_all_m(bundle):
    for m in range(1, 21):
        got = sp.omega(bundle, m, HALF, 1, "corrected").exact_eigvals()
        assert got == sp.closed_form_half(bundle, m)
        flt = sp.omega(bundle, m, 0.5, 1.0, "corrected").eigvals()
        assert flt == pytest.approx([float(v) for v in got], rel=1e-12)
        if m % 2:
            assert sp.omega(bundle, m, HALF).exact_eigvals() == got


def test_closed_form_examples():
    assert sp.closed_form_half(1, 1) == [Fraction(5, 4)]
    assert sp.closed_form_half(3, 3) == [Fraction(21, 4), Fraction(45, 4)]
    assert sp.closed_form_half(2, 2) == [3]
    with pytest.raises(InvalidInputError):
        sp.closed_form_half(1, 0)


def test_omega_size_and_validation():
    for m in range(1, 12):
        assert sp.omega1(m, 0.3).size == sp.omega_size(m) == sp.omega2(m, 0.3).size
    with pytest.raises(SingularCoefficientError):
        sp.omega1(3, 0.0)
    with pytest.raises(SingularCoefficientError):
        sp.omega3(3, 1)
    with pytest.raises(InvalidInputError):
        sp.omega1(0, 0.5)
    with pytest.raises(InvalidInputError):
        sp.omega2(2, 0.5, variant="fixed")
    with pytest.raises(InvalidInputError):
        sp.omega1(3, 0.3).exact_eigvals()


def test_exact_mode_detection():
    assert sp.omega1(3, Fraction(1, 3)).is_exact
    assert not sp.omega1(3, 0.3).is_exact
    assert sp.omega1(3, 0.5, exact=True).is_exact
    e = sp.omega1(5, Fraction(1, 3))
    assert np.allclose(e.matrix.offdiag, [float(c) * np.sqrt(r) for c, r in e.exact_offdiag])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), inner_b, st.floats(0.3, 4))
def test_radius_scaling(m, b, r):
    a = sp.omega1(m, b, r).eigvals()
    c = sp.omega1(m, b, 1.0).eigvals()
    assert a == pytest.approx([v / r ** 2 for v in c], rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), inner_b)
def test_omega3_is_reflected_omega1(m, b):
    assert sp.omega3(m, b).matrix == sp.omega1(m, 1 - b).matrix


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), inner_b)
def test_offdiagonal_sign_flip_invariance(m, b):
    om = sp.omega2(m, b, variant="corrected")
    flipped = sp.SymTridiagonal(om.matrix.diag, [-v for v in om.matrix.offdiag])
    assert sp.eigvals_tridiagonal(flipped) == pytest.approx(om.eigvals(), rel=1e-12, abs=1e-12)
    # under b -> 1-b the off-diagonals change sign and the diagonal is kept
    other = sp.omega2(m, 1 - b, variant="corrected")
    assert other.matrix.offdiag == pytest.approx([-v for v in om.matrix.offdiag], rel=1e-9, abs=1e-12)


def test_bundle2_symmetry_report():
    rep = {(x.m, x.variant): x for x in sp.bundle2_symmetry_report(8)}
    for m in range(1, 9):
        assert rep[(m, "corrected")].symmetric
        assert rep[(m, "printed")].symmetric == (m % 2 == 1)


def test_projective_and_constant_curvature():
    assert sp.projective_spectrum(5) == [(Fraction(2, 3), 3), (4, 7), (10, 11)]
    assert sp.projective_spectrum(1, 2) == [(Fraction(1, 6), 3)]
    cc = sp.constant_curvature_spectrum(3)
    assert cc == [(2, 3), (6, 5), (12, 14), (20, 18)]
    assert isinstance(sp.constant_curvature_spectrum(1, 2.0)[0][0], float)
    for row in sp.constant_curvature_comparison(5):
        assert row["multiplicity"] == row["h1_dim_formula"] == row["h1_dim_bruteforce"]
        assert row["harmonic_eigenvalue"] == 4 * row["eigenvalue"]


def test_spectrum_lines():
    lines = sp.spectrum(1, 3, 0.5)
    got = [(round(x.eigenvalue, 12), x.multiplicity) for x in lines]
    assert sorted(got) == [(1.25, 2), (5.25, 3), (5.25, 4), (11.25, 4)]
    assert [x.eigenvalue for x in lines] == sorted(x.eigenvalue for x in lines)
    a = sp.spectrum(3, 5, 0.3)
    b = sp.spectrum(1, 5, 0.7)
    assert [x.eigenvalue for x in a] == pytest.approx([x.eigenvalue for x in b], rel=1e-12)


def test_reconcile_examples():
    r2 = sp.reconcile(2, 0.5, 1, 1)
    assert r2.verdict == "value-mismatch"
    assert r2.formula == pytest.approx((5.25,)) and r2.oracle == pytest.approx((5.0,))
    r1 = sp.reconcile(1, 0.5, 1, 1)
    assert r1.verdict == "dimension-mismatch" and r1.isotypic_dim == 0 and r1.formula_dim == 1
    r0 = sp.reconcile(0, 0.3, 1, 2)
    assert r0.verdict == "match" and r0.formula == () and r0.oracle == ()


def test_limit_diagnostics():
    out = sp.limit_diagnostics(1, (1, 3))
    low = [x for x in out if x.l == 0]
    assert [x.classification for x in low] == ["convergent", "convergent"]
    assert low[0].extrapolated == pytest.approx(2 / 3, rel=1e-5)
    assert low[1].extrapolated == pytest.approx(4, rel=1e-5)
    assert [x.classification for x in out if x.l > 0] == ["divergent"]
    mirrored = sp.limit_diagnostics(3, (3,))
    assert mirrored[0].extrapolated == pytest.approx(low[1].extrapolated, rel=1e-6)
    assert sp.omega1_m1(Fraction(0)) == Fraction(2, 3)
    with pytest.raises(InvalidInputError):
        sp.limit_diagnostics(1, (2,))
    with pytest.raises(InvalidInputError):
        sp.limit_diagnostics(2, (1,))


def test_m1_closed_expression_matches_matrix():
    for b in (Fraction(1, 7), HALF, Fraction(5, 6)):
        assert sp.omega1(1, b).exact_diag[0] == sp.omega1_m1(b)
