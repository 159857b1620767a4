import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isospec import q8
from isospec.errors import InvalidInputError
from isospec.q8 import (Q8, HomogeneousPolynomial as HP, PolySubspace, act_on_r4, character,
                        q8_multiply)

G = list(Q8)


def test_multiplication_table():
    assert q8_multiply(Q8.I, Q8.J) == Q8.K
    assert q8_multiply(Q8.J, Q8.I) == Q8.MINUS_K
    assert q8_multiply(Q8.MINUS_ONE, Q8.MINUS_ONE) == Q8.ONE
    for u in (Q8.I, Q8.J, Q8.K):
        assert u * u == Q8.MINUS_ONE
    assert Q8.parse("-j") == Q8.MINUS_J and str(Q8.MINUS_J) == "-j"
    with pytest.raises(InvalidInputError):
        Q8.parse("q")


def test_group_axioms():
    for a, b, c in itertools.product(G, repeat=3):
        assert (a * b) * c == a * (b * c)
    for g in G:
        assert g * q8.q8_inverse(g) == Q8.ONE
    assert q8.commutator_subgroup() == {Q8.ONE, Q8.MINUS_ONE}
    assert len(q8.subgroups_of_order(4)) == 3


@pytest.mark.parametrize("bundle", [1, 2, 3])
def test_characters_are_homomorphisms(bundle):
    for g, h in itertools.product(G, repeat=2):
        assert character(bundle, g * h) == character(bundle, g) * character(bundle, h)
    kernel = {g for g in G if character(bundle, g) == 1}
    assert frozenset(kernel) in q8.subgroups_of_order(4)


def test_character_values():
    assert character(1, Q8.J) == -1
    assert character(2, Q8.J) == 1
    assert all(character(b, Q8.ONE) == 1 for b in (1, 2, 3))
    with pytest.raises(InvalidInputError):
        character(4, Q8.ONE)


def x(i, n=4):
    e = [0] * n
    e[i] = 1
    return HP.monomial(tuple(e))


def test_action_examples():
    assert act_on_r4(Q8.MINUS_ONE, x(0)) == -x(0)
    norm = HP.from_dict(4, 2, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    for g in G:
        assert act_on_r4(g, norm) == norm
    f = HP.monomial((1, 0, 1, 0))
    assert act_on_r4(Q8.J, act_on_r4(Q8.J, f)) == act_on_r4(Q8.MINUS_ONE, f)
    # +-i row: f(x1, -x0, x3, -x2)
    assert act_on_r4(Q8.I, x(0)) == x(1)
    assert act_on_r4(Q8.I, x(1)) == -x(0)
    with pytest.raises(InvalidInputError):
        act_on_r4(Q8.I, x(0, 3))


poly4 = st.dictionaries(
    st.sampled_from(q8.monomial_basis(4, 3)), st.fractions(-5, 5, max_denominator=7), max_size=6
).map(lambda d: HP.from_dict(4, 3, d))


@settings(max_examples=25, deadline=None)
@given(poly4)
def test_action_is_a_group_action(f):
    for g, h in itertools.product(G, repeat=2):
        assert act_on_r4(g, act_on_r4(h, f)) == act_on_r4(g * h, f)


@settings(max_examples=25, deadline=None)
@given(poly4, st.sampled_from(G))
def test_laplacian_commutes_with_action(f, g):
    lap = q8.polynomial_laplacian
    assert lap(act_on_r4(g, f)) == act_on_r4(g, lap(f))


@settings(max_examples=25, deadline=None)
@given(poly4, st.sampled_from([1, 2, 3]))
def test_projection_idempotent_and_equivariant(f, bundle):
    p = q8.project_isotypic(f, bundle)
    assert q8.project_isotypic(p, bundle) == p
    assert q8.is_equivariant(p, bundle)


def test_isotypic_projection_of_pair():
    # f1 - f6 is the eta_1 direction only when n1 + n2 is even
    a = HP.monomial((2, 2, 0, 0))
    b = HP.monomial((0, 0, 2, 2))
    iso = q8.isotypic_projection(PolySubspace(4, 4, (a, b)), 1)
    assert iso.dim == 1 and iso.contains(a - b)
    # for n1 + n2 odd the same combination transforms by eta_2 instead
    x0x1 = HP.monomial((1, 1, 0, 0))
    x2x3 = HP.monomial((0, 0, 1, 1))
    pair = PolySubspace(4, 2, (x0x1, x2x3))
    assert q8.isotypic_projection(pair, 1).dim == 0
    assert q8.isotypic_projection(pair, 2).contains(x0x1 - x2x3)
    assert q8.isotypic_projection(PolySubspace.full(4, 2), 1).dim == 3


def _pair_monomial(first, second, n1, n2):
    e = [0, 0, 0, 0]
    for v in first:
        e[v] += n1
    for v in second:
        e[v] += n2
    return HP.monomial(tuple(e))


@pytest.mark.parametrize("n1,n2", [(1, 0), (2, 0), (2, 1), (3, 1), (0, 3)])
def test_two_pair_transformation_table(n1, n2):
    pairs = {1: ((0, 1), (2, 3)), 2: ((0, 2), (1, 3)), 3: ((0, 3), (1, 2)),
             4: ((1, 2), (0, 3)), 5: ((1, 3), (0, 2)), 6: ((2, 3), (0, 1))}
    f = {k: _pair_monomial(a, b, n1, n2) for k, (a, b) in pairs.items()}
    s = (-1) ** (n1 + n2)
    table = {  # Lambda_i, Lambda_j, Lambda_k
        1: ((s, 1), (s, 6), (1, 6)), 2: ((1, 5), (s, 2), (s, 5)), 3: ((s, 4), (1, 4), (s, 3)),
        4: ((s, 3), (1, 3), (s, 4)), 5: ((1, 2), (s, 5), (s, 2)), 6: ((s, 6), (s, 1), (1, 1)),
    }
    for k, row in table.items():
        for g, (sign, target) in zip((Q8.I, Q8.J, Q8.K), row):
            assert act_on_r4(g, f[k]) == f[target].scale(sign)


def test_orthogonal_characters():
    f = HP.monomial((1, 1, 0, 0))
    for a, b in itertools.permutations([1, 2, 3], 2):
        assert q8.project_isotypic(q8.project_isotypic(f, a), b).is_zero()


def test_subspace_validation():
    with pytest.raises(InvalidInputError):
        PolySubspace(4, 1, (x(0), x(0)))
    with pytest.raises(InvalidInputError):
        HP.from_dict(4, 2, {(1, 0, 0, 0): 1})
    with pytest.raises(InvalidInputError):
        HP.from_dict(5, 1, {(1, 0, 0, 0, 0): 1})


def test_laplacian_examples():
    lap = q8.polynomial_laplacian
    assert lap(HP.monomial((2, 0, 0, 0))) == HP.from_dict(4, 0, {(0, 0, 0, 0): 2})
    assert lap(HP.from_dict(4, 2, {(2, 0, 0, 0): 1, (0, 2, 0, 0): -1})).is_zero()
    assert lap(HP.monomial((4, 0, 0, 0))) == HP.monomial((2, 0, 0, 0), 12)
    assert lap(x(0)).is_zero()


def test_harmonic_dims():
    assert [q8.harmonic_dim(n, 4) for n in range(7)] == [(n + 1) ** 2 for n in range(7)]
    assert [q8.harmonic_dim(n, 3) for n in range(8)] == [2 * n + 1 for n in range(8)]
    assert q8.harmonic_dim(0, 4) == 1


def test_equivariant_dims():
    assert q8.equivariant_harmonic_dim(2, 1) == 3
    assert q8.equivariant_harmonic_dim(4, 1) == 5
    assert q8.equivariant_harmonic_dim(0, 1) == 0
    assert q8.equivariant_harmonic_dim(5, 1) == 0
    for d in range(0, 13, 2):
        dims = {q8.equivariant_harmonic_dim(d, b) for b in (1, 2, 3)}
        assert len(dims) == 1


def test_equivariant_dims_sum_with_trivial_and_spinor_parts():
    # P(n) splits over the five irreps of Q8; the sign characters' harmonic
    # parts together with the trivial one can never exceed (n+1)^2
    for n in (2, 4, 6):
        assert 3 * q8.equivariant_harmonic_dim(n, 1) <= (n + 1) ** 2


def test_antipodal():
    assert q8.antipodal_odd_harmonic_dim(1) == 3
    assert q8.antipodal_odd_harmonic_dim(2) == 0
    assert q8.antipodal_odd_harmonic_dim(5) == 11


def test_split_counts_against_formulas():
    for row in q8.dimension_table(6):
        l, m = row["l"], row["m"]
        assert row["two_pair_monomials"] == row["two_pair_formula"]
        assert row["d1_bruteforce"] == row["d1_formula_by_half_degree"]
        assert row["d2_bruteforce"] == row["d2_formula"]
        assert row["p1_bruteforce"] == row["p1_formula"]
        assert row["h1_bruteforce"] == row["h1_formula"]
        assert row["equal_pattern_isotypic"] == 0
        if m % 2 == 1:
            # the parity labels as printed give a non-integer here
            assert row["d1_formula_printed"] != row["d1_bruteforce"]
            assert row["d1_formula_printed"].denominator == 2


def test_mobius_and_circle():
    assert q8.mobius_spectrum(3) == [Fraction(1, 4), Fraction(9, 4), Fraction(25, 4)]
    assert q8.covering_spectrum(3, twisted=False) == [0, 1, 4]
    assert q8.mobius_spectrum(0) == []


def test_polynomial_evaluation_consistent_with_action():
    f = HP.from_dict(4, 2, {(1, 1, 0, 0): 3, (0, 0, 2, 0): Fraction(1, 2)})
    pt = (1, 2, 3, 5)
    # Lambda_i f (x) = f(x1, -x0, x3, -x2)
    assert act_on_r4(Q8.I, f)(*pt) == f(2, -1, 5, -3)
    assert math.isclose(float(f(*pt)), 3 * 2 + 4.5)
