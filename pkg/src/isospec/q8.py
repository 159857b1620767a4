"""The quaternion group Q8, its actions on polynomial spaces and exact dimension counts.

Eigensections of the bundle Laplacians pull back to functions on a covering
space that transform under the deck group by one of the sign characters of Q8
(or of Z2 for the projective planes).  Everything here is exact: polynomials
carry ``Fraction`` coefficients and kernels are computed by fraction-free
elimination.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidInputError
from .kernel import RationalMatrix, independent_subset, rational_kernel_dim, sparse_rank

BUNDLES = (1, 2, 3)


class Q8(enum.Enum):
    ONE = (1, "1")
    MINUS_ONE = (-1, "1")
    I = (1, "i")  # noqa: E741
    MINUS_I = (-1, "i")
    J = (1, "j")
    MINUS_J = (-1, "j")
    K = (1, "k")
    MINUS_K = (-1, "k")

    @property
    def sign(self):
        return self.value[0]

    @property
    def unit(self):
        return self.value[1]

    def __str__(self):
        return ("-" if self.sign < 0 else "") + self.unit

    @classmethod
    def parse(cls, text):
        text = text.strip()
        sign = -1 if text.startswith("-") else 1
        unit = text.lstrip("+-")
        try:
            return cls((sign, unit))
        except ValueError:
            raise InvalidInputError(f"not an element of Q8: {text!r}") from None

    def __mul__(self, other):
        return q8_multiply(self, other)


Q8Element = Q8
Q8_ELEMENTS = tuple(Q8)

_UNIT_TABLE = {
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
}


def q8_multiply(g: Q8, h: Q8) -> Q8:
    s = g.sign * h.sign
    if g.unit == "1":
        return Q8((s, h.unit))
    if h.unit == "1":
        return Q8((s, g.unit))
    if g.unit == h.unit:
        return Q8((-s, "1"))
    s2, u = _UNIT_TABLE[(g.unit, h.unit)]
    return Q8((s * s2, u))


def q8_inverse(g: Q8) -> Q8:
    if g.unit == "1":
        return g
    return Q8((-g.sign, g.unit))


def commutator_subgroup():
    return frozenset(q8_multiply(q8_multiply(g, h), q8_multiply(q8_inverse(g), q8_inverse(h)))
                     for g in Q8 for h in Q8)


def subgroups_of_order(order):
    """Subgroups of Q8 of a given order, found by closing every subset generated by two elements."""
    found = set()
    for g in Q8:
        for h in Q8:
            group = {Q8.ONE, g, h}
            while True:
                new = {q8_multiply(a, b) for a in group for b in group} | group
                if new == group:
                    break
                group = new
            if len(group) == order:
                found.add(frozenset(group))
    return found


def character(bundle: int, g: Q8) -> int:
    """Sign character of the line bundle eta_bundle; its kernel is {+-1, +-u}."""
    if bundle not in BUNDLES:
        raise InvalidInputError(f"bundle must be 1, 2 or 3, got {bundle!r}")
    kernel_unit = "ijk"[bundle - 1]
    return 1 if g.unit in ("1", kernel_unit) else -1


# ----------------------------------------------------------------------------
# homogeneous polynomials


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple:
    """Exponent tuples of total degree ``degree``, lexicographically descending."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomial_basis(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {e: i for i, e in enumerate(monomial_basis(nvars, degree))}


@dataclass(frozen=True)
class HomogeneousPolynomial:
    nvars: int
    degree: int
    terms: tuple  # ((exponents, Fraction), ...) in monomial_basis order, no zeros

    @classmethod
    def from_dict(cls, nvars, degree, coeffs):
        if nvars not in (3, 4):
            raise InvalidInputError(f"polynomials live in 3 or 4 variables, got {nvars}")
        terms = {}
        for e, c in coeffs.items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars or any(v < 0 for v in e) or sum(e) != degree:
                raise InvalidInputError(f"monomial {e} is not of degree {degree} in {nvars} variables")
            c = Fraction(c)
            if c:
                terms[e] = terms.get(e, Fraction(0)) + c
        order = monomial_index(nvars, degree)
        items = sorted(((e, c) for e, c in terms.items() if c), key=lambda t: order[t[0]])
        return cls(nvars, degree, tuple(items))

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls.from_dict(len(exps), sum(exps), {tuple(exps): coeff})

    @classmethod
    def zero(cls, nvars, degree):
        return cls(nvars, degree, ())

    @property
    def coeffs(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise InvalidInputError("polynomials of different shape")

    def __add__(self, other):
        self._check(other)
        d = self.coeffs
        for e, c in other.terms:
            d[e] = d.get(e, Fraction(0)) + c
        return HomogeneousPolynomial.from_dict(self.nvars, self.degree, d)

    def __neg__(self):
        return HomogeneousPolynomial(self.nvars, self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = Fraction(s)
        if not s:
            return HomogeneousPolynomial.zero(self.nvars, self.degree)
        return HomogeneousPolynomial(self.nvars, self.degree, tuple((e, c * s) for e, c in self.terms))

    def __rmul__(self, s):
        return self.scale(s)

    def __call__(self, *x):
        total = 0
        for e, c in self.terms:
            term = c
            for xi, ei in zip(x, e):
                term *= xi ** ei
            total += term
        return total

    def vector(self):
        """Coefficient vector in the monomial basis."""
        v = [Fraction(0)] * len(monomial_basis(self.nvars, self.degree))
        idx = monomial_index(self.nvars, self.degree)
        for e, c in self.terms:
            v[idx[e]] = c
        return v

    def sparse(self):
        idx = monomial_index(self.nvars, self.degree)
        return {idx[e]: c for e, c in self.terms}


@dataclass(frozen=True)
class PolySubspace:
    nvars: int
    degree: int
    basis: tuple

    def __post_init__(self):
        for f in self.basis:
            if (f.nvars, f.degree) != (self.nvars, self.degree):
                raise InvalidInputError("basis polynomial of the wrong shape")
        if len(independent_subset([f.vector() for f in self.basis])) != len(self.basis):
            raise InvalidInputError("basis is not linearly independent")

    @classmethod
    def full(cls, nvars, degree):
        return cls(nvars, degree, tuple(HomogeneousPolynomial.monomial(e) for e in monomial_basis(nvars, degree)))

    @classmethod
    def spanned_by(cls, nvars, degree, polys):
        polys = list(polys)
        keep = independent_subset([f.vector() for f in polys])
        return cls(nvars, degree, tuple(polys[k] for k in keep))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, f):
        vecs = [g.vector() for g in self.basis]
        return len(independent_subset(vecs + [f.vector()])) == len(vecs)


# Substitution x -> A_g x of the left-multiplication action on R^4 = H:
# entry i is (sign, source variable) of the i-th new argument.
_R4_SUBSTITUTION = {
    "1": ((1, 0), (1, 1), (1, 2), (1, 3)),
    "i": ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    "j": ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    "k": ((1, 3), (1, 2), (-1, 1), (-1, 0)),
}


def _act_monomial(g: Q8, exps):
    sub = _R4_SUBSTITUTION[g.unit]
    new = [0, 0, 0, 0]
    sign = 1
    for (s, src), e in zip(sub, exps):
        new[src] += e
        if s * g.sign < 0 and e % 2:
            sign = -sign
    return tuple(new), sign


def act_on_r4(g: Q8, f: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """(Lambda_g f)(x) = f(A_g x) for the left-multiplication action of Q8 on H = R^4."""
    if f.nvars != 4:
        raise InvalidInputError(f"the Q8 action needs 4 variables, got {f.nvars}")
    d = {}
    for e, c in f.terms:
        ne, s = _act_monomial(g, e)
        d[ne] = d.get(ne, Fraction(0)) + s * c
    return HomogeneousPolynomial.from_dict(4, f.degree, d)


def antipodal(f: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """f(-x); the deck transformation of S^2 over RP(2)."""
    return f if f.degree % 2 == 0 else -f


def project_isotypic(f: HomogeneousPolynomial, bundle: int) -> HomogeneousPolynomial:
    """(1/8) sum_g chi(g) Lambda_g f."""
    d = {}
    for g in Q8:
        chi = character(bundle, g)
        for e, c in act_on_r4(g, f).terms:
            d[e] = d.get(e, Fraction(0)) + chi * c
    return HomogeneousPolynomial.from_dict(4, f.degree, d).scale(Fraction(1, 8))


def isotypic_projection(space: PolySubspace, bundle: int) -> PolySubspace:
    """Basis of {f in space : Lambda_g f = chi(g) f for all g}; ``space`` must be Q8-stable."""
    images = [project_isotypic(f, bundle) for f in space.basis]
    return PolySubspace.spanned_by(space.nvars, space.degree, images)


def is_equivariant(f: HomogeneousPolynomial, bundle: int) -> bool:
    return all(act_on_r4(g, f) == f.scale(character(bundle, g)) for g in Q8)


def isotypic_basis(degree: int, bundle: int) -> tuple:
    """Isotypic basis of P(degree) on R^4 built orbit by orbit.

    Q8 permutes monomials up to sign, so projecting one representative per orbit
    yields polynomials with disjoint supports: a basis with no elimination.
    """
    seen = set()
    out = []
    for e in monomial_basis(4, degree):
        if e in seen:
            continue
        seen.update(_act_monomial(g, e)[0] for g in Q8)
        p = project_isotypic(HomogeneousPolynomial.monomial(e), bundle)
        if not p.is_zero():
            out.append(p)
    return tuple(out)


def polynomial_laplacian(f: HomogeneousPolynomial) -> HomogeneousPolynomial:
    if f.degree < 2:
        return HomogeneousPolynomial.zero(f.nvars, max(f.degree - 2, 0))
    d = {}
    for e, c in f.terms:
        for i, ei in enumerate(e):
            if ei >= 2:
                ne = list(e)
                ne[i] -= 2
                ne = tuple(ne)
                d[ne] = d.get(ne, Fraction(0)) + c * ei * (ei - 1)
    return HomogeneousPolynomial.from_dict(f.nvars, f.degree - 2, d)


def laplacian_matrix(nvars: int, degree: int) -> RationalMatrix:
    """Matrix of the Laplacian P(degree) -> P(degree - 2) in the monomial bases."""
    rows = len(monomial_basis(nvars, degree - 2))
    cols = [polynomial_laplacian(HomogeneousPolynomial.monomial(e)).sparse() if degree >= 2 else {}
            for e in monomial_basis(nvars, degree)]
    return RationalMatrix.from_sparse_columns(rows, cols)


def harmonic_dim(n: int, nvars: int = 4) -> int:
    """dim of the harmonic polynomials of degree n, as the exact kernel of the Laplacian."""
    if n < 0:
        raise InvalidInputError("degree must be non-negative")
    return rational_kernel_dim(laplacian_matrix(nvars, n))


def _harmonic_dim_of(basis) -> int:
    """dim of the harmonic part of span(basis), given a Laplacian-stable subspace."""
    images = [polynomial_laplacian(f).sparse() for f in basis]
    return len(basis) - sparse_rank(images)


def equivariant_harmonic_dim(degree: int, bundle: int) -> int:
    """dim of the degree-``degree`` harmonic polynomials on R^4 transforming by eta_bundle."""
    if degree < 0:
        raise InvalidInputError("degree must be non-negative")
    return _harmonic_dim_of(isotypic_basis(degree, bundle))


def isotypic_polynomial_dim(degree: int, bundle: int) -> int:
    return len(isotypic_basis(degree, bundle))


def antipodal_odd_harmonic_dim(n: int) -> int:
    """Harmonic polynomials on R^3 of degree n with f(-x) = -f(x)."""
    if n < 0:
        raise InvalidInputError("degree must be non-negative")
    basis = []
    for e in monomial_basis(3, n):
        f = HomogeneousPolynomial.monomial(e)
        p = (f - antipodal(f)).scale(Fraction(1, 2))
        if not p.is_zero():
            basis.append(p)
    return _harmonic_dim_of(basis)


# ----------------------------------------------------------------------------
# dimension bookkeeping by exponent pattern


def exponent_pattern(exps) -> str:
    """'equal' (a,a,a,a), 'two_pair' ({a,a,b,b}, a != b) or 'other'."""
    s = sorted(exps)
    if s[0] == s[3]:
        return "equal"
    if s[0] == s[1] and s[2] == s[3]:
        return "two_pair"
    return "other"


@dataclass(frozen=True)
class PatternDims:
    degree: int
    bundle: int
    monomials: dict  # pattern -> number of monomials in P(degree)
    isotypic: dict  # pattern -> dim of the isotypic part

    @property
    def total(self):
        return sum(self.isotypic.values())


def isotypic_split_dims(degree: int, bundle: int = 1) -> PatternDims:
    monos = {"equal": 0, "two_pair": 0, "other": 0}
    iso = dict(monos)
    for e in monomial_basis(4, degree):
        monos[exponent_pattern(e)] += 1
    for p in isotypic_basis(degree, bundle):
        e = p.terms[0][0]
        iso[exponent_pattern(e)] += 1
    return PatternDims(degree, bundle, monos, iso)


def two_pair_dim_formula(l):
    if l % 4 == 0:
        return Fraction(3 * l, 2)
    if l % 4 == 2:
        return Fraction(3 * (l + 2), 2)
    return None


def other_dim_formula(l):
    base = math.comb(l + 3, 3)
    if l % 4 == 0:
        return base - Fraction(3 * l + 2, 2)
    if l % 4 == 2:
        return base - Fraction(3 * l + 6, 2)
    return None


def d1_formula(l, labels="printed"):
    """Two-pair isotypic count.

    ``labels="printed"`` applies the case split on the parity of l exactly as
    tabulated; ``"by_half_degree"`` splits on l = 0 or 2 (mod 4) instead.
    """
    if labels == "printed":
        return Fraction(l, 4) if l % 2 == 0 else Fraction(l + 2, 2)
    if labels == "by_half_degree":
        return Fraction(l, 4) if l % 4 == 0 else Fraction(l + 2, 2)
    raise InvalidInputError(f"unknown labels {labels!r}")


def d2_formula(m):
    if m == 0:
        return Fraction(0)
    if m % 2:
        return 2 * math.comb(m + 2, 3) - Fraction(m + 1, 2)
    return 2 * math.comb(m + 2, 3) - Fraction(m, 2)


def p1_dim_formula(m):
    if m == 0:
        return Fraction(0)
    if m % 2:
        return 2 * math.comb(m + 2, 3) + Fraction(m + 1, 2)
    return Fraction(2 * math.comb(m + 2, 3))


def h1_dim_formula(m):
    """Tabulated dimension of the eta_1 harmonic polynomials of degree 2m."""
    if m % 2 == 0:
        return Fraction(m * (2 * m + 1), 2)
    return Fraction((m + 1) * (2 * m + 1), 2)


def dimension_table(m_max: int, bundle: int = 1):
    """Brute-force counts against the tabulated formulas for degrees l = 2m."""
    rows = []
    for m in range(m_max + 1):
        l = 2 * m
        split = isotypic_split_dims(l, bundle)
        rows.append({
            "m": m,
            "l": l,
            "two_pair_monomials": split.monomials["two_pair"],
            "two_pair_formula": two_pair_dim_formula(l),
            "d1_bruteforce": split.isotypic["two_pair"],
            "d1_formula_printed": d1_formula(l, "printed"),
            "d1_formula_by_half_degree": d1_formula(l, "by_half_degree"),
            "equal_pattern_isotypic": split.isotypic["equal"],
            "d2_bruteforce": split.isotypic["other"],
            "d2_formula": d2_formula(m),
            "other_quarter": Fraction(split.monomials["other"] + split.monomials["equal"], 4),
            "p1_bruteforce": split.total,
            "p1_formula": p1_dim_formula(m),
            "h1_bruteforce": equivariant_harmonic_dim(l, bundle),
            "h1_formula": h1_dim_formula(m),
        })
    return rows


# ----------------------------------------------------------------------------
# one-dimensional sanity oracle: sections of the Moebius band


def covering_spectrum(n_max: int, twisted: bool = True):
    """Laplacian spectrum on a circle of length 2 pi via its double cover.

    Cover eigenfunctions cos(k t/2), sin(k t/2) have eigenvalue (k/2)^2 and
    deck sign (-1)^k.  Twisted (Moebius) sections keep the odd k, functions on
    the base circle the even k.  Returns the first ``n_max`` distinct values.
    """
    want = -1 if twisted else 1
    out = []
    k = 0
    while len(out) < n_max:
        if (-1) ** k == want:
            out.append(Fraction(k, 2) ** 2)
        k += 1
    return out


def mobius_spectrum(n_max: int):
    return covering_spectrum(n_max, twisted=True)
