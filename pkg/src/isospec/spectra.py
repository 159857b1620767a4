"""Representation-theoretic spectra of the bundle Laplacians on the leaves F(b).

The Laplacian on eta_i restricted to F(b) is block diagonal over the Sp(1)
irreps Q_m; on each block it is the anisotropic Casimir
-(c_i rho(i)^2 + c_j rho(j)^2 + c_k rho(k)^2) cut down to the subspace that
transforms by the bundle character.  Two routes are offered:

* the tabulated tridiagonal matrices ``omega1``/``omega2``/``omega3``, and
* an independent oracle (``isotypic_casimir``) assembled from the generators
  and the Q8 action on Q_m.

``reconcile`` compares the two and reports disagreements as findings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import q8 as _q8
from .errors import DomainError, InvalidInputError, SingularCoefficientError
from .kernel import DenseSymmetric, SymTridiagonal, eigvals_dense_symmetric, eigvals_tridiagonal

VARIANTS = ("printed", "corrected")
MATCH_TOL = 1e-9


# ----------------------------------------------------------------------------
# Sp(1) generators on Q_m


@dataclass(frozen=True, eq=False)
class GeneratorMatrices:
    m: int
    rho_i: np.ndarray
    rho_j: np.ndarray
    rho_k: np.ndarray

    def as_tuple(self):
        return (self.rho_i, self.rho_j, self.rho_k)

    def bracket_residual(self):
        """max |[a, b] - 2c| over the cyclic triples (i, j, k)."""
        a, b, c = self.as_tuple()
        res = 0.0
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            res = max(res, float(np.max(np.abs(x @ y - y @ x - 2.0 * z), initial=0.0)))
        return res

    def skew_residual(self):
        return max(float(np.max(np.abs(x + x.conj().T), initial=0.0)) for x in self.as_tuple())


def _check_m(m, lo=0):
    if int(m) != m or m < lo:
        raise InvalidInputError(f"m must be an integer >= {lo}, got {m!r}")
    return int(m)


def monomial_generators(m: int) -> GeneratorMatrices:
    """Generators acting on the monomials e_k = z1^k z2^(m-k), entries as displayed:

    rho(i) e_k = k e_{k-1} - (m-k) e_{k+1}
    rho(j) e_k = i (m-2k) e_k
    rho(k) e_k = -i (k e_{k-1} + (m-k) e_{k+1})
    """
    m = _check_m(m)
    n = m + 1
    ri = np.zeros((n, n), dtype=complex)
    rj = np.zeros((n, n), dtype=complex)
    rk = np.zeros((n, n), dtype=complex)
    for k in range(n):
        rj[k, k] = 1j * (m - 2 * k)
        if k >= 1:
            ri[k - 1, k] = k
            rk[k - 1, k] = -1j * k
        if k + 1 <= m:
            ri[k + 1, k] = -(m - k)
            rk[k + 1, k] = -1j * (m - k)
    return GeneratorMatrices(m, ri, rj, rk)


def generator_matrices(m: int) -> GeneratorMatrices:
    """Generators in the orthonormal basis u_k = e_k / sqrt(k! (m-k)!).

    Same operators as ``monomial_generators`` (conjugated by the diagonal
    weights), but anti-Hermitian as matrices.
    """
    m = _check_m(m)
    n = m + 1
    ri = np.zeros((n, n), dtype=complex)
    rj = np.zeros((n, n), dtype=complex)
    rk = np.zeros((n, n), dtype=complex)
    for k in range(n):
        rj[k, k] = 1j * (m - 2 * k)
        if k >= 1:
            w = math.sqrt(k * (m - k + 1))
            ri[k - 1, k] = w
            rk[k - 1, k] = -1j * w
        if k + 1 <= m:
            w = math.sqrt((k + 1) * (m - k))
            ri[k + 1, k] = -w
            rk[k + 1, k] = -1j * w
    return GeneratorMatrices(m, ri, rj, rk)


@dataclass(frozen=True)
class LaplacianCoefficients:
    c_i: float
    c_j: float
    c_k: float

    def as_tuple(self):
        return (self.c_i, self.c_j, self.c_k)


def _check_b(b):
    if b == 0 or b == 1:
        raise SingularCoefficientError(f"b = {b} is a focal value; the Laplacian coefficients blow up")
    if not 0 < b < 1:
        raise DomainError(f"b must lie in (0, 1), got {b!r}")


def _check_r(r):
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")


def laplacian_coefficients(b, r=1.0) -> LaplacianCoefficients:
    """c = ((1 - b + b^2) / (3 r^2)) * ((1-b)^-2, 1, b^-2); exact for rational b, r."""
    _check_b(b)
    _check_r(r)
    w = (1 - b + b * b) / (3 * r * r)
    return LaplacianCoefficients(w / (1 - b) ** 2, w, w / (b * b))


def full_casimir(m: int, b, r=1.0) -> DenseSymmetric:
    g = generator_matrices(m)
    c = laplacian_coefficients(b, r)
    op = -(float(c.c_i) * g.rho_i @ g.rho_i + float(c.c_j) * g.rho_j @ g.rho_j
           + float(c.c_k) * g.rho_k @ g.rho_k)
    scale = max(1.0, float(np.max(np.abs(op), initial=0.0)))
    if float(np.max(np.abs(op.imag), initial=0.0)) > 1e-12 * scale:
        raise InvalidInputError("Casimir assembly left an imaginary residue")
    return DenseSymmetric(op.real)


def q8_action_on_Qm(g, m: int) -> np.ndarray:
    """Matrix of Lambda_g on Q_m in the u_k basis (k = power of z1).

    +-1: f(+-z1, +-z2);  +-i: f(+-z2, -+z1);  +-j: f(-+i z1, +-i z2);  +-k: f(-+i z2, -+i z1)
    """
    m = _check_m(m)
    if isinstance(g, str):
        g = _q8.Q8.parse(g)
    s = g.sign
    n = m + 1
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        if g.unit == "1":
            out[k, k] = s ** m
        elif g.unit == "i":
            # (s z2)^k (-s z1)^(m-k) = s^k (-s)^(m-k) z1^(m-k) z2^k
            out[m - k, k] = s ** k * (-s) ** (m - k)
        elif g.unit == "j":
            out[k, k] = (-s * 1j) ** k * (s * 1j) ** (m - k)
        else:
            out[m - k, k] = (-s * 1j) ** m
    return out


def isotypic_projector(m: int, bundle: int) -> np.ndarray:
    p = sum(_q8.character(bundle, g) * q8_action_on_Qm(g, m) for g in _q8.Q8) / 8.0
    if float(np.max(np.abs(p.imag), initial=0.0)) > 1e-12:
        raise InvalidInputError("isotypic projector is not real")
    return p.real


def isotypic_basis_Qm(m: int, bundle: int) -> np.ndarray:
    """Orthonormal columns spanning the eta_bundle-isotypic subspace of Q_m."""
    p = isotypic_projector(m, bundle)
    w, v = np.linalg.eigh(0.5 * (p + p.T))
    return v[:, w > 0.5]


def isotypic_casimir(m: int, b, r=1.0, bundle: int = 1) -> DenseSymmetric:
    """Oracle: full_casimir restricted to the isotypic part of Q_m (0x0 when it is trivial)."""
    c = full_casimir(m, b, r).entries
    basis = isotypic_basis_Qm(m, bundle)
    return DenseSymmetric(basis.T @ c @ basis)


# ----------------------------------------------------------------------------
# the tabulated tridiagonal Casimir matrices


def _is_exact(*xs):
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in xs)


@dataclass(frozen=True)
class CasimirMatrix:
    bundle: int
    m: int
    b: object
    r: object
    matrix: SymTridiagonal
    variant: str = "printed"
    # rational mode: diagonal entries as Fractions and off-diagonals as
    # (coefficient, radicand) pairs meaning coefficient * sqrt(radicand)
    exact_diag: tuple | None = field(default=None, compare=False)
    exact_offdiag: tuple | None = field(default=None, compare=False)

    @property
    def size(self):
        return self.matrix.n

    @property
    def is_exact(self):
        return self.exact_diag is not None

    def eigvals(self):
        return eigvals_tridiagonal(self.matrix)

    def offdiag_exactly_zero(self):
        if not self.is_exact:
            raise InvalidInputError("matrix was built in floating point; pass rational b and r")
        return all(c == 0 for c, _ in self.exact_offdiag)

    def exact_eigvals(self):
        """Exact eigenvalues of a diagonal matrix in rational mode."""
        if not self.offdiag_exactly_zero():
            raise InvalidInputError("exact eigenvalues are only available for diagonal matrices")
        return sorted(self.exact_diag)


def _check_variant(variant):
    if variant not in VARIANTS:
        raise InvalidInputError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _prefactors(b):
    s = (1 - b + b * b) / 3
    q = (1 - 2 * b + 2 * b * b) / (2 * b * b * (1 - b) ** 2)
    o = (1 - b + b * b) * (1 - 2 * b) / (6 * b * b * (1 - b) ** 2)
    return s, q, o


def _omega1_entries(m, b, variant):
    s, q, o = _prefactors(b)
    diag, off = [], []
    if m % 2:
        n = (m + 1) // 2
        for i in range(n):
            if i == n - 1:
                diag.append(s * (Fraction((m - 1) * (m + 2), 4) / (b * b)
                                 + Fraction(3 * m * m + 3 * m - 2, 4) / (1 - b) ** 2 + 1))
            else:
                diag.append(s * (q * (4 * i * (m - i) + m) + (2 * i - m) ** 2))
        for i in range(n - 1):
            off.append((o, (i + 1) * (m - i) * (2 * i + 1) * (2 * m - 2 * i - 1)))
    else:
        n = m // 2
        for i in range(n):
            if i == n - 1:
                diag.append(s * (Fraction(3 * m * m + 3 * m - 2, 4) / (b * b)
                                 + Fraction((m - 1) * (m + 2), 4) / (1 - b) ** 2 + 1))
            else:
                tail = 2 * m - 2 * i + 1 if variant == "printed" else 2 * m - 2 * i - 1
                diag.append(s * (q * ((2 * i + 1) * tail + m) + (2 * i + 1 - m) ** 2))
        for i in range(n - 1):
            off.append((o, (i + 1) * (m - i - 1) * (2 * i + 3) * (2 * m - 2 * i - 1)))
    return diag, off


def _omega2_entries(m, b, variant):
    s, q, o = _prefactors(b)
    diag, off = [], []
    if m % 2:
        n = (m + 1) // 2
        for i in range(n):
            diag.append(s * ((4 * i * (m - i - 1) + 3 * m - 1) * q + (m - 2 * i - 1) ** 2))
        for i in range(n - 1):
            if i + 1 == n - 1:
                # o / sqrt(2) * sqrt(R) == (o / 2) * sqrt(2 R)
                off.append((o / 2, 2 * (m - 1) * m * (m + 1) * (m + 2)))
            else:
                off.append((o, (i + 1) * (2 * i + 3) * (m - i - 1) * (2 * m - 2 * i - 1)))
    else:
        n = m // 2
        if variant == "printed":
            q2 = (1 - 2 * b + b * b) / (2 * b * b * (1 - b) ** 2)
        else:
            q2 = q
        for i in range(n):
            diag.append(s * ((4 * i * (m - i) + m) * q2 + (m - 2 * i) ** 2))
        for i in range(n - 1):
            off.append((o, (i + 1) * (2 * i + 1) * (m - i) * (2 * m - 2 * i - 1)))
    return diag, off


def _assemble(bundle, m, b, r, variant, entries, exact, b_label=None):
    m = _check_m(m, 1)
    _check_variant(variant)
    _check_b(b)
    _check_r(r)
    if exact is None:
        exact = _is_exact(b, r)
    if exact:
        b, r = Fraction(b), Fraction(r)
    diag, off = entries(m, b, variant)
    r2 = r * r
    diag = [d / r2 for d in diag]
    off = [(c / r2, rad) for c, rad in off]
    tri = SymTridiagonal([float(d) for d in diag], [float(c) * math.sqrt(rad) for c, rad in off])
    return CasimirMatrix(
        bundle, m, b if b_label is None else b_label, r, tri, variant,
        tuple(diag) if exact else None, tuple(off) if exact else None,
    )


def omega1(m: int, b, r=1, variant: str = "printed", exact=None) -> CasimirMatrix:
    """Tridiagonal Casimir matrix of the eta_1 Laplacian on Q_m, entries divided by r^2.

    ``variant="corrected"`` replaces the factor (2m - 2i + 1) of the even-m
    interior diagonal by (2m - 2i - 1).  Rational b and r (int or Fraction)
    switch on exact arithmetic unless ``exact`` says otherwise.
    """
    return _assemble(1, m, b, r, variant, _omega1_entries, exact)


def omega2(m: int, b, r=1, variant: str = "printed", exact=None) -> CasimirMatrix:
    """Tridiagonal Casimir matrix of the eta_2 Laplacian on Q_m.

    ``variant="corrected"`` uses 1 - 2b + 2b^2 in the even-m diagonal where the
    table has 1 - 2b + b^2.
    """
    return _assemble(2, m, b, r, variant, _omega2_entries, exact)


def omega3(m: int, b, r=1, variant: str = "printed", exact=None) -> CasimirMatrix:
    """omega1 evaluated at 1 - b."""
    _check_b(b)
    return _assemble(3, m, 1 - b, r, variant, _omega1_entries, exact, b_label=b)


OMEGA = {1: omega1, 2: omega2, 3: omega3}


def omega(bundle: int, m: int, b, r=1, variant: str = "printed", exact=None) -> CasimirMatrix:
    if bundle not in OMEGA:
        raise InvalidInputError(f"bundle must be 1, 2 or 3, got {bundle!r}")
    return OMEGA[bundle](m, b, r, variant, exact)


def omega_size(m: int) -> int:
    return (m + 1) // 2 if m % 2 else m // 2


# ----------------------------------------------------------------------------
# closed forms


def _half_odd(m, l):
    return Fraction(m * m, 4) + 3 * l * m - 3 * l * l + m


def _half_even(m, l):
    return Fraction(m * m, 4) + 3 * l * m - 3 * l * l + Fraction(5 * m, 2) - 3 * l - Fraction(3, 4)


def closed_form_half(bundle: int, m: int) -> list:
    """Exact eigenvalues at b = 1/2, r = 1, ascending."""
    m = _check_m(m, 1)
    if bundle not in (1, 2, 3):
        raise InvalidInputError(f"bundle must be 1, 2 or 3, got {bundle!r}")
    odd = m % 2 == 1
    use_odd_formula = odd if bundle in (1, 3) else not odd
    f = _half_odd if use_odd_formula else _half_even
    return sorted(f(m, l) for l in range(omega_size(m)))


def _scaled(value, r):
    if _is_exact(r):
        return Fraction(value) / (Fraction(r) ** 2)
    return float(value) / (r * r)


def projective_spectrum(n_max: int, r0=1):
    """(eigenvalue, multiplicity) of the eta_1 Laplacian on the focal projective plane."""
    if n_max < 1:
        raise InvalidInputError("n_max must be >= 1")
    _check_r(r0)
    return [(_scaled(Fraction(n * (n + 1), 3), r0), 2 * n + 1) for n in range(1, n_max + 1, 2)]


def constant_curvature_spectrum(n_max: int, r=1):
    """(eigenvalue, multiplicity): lambda_n = (n+1)(n+2)/r^2, mult (n//2 + 1)(2n + 3)."""
    if n_max < 0:
        raise InvalidInputError("n_max must be >= 0")
    _check_r(r)
    return [(_scaled((n + 1) * (n + 2), r), (n // 2 + 1) * (2 * n + 3)) for n in range(n_max + 1)]


def constant_curvature_comparison(n_max: int, r=1):
    """The tabulated sequence next to the brute-force harmonic count at degree 2(n+1).

    ``harmonic_eigenvalue`` is the round-sphere value l(l+2)/r^2 at l = 2(n+1);
    it differs from the tabulated eigenvalue by a factor 4, which depends on
    the metric normalization and is reported rather than reconciled.
    """
    rows = []
    for (lam, mult), n in zip(constant_curvature_spectrum(n_max, r), range(n_max + 1)):
        m = n + 1
        rows.append({
            "n": n,
            "eigenvalue": lam,
            "multiplicity": mult,
            "h1_dim_formula": _q8.h1_dim_formula(m),
            "h1_dim_bruteforce": _q8.equivariant_harmonic_dim(2 * m, 1),
            "harmonic_eigenvalue": _scaled(4 * m * (m + 1), r),
        })
    return rows


# ----------------------------------------------------------------------------
# spectra over many m


@dataclass(frozen=True)
class SpectralLine:
    bundle: int
    m: int
    l: int
    b: float
    eigenvalue: float
    multiplicity: int


def spectrum(bundle: int, m_max: int, b, r=1, variant: str = "printed"):
    lines = []
    for m in range(1, m_max + 1):
        for l, lam in enumerate(omega(bundle, m, b, r, variant, exact=False).eigvals()):
            lines.append(SpectralLine(bundle, m, l, float(b), lam, m + 1))
    lines.sort(key=lambda s: (s.eigenvalue, s.m, s.l))
    return lines


# ----------------------------------------------------------------------------
# reconciliation between the tables and the oracle


@dataclass(frozen=True)
class ReconciliationReport:
    m: int
    b: float
    bundle: int
    formula: tuple
    oracle: tuple
    isotypic_dim: int
    max_difference: float | None
    verdict: str

    @property
    def formula_dim(self):
        return len(self.formula)


def reconcile(m: int, b, r=1, bundle: int = 1, variant: str = "printed") -> ReconciliationReport:
    """Compare the tabulated matrix with the isotypic oracle; disagreement is a finding, not an error."""
    m = _check_m(m)
    formula = tuple(omega(bundle, m, b, r, variant, exact=False).eigvals()) if m >= 1 else ()
    oracle_m = isotypic_casimir(m, float(b), float(r), bundle)
    oracle = tuple(eigvals_dense_symmetric(oracle_m)) if oracle_m.n else ()
    if len(formula) != len(oracle):
        return ReconciliationReport(m, float(b), bundle, formula, oracle, len(oracle), None, "dimension-mismatch")
    diff = max((abs(x - y) for x, y in zip(formula, oracle)), default=0.0)
    verdict = "match" if diff < MATCH_TOL else "value-mismatch"
    return ReconciliationReport(m, float(b), bundle, formula, oracle, len(oracle), diff, verdict)


def reconciliation_table(m_max=8, b_values=(0.25, 0.5, 0.75), r=1, bundles=(1, 2, 3), variant="printed"):
    return [reconcile(m, b, r, bundle, variant)
            for bundle in bundles for m in range(0, m_max + 1) for b in b_values]


# ----------------------------------------------------------------------------
# symmetry reports


def symmetric_grid(points=21):
    """k / (points + 1), k = 1..points: closed under b -> 1 - b."""
    return [Fraction(k, points + 1) for k in range(1, points + 1)]


@dataclass(frozen=True)
class SymmetryLine:
    m: int
    variant: str
    max_asymmetry: float
    worst_b: float

    @property
    def symmetric(self):
        return self.max_asymmetry < 1e-9


def bundle2_symmetry_report(m_max=12, points=21, r=1, variants=VARIANTS):
    """max |eig(omega2(b)) - eig(omega2(1 - b))| per m and variant."""
    out = []
    grid = symmetric_grid(points)
    for variant in variants:
        for m in range(1, m_max + 1):
            worst, worst_b = 0.0, float(grid[0])
            for b in grid:
                a = omega2(m, float(b), r, variant).eigvals()
                c = omega2(m, float(1 - b), r, variant).eigvals()
                d = max(abs(x - y) / max(1.0, abs(x)) for x, y in zip(a, c))
                if d > worst:
                    worst, worst_b = d, float(b)
            out.append(SymmetryLine(m, variant, worst, worst_b))
    return out


def bundle3_reflection_residual(m_max=12, points=21, r=1, variant="printed"):
    """max relative |eig(omega3(b)) - eig(omega1(1 - b))| over the symmetric grid."""
    worst = 0.0
    for m in range(1, m_max + 1):
        for b in symmetric_grid(points):
            a = omega3(m, float(b), r, variant).eigvals()
            c = omega1(m, float(1 - b), r, variant).eigvals()
            worst = max(worst, max(abs(x - y) / max(1.0, abs(x)) for x, y in zip(a, c)))
    return worst


# ----------------------------------------------------------------------------
# focal limits


LIMIT_SEQUENCE = (1e-1, 1e-2, 1e-3, 1e-4)


def omega1_m1(b, r=1):
    """The single entry of omega1 for m = 1, in a form that also holds at b = 0."""
    return (1 - b + b * b) * (1 + (1 - b) ** 2) / (3 * (1 - b) ** 2 * r * r)


@dataclass(frozen=True)
class BranchLimit:
    m: int
    l: int
    samples: tuple  # ((distance to focal value, eigenvalue), ...)
    half_value: float
    extrapolated: float | None
    expected: float | None
    relative_error: float | None
    classification: str  # "convergent" or "divergent" (or "bounded" if neither)


def limit_diagnostics(bundle: int = 1, m_list=(1, 3, 5), r=1.0, variant="printed", tol=0.005):
    """Flow of the omega_m branches towards the focal set.

    Bundle 1 is followed to b -> 0 and bundle 3 to b -> 1.  The lowest branch
    is Richardson-extrapolated (step ratio 10) and compared with the projective
    spectrum; the others are tested for growth beyond 10 times their b = 1/2
    value by distance 1e-3.
    """
    if bundle not in (1, 3):
        raise InvalidInputError("limits are defined for bundles 1 and 3")
    out = []
    for m in m_list:
        m = _check_m(m, 1)
        if m % 2 == 0:
            raise InvalidInputError(f"limit diagnostics need odd m, got {m}")
        half = omega(bundle, m, 0.5, r, variant, exact=False).eigvals()
        curves = []
        for d in LIMIT_SEQUENCE:
            b = d if bundle == 1 else 1.0 - d
            curves.append(omega(bundle, m, b, r, variant, exact=False).eigvals())
        for l in range(len(half)):
            samples = tuple((d, c[l]) for d, c in zip(LIMIT_SEQUENCE, curves))
            vals = [v for _, v in samples]
            if l == 0:
                ext = (10.0 * vals[-1] - vals[-2]) / 9.0
                expected = m * (m + 1) / (3.0 * r * r)
                rel = abs(ext - expected) / expected
                cls = "convergent" if rel < tol else "bounded"
                out.append(BranchLimit(m, l, samples, half[l], ext, expected, rel, cls))
            else:
                grows = all(b2 > b1 for b1, b2 in zip([half[l]] + vals, vals))
                at_1e3 = vals[LIMIT_SEQUENCE.index(1e-3)]
                cls = "divergent" if grows and at_1e3 > 10.0 * half[l] else "bounded"
                out.append(BranchLimit(m, l, samples, half[l], None, None, None, cls))
    return out
