"""Linear Jahn-Teller Hamiltonians on Herm_0(3, R) and leaf shape coordinates.

A normal-mode vector q in R^5 is sent to a traceless symmetric 3x3 matrix.
Its ordered eigenvalues mu_1 <= mu_2 <= mu_3 determine the leaf parameter
b = (mu_2 - mu_1)/(mu_3 - mu_1) and the radius r = |mu|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidInputError

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
SQRT2_3 = math.sqrt(2.0 / 3.0)


@dataclass(frozen=True)
class NormalModeVector:
    q1: float
    q2: float
    q3: float
    q4: float
    q5: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.as_tuple()):
            raise InvalidInputError("normal-mode amplitudes must be finite")

    @classmethod
    def of(cls, q):
        if isinstance(q, cls):
            return q
        q = tuple(float(v) for v in q)
        if len(q) != 5:
            raise InvalidInputError(f"expected 5 normal-mode amplitudes, got {len(q)}")
        return cls(*q)

    def as_tuple(self):
        return (self.q1, self.q2, self.q3, self.q4, self.q5)

    def norm2(self):
        return math.fsum(v * v for v in self.as_tuple())


@dataclass(frozen=True)
class TracelessSymmetric3:
    """Symmetric 3x3 matrix stored by its six independent entries."""

    a11: float
    a22: float
    a33: float
    a12: float
    a13: float
    a23: float

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise InvalidInputError(f"expected a 3x3 matrix, got {m.shape}")
        return cls(m[0, 0], m[1, 1], m[2, 2],
                   0.5 * (m[0, 1] + m[1, 0]), 0.5 * (m[0, 2] + m[2, 0]), 0.5 * (m[1, 2] + m[2, 1]))

    @property
    def matrix(self):
        return np.array([[self.a11, self.a12, self.a13],
                         [self.a12, self.a22, self.a23],
                         [self.a13, self.a23, self.a33]])

    def trace(self):
        return self.a11 + self.a22 + self.a33


@dataclass(frozen=True)
class EigenTriplet:
    mu1: float
    mu2: float
    mu3: float

    def as_tuple(self):
        return (self.mu1, self.mu2, self.mu3)


@dataclass(frozen=True)
class ShapeCoordinates:
    b: float
    r: float


@dataclass(frozen=True)
class CouplingConstants:
    kappa: float = 1.0
    kappa1: float = 1.0
    kappa2: float = 1.0
    beta1: float = 1.0
    beta2: float = 1.0

    def __post_init__(self):
        for name in ("kappa", "kappa1", "kappa2", "beta1", "beta2"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"{name} must be positive")


def build_jt_matrix_unequal(q, kappa1: float, kappa2: float) -> TracelessSymmetric3:
    """JT matrix with separate couplings for the e (q1, q2) and t2 (q3, q4, q5) modes."""
    q = NormalModeVector.of(q)
    e1 = kappa1 * q.q1 / SQRT6
    e2 = kappa1 * q.q2 / SQRT2
    a11 = e1 - e2
    a22 = e1 + e2
    # -sqrt(2/3) k1 q1 == -(a11 + a22); written this way the trace vanishes exactly
    a33 = -(a11 + a22)
    return TracelessSymmetric3(
        a11, a22, a33,
        -kappa2 * q.q5 / SQRT2,
        -kappa2 * q.q4 / SQRT2,
        -kappa2 * q.q3 / SQRT2,
    )


def build_jt_matrix(q, kappa: float) -> TracelessSymmetric3:
    return build_jt_matrix_unequal(q, kappa, kappa)


def quadratic_restoring(q, beta1: float, beta2: float) -> float:
    q = NormalModeVector.of(q)
    return 0.5 * beta1 * (q.q1 ** 2 + q.q2 ** 2) + 0.5 * beta2 * (q.q3 ** 2 + q.q4 ** 2 + q.q5 ** 2)


def eigen_triplet(a: TracelessSymmetric3) -> EigenTriplet:
    """Ascending eigenvalues by the trigonometric closed form for 3x3 symmetric matrices.

    The trigonometric roots lose about sqrt(eps) near a double eigenvalue, so
    only the isolated root is kept; its eigenvector (a cross product of two
    rows of A - mu I) splits off a 2x2 block whose eigenvalues follow from the
    stable mean +- hypot formula.
    """
    p1 = a.a12 ** 2 + a.a13 ** 2 + a.a23 ** 2
    if p1 == 0.0:
        mu = sorted((a.a11, a.a22, a.a33))
        return EigenTriplet(*mu)
    q = a.trace() / 3.0
    d11, d22, d33 = a.a11 - q, a.a22 - q, a.a33 - q
    p2 = d11 * d11 + d22 * d22 + d33 * d33 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    det = (d11 * (d22 * d33 - a.a23 * a.a23)
           - a.a12 * (a.a12 * d33 - a.a23 * a.a13)
           + a.a13 * (a.a12 * a.a23 - d22 * a.a13))
    r = det / (2.0 * p ** 3)
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    top = 2.0 * p * math.cos(phi)
    bottom = 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    middle = -top - bottom
    isolated = top if top - middle >= middle - bottom else bottom

    m = np.array([[d11, a.a12, a.a13], [a.a12, d22, a.a23], [a.a13, a.a23, d33]])
    rows = m - isolated * np.eye(3)
    crosses = [np.cross(rows[0], rows[1]), np.cross(rows[0], rows[2]), np.cross(rows[1], rows[2])]
    v = max(crosses, key=lambda c: float(c @ c))
    v = v / math.sqrt(float(v @ v))
    # orthonormal complement of v
    helper = np.eye(3)[int(np.argmin(np.abs(v)))]
    u = np.cross(v, helper)
    u /= math.sqrt(float(u @ u))
    w = np.cross(v, u)
    lam = float(v @ m @ v)
    b11, b22, b12 = float(u @ m @ u), float(w @ m @ w), float(u @ m @ w)
    mean = 0.5 * (b11 + b22)
    rad = math.hypot(0.5 * (b11 - b22), b12)
    mu = sorted((lam + q, mean - rad + q, mean + rad + q))
    return EigenTriplet(*mu)


def shape_coordinates(t: EigenTriplet) -> ShapeCoordinates:
    spread = t.mu3 - t.mu1
    if not spread > 0.0:
        raise DegenerateInputError("shape coordinates need mu_3 > mu_1 (matrix is scalar)")
    b = (t.mu2 - t.mu1) / spread
    b = min(1.0, max(0.0, b))
    r = math.sqrt(t.mu1 ** 2 + t.mu2 ** 2 + t.mu3 ** 2)
    return ShapeCoordinates(b, r)


def diagonal_entries(b: float, r: float):
    s = r / math.sqrt(6.0 * (1.0 - b + b * b))
    return (-(1.0 + b) * s, (2.0 * b - 1.0) * s, (2.0 - b) * s)


def diagonal_representative(b: float, r: float) -> TracelessSymmetric3:
    """The diagonal matrix D(b, r) on the leaf with parameter b and radius r."""
    d1, d2, d3 = diagonal_entries(b, r)
    return TracelessSymmetric3(d1, d2, d3, 0.0, 0.0, 0.0)


def hs_inner(a: TracelessSymmetric3, b: TracelessSymmetric3, kappa: float = 1.0) -> float:
    """Scaled Hilbert-Schmidt product trace(AB)/kappa^2."""
    tr = (a.a11 * b.a11 + a.a22 * b.a22 + a.a33 * b.a33
          + 2.0 * (a.a12 * b.a12 + a.a13 * b.a13 + a.a23 * b.a23))
    return tr / (kappa * kappa)
