"""Geometry of the isoparametric leaves F(b) in S^4(r0) inside Herm_0(3, R).

Closed forms for the principal, mean, scalar and sectional curvatures, leaf
volume and the latitude relation, together with a finite-difference oracle
that recomputes the shape operator and Christoffel symbols straight from the
coordinate chart.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, IsospecError
from .jt import TracelessSymmetric3, diagonal_entries

SQRT3 = math.sqrt(3.0)
DEFAULT_STEP = 1e-3
STEP_RANGE = (1e-6, 1e-3)


def _open_unit(b, what="b"):
    if not 0.0 < b < 1.0:
        raise DomainError(f"{what} must lie in (0, 1), got {b!r}")


def _closed_unit(b):
    if not 0.0 <= b <= 1.0:
        raise DomainError(f"b must lie in [0, 1], got {b!r}")


def _positive(r0):
    if not r0 > 0.0:
        raise DomainError(f"radius must be positive, got {r0!r}")


@dataclass(frozen=True)
class ChartPoint:
    b: float
    x1: float
    x2: float
    x3: float
    r0: float = 1.0


@dataclass(frozen=True)
class CurvatureReport:
    k1: float
    k2: float
    k3: float
    h: float
    scal: float
    source: str
    warnings: tuple = field(default=())

    @property
    def k(self):
        return (self.k1, self.k2, self.k3)


def _rot1(x):
    c, s = math.cos(x), math.sin(x)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rot2(x):
    c, s = math.cos(x), math.sin(x)
    return np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def _rot3(x):
    c, s = math.cos(x), math.sin(x)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def chart_matrix(b, x1, x2, x3, r0=1.0):
    """A(b, x1, x2, x3) as a numpy array (no domain check; used by the oracles)."""
    d = np.diag(diagonal_entries(b, r0))
    o = _rot3(x3) @ _rot1(x1) @ _rot2(x2)
    return o.T @ d @ o


def chart_point(p: ChartPoint) -> TracelessSymmetric3:
    _open_unit(p.b)
    _positive(p.r0)
    return TracelessSymmetric3.from_matrix(chart_matrix(p.b, p.x1, p.x2, p.x3, p.r0))


def principal_curvatures(b, r0=1.0):
    _open_unit(b)
    _positive(r0)
    s = 1.0 / (SQRT3 * r0)
    return (s * (b - 2.0) / b, s * (2.0 * b - 1.0), s * (1.0 + b) / (1.0 - b))


def mean_curvature(b, r0=1.0):
    _open_unit(b)
    _positive(r0)
    return (2.0 - b) * (2.0 * b - 1.0) * (b + 1.0) / (3.0 * SQRT3 * r0 * (1.0 - b) * b)


def gauss_codazzi_residual(b, r0=1.0):
    """6/r0^2 - sum k_i^2 + 9 h^2, which is the scalar curvature of F(b)."""
    k = principal_curvatures(b, r0)
    h = math.fsum(k) / 3.0
    return 6.0 / r0 ** 2 - math.fsum(v * v for v in k) + 9.0 * h * h


def scalar_curvature(b, r0=1.0):
    res = gauss_codazzi_residual(b, r0)
    scale = math.fsum(v * v for v in principal_curvatures(b, r0)) + 6.0 / r0 ** 2
    if abs(res) > 1e-10 * scale:
        raise IsospecError(f"Gauss-Codazzi combination does not vanish at b={b}: {res:.3e}")
    return 0.0


def sectional_curvatures(b, r0=1.0):
    _open_unit(b)
    _positive(r0)
    w = 2.0 * (1.0 - b + b * b) / (3.0 * r0 ** 2)
    return (w / (1.0 - b), w / (b * (1.0 - b)), w / b)


def leaf_volume(b, r0=1.0):
    _closed_unit(b)
    _positive(r0)
    return 6.0 * SQRT3 * b * (1.0 - b) * math.pi ** 2 * r0 ** 3 / (1.0 - b + b * b) ** 1.5


def focal_gaussian_curvature(r0=1.0):
    _positive(r0)
    return 1.0 / (3.0 * r0 ** 2)


def leaf_circle_latitude(b):
    """Latitude of the circle F(b) cuts out of a leaf of the retraction foliation."""
    _closed_unit(b)
    c = SQRT3 * b / (2.0 * math.sqrt(1.0 - b + b * b))
    return math.acos(min(1.0, c))


# ----------------------------------------------------------------------------
# finite-difference oracle


def _d1(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _richardson(estimate, h):
    return (4.0 * estimate(0.5 * h) - estimate(h)) / 3.0


def _partial(fun, args, i, h):
    def f(t):
        a = list(args)
        a[i] = t
        return fun(*a)

    return _richardson(lambda s: _d1(f, args[i], s), h)


def _second(fun, args, i, j, h):
    def est(s):
        if i == j:
            a_p, a_m = list(args), list(args)
            a_p[i] += s
            a_m[i] -= s
            return (fun(*a_p) - 2.0 * fun(*args) + fun(*a_m)) / (s * s)
        vals = []
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            a = list(args)
            a[i] += si * s
            a[j] += sj * s
            vals.append(fun(*a))
        return (vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * s * s)

    return _richardson(est, h)


def _step_warnings(h_step):
    lo, hi = STEP_RANGE
    if h_step < lo:
        return (f"step {h_step:g} below {lo:g}: rounding error dominates",)
    if h_step > hi:
        return (f"step {h_step:g} above {hi:g}: truncation error dominates",)
    return ()


def _unit_normal(A, tangents, db):
    basis = []
    for v in [A] + list(tangents):
        w = v.ravel().copy()
        for u in basis:
            w -= np.dot(w, u) * u
        basis.append(w / np.linalg.norm(w))
    n = db.ravel().copy()
    for u in basis:
        n -= np.dot(n, u) * u
    return n / np.linalg.norm(n)


def numeric_shape_operator(b, x=(0.0, 0.0, 0.0), r0=1.0, h_step=DEFAULT_STEP) -> CurvatureReport:
    """Principal curvatures of F(b) at chart angles ``x`` by central differences.

    The unit normal is d/db made orthogonal to the leaf; with this orientation
    the curvatures come out in the order k1 < k2 < k3 of the closed forms.
    """
    _open_unit(b)
    _positive(r0)
    notes = _step_warnings(h_step)
    args = (b, *map(float, x), r0)

    def fun(*a):
        return chart_matrix(*a)

    A = fun(*args)
    tangents = [_partial(fun, args, i, h_step) for i in (1, 2, 3)]
    db = _partial(fun, args, 0, h_step)
    n = _unit_normal(A, tangents, db)

    g = np.array([[np.sum(ti * tj) for tj in tangents] for ti in tangents])
    second = np.zeros((3, 3))
    for i in range(3):
        for j in range(i, 3):
            second[i, j] = second[j, i] = np.dot(_second(fun, args, i + 1, j + 1, h_step).ravel(), n)

    # symmetric form of g^{-1} II
    w, v = np.linalg.eigh(g)
    g_isqrt = v @ np.diag(w ** -0.5) @ v.T
    k = np.sort(np.linalg.eigvalsh(g_isqrt @ second @ g_isqrt))
    h = float(np.mean(k))
    scal = 6.0 / r0 ** 2 - float(np.sum(k * k)) + 9.0 * h * h
    return CurvatureReport(float(k[0]), float(k[1]), float(k[2]), h, scal, "numeric", notes)


def closed_form_report(b, r0=1.0) -> CurvatureReport:
    k = principal_curvatures(b, r0)
    return CurvatureReport(*k, mean_curvature(b, r0), scalar_curvature(b, r0), "closed-form")


@dataclass(frozen=True)
class GeodesicSliceReport:
    b_samples: tuple
    symbols: dict  # (b, x3) -> {"G1_00": .., ...}
    max_residual: float
    tolerance: float
    perturbation: float

    @property
    def passed(self):
        return self.max_residual < self.tolerance


SYMBOL_NAMES = ("G1_00", "G2_00", "G1_33", "G2_33", "G1_03", "G2_03")


def slice_christoffel(b, x3, r0=1.0, perturbation=0.0, h_step=DEFAULT_STEP):
    """Christoffel symbols Gamma^l_ij, l in {x1, x2}, i, j in {b, x3}, of a 2-d slice.

    The slice is (u, v) -> A(u, perturbation * v^2, 0, v); with zero perturbation
    it is the leaf x1 = x2 = 0 of the retraction foliation.  Second derivatives
    of the slice are expanded in the frame (d_u, d_v, d_x1, d_x2, radial); the
    d_x1 and d_x2 coefficients are returned.
    """
    eps = perturbation

    def s(u, v):
        return chart_matrix(u, eps * v * v, 0.0, v, r0)

    args = (b, x3)
    A = s(*args)
    tu = _partial(s, args, 0, h_step)
    tv = _partial(s, args, 1, h_step)
    pt = (b, eps * x3 * x3, 0.0, x3, r0)
    f1 = _partial(chart_matrix, pt, 1, h_step)
    f2 = _partial(chart_matrix, pt, 2, h_step)
    frame = np.stack([tu.ravel(), tv.ravel(), f1.ravel(), f2.ravel(), A.ravel()], axis=1)
    out = {}
    for name, (i, j) in zip(("00", "33", "03"), ((0, 0), (1, 1), (0, 1))):
        w = _second(s, args, i, j, h_step).ravel()
        coef, *_ = np.linalg.lstsq(frame, w, rcond=None)
        out[f"G1_{name}"] = float(coef[2])
        out[f"G2_{name}"] = float(coef[3])
    return out


def check_totally_geodesic_leaf(b_samples=(0.2, 0.5, 0.8), r0=1.0, x3_samples=(0.0, 0.4, 1.1),
                                perturbation=0.0, tol=1e-6) -> GeodesicSliceReport:
    symbols = {}
    worst = 0.0
    for b in b_samples:
        _open_unit(b)
        for x3 in x3_samples:
            sym = slice_christoffel(b, x3, r0, perturbation)
            symbols[(b, x3)] = sym
            worst = max(worst, max(abs(v) for v in sym.values()))
    return GeodesicSliceReport(tuple(b_samples), symbols, worst, tol, perturbation)


def geometry_summary(b, r0=1.0, x=(0.3, -0.2, 0.5)):
    """Closed-form leaf quantities next to their numeric re-derivation."""
    closed = closed_form_report(b, r0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        numeric = numeric_shape_operator(b, x, r0)
    return {
        "b": b,
        "r0": r0,
        "principal_curvatures": list(closed.k),
        "numeric_principal_curvatures": list(numeric.k),
        "max_curvature_discrepancy": max(abs(p - q) for p, q in zip(closed.k, numeric.k)),
        "mean_curvature": closed.h,
        "scalar_curvature": closed.scal,
        "gauss_codazzi_residual": gauss_codazzi_residual(b, r0),
        "sectional_curvatures": list(sectional_curvatures(b, r0)),
        "leaf_volume": leaf_volume(b, r0),
        "latitude": leaf_circle_latitude(b),
        "focal_gaussian_curvature": focal_gaussian_curvature(r0),
    }
