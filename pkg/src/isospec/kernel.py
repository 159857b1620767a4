"""Eigenvalue and exact-rank primitives.

Symmetric tridiagonal eigenvalues are found by bisection on Sturm counts and
dense symmetric ones by cyclic Jacobi rotations.  Both kernels come in a
compiled flavour (``_ckernels``) and a pure-Python one (``_pykernels``); the
compiled one is used when it imports, unless ``ISOSPEC_PURE_PYTHON`` is set.

Exact ranks use fraction-free elimination over Python integers.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _pykernels
from .errors import InvalidInputError

if os.environ.get("ISOSPEC_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.NAME

SYMMETRY_RTOL = 1e-12


def available_backends():
    """Kernel modules importable in this environment, compiled first."""
    mods = []
    try:
        from . import _ckernels

        mods.append(_ckernels)
    except ImportError:
        pass
    mods.append(_pykernels)
    return mods


@dataclass(frozen=True)
class SymTridiagonal:
    diag: tuple
    offdiag: tuple

    def __post_init__(self):
        d = tuple(float(v) for v in self.diag)
        e = tuple(float(v) for v in self.offdiag)
        if len(d) < 1:
            raise InvalidInputError("tridiagonal matrix needs n >= 1")
        if len(e) != len(d) - 1:
            raise InvalidInputError(f"offdiag has length {len(e)}, expected {len(d) - 1}")
        if not all(math.isfinite(v) for v in d + e):
            raise InvalidInputError("non-finite entry in tridiagonal matrix")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self):
        return len(self.diag)

    def to_dense(self):
        a = np.diag(np.array(self.diag))
        for i, v in enumerate(self.offdiag):
            a[i, i + 1] = a[i + 1, i] = v
        return a

    def trace(self):
        return math.fsum(self.diag)


@dataclass(frozen=True, eq=False)
class DenseSymmetric:
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float, copy=True)
        if a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("non-finite entry in dense matrix")
        if a.size:
            scale = max(1.0, float(np.max(np.abs(a))))
            asym = float(np.max(np.abs(a - a.T)))
            if asym > SYMMETRY_RTOL * scale:
                raise InvalidInputError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
            a = 0.5 * (a + a.T)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self):
        return self.entries.shape[0]


def eigvals_tridiagonal(t: SymTridiagonal) -> list[float]:
    """All eigenvalues of ``t`` in ascending order."""
    return _impl.tridiag_eigvals(t.diag, t.offdiag)


def sturm_count(t: SymTridiagonal, x: float) -> int:
    """Number of eigenvalues of ``t`` strictly below ``x``."""
    e2 = [v * v for v in t.offdiag]
    pivmin = _pykernels._pivmin(e2)
    return _impl.sturm_count(t.diag, e2, float(x), pivmin)


def eigvals_dense_symmetric(m: DenseSymmetric) -> list[float]:
    return _impl.jacobi_eigvals(m.entries.tolist())


# ----------------------------------------------------------------------------
# exact rational linear algebra


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Fraction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        data = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if cols is None:
            if not data:
                raise InvalidInputError("column count required for a matrix without rows")
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise InvalidInputError("ragged rows")
        return cls(len(data), cols, data)

    @classmethod
    def from_sparse_columns(cls, rows: int, columns: Sequence[dict]):
        """Build from columns given as ``{row_index: value}`` maps."""
        dense = [[Fraction(0)] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                dense[i][j] = Fraction(v)
        return cls(rows, len(columns), tuple(tuple(r) for r in dense))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])


def _integer_row(values) -> dict:
    """Scale a rational vector to a primitive integer vector, stored sparsely."""
    nz = {i: Fraction(v) for i, v in enumerate(values) if v != 0}
    if not nz:
        return {}
    den = 1
    for v in nz.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    row = {i: int(v * den) for i, v in nz.items()}
    return _primitive(row)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {i: v // g for i, v in row.items()}
    lead = row[min(row)]
    if lead < 0:
        row = {i: -v for i, v in row.items()}
    return row


class _Echelon:
    """Incremental fraction-free row echelon form over sparse integer rows."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                return row
            a = row[c]
            pc = p[c]
            g = math.gcd(a, pc)
            fa, fp = pc // g, a // g
            new = {i: v * fa for i, v in row.items()}
            for i, v in p.items():
                w = new.get(i, 0) - fp * v
                if w:
                    new[i] = w
                else:
                    new.pop(i, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    @property
    def rank(self):
        return len(self.pivots)


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    ech = _Echelon()
    return [k for k, v in enumerate(vectors) if ech.add(_integer_row(v))]


def sparse_rank(rows: Sequence[dict]) -> int:
    """Exact rank of rows given as ``{column: rational}`` maps."""
    ech = _Echelon()
    for r in rows:
        nz = {i: Fraction(v) for i, v in r.items() if v != 0}
        if not nz:
            continue
        den = 1
        for v in nz.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        ech.add(_primitive({i: int(v * den) for i, v in nz.items()}))
    return ech.rank


def rational_rank(m: RationalMatrix) -> int:
    ech = _Echelon()
    for r in m.entries:
        ech.add(_integer_row(r))
    return ech.rank


def rational_kernel_dim(m: RationalMatrix) -> int:
    """Exact dimension of the null space ``{x : m x = 0}``."""
    return m.cols - rational_rank(m)
