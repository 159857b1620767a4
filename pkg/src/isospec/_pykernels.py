"""Pure-Python eigenvalue kernels.

Reference implementation of the compiled kernels in ``_ckernels.pyx``; the two
modules expose the same functions and must agree bit-for-bit on the Sturm
counts (the bisection iterates are then identical as well).
"""
import math
import sys

NAME = "python"

_TINY = sys.float_info.min
_EPS = sys.float_info.epsilon


def _pivmin(e2):
    big = max(e2) if e2 else 0.0
    return _TINY * max(1.0, big)


def sturm_count(d, e2, x, pivmin):
    """Number of eigenvalues strictly below ``x``.

    ``d`` is the diagonal, ``e2`` the squared off-diagonal.  Uses the LDL^T
    pivot recurrence; tiny pivots are replaced by ``-pivmin`` as in LAPACK's
    dstebz so the count is well defined for every ``x``.
    """
    n = len(d)
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def tridiag_eigvals(d, e):
    n = len(d)
    if n == 1:
        return [float(d[0])]
    d = [float(v) for v in d]
    e = [float(v) for v in e]
    e2 = [v * v for v in e]
    pivmin = _pivmin(e2)

    lo = math.inf
    hi = -math.inf
    for i in range(n):
        radius = 0.0
        if i > 0:
            radius += abs(e[i - 1])
        if i < n - 1:
            radius += abs(e[i])
        lo = min(lo, d[i] - radius)
        hi = max(hi, d[i] + radius)
    scale = max(abs(lo), abs(hi))
    pad = 2.0 * _EPS * scale + 2.0 * pivmin
    lo -= pad
    hi += pad
    # absolute resolution ulp * ||T||, as in LAPACK's dstebz; without it an
    # eigenvalue at zero would need ~1000 halvings to reach the subnormals
    atol = _EPS * scale + pivmin

    out = []
    left = lo
    for k in range(n):
        a = left
        b = hi
        for _ in range(256):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b or b - a <= atol:
                break
            if sturm_count(d, e2, mid, pivmin) > k:
                b = mid
            else:
                a = mid
        val = 0.5 * (a + b)
        if out and val < out[-1]:
            val = out[-1]
        out.append(val)
        left = a
    return out


def jacobi_eigvals(a):
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations."""
    n = len(a)
    if n == 0:
        return []
    m = [[float(v) for v in row] for row in a]
    for _sweep in range(100):
        off = 0.0
        total = 0.0
        for p in range(n):
            total += m[p][p] * m[p][p]
            for q in range(p + 1, n):
                off += m[p][q] * m[p][q]
        total += 2.0 * off
        if off <= (_EPS * _EPS) * total * 1e-2 or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                if apq == 0.0:
                    continue
                app = m[p][p]
                aqq = m[q][q]
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    mkp = m[k][p]
                    mkq = m[k][q]
                    m[k][p] = c * mkp - s * mkq
                    m[k][q] = s * mkp + c * mkq
                for k in range(n):
                    mpk = m[p][k]
                    mqk = m[q][k]
                    m[p][k] = c * mpk - s * mqk
                    m[q][k] = s * mpk + c * mqk
                m[p][q] = 0.0
                m[q][p] = 0.0
    return sorted(m[i][i] for i in range(n))
