# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled eigenvalue kernels; same algorithms as ``_pykernels``."""
from libc.math cimport fabs, sqrt, copysign, INFINITY
from libc.float cimport DBL_MIN, DBL_EPSILON
from libc.stdlib cimport malloc, free

NAME = "cython"


cdef inline int _count(const double* d, const double* e2, Py_ssize_t n,
                       double x, double pivmin) noexcept nogil:
    cdef int count = 0
    cdef double q = d[0] - x
    cdef Py_ssize_t i
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def sturm_count(d, e2, double x, double pivmin):
    cdef Py_ssize_t n = len(d)
    cdef double* dd = <double*> malloc(n * sizeof(double))
    cdef double* ee = <double*> malloc((n if n > 1 else 1) * sizeof(double))
    cdef Py_ssize_t i
    cdef int c
    try:
        for i in range(n):
            dd[i] = d[i]
        for i in range(n - 1):
            ee[i] = e2[i]
        c = _count(dd, ee, n, x, pivmin)
    finally:
        free(dd)
        free(ee)
    return c


cdef void _bisect_all(const double* d, const double* e, double* e2,
                      Py_ssize_t n, double* out) noexcept nogil:
    cdef Py_ssize_t i, k
    cdef int it
    cdef double big = 0.0, pivmin, lo = INFINITY, hi = -INFINITY
    cdef double radius, scale, pad, a, b, mid, left, atol
    for i in range(n - 1):
        e2[i] = e[i] * e[i]
        if e2[i] > big:
            big = e2[i]
    pivmin = DBL_MIN * (big if big > 1.0 else 1.0)
    for i in range(n):
        radius = 0.0
        if i > 0:
            radius += fabs(e[i - 1])
        if i < n - 1:
            radius += fabs(e[i])
        if d[i] - radius < lo:
            lo = d[i] - radius
        if d[i] + radius > hi:
            hi = d[i] + radius
    scale = fabs(lo) if fabs(lo) > fabs(hi) else fabs(hi)
    pad = 2.0 * DBL_EPSILON * scale + 2.0 * pivmin
    lo -= pad
    hi += pad
    atol = DBL_EPSILON * scale + pivmin
    left = lo
    for k in range(n):
        a = left
        b = hi
        for it in range(256):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b or b - a <= atol:
                break
            if _count(d, e2, n, mid, pivmin) > k:
                b = mid
            else:
                a = mid
        out[k] = 0.5 * (a + b)
        if k > 0 and out[k] < out[k - 1]:
            out[k] = out[k - 1]
        left = a


def tridiag_eigvals(d, e):
    cdef Py_ssize_t n = len(d)
    if n == 1:
        return [float(d[0])]
    cdef double* dd = <double*> malloc(n * sizeof(double))
    cdef double* ee = <double*> malloc(n * sizeof(double))
    cdef double* e2 = <double*> malloc(n * sizeof(double))
    cdef double* out = <double*> malloc(n * sizeof(double))
    cdef Py_ssize_t i
    try:
        for i in range(n):
            dd[i] = d[i]
        for i in range(n - 1):
            ee[i] = e[i]
        with nogil:
            _bisect_all(dd, ee, e2, n, out)
        return [out[i] for i in range(n)]
    finally:
        free(dd)
        free(ee)
        free(e2)
        free(out)


cdef void _jacobi(double* m, Py_ssize_t n) noexcept nogil:
    cdef int sweep
    cdef Py_ssize_t p, q, k
    cdef double off, total, apq, app, aqq, theta, t, c, s, x, y
    for sweep in range(100):
        off = 0.0
        total = 0.0
        for p in range(n):
            total += m[p * n + p] * m[p * n + p]
            for q in range(p + 1, n):
                off += m[p * n + q] * m[p * n + q]
        total += 2.0 * off
        if off <= (DBL_EPSILON * DBL_EPSILON) * total * 1e-2 or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p * n + q]
                if apq == 0.0:
                    continue
                app = m[p * n + p]
                aqq = m[q * n + q]
                theta = (aqq - app) / (2.0 * apq)
                t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    x = m[k * n + p]
                    y = m[k * n + q]
                    m[k * n + p] = c * x - s * y
                    m[k * n + q] = s * x + c * y
                for k in range(n):
                    x = m[p * n + k]
                    y = m[q * n + k]
                    m[p * n + k] = c * x - s * y
                    m[q * n + k] = s * x + c * y
                m[p * n + q] = 0.0
                m[q * n + p] = 0.0


def jacobi_eigvals(a):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return []
    cdef double* m = <double*> malloc(n * n * sizeof(double))
    cdef Py_ssize_t i, j
    try:
        for i in range(n):
            row = a[i]
            for j in range(n):
                m[i * n + j] = row[j]
        with nogil:
            _jacobi(m, n)
        return sorted([m[i * n + i] for i in range(n)])
    finally:
        free(m)
