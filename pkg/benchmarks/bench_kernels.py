"""Compiled vs pure-Python eigenvalue kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json PATH]

Times the Sturm-bisection tridiagonal solver and the cyclic Jacobi solver of
both backends on random matrices and on a Casimir matrix sweep, and checks
that the two backends return identical tridiagonal eigenvalues.
"""
import argparse
import json
import platform
import sys
import timeit

import numpy as np

from isospec import _pykernels, spectra

try:
    from isospec import _ckernels
except ImportError:
    sys.exit("compiled kernel not built: run `python setup.py build_ext --inplace`")


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def tridiag_case(n, rng):
    return list(rng.normal(size=n) * 10), list(rng.normal(size=n - 1))


def casimir_sweep(mod, m_max=20, points=50):
    mats = [spectra.omega1(m, b).matrix for m in range(1, m_max + 1)
            for b in np.linspace(0.02, 0.98, points)]

    def run():
        for t in mats:
            mod.tridiag_eigvals(t.diag, t.offdiag)
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    rows = []

    for n in (8, 32, 128, 512):
        d, e = tridiag_case(n, rng)
        assert _ckernels.tridiag_eigvals(d, e) == _pykernels.tridiag_eigvals(d, e)
        number = max(1, 2000 // n)
        tc = best_of(lambda: _ckernels.tridiag_eigvals(d, e), args.repeat, number)
        tp = best_of(lambda: _pykernels.tridiag_eigvals(d, e), args.repeat, max(1, number // 20))
        rows.append(("tridiagonal bisection", n, tc, tp))

    for n in (4, 16, 48):
        a = rng.normal(size=(n, n))
        a = (a + a.T).tolist()
        number = max(1, 400 // n)
        tc = best_of(lambda: _ckernels.jacobi_eigvals(a), args.repeat, number)
        tp = best_of(lambda: _pykernels.jacobi_eigvals(a), args.repeat, max(1, number // 20))
        rows.append(("dense Jacobi", n, tc, tp))

    tc = best_of(casimir_sweep(_ckernels), args.repeat, 1)
    tp = best_of(casimir_sweep(_pykernels), max(1, args.repeat // 2), 1)
    rows.append(("omega1 sweep m<=20 x 50 b", 1000, tc, tp))

    print(f"python {platform.python_version()} on {platform.machine()}")
    print(f"{'kernel':28s} {'n':>5s} {'cython [s]':>12s} {'python [s]':>12s} {'speedup':>8s}")
    for name, n, tc, tp in rows:
        print(f"{name:28s} {n:5d} {tc:12.3e} {tp:12.3e} {tp / tc:8.1f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([dict(kernel=k, n=n, cython=c, python=p) for k, n, c, p in rows], fh, indent=1)


if __name__ == "__main__":
    main()
