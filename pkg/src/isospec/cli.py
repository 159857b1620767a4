"""Command-line driver: b-sweeps of the bundle spectra and the diagnostic reports.

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry, q8, spectra
from .errors import IsospecError, InvalidInputError

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 1, 2
CSV_HEADER = "bundle,m,l,b,eigenvalue,multiplicity"
REFINEMENT = (1e-1, 1e-2, 1e-3, 1e-4)


def fmt(x) -> str:
    return "%.17g" % float(x)


def default_grid():
    """199 uniform interior points plus geometric refinement towards both focal values."""
    pts = {k / 200 for k in range(1, 200)}
    pts.update(REFINEMENT)
    pts.update(1.0 - d for d in REFINEMENT)
    return sorted(pts)


def uniform_grid(b_min, b_max, steps):
    return [b_min + k * (b_max - b_min) / (steps - 1) for k in range(steps)]


@dataclass(frozen=True)
class SweepConfig:
    bundles: tuple = (1,)
    m_max: int = 6
    b_min: float | None = None
    b_max: float | None = None
    steps: int | None = None
    b_values: tuple | None = None
    r: float = 1.0
    fmt: str = "csv"
    variant: str = "printed"
    diagnostics: bool = False

    def __post_init__(self):
        if self.m_max < 1:
            raise InvalidInputError(f"--m-max must be >= 1, got {self.m_max}")
        if not self.r > 0:
            raise InvalidInputError(f"--r must be positive, got {self.r}")
        if any(b not in (1, 2, 3) for b in self.bundles) or not self.bundles:
            raise InvalidInputError(f"--bundle must be 1, 2, 3 or all, got {self.bundles}")
        if self.fmt not in ("csv", "json"):
            raise InvalidInputError(f"--format must be csv or json, got {self.fmt!r}")
        if self.variant not in spectra.VARIANTS:
            raise InvalidInputError(f"--variant must be one of {spectra.VARIANTS}")
        if self.b_values is not None:
            if not self.b_values:
                raise InvalidInputError("--b-values is empty")
            if any(not 0.0 < b < 1.0 for b in self.b_values):
                raise InvalidInputError("every --b-values entry must lie strictly between 0 and 1")
        elif self.uses_range:
            lo, hi, n = self.range
            if not 0.0 < lo < hi < 1.0:
                raise InvalidInputError(f"need 0 < b-min < b-max < 1, got b-min={lo}, b-max={hi}")
            if n < 2:
                raise InvalidInputError(f"--steps must be >= 2, got {n}")

    @property
    def uses_range(self):
        return any(v is not None for v in (self.b_min, self.b_max, self.steps))

    @property
    def range(self):
        return (0.005 if self.b_min is None else self.b_min,
                0.995 if self.b_max is None else self.b_max,
                199 if self.steps is None else self.steps)

    def grid(self):
        if self.b_values is not None:
            return sorted(set(self.b_values))
        if self.uses_range:
            return uniform_grid(*self.range)
        return default_grid()

    def echo(self):
        d = asdict(self)
        d["bundles"] = list(self.bundles)
        if self.b_values is not None:
            d["b_values"] = list(self.b_values)
        d["grid_size"] = len(self.grid())
        return d


@dataclass
class BranchTrace:
    bundle: int
    m: int
    l: int
    samples: list = field(default_factory=list)  # [(b, eigenvalue)]
    step_bounds: list = field(default_factory=list)  # [||Omega(b_k+1) - Omega(b_k)||_2]

    @property
    def multiplicity(self):
        return self.m + 1

    def continuity_violations(self, lo=0.1, hi=0.9, slack=1e-9):
        """Steps on [lo, hi] where |d lambda| exceeds the Weyl bound ||d Omega||_2.

        The bound C_k * db with C_k = ||d Omega||_2 / db holds for ascending
        labels even through crossings, so a violation means a numerical fault.
        """
        out = []
        for k, ((b1, v1), (b2, v2)) in enumerate(zip(self.samples, self.samples[1:])):
            if lo <= b1 and b2 <= hi:
                bound = self.step_bounds[k]
                if abs(v2 - v1) > bound * (1.0 + slack) + slack * max(1.0, abs(v1)):
                    out.append((b1, b2, abs(v2 - v1), bound))
        return out


def suspected_crossings(traces, rel_gap=1e-3):
    """Local minima of the gap between neighbouring branches of one Omega_m."""
    by_block = {}
    for t in traces:
        by_block.setdefault((t.bundle, t.m), []).append(t)
    found = []
    for (bundle, m), ts in sorted(by_block.items()):
        ts.sort(key=lambda t: t.l)
        for lower, upper in zip(ts, ts[1:]):
            gaps = [(b, u - v, max(1.0, abs(u))) for (b, v), (_, u) in zip(lower.samples, upper.samples)]
            for k in range(len(gaps)):
                b, g, scale = gaps[k]
                left = gaps[k - 1][1] if k else float("inf")
                right = gaps[k + 1][1] if k + 1 < len(gaps) else float("inf")
                if g <= left and g <= right and g < rel_gap * scale:
                    found.append({"bundle": bundle, "m": m, "l": lower.l, "b": b, "gap": g})
    return found


def _threads():
    env = os.environ.get("ISOSPEC_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise InvalidInputError(f"ISOSPEC_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise InvalidInputError("ISOSPEC_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _branch_block(bundle, m, grid, r, variant):
    traces = [BranchTrace(bundle, m, l) for l in range(spectra.omega_size(m))]
    prev = None
    for b in grid:
        om = spectra.omega(bundle, m, b, r, variant, exact=False)
        dense = om.matrix.to_dense()
        for l, v in enumerate(om.eigvals()):
            traces[l].samples.append((b, v))
        if prev is not None:
            bound = float(np.linalg.norm(dense - prev, 2))
            for t in traces:
                t.step_bounds.append(bound)
        prev = dense
    return traces


def run_sweep(config: SweepConfig):
    grid = config.grid()
    tasks = [(bundle, m) for bundle in sorted(set(config.bundles)) for m in range(1, config.m_max + 1)]
    with ThreadPoolExecutor(max_workers=min(_threads(), max(1, len(tasks)))) as pool:
        blocks = list(pool.map(lambda t: _branch_block(t[0], t[1], grid, config.r, config.variant), tasks))
    traces = [t for block in blocks for t in block]
    traces.sort(key=lambda t: (t.bundle, t.m, t.l))
    return traces


def sweep_diagnostics(config: SweepConfig, traces):
    diag = {}
    cont = []
    for t in traces:
        for b1, b2, s, c in t.continuity_violations():
            cont.append({"bundle": t.bundle, "m": t.m, "l": t.l, "b": [b1, b2], "change": s, "bound": c})
    if cont:
        diag["continuity"] = cont
    cross = suspected_crossings(traces)
    if cross:
        diag["crossings"] = cross
    if config.diagnostics:
        lim = []
        for bundle in (1, 3):
            if bundle in config.bundles:
                odd = [m for m in range(1, config.m_max + 1, 2)]
                for x in spectra.limit_diagnostics(bundle, odd, config.r, config.variant):
                    lim.append({"bundle": bundle, **asdict(x), "samples": [list(s) for s in x.samples]})
        if lim:
            diag["limits"] = lim
        if 2 in config.bundles:
            diag["bundle2_symmetry"] = [asdict(x) for x in spectra.bundle2_symmetry_report(config.m_max, variants=(config.variant,))]
    return diag


def to_csv(traces) -> str:
    rows = [(t.bundle, t.m, t.l, b, v, t.multiplicity) for t in traces for b, v in t.samples]
    rows.sort(key=lambda r: r[:4])
    out = [CSV_HEADER]
    out += [f"{bu},{m},{l},{fmt(b)},{fmt(v)},{mult}" for bu, m, l, b, v, mult in rows]
    return "\n".join(out) + "\n"


def to_json(config: SweepConfig, traces, diagnostics) -> str:
    doc = {
        "config": config.echo(),
        "traces": [{
            "bundle": t.bundle, "m": t.m, "l": t.l, "multiplicity": t.multiplicity,
            "b": [b for b, _ in sorted(t.samples)],
            "eigenvalue": [v for _, v in sorted(t.samples)],
        } for t in traces],
    }
    if diagnostics:
        doc["diagnostics"] = diagnostics
    return json.dumps(doc, indent=1, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def emit(text: str, path: str | None):
    if not text:
        raise InvalidInputError("nothing to write")
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ----------------------------------------------------------------------------
# reports


def reconcile_report(m_max=8, b_values=(0.25, 0.5, 0.75), r=1.0, variant="printed"):
    lines = ["# isotypic oracle vs tabulated Casimir matrices",
             f"# r={fmt(r)} variant={variant}; verdict 'match' needs equal sizes and max diff < 1e-9",
             "bundle,m,b,formula_dim,oracle_dim,verdict,max_diff,formula,oracle"]
    for rep in spectra.reconciliation_table(m_max, b_values, r, variant=variant):
        diff = "" if rep.max_difference is None else fmt(rep.max_difference)
        lines.append(",".join([
            str(rep.bundle), str(rep.m), fmt(rep.b), str(rep.formula_dim), str(rep.isotypic_dim),
            rep.verdict, diff, " ".join(fmt(v) for v in rep.formula) or "-",
            " ".join(fmt(v) for v in rep.oracle) or "-",
        ]))
    return "\n".join(lines) + "\n"


def closed_forms_report(m_max=8):
    half = Fraction(1, 2)
    buf = io.StringIO()
    buf.write("# eigenvalues at b=1/2, r=1: closed form vs exact omega matrices\n")
    buf.write("bundle,m,closed_form,printed,corrected,printed_ok,corrected_ok\n")
    for bundle in (1, 2):
        for m in range(1, m_max + 1):
            cf = spectra.closed_form_half(bundle, m)
            pr = spectra.omega(bundle, m, half, 1, "printed").exact_eigvals()
            co = spectra.omega(bundle, m, half, 1, "corrected").exact_eigvals()
            buf.write(f"{bundle},{m},{' '.join(map(str, cf))},{' '.join(map(str, pr))},"
                      f"{' '.join(map(str, co))},{pr == cf},{co == cf}\n")
    buf.write("\n# projective plane spectrum (r0=1)\nn,eigenvalue,multiplicity,antipodal_odd_harmonic_dim\n")
    for (lam, mult), n in zip(spectra.projective_spectrum(2 * m_max - 1), range(1, 2 * m_max, 2)):
        buf.write(f"{n},{lam},{mult},{q8.antipodal_odd_harmonic_dim(n)}\n")
    buf.write("\n# constant-curvature spectrum (r=1) next to the eta_1 harmonic count at degree 2(n+1)\n")
    buf.write("n,eigenvalue,multiplicity,h1_dim_formula,h1_dim_bruteforce,round_sphere_eigenvalue\n")
    for row in spectra.constant_curvature_comparison(min(m_max, 7)):
        buf.write(",".join(str(row[k]) for k in ("n", "eigenvalue", "multiplicity", "h1_dim_formula",
                                                 "h1_dim_bruteforce", "harmonic_eigenvalue")) + "\n")
    return buf.getvalue()


def limits_report(bundle, m_list, r=1.0, variant="printed"):
    lines = ["bundle,m,l,half_value,lambda(1e-1),lambda(1e-2),lambda(1e-3),lambda(1e-4),extrapolated,expected,relative_error,classification"]
    for x in spectra.limit_diagnostics(bundle, m_list, r, variant):
        opt = [("" if v is None else fmt(v)) for v in (x.extrapolated, x.expected, x.relative_error)]
        lines.append(",".join([str(bundle), str(x.m), str(x.l), fmt(x.half_value)]
                              + [fmt(v) for _, v in x.samples] + opt + [x.classification]))
    return "\n".join(lines) + "\n"


def symmetry_report(m_max=12, points=21):
    lines = ["# max relative |eig(omega2(b)) - eig(omega2(1-b))| on b = k/%d, k=1..%d" % (points + 1, points),
             "m,variant,max_asymmetry,worst_b,symmetric"]
    for x in spectra.bundle2_symmetry_report(m_max, points):
        lines.append(f"{x.m},{x.variant},{fmt(x.max_asymmetry)},{fmt(x.worst_b)},{x.symmetric}")
    lines.append("# max relative |eig(omega3(b)) - eig(omega1(1-b))|: "
                 + fmt(spectra.bundle3_reflection_residual(m_max, points)))
    return "\n".join(lines) + "\n"


def dimensions_report(m_max=6):
    rows = q8.dimension_table(m_max)
    keys = list(rows[0])
    return "\n".join([",".join(keys)] + [",".join(str(r[k]) for k in keys) for r in rows]) + "\n"


# ----------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def _bundles(text):
    if text == "all":
        return (1, 2, 3)
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bundle must be 1, 2, 3 or all, got {text!r}") from None


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    p = _Parser(prog="isospec", description="Spectral flow of Jahn-Teller bundle Laplacians.")
    p.add_argument("--config", help="key=value file; keys mirror the long flags, flags win")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="eigenvalue branches over a b grid")
    s.add_argument("--bundle", type=_bundles, default=(1,), help="1, 2, 3 or all")
    s.add_argument("--m-max", type=int, default=6)
    s.add_argument("--b-min", type=float)
    s.add_argument("--b-max", type=float)
    s.add_argument("--steps", type=int)
    s.add_argument("--b-values", type=_floats, help="explicit comma-separated grid")
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--variant", choices=spectra.VARIANTS, default="printed")
    s.add_argument("--diagnostics", action=argparse.BooleanOptionalAction, default=False)
    s.add_argument("--out")

    rc = sub.add_parser("reconcile", help="tabulated matrices vs the isotypic oracle")
    rc.add_argument("--m-max", type=int, default=8)
    rc.add_argument("--b", type=_floats, default=(0.25, 0.5, 0.75))
    rc.add_argument("--r", type=float, default=1.0)
    rc.add_argument("--variant", choices=spectra.VARIANTS, default="printed")
    rc.add_argument("--out")

    g = sub.add_parser("geometry", help="curvature data of one leaf")
    g.add_argument("--b", type=float, default=0.5)
    g.add_argument("--r0", type=float, default=1.0)
    g.add_argument("--out")

    c = sub.add_parser("closed-forms", help="exact b=1/2 and focal/constant-curvature tables")
    c.add_argument("--m-max", type=int, default=8)
    c.add_argument("--out")

    li = sub.add_parser("limits", help="focal-limit flow of the odd-m branches")
    li.add_argument("--bundle", type=int, choices=(1, 3), default=1)
    li.add_argument("--m", type=_floats, default=(1, 3, 5))
    li.add_argument("--r", type=float, default=1.0)
    li.add_argument("--variant", choices=spectra.VARIANTS, default="printed")
    li.add_argument("--out")

    sy = sub.add_parser("symmetry", help="b -> 1-b symmetry of the bundle-2 matrices")
    sy.add_argument("--m-max", type=int, default=12)
    sy.add_argument("--points", type=int, default=21)
    sy.add_argument("--out")

    d = sub.add_parser("dimensions", help="brute-force equivariant dimension counts")
    d.add_argument("--m-max", type=int, default=6)
    d.add_argument("--out")
    return p


def read_config(path):
    """Turn key=value lines into flag tokens placed before the real arguments."""
    tokens = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInputError(f"{path}:{n}: expected key=value, got {line!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "yes", "on"):
            tokens.append(flag)
        elif value.lower() in ("false", "no", "off"):
            tokens.append("--no-" + key.replace("_", "-"))
        else:
            tokens += [flag, value]
    return tokens


def _expand_config(argv):
    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return rest
    tokens = read_config(known.config)
    cmd = [i for i, a in enumerate(rest) if not a.startswith("-")]
    if not cmd:
        return rest
    i = cmd[0]
    return rest[: i + 1] + tokens + rest[i + 1:]


def _run(args):
    if args.command == "sweep":
        cfg = SweepConfig(args.bundle, args.m_max, args.b_min, args.b_max, args.steps, args.b_values,
                          args.r, args.format, args.variant, args.diagnostics)
        traces = run_sweep(cfg)
        diag = sweep_diagnostics(cfg, traces)
        if cfg.fmt == "csv":
            text = to_csv(traces)
            for key, items in diag.items():
                sys.stderr.write(f"diagnostics[{key}]: {len(items)} entries (use --format json)\n")
        else:
            text = to_json(cfg, traces, diag)
        return text, args.out
    if args.command == "reconcile":
        if args.m_max < 0:
            raise InvalidInputError("--m-max must be >= 0")
        return reconcile_report(args.m_max, args.b, args.r, args.variant), args.out
    if args.command == "geometry":
        return json.dumps(geometry.geometry_summary(args.b, args.r0), indent=1, sort_keys=True) + "\n", args.out
    if args.command == "closed-forms":
        if args.m_max < 1:
            raise InvalidInputError("--m-max must be >= 1")
        return closed_forms_report(args.m_max), args.out
    if args.command == "limits":
        ms = [int(v) for v in args.m]
        if any(v != int(v) for v in args.m):
            raise InvalidInputError("--m takes integers")
        return limits_report(args.bundle, ms, args.r, args.variant), args.out
    if args.command == "symmetry":
        return symmetry_report(args.m_max, args.points), args.out
    if args.command == "dimensions":
        return dimensions_report(args.m_max), args.out
    raise InvalidInputError(f"unknown command {args.command}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_expand_config(argv))
        text, out = _run(args)
        emit(text, out)
    except (IsospecError, ValueError) as exc:
        sys.stderr.write(f"isospec: error: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"isospec: I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
