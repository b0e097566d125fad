"""Command-line front end.

    fracdiff differint --kernel step --order 0.5 --grid 0.1:5:50 --method closed
    fracdiff specfun --func incgamma --a -0.5 --grid 0.5:10:20 --angle 1.5707963
    fracdiff cable --x-grid 0.1:5:20 --t-grid 0.5:20:20
    fracdiff verify [--suite kummer] [--tol-file tol.json]

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import cable, kernels, oracles, specfun, transform, verify
from .core import FractionalOrder, IntegrationConstants
from .errors import FracdiffError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

KERNELS = ("step", "delta", "exp", "power")
METHODS = ("closed", "bromwich", "gl")
FUNCS = ("gamma", "rgamma", "incgamma", "kummer", "power_plus")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid must be start:stop:count, got {text!r}")
        try:
            grid = cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise UsageError(f"bad grid {text!r}: {exc}") from None
        if grid.count < 2:
            raise UsageError("grid count must be at least 2")
        if not grid.stop > grid.start:
            raise UsageError("grid stop must exceed start")
        return grid

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class RunConfig:
    command: str
    kernel: str = "step"
    order: float = 0.5
    grid: Grid | None = None
    method: str = "closed"
    b: float = 1.0
    mu: float = 0.0
    consts: tuple[complex, ...] = ()
    bromwich: transform.BromwichConfig = field(default_factory=transform.BromwichConfig)
    oracle: oracles.OracleConfig = field(default_factory=oracles.OracleConfig)
    out: str | None = None
    fmt: str = "csv"


def fmt_float(v: float) -> str:
    """17 significant digits, lowercase exponent; identical input gives identical bytes."""
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan"
    return format(float(v), ".16e")


def render(columns: Sequence[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return None
            return v
        payload = [{k: clean(row.get(k)) for k in columns} for row in rows]
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_float(row[c]) if isinstance(row.get(c), float) else ("" if row.get(c) is None else row[c])
                         for c in columns])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- differint ----------------------------------------------------------------

DIFFERINT_COLUMNS = ("x", "re", "im", "method", "error_bound", "note")


def _kernel(cfg: RunConfig) -> kernels.ClosedFormKernel:
    if cfg.kernel == "step":
        return kernels.HeavisideStep()
    if cfg.kernel == "delta":
        return kernels.DiracDelta()
    if cfg.kernel == "exp":
        return kernels.ComplexExponential(cfg.b)
    return kernels.PowerLaw(cfg.mu)


def _signal(cfg: RunConfig):
    if cfg.kernel == "step":
        return lambda t: np.ones_like(np.asarray(t, dtype=float))
    if cfg.kernel == "exp":
        return lambda t: np.exp(1j * cfg.b * np.asarray(t))
    mu = cfg.mu
    return lambda t: np.asarray(t, dtype=float) ** mu / math.gamma(mu + 1)


def _check_differint(cfg: RunConfig) -> None:
    if cfg.kernel not in KERNELS:
        raise UsageError(f"unknown kernel {cfg.kernel!r}")
    if cfg.method not in METHODS:
        raise UsageError(f"unknown method {cfg.method!r}")
    if cfg.method == "gl" and cfg.kernel == "delta":
        raise UsageError("the Grünwald–Letnikov oracle needs a function; delta has no samples")
    if cfg.consts and cfg.method == "gl":
        raise UsageError("integration constants are not supported with --method gl")
    if cfg.consts and cfg.kernel != "step" and cfg.method == "closed":
        raise UsageError("closed-form integration constants are supported for the step kernel only")
    if cfg.consts:
        try:
            IntegrationConstants(cfg.consts).check(FractionalOrder(cfg.order))
        except FracdiffError as exc:
            raise UsageError(str(exc)) from None
    if cfg.kernel == "exp" and cfg.b == 0:
        raise UsageError("--b 0 degenerates to the step kernel")
    if cfg.kernel == "power" and not cfg.mu > -1:
        raise UsageError("--mu must exceed -1")


def _differint_row(cfg: RunConfig, x: float) -> dict:
    bound = None
    if cfg.method == "closed":
        value = kernels.differint_kernel(_kernel(cfg), cfg.order, x, cfg.consts)
    elif cfg.method == "bromwich":
        image = transform.image_of(_kernel(cfg))
        res = transform.fourier_form_differint(image, cfg.order, x, cfg.consts, cfg.bromwich)
        value, bound = res.value, float(res.bound)
    else:
        value = oracles.grunwald_letnikov(_signal(cfg), cfg.order, x, cfg.oracle)
    value = complex(value)
    return {"x": float(x), "re": value.real, "im": value.imag, "method": cfg.method,
            "error_bound": bound, "note": None}


def run_differint(cfg: RunConfig) -> tuple[int, str]:
    _check_differint(cfg)
    rows = []
    for x in cfg.grid.points():
        try:
            rows.append(_differint_row(cfg, float(x)))
        except FracdiffError as exc:
            rows.append({"x": float(x), "re": math.nan, "im": math.nan, "method": cfg.method,
                         "error_bound": None, "note": f"{type(exc).__name__}: {exc}"})
            return EXIT_NUMERIC, render(DIFFERINT_COLUMNS, rows, cfg.fmt)
    return EXIT_OK, render(DIFFERINT_COLUMNS, rows, cfg.fmt)


# -- specfun ------------------------------------------------------------------

SPECFUN_COLUMNS = ("x", "z_re", "z_im", "re", "im", "func", "note")


def run_specfun(func: str, grid: Grid, a: float, b: float, imag: float, angle: float | None,
                fmt: str) -> tuple[int, str]:
    if func not in FUNCS:
        raise UsageError(f"unknown function {func!r}")
    if func == "power_plus" and (imag or angle is not None):
        raise UsageError("power_plus takes a real argument")
    rows = []
    for x in grid.points():
        x = float(x)
        z = cmath.rect(x, angle) if angle is not None else complex(x, imag)
        row = {"x": x, "z_re": z.real, "z_im": z.imag, "func": func, "note": None}
        try:
            if func == "gamma":
                v = specfun.gamma(z)
            elif func == "rgamma":
                v = specfun.rgamma(z)
            elif func == "incgamma":
                v = specfun.upper_incomplete_gamma(a, z)
            elif func == "kummer":
                v = specfun.kummer_phi(a, b, z)
            else:
                v = specfun.power_plus(x, a)
        except FracdiffError as exc:
            row.update(re=math.nan, im=math.nan, note=f"{type(exc).__name__}: {exc}")
            rows.append(row)
            return EXIT_NUMERIC, render(SPECFUN_COLUMNS, rows, fmt)
        v = complex(v)
        row.update(re=v.real, im=v.imag)
        rows.append(row)
    return EXIT_OK, render(SPECFUN_COLUMNS, rows, fmt)


# -- cable --------------------------------------------------------------------

CABLE_COLUMNS = ("x", "t", "v_re", "v_im", "i_re", "i_im", "pde_residual", "identity_residual",
                 "habitual_residual")
PHYSICAL_COLUMNS = ("x", "t", "v", "i", "pde_residual", "identity_residual", "habitual_residual")


def run_cable(params: cable.CableParams, xs: Grid, ts: Grid, h: float, physical: bool,
              fmt: str) -> tuple[int, str]:
    if not (h > 0 and xs.start > cable.STENCIL_MARGIN * h):
        raise UsageError(f"x grid must start beyond {cable.STENCIL_MARGIN} h = {cable.STENCIL_MARGIN * h:g}")
    if not ts.start > 0:
        raise UsageError("t grid must start at t > 0")
    rows = []
    for x in xs.points():
        for t in ts.points():
            x, t = float(x), float(t)
            v = cable.voltage(params, x, t)
            i = cable.current(params, x, t)
            res = cable.current_voltage_residual(params, x, t)
            row = {"x": x, "t": t, "pde_residual": cable.pde_residual(params, x, t, h),
                   "identity_residual": res.exact, "habitual_residual": res.habitual}
            if physical:
                row.update(v=v.real, i=i.real)
            else:
                row.update(v_re=v.real, v_im=v.imag, i_re=i.real, i_im=i.imag)
            rows.append(row)
    return EXIT_OK, render(PHYSICAL_COLUMNS if physical else CABLE_COLUMNS, rows, fmt)


# -- verify -------------------------------------------------------------------

def run_verify(suites: Sequence[str] | None, tol_file: str | None, out=None) -> int:
    out = out or sys.stdout
    for name in suites or ():
        if name not in verify.SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(verify.SUITES)}")
    try:
        tol = verify.load_tolerances(tol_file)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot load tolerances: {exc}") from None
    checks = verify.run_suites(suites, tol)
    for check in checks:
        print(check.line(), file=out)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# -- argument parsing ---------------------------------------------------------

def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _consts(text: str) -> tuple[complex, ...]:
    return tuple(_complex(p) for p in text.split(",") if p.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracdiff", description="Differintegral engine and RC cable model.")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    output.add_argument("--out", help="write the table here instead of stdout")

    d = sub.add_parser("differint", parents=[output], help="evaluate a kernel's differintegral on a grid")
    d.add_argument("--kernel", choices=KERNELS, default="step")
    d.add_argument("--order", type=float, required=True)
    d.add_argument("--grid", required=True, help="start:stop:count, both ends included")
    d.add_argument("--method", choices=METHODS, default="closed")
    d.add_argument("--b", type=float, default=1.0, help="frequency of the exp kernel")
    d.add_argument("--mu", type=float, default=0.0, help="exponent of the power kernel")
    d.add_argument("--consts", type=_consts, default=(), help="comma-separated a0,a1,... for order -n")
    d.add_argument("--a", type=float, default=1.0, help="Bromwich abscissa")
    d.add_argument("--half-extent", type=float, default=400.0)
    d.add_argument("--nodes", type=int, default=2**15)
    d.add_argument("--rule", choices=("trapezoid", "tanh-sinh"), default="trapezoid")
    d.add_argument("--h", type=float, default=1e-4, help="Grünwald–Letnikov step")

    s = sub.add_parser("specfun", parents=[output], help="tabulate a special function")
    s.add_argument("--func", choices=FUNCS, required=True)
    s.add_argument("--grid", required=True)
    s.add_argument("--a", type=float, default=0.5)
    s.add_argument("--b", type=float, default=1.0)
    where = s.add_mutually_exclusive_group()
    where.add_argument("--imag", type=float, default=0.0, help="evaluate at z = x + j*imag")
    where.add_argument("--angle", type=float, help="evaluate at z = x * exp(j*angle)")

    c = sub.add_parser("cable", parents=[output], help="sweep the semi-infinite RC cable")
    c.add_argument("--R", type=float, default=1.0)
    c.add_argument("--C", type=float, default=1.0)
    c.add_argument("--omega", type=float, default=1.0)
    c.add_argument("--V0", type=_complex, default=1 + 0j)
    c.add_argument("--x-grid", default="0.1:5:20")
    c.add_argument("--t-grid", default="0.5:20:20")
    c.add_argument("--h", type=float, default=1e-3, help="finite-difference step of the PDE residual")
    c.add_argument("--physical", action="store_true", help="report Re V and Re i only")

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--suite", action="append", help=f"one of: {', '.join(verify.SUITES)}; repeatable")
    v.add_argument("--tol-file", help=f"JSON tolerance overrides (or ${verify.TOL_ENV})")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return run_verify(args.suite, args.tol_file)
        if args.command == "differint":
            try:
                bcfg = transform.BromwichConfig(args.a, args.half_extent, args.nodes, args.rule)
                ocfg = oracles.OracleConfig(h=args.h)
            except FracdiffError as exc:
                raise UsageError(str(exc)) from None
            cfg = RunConfig("differint", kernel=args.kernel, order=args.order, grid=Grid.parse(args.grid),
                            method=args.method, b=args.b, mu=args.mu, consts=args.consts,
                            bromwich=bcfg, oracle=ocfg, out=args.out, fmt=args.fmt)
            code, text = run_differint(cfg)
        elif args.command == "specfun":
            code, text = run_specfun(args.func, Grid.parse(args.grid), args.a, args.b, args.imag,
                                     args.angle, args.fmt)
        else:
            try:
                params = cable.CableParams(args.R, args.C, args.omega, args.V0)
            except FracdiffError as exc:
                raise UsageError(str(exc)) from None
            code, text = run_cable(params, Grid.parse(args.x_grid), Grid.parse(args.t_grid), args.h,
                                   args.physical, args.fmt)
    except UsageError as exc:
        print(f"fracdiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(text, args.out)
    if code == EXIT_NUMERIC:
        print("fracdiff: numerical failure; see the last row", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
