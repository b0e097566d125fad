"""Named verification suites. Each returns a list of :class:`Check` with the
measured worst-case error against its tolerance; ``fracdiff verify`` and the
acceptance tests both run these.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import cable, kernels, oracles, specfun, transform
from .errors import FracdiffError

TOL_ENV = "FRACDIFF_TOL_FILE"


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}/{self.name} worst={self.worst:.3e} tol={self.tol:.3e} ({self.seconds:.2f}s)"


def default_tolerances() -> dict[str, float]:
    text = resources.files("fracdiff").joinpath("tolerances.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_tolerances(path: str | os.PathLike | None = None) -> dict[str, float]:
    """Packaged defaults, overridden by ``path`` or else ``$FRACDIFF_TOL_FILE``."""
    tol = default_tolerances()
    path = path or os.environ.get(TOL_ENV)
    if path:
        override = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = sorted(set(override) - set(tol))
        if unknown:
            raise KeyError(f"unknown tolerance keys: {', '.join(unknown)}")
        tol.update({k: float(v) for k, v in override.items()})
    return tol


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[Check] = []

    def add(self, name: str, worst: float, tol: float, passed: bool | None = None, started: float | None = None):
        if passed is None:
            passed = bool(worst <= tol)
        elapsed = time.perf_counter() - started if started is not None else 0.0
        self.checks.append(Check(self.suite, name, passed, float(worst), float(tol), elapsed))


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def _step(t):
    return np.ones_like(np.asarray(t, dtype=float))


# -- special functions --------------------------------------------------------

def suite_specfun(tol: dict) -> list[Check]:
    rec = _Recorder("specfun")
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240601)
    worst, count = 0.0, 0
    while count < 200:
        z = complex(*rng.uniform(-10, 10, 2))
        if abs(z) > 10:
            continue
        if abs(z.imag) < 0.1 and abs(z.real - round(z.real)) < 0.1:
            continue
        value = specfun.gamma(z) * specfun.gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        worst = max(worst, abs(value - 1))
        count += 1
    rec.add("gamma_reflection", worst, tol["gamma_reflection"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for a in (-1.5, -0.5, 0.5, 1.5):
        for r in np.geomspace(0.01, 50, 25):
            for arg in (0.0, math.pi / 4, -math.pi / 4, math.pi / 2):
                z = cmath.rect(r, arg)
                lhs = specfun.upper_incomplete_gamma(a + 1, z)
                rhs = a * specfun.upper_incomplete_gamma(a, z) + specfun.cpow(z, a) * cmath.exp(-z)
                worst = max(worst, _rel(rhs, lhs))
    rec.add("incgamma_recurrence", worst, tol["incgamma_recurrence"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for x in (-2.0, -0.3, 0.2, 1.0, 3.7):
        for m1, m2 in ((0.5, 0.25), (-0.7, 1.2), (2.0, -0.5), (0.0, 1.5)):
            lhs = specfun.power_plus(x, m1) * specfun.power_plus(x, m2)
            rhs = specfun.power_plus(x, m1 + m2)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
    rec.add("power_plus_product", worst, tol["power_plus_product"], started=t0)
    return rec.checks


def suite_kummer(tol: dict) -> list[Check]:
    rec = _Recorder("kummer")
    t0 = time.perf_counter()
    worst = 0.0
    for lam in (0.25, 0.5, 0.75):
        for bx in (0.1, 1.0, 5.0, 10.0) + tuple(np.linspace(0.05, 10, 12)):
            z = 1j * bx
            phi = specfun.kummer_phi(1, 1 - lam, z)
            rhs = specfun.cpow(z, lam) * cmath.exp(z) * (
                specfun.gamma(1 - lam) + lam * specfun.upper_incomplete_gamma(-lam, z))
            worst = max(worst, abs(phi - rhs) / abs(phi))
    rec.add("identity_residual", worst, tol["kummer_identity"], started=t0)
    return rec.checks


# -- closed forms -------------------------------------------------------------

def suite_step(tol: dict) -> list[Check]:
    rec = _Recorder("step")
    xs = (0.1, 0.5, 1.0, 2.0, 5.0)
    t0 = time.perf_counter()
    worst = max(_rel(kernels.differint_step(0.5, x), 1 / (math.sqrt(math.pi) * math.sqrt(x))) for x in xs)
    rec.add("closed_form", worst, tol["step_closed_rel"], started=t0)
    t0 = time.perf_counter()
    cfg = oracles.OracleConfig(h=tol["step_gl_h"])
    worst = max(_rel(oracles.grunwald_letnikov(_step, 0.5, x, cfg), kernels.differint_step(0.5, x)) for x in xs)
    rec.add("gl_oracle", worst, tol["step_gl_rel"], started=t0)
    elapsed = time.perf_counter() - t0
    rec.add("runtime_s", elapsed, 10.0)
    return rec.checks


def suite_integer(tol: dict) -> list[Check]:
    rec = _Recorder("integer")
    t0 = time.perf_counter()
    worst = 0.0
    for b in (-3.0, -0.5, 1.0, 2.0, 7.5):
        for x in (0.1, 0.7, 1.0, 4.2):
            worst = max(worst, abs(kernels.differint_exp(1, b, x) - 1j * b * cmath.exp(1j * b * x)))
    rec.add("exp_order_1", worst, tol["exp_integer_abs"], started=t0)
    t0 = time.perf_counter()
    worst = max(abs(kernels.differint_step(-1, x) - x) for x in (0.1, 0.5, 1.0, 3.0, 10.0))
    rec.add("step_order_-1", worst, tol["step_integer_abs"], started=t0)
    t0 = time.perf_counter()
    exact = all(kernels.differint_delta(-1, x) == 1 for x in (1e-6, 0.5, 1.0, 5.0, 1e6))
    rec.add("delta_order_-1_exact", 0.0 if exact else 1.0, 0.0, passed=exact, started=t0)
    return rec.checks


def suite_kernels(tol: dict) -> list[Check]:
    rec = _Recorder("kernels")
    h = tol["exp_fd_h"]
    t0 = time.perf_counter()
    worst = 0.0
    for b in (0.5, 1.0, 2.0):
        for x in (0.5, 1.0, 2.0):
            fd = oracles.finite_difference(lambda t: cmath.exp(1j * b * t), x, h)
            worst = max(worst, abs(kernels.differint_exp(1, b, x) - fd))
    rec.add("exp_order_1_vs_fd", worst, tol["exp_fd_abs"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for x in np.linspace(0.1, 10, 12):
        grid = np.linspace(0, x, 2001)
        running = np.trapezoid(np.ones_like(grid), grid)
        worst = max(worst, abs(kernels.differint_step(-1, x) - running))
    rec.add("antiderivative", worst, tol["antiderivative_abs"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for lam in (-2.5, -0.7, -0.25, 0.3, 0.5, 1.5, 2.2):
        for x in (0.2, 1.0, 3.0):
            worst = max(worst, _rel(kernels.differint_delta(lam, x), kernels.differint_step(lam + 1, x)))
    rec.add("delta_vs_shifted_step", worst, tol["delta_step_rel"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for lam in (-0.5, 0.25, 0.5):
        for x in (0.5, 1.0, 2.0):
            fd = oracles.finite_difference(lambda t: kernels.differint_step(lam, t), x, 1e-4)
            worst = max(worst, abs(fd - kernels.differint_step(lam + 1, x)))
    rec.add("step_derivative_composition", worst, 1e-5, started=t0)
    return rec.checks


def suite_semigroup(tol: dict) -> list[Check]:
    rec = _Recorder("semigroup")
    xs = np.linspace(0.5, 3.0, 6)
    t0 = time.perf_counter()
    worst = 0.0
    for mu in (0.5, 1.0, 2.0):
        for a in (0.25, 0.5):
            for b in (0.25, 0.5):
                for x in xs:
                    inner = kernels.PowerLaw(mu).differintegrated(a)
                    once = kernels.differint_power(b, inner.mu, x)
                    worst = max(worst, _rel(once, kernels.differint_power(a + b, mu, x)))
    rec.add("closed_composition", worst, tol["semigroup_closed_rel"], started=t0)

    t0 = time.perf_counter()
    h = tol["semigroup_gl_h"]
    n = int(round(3.0 / h)) + 1
    grid = h * np.arange(n)
    worst = 0.0
    for mu in (0.5, 1.0, 2.0):
        f = grid**mu / math.gamma(mu + 1)
        for a in (0.25, 0.5):
            first = oracles.grunwald_letnikov_grid(f, a, h)
            for b in (0.25, 0.5):
                twice = oracles.grunwald_letnikov_grid(first, b, h)
                for x in xs:
                    i = int(round(x / h))
                    worst = max(worst, _rel(twice[i], kernels.differint_power(a + b, mu, grid[i])))
    rec.add("gl_twice", worst, tol["semigroup_gl_rel"], started=t0)
    return rec.checks


# -- Bromwich line ------------------------------------------------------------

BROMWICH_ORDERS = (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75)
BROMWICH_XS = (0.5, 1.0, 2.0)


def suite_bromwich(tol: dict) -> list[Check]:
    rec = _Recorder("bromwich")
    t0 = time.perf_counter()
    worst, covered = 0.0, True
    cfg = transform.BromwichConfig()
    for lam in BROMWICH_ORDERS:
        for x in BROMWICH_XS:
            res = transform.bromwich_differint(transform.step_image(), lam, x, cfg)
            err = abs(res.value - kernels.differint_step(lam, x))
            worst = max(worst, err)
            covered = covered and err <= res.bound
    rec.add("step_closed_form", worst, tol["bromwich_abs"], started=t0)
    rec.add("bound_covers_error", 0.0 if covered else 1.0, 0.0, passed=covered)
    rec.add("runtime_s", time.perf_counter() - t0, 60.0)
    return rec.checks


def suite_transform(tol: dict) -> list[Check]:
    rec = _Recorder("transform")
    step = transform.step_image()

    t0 = time.perf_counter()
    floor = tol["bromwich_refine_floor"]
    monotone, worst = True, 0.0
    for lam in BROMWICH_ORDERS:
        for x in BROMWICH_XS:
            exact = kernels.differint_step(lam, x)
            errs = []
            for mult in (1, 2, 4):
                cfg = transform.BromwichConfig(half_extent=50.0 * mult, nodes=2**9 * mult)
                errs.append(abs(transform.bromwich_differint(step, lam, x, cfg).value - exact))
            for coarse, fine in zip(errs, errs[1:]):
                if fine > max(coarse, floor):
                    monotone = False
                    worst = max(worst, fine - coarse)
    rec.add("refinement_monotone", worst, floor, passed=monotone, started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    alpha, beta = 2.0 - 0.5j, 0.75
    g2 = transform.exp_image(2.0)
    combo = alpha * step + beta * g2
    for lam in (-0.5, 0.25, 0.5):
        for x in (0.5, 1.0, 2.0):
            r1 = transform.bromwich_differint(step, lam, x)
            r2 = transform.bromwich_differint(g2, lam, x)
            rc = transform.bromwich_differint(combo, lam, x)
            allowed = abs(alpha) * r1.bound + abs(beta) * r2.bound + rc.bound + tol["linearity_abs"]
            worst = max(worst, abs(rc.value - (alpha * r1.value + beta * r2.value)) / allowed)
    rec.add("linearity_vs_bounds", worst, 1.0, started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for lam in (-0.5, 0.25, 0.75):
        for x in (0.5, 1.0, 2.0):
            results = [transform.bromwich_differint(step, lam, x, transform.BromwichConfig(a=a))
                       for a in (0.5, 1.0, 2.0)]
            for r in results[1:]:
                worst = max(worst, abs(r.value - results[0].value) / (r.bound + results[0].bound))
    rec.add("contour_shift_vs_bounds", worst, 1.0, started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    for b, lam, x in ((2.0, 0.5, 1.0), (-1.0, 0.25, 2.0), (3.0, -0.5, 0.5)):
        r = transform.bromwich_differint(transform.exp_image(b), lam, x)
        worst = max(worst, abs(r.value - kernels.differint_exp(lam, b, x)) / max(r.bound, 1e-12))
    rec.add("exp_image_vs_closed_form", worst, 1.0, started=t0)
    return rec.checks


# -- oracles ------------------------------------------------------------------

def suite_oracles(tol: dict) -> list[Check]:
    rec = _Recorder("oracles")
    cfg = oracles.OracleConfig(h=tol["oracle_h"])
    funcs = {
        "U": (_step, lambda t: 1.0),
        "t": (lambda t: np.asarray(t, dtype=float), lambda t: t),
        "exp(jt)": (lambda t: np.exp(1j * np.asarray(t)), lambda t: cmath.exp(1j * t)),
    }
    t0 = time.perf_counter()
    worst = 0.0
    for vec, scalar in funcs.values():
        for alpha in (0.5, 1.0):
            for x in (0.5, 1.0, 3.0):
                gl = oracles.grunwald_letnikov(vec, -alpha, x, cfg)
                rl = oracles.riemann_liouville_integral(scalar, alpha, x, cfg)
                worst = max(worst, _rel(gl, rl))
    rec.add("gl_vs_riemann_liouville", worst, tol["oracle_concordance_rel"], started=t0)

    t0 = time.perf_counter()
    floor = tol["gl_refine_floor"]
    cases = [
        (_step, 0.5, kernels.differint_step(0.5, 1.0)),
        (_step, -0.5, kernels.differint_step(-0.5, 1.0)),
        (lambda t: np.exp(1j * np.asarray(t)), 0.5, kernels.differint_exp(0.5, 1.0, 1.0)),
        (lambda t: np.asarray(t, dtype=float), 0.5, kernels.differint_power(0.5, 1.0, 1.0)),
    ]
    monotone, worst = True, 0.0
    for f, lam, exact in cases:
        errs = [abs(oracles.grunwald_letnikov(f, lam, 1.0, oracles.OracleConfig(h=h)) - exact)
                for h in (1e-2, 5e-3, 2.5e-3, 1.25e-3)]
        for coarse, fine in zip(errs, errs[1:]):
            if fine > coarse + floor:
                monotone = False
                worst = max(worst, fine - coarse)
    rec.add("gl_h_refinement", worst, floor, passed=monotone, started=t0)
    return rec.checks


# -- cable --------------------------------------------------------------------

CABLE_GRID = dict(R=(0.5, 1.0, 2.0), C=(0.5, 1.0, 2.0), omega=(0.5, 1.0, 5.0), x=(0.1, 1.0), t=(0.5, 1.0, 10.0))


def suite_cable(tol: dict) -> list[Check]:
    rec = _Recorder("cable")
    t0 = time.perf_counter()
    worst = 0.0
    for R in CABLE_GRID["R"]:
        for C in CABLE_GRID["C"]:
            for w in CABLE_GRID["omega"]:
                p = cable.CableParams(R, C, w, 1.0)
                for x in CABLE_GRID["x"]:
                    for t in CABLE_GRID["t"]:
                        worst = max(worst, cable.current_voltage_residual(p, x, t).exact)
    rec.add("current_identity", worst, tol["cable_identity"], started=t0)

    t0 = time.perf_counter()
    p = cable.CableParams()
    h = tol["pde_h"]
    r_h = cable.pde_residual(p, 1.0, 1.0, h)
    r_h2 = cable.pde_residual(p, 1.0, 1.0, h / 2)
    rec.add("pde_residual", r_h / abs(cable.voltage(p, 1.0, 1.0)), tol["pde_rel"], started=t0)
    rec.add("pde_order_ratio", abs(r_h / r_h2 - tol["pde_ratio"]), tol["pde_ratio_tol"])

    t0 = time.perf_counter()
    hg = tol["gradient_h"]
    worst = 0.0
    for R, C, w in ((1.0, 1.0, 1.0), (2.0, 0.5, 5.0)):
        p = cable.CableParams(R, C, w, 1.5 - 0.5j)
        for x in np.linspace(0.1, 3.0, 10):
            for t in np.linspace(0.0, 10.0, 10):
                grad = oracles.finite_difference(lambda s: cable.voltage(p, s, t), x, hg)
                worst = max(worst, _rel(-grad / p.R, cable.current(p, x, t)))
    rec.add("ohm_gradient_law", worst, tol["gradient_rel"], started=t0)

    t0 = time.perf_counter()
    worst = 0.0
    exact_boundary = True
    for R, C, w in ((1.0, 1.0, 1.0), (0.5, 2.0, 5.0)):
        p = cable.CableParams(R, C, w, 2.0 + 1.0j)
        xs = np.linspace(0.0, 4.0, 9)
        for t in (0.0, 0.3, 2.0):
            v = np.array([cable.voltage(p, x, t) for x in xs])
            worst = max(worst, float(np.max(np.abs(np.log(np.abs(v / p.V0)) + p.k * xs))))
            phase = np.unwrap(np.angle(v / p.V0))
            worst = max(worst, float(np.max(np.abs(np.diff(phase) / np.diff(xs) + p.k))))
            exact_boundary &= cable.voltage(p, 0.0, t) == p.V0 * cmath.exp(1j * w * t)
    rec.add("attenuation_phase_lock", worst, tol["attenuation_abs"], started=t0)
    rec.add("boundary_condition_exact", 0.0 if exact_boundary else 1.0, 0.0, passed=bool(exact_boundary))

    t0 = time.perf_counter()
    p = cable.CableParams(omega=1.0)
    f = lambda s: p.V0 * math.exp(-p.k * 0.5) * np.exp(1j * (p.omega * np.asarray(s) - p.k * 0.5))
    gl = oracles.grunwald_letnikov(f, 0.5, 2.0, oracles.OracleConfig(h=1e-4))
    rec.add("half_derivative_vs_gl", abs(gl - cable.half_derivative_voltage(p, 0.5, 2.0)),
            tol["half_derivative_gl_abs"], started=t0)
    return rec.checks


def suite_habitual(tol: dict) -> list[Check]:
    rec = _Recorder("habitual")
    t0 = time.perf_counter()
    p = cable.CableParams()
    x = 1.0
    late = cable.current_voltage_residual(p, x, 100.0 / p.omega).habitual
    early = cable.current_voltage_residual(p, x, 1.0 / p.omega).habitual
    i_late = abs(cable.current(p, x, 100.0 / p.omega))
    rec.add("residual_at_wt_100", late / i_late, tol["habitual_rel"], started=t0)
    rec.add("decays_from_wt_1", late / early, 1.0, passed=late < early)
    return rec.checks


SUITES: dict[str, Callable[[dict], list[Check]]] = {
    "step": suite_step,
    "bromwich": suite_bromwich,
    "kummer": suite_kummer,
    "integer": suite_integer,
    "semigroup": suite_semigroup,
    "cable": suite_cable,
    "habitual": suite_habitual,
    "oracles": suite_oracles,
    "specfun": suite_specfun,
    "kernels": suite_kernels,
    "transform": suite_transform,
}


def run_suites(names: Iterable[str] | None = None, tol: dict | None = None) -> list[Check]:
    tol = default_tolerances() if tol is None else tol
    selected = list(SUITES) if not names else list(names)
    checks: list[Check] = []
    for name in selected:
        fn = SUITES[name]
        t0 = time.perf_counter()
        try:
            checks.extend(fn(tol))
        except FracdiffError as exc:
            checks.append(Check(name, f"error: {exc}", False, math.inf, 0.0, time.perf_counter() - t0))
    return checks
