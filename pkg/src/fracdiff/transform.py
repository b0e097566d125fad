"""Differintegrals computed from a one-sided Laplace image by quadrature along
the Bromwich line ``Re s = a``::

    d^lam f / dx^lam = e^{ax} / (2 pi) * int G(a + j sig) (a + j sig)^lam e^{j sig x} d sig

plus a numerical one-sided Laplace transform for sampled signals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import FractionalOrder, IntegrationConstants, as_consts, as_order
from .errors import AccuracyWarning, ContourError, DomainError, RegionError, ResolutionError
from .kernels import ClosedFormKernel, ComplexExponential, DiracDelta, HeavisideStep, PowerLaw

__all__ = [
    "LaplaceImage",
    "BromwichConfig",
    "BromwichResult",
    "SampledSignal",
    "LaplaceResult",
    "ORDER_MARGIN",
    "step_image",
    "delta_image",
    "exp_image",
    "power_image",
    "image_of",
    "laplace_numeric",
    "bromwich_differint",
    "bromwich_differint_split",
    "fourier_form_differint",
]

# Orders must stay this far below the image's decay exponent (0.99 for 1/s).
ORDER_MARGIN = 0.01
# Forward-difference levels in the Abel summation of the truncated tails.
TAIL_LEVELS = 5
MAX_PHASE_PER_NODE = math.pi / 4


@dataclass(frozen=True)
class LaplaceImage:
    """A Laplace image ``G(s)`` valid for ``Re s > abscissa``.

    ``evaluate`` must accept a complex NumPy array. ``decay`` is the exponent p
    in ``|G(s)| ~ |s|^-p`` for large ``|s|``; it caps the admissible order.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    abscissa: float = 0.0
    decay: float = 1.0

    def __call__(self, s):
        return self.evaluate(np.asarray(s, dtype=complex))

    def __add__(self, other: "LaplaceImage") -> "LaplaceImage":
        f, g = self.evaluate, other.evaluate
        return LaplaceImage(lambda s: f(s) + g(s), max(self.abscissa, other.abscissa),
                            min(self.decay, other.decay))

    def __mul__(self, c: complex) -> "LaplaceImage":
        f = self.evaluate
        return LaplaceImage(lambda s: c * f(s), self.abscissa, self.decay)

    __rmul__ = __mul__


def step_image() -> LaplaceImage:
    return LaplaceImage(lambda s: 1 / s, 0.0, 1.0)


def delta_image() -> LaplaceImage:
    return LaplaceImage(lambda s: np.ones_like(s), -math.inf, 0.0)


def exp_image(b: float) -> LaplaceImage:
    """Image ``1 / (s - j b)`` of ``U(x) e^{j b x}``."""
    return LaplaceImage(lambda s: 1 / (s - 1j * b), 0.0, 1.0)


def power_image(mu: float) -> LaplaceImage:
    """Image ``s^-(mu+1)`` of the normalized power ``x_+^mu / Gamma(mu + 1)``."""
    return LaplaceImage(lambda s: np.exp(-(mu + 1) * np.log(s)), 0.0, mu + 1)


def image_of(kernel: ClosedFormKernel) -> LaplaceImage:
    if isinstance(kernel, HeavisideStep):
        return step_image()
    if isinstance(kernel, DiracDelta):
        return delta_image()
    if isinstance(kernel, ComplexExponential):
        return exp_image(kernel.b)
    if isinstance(kernel, PowerLaw):
        img = power_image(kernel.mu)
        return img if kernel.normalized else img * math.gamma(kernel.mu + 1)
    raise TypeError(f"unknown kernel {kernel!r}")


@dataclass(frozen=True)
class BromwichConfig:
    """Quadrature on the line ``Re s = a``.

    ``trapezoid`` samples ``nodes`` points on ``[-half_extent, half_extent]`` and
    sums the two tails beyond it analytically. ``tanh-sinh`` is a
    double-exponential rule for Fourier-type integrals over the whole line; it
    ignores ``half_extent``.
    """

    a: float = 1.0
    half_extent: float = 400.0
    nodes: int = 2**15
    rule: str = "trapezoid"

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("Bromwich abscissa a must be positive")
        if not self.half_extent > 0:
            raise DomainError("half_extent must be positive")
        if self.nodes < 64:
            raise DomainError("need at least 64 nodes")
        if self.rule not in ("trapezoid", "tanh-sinh"):
            raise DomainError(f"unknown rule {self.rule!r}")


class BromwichResult(NamedTuple):
    value: complex
    bound: float


def _line_integrand(G: LaplaceImage, lam: float, a: float, sig: np.ndarray) -> np.ndarray:
    s = a + 1j * sig
    return G.evaluate(s) * np.exp(lam * np.log(s))


def _abel_tail(G: LaplaceImage, lam: float, a: float, sig0: float, step: float, x: float) -> tuple[complex, float]:
    """Sum ``sum_{i>=0} phi(sig0 + i step) e^{j x (sig0 + i step)}`` over the half-line.

    The index set is split into ``M`` interleaved sub-grids whose phase advance
    per term is near pi/2; on each sub-grid the sum is evaluated by repeated
    summation by parts, where forward differences of the slowly varying
    amplitude shrink like ``(M step / sig)^l``. Returns the sum and the size of
    the first omitted term. ``step < 0`` walks the negative half-line.
    """
    M = max(1, round((math.pi / 2) / abs(x * step)))
    idx = np.arange(M * (TAIL_LEVELS + 1))
    sig = sig0 + idx * step
    amp = _line_integrand(G, lam, a, sig).reshape(TAIL_LEVELS + 1, M)
    R = np.exp(1j * x * M * step)
    factor = 1 / (1 - R)
    total = np.zeros(M, dtype=complex)
    diff = amp
    for _ in range(TAIL_LEVELS):
        total += factor * diff[0]
        factor *= R / (1 - R)
        diff = np.diff(diff, axis=0)
    phase = np.exp(1j * x * sig[:M])
    return complex(np.sum(phase * total)), float(np.sum(np.abs(factor * diff[0])))


def _bromwich_trapezoid(G: LaplaceImage, lam: float, x: float, cfg: BromwichConfig) -> BromwichResult:
    k_max = (cfg.nodes - 1) // 2
    step = cfg.half_extent / k_max
    if step * x > MAX_PHASE_PER_NODE:
        raise ResolutionError(
            f"phase advance {step * x:.3g} rad per node exceeds pi/4; raise nodes or lower half_extent")
    sig = np.arange(-k_max, k_max + 1) * step
    terms = _line_integrand(G, lam, cfg.a, sig) * np.exp(1j * sig * x)
    core = complex(math.fsum(terms.real), math.fsum(terms.imag))

    edge = (k_max + 1) * step
    right, right_err = _abel_tail(G, lam, cfg.a, edge, step, x)
    left, left_err = _abel_tail(G, lam, cfg.a, -edge, -step, x)

    scale = math.exp(cfg.a * x) / (2 * math.pi) * step
    value = scale * (core + right + left)
    # aliasing: the infinite trapezoid sum sees f(x + T) e^{-aT}, T = 2 pi / step
    period = 2 * math.pi / step
    alias = math.exp(-cfg.a * period) * max(1.0, abs(value)) * (1 + period / x)
    # each phase e^{j sigma x} carries ~|sigma x| eps relative error; the result its own ulps
    eps = np.finfo(float).eps
    rounding = eps * (scale * float(np.sum(np.abs(terms) * (4 + np.abs(sig * x)))) + 4 * abs(value))
    return BromwichResult(value, scale * (right_err + left_err) + alias + rounding)


def _ooura_mori(M: float, kind: str, u_max: float = 6.0):
    # nodes and weights of the double-exponential rule for int_0^inf f(t) trig(t) dt
    beta = 0.25
    alpha = beta / math.sqrt(1 + M * math.log1p(M) / (4 * math.pi))
    h = math.pi / M
    n = np.arange(-int(u_max / h), int(u_max / h) + 2)
    u = n * h if kind == "sin" else (n - 0.5) * h
    E = 2 * u - alpha * np.expm1(-u) + beta * np.expm1(u)
    q = -np.expm1(-E)
    dE = 2 + alpha * np.exp(-u) + beta * np.exp(u)
    c1 = 2 + alpha + beta
    c2 = (beta - alpha) / 2
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        phi = np.where(u == 0, 1 / c1, u / np.where(u == 0, 1, q))
        dphi = np.where(u == 0, 0.5 - c2 / c1**2, (q - u * np.exp(-E) * dE) / q**2)
    dphi = np.nan_to_num(dphi, nan=0.0, posinf=0.0, neginf=0.0)
    keep = dphi > 1e-300
    return M * phi[keep], M * h * dphi[keep]


def _bromwich_de(G: LaplaceImage, lam: float, a: float, x: float, M: float) -> tuple[complex, float]:
    # split the line integral into cosine and sine halves over sig > 0
    total = 0j
    magnitude = 0.0
    for kind in ("cos", "sin"):
        theta, w = _ooura_mori(M, kind)
        sig = theta / x
        plus = _line_integrand(G, lam, a, sig)
        minus = _line_integrand(G, lam, a, -sig)
        if kind == "cos":
            terms = (plus + minus) * np.cos(theta) * w / x
        else:
            terms = 1j * (plus - minus) * np.sin(theta) * w / x
        total += np.sum(terms)
        magnitude += float(np.sum(np.abs(terms)))
    return complex(total), magnitude


def _bromwich_tanh_sinh(G: LaplaceImage, lam: float, x: float, cfg: BromwichConfig) -> BromwichResult:
    M = float(min(48, max(16, cfg.nodes // 16)))
    fine, magnitude = _bromwich_de(G, lam, cfg.a, x, M)
    coarse, _ = _bromwich_de(G, lam, cfg.a, x, 0.75 * M)
    scale = math.exp(cfg.a * x) / (2 * math.pi)
    rounding = 8 * np.finfo(float).eps * magnitude
    return BromwichResult(scale * fine, scale * (abs(fine - coarse) + rounding))


def _check_line(G: LaplaceImage, lam: float, x: float, cfg: BromwichConfig) -> None:
    if not x > 0:
        raise DomainError("the Bromwich differintegral is evaluated for x > 0")
    if not cfg.a > G.abscissa:
        raise ContourError(f"abscissa a = {cfg.a} must exceed the image abscissa {G.abscissa}")
    if lam > G.decay - ORDER_MARGIN:
        raise DomainError(
            f"order {lam} too large for an image decaying like |s|^-{G.decay}; "
            "use bromwich_differint_split or a closed form")


def bromwich_differint(G: LaplaceImage, order: FractionalOrder | float, x: float,
                       cfg: BromwichConfig = BromwichConfig()) -> BromwichResult:
    """Invert ``s^lam G(s)`` at ``x`` on the line ``Re s = cfg.a``.

    Returns the value and an estimated error bound (tail remainder, aliasing
    and rounding for the trapezoid rule; a coarse/fine difference for the
    double-exponential rule).
    """
    lam = as_order(order).snapped
    _check_line(G, lam, x, cfg)
    if cfg.rule == "trapezoid":
        return _bromwich_trapezoid(G, lam, x, cfg)
    return _bromwich_tanh_sinh(G, lam, x, cfg)


def bromwich_differint_split(G: LaplaceImage, order: FractionalOrder | float, x: float,
                             cfg: BromwichConfig = BromwichConfig(), h: float | None = None) -> BromwichResult:
    """Orders at or above the image's cap, as ``d/dx`` of order ``lam - 1``.

    The outer derivative is a fourth-order centered difference with step ``h``
    (default ``x / 50``), applied recursively until the inner order is admissible.
    """
    lam = as_order(order).snapped
    if lam <= G.decay - ORDER_MARGIN:
        return bromwich_differint(G, lam, x, cfg)
    h = x / 50 if h is None else h
    if not x - 2 * h > 0:
        raise ResolutionError("difference stencil crosses x = 0")
    vals = [bromwich_differint_split(G, lam - 1, x + d * h, cfg, h / 4) for d in (-2, -1, 1, 2)]
    value = (vals[0].value - 8 * vals[1].value + 8 * vals[2].value - vals[3].value) / (12 * h)
    noise = 18 * max(v.bound for v in vals) / (12 * h)
    truncation = abs(value) * h**4 / x**4
    return BromwichResult(value, noise + truncation)


def fourier_form_differint(G: LaplaceImage, order: FractionalOrder | float, x: float,
                           consts: IntegrationConstants | Sequence[complex] | None = None,
                           cfg: BromwichConfig = BromwichConfig()) -> BromwichResult:
    """Bromwich result plus the arbitrary polynomial ``sum_k a_k x^k`` that the
    contour term contributes for ``lam = -n`` (constants only for that case)."""
    order = as_order(order)
    consts = as_consts(consts)
    consts.check(order)
    res = bromwich_differint(G, order, x, cfg)
    return BromwichResult(res.value + consts.polynomial(x), res.bound)


@dataclass(frozen=True)
class SampledSignal:
    """Uniform samples ``values[i] = f(start + i * step)``; zero before ``start``."""

    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        if not self.step > 0:
            raise DomainError("sample step must be positive")
        vals = np.asarray(self.values, dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise DomainError("sampled values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, f: Callable, start: float, stop: float, count: int) -> "SampledSignal":
        grid = np.linspace(start, stop, count)
        return cls(start, grid[1] - grid[0], np.asarray(f(grid), dtype=complex) * np.ones(count))

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.values.size - 1)


class LaplaceResult(NamedTuple):
    value: complex
    tail_bound: float
    warning: str | None


def laplace_numeric(f: SampledSignal, s: complex, tol: float = 1e-6) -> LaplaceResult:
    """Trapezoid approximation of ``int_0^T f(x) e^{-sx} dx`` over the samples.

    The neglected tail beyond ``T`` is bounded by ``max|f|`` over the last tenth
    of the record times ``e^{-Re(s) T} / Re(s)``; if that exceeds ``tol`` a
    warning is attached to the result and emitted.
    """
    s = complex(s)
    if not s.real > 0:
        raise RegionError("one-sided Laplace transform needs Re s > 0")
    if f.start < 0:
        raise DomainError("signal must start at x >= 0")
    x = f.start + f.step * np.arange(f.values.size)
    g = f.values * np.exp(-s * x)
    value = complex(f.step * (np.sum(g) - 0.5 * (g[0] + g[-1])))
    tail_len = max(1, f.values.size // 10)
    tail = float(np.max(np.abs(f.values[-tail_len:]))) * math.exp(-s.real * f.stop) / s.real
    warning = None
    if tail > tol:
        warning = f"tail beyond x = {f.stop:g} may contribute up to {tail:.3g}"
        warnings.warn(warning, AccuracyWarning, stacklevel=2)
    return LaplaceResult(value, tail, warning)
