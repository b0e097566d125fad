"""Independent discrete reference methods used to check the analytic modules.

Nothing here touches :mod:`fracdiff.specfun`; gamma values come from SciPy so
that a bug in the library's own special functions cannot hide behind the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, signal, special

from .core import FractionalOrder, as_order
from .errors import DomainError, ResolutionError

__all__ = [
    "OracleConfig",
    "gl_weights",
    "grunwald_letnikov",
    "grunwald_letnikov_grid",
    "riemann_liouville_integral",
    "finite_difference",
]

MIN_GL_TERMS = 8


@dataclass(frozen=True)
class OracleConfig:
    h: float = 1e-4
    n_terms: int = 1_000_000
    window: float = 100.0

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("oracle step h must be positive")
        if self.n_terms < 1:
            raise DomainError("n_terms must be positive")

    def check(self, x: float) -> None:
        if x > self.window:
            raise DomainError(f"x = {x} beyond the oracle window {self.window}")
        if self.h * self.n_terms < x:
            raise DomainError(f"h * n_terms = {self.h * self.n_terms} does not reach x = {x}")


def gl_weights(order: FractionalOrder | float, n: int) -> np.ndarray:
    """``(-1)^k binom(lam, k)`` for k = 0..n-1, via log-gamma with explicit signs."""
    order = as_order(order)
    k = np.arange(n, dtype=float)
    m = order.integer
    if m is not None and m >= 0:
        w = np.zeros(n)
        for i in range(min(n, m + 1)):
            w[i] = (-1) ** i * math.comb(m, i)
        return w
    lam = order.snapped
    # (-1)^k binom(lam, k) = Gamma(k - lam) / (Gamma(-lam) Gamma(k + 1))
    log_mag = special.gammaln(k - lam) - special.gammaln(-lam) - special.gammaln(k + 1)
    sign = special.gammasgn(k - lam) * special.gammasgn(-lam)
    return sign * np.exp(log_mag)


def _sample(f: Callable, t: np.ndarray) -> np.ndarray:
    try:
        values = np.asarray(f(t), dtype=complex)
    except (TypeError, ValueError):
        values = None
    if values is None or values.shape != t.shape:
        values = np.array([complex(f(float(ti))) for ti in t])
    return values


def _fsum_complex(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def grunwald_letnikov(f: Callable, order: FractionalOrder | float, x: float,
                      cfg: OracleConfig = OracleConfig()) -> complex:
    """Grünwald–Letnikov sum ``h^-lam sum_{k=0}^{N} (-1)^k binom(lam, k) f(x - k h)``
    with ``N = floor(x / h)`` and lower terminal 0.

    ``f`` may be vectorized over a NumPy array; scalar callables also work.
    """
    order = as_order(order)
    if not x > 0:
        raise DomainError("Grünwald–Letnikov oracle needs x > 0")
    cfg.check(x)
    n = int(math.floor(x / cfg.h * (1 + 1e-12)))
    if n < MIN_GL_TERMS:
        raise ResolutionError(f"h = {cfg.h} leaves only {n} steps on [0, {x}]")
    w = gl_weights(order, n + 1)
    t = x - cfg.h * np.arange(n + 1)
    t[-1] = max(t[-1], 0.0)
    terms = w * _sample(f, t)
    return cfg.h ** (-order.snapped) * _fsum_complex(terms)


def grunwald_letnikov_grid(samples: np.ndarray, order: FractionalOrder | float, h: float) -> np.ndarray:
    """GL differintegral at every grid point ``t_i = i h`` of ``samples = f(t_i)``.

    Returns an array of the same length. Applying it twice with orders a and
    b is the discrete analogue of composing the operators.
    """
    order = as_order(order)
    samples = np.asarray(samples, dtype=complex)
    w = gl_weights(order, samples.size)
    return h ** (-order.snapped) * signal.fftconvolve(w, samples)[: samples.size]


def riemann_liouville_integral(f: Callable, alpha: float, x: float,
                               cfg: OracleConfig = OracleConfig()) -> complex:
    """``(1/Gamma(alpha)) int_0^x (x - t)^(alpha - 1) f(t) dt``.

    The algebraic endpoint weight is handed to QUADPACK's QAWS rule, so the
    singularity at ``t = x`` costs nothing for alpha < 1.
    """
    if not alpha > 0:
        raise DomainError(f"Riemann–Liouville order must be positive, got {alpha}")
    if not x > 0:
        raise DomainError("Riemann–Liouville oracle needs x > 0")
    cfg.check(x)

    def part(fn):
        val, _ = integrate.quad(fn, 0.0, x, weight="alg", wvar=(0.0, alpha - 1.0),
                                limit=200, epsabs=1e-13, epsrel=1e-12)
        return val

    re = part(lambda t: complex(f(t)).real)
    im = part(lambda t: complex(f(t)).imag)
    return complex(re, im) / special.gamma(alpha)


def finite_difference(f: Callable, x: float, h: float) -> complex:
    """Centered difference ``(f(x + h) - f(x - h)) / (2 h)``."""
    return (complex(f(x + h)) - complex(f(x - h))) / (2 * h)
