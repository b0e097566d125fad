"""Semi-infinite RC cable driven at x = 0 by ``V0 e^{j omega t}``.

Voltage obeys ``V_xx = R C V_t`` on x > 0. With ``k = sqrt(omega R C / 2)`` the
bounded solution is ``V = V0 e^{-kx} e^{j(omega t - kx)}`` and the current is
``i = -(1/R) V_x``. Its relation to the half time-derivative of V (lower
terminal t = 0) carries an incomplete-gamma correction that fades as
``omega t`` grows.

Values are complex phasor-style signals; the physical quantity is the real part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError
from .kernels import differint_exp
from .specfun import upper_incomplete_gamma

__all__ = [
    "CableParams",
    "FieldSample",
    "ResidualPair",
    "voltage",
    "boundary_flux",
    "current",
    "half_derivative_voltage",
    "correction_term",
    "current_voltage_residual",
    "pde_residual",
]

_TWO_SQRT_PI = 2 * math.sqrt(math.pi)
STENCIL_MARGIN = 10


@dataclass(frozen=True)
class CableParams:
    R: float = 1.0
    C: float = 1.0
    omega: float = 1.0
    V0: complex = 1.0

    def __post_init__(self):
        for name in ("R", "C", "omega"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value}")
        if not cmath.isfinite(complex(self.V0)):
            raise DomainError("V0 must be finite")

    @property
    def k(self) -> float:
        """Attenuation constant (and phase constant) per unit length."""
        return math.sqrt(self.omega * self.R * self.C / 2)


class FieldSample(NamedTuple):
    x: float
    t: float
    value: complex


class ResidualPair(NamedTuple):
    exact: float
    habitual: float


def _wave(p: CableParams, x: float, t: float) -> complex:
    return p.V0 * math.exp(-p.k * x) * cmath.exp(1j * (p.omega * t - p.k * x))


def voltage(p: CableParams, x: float, t: float) -> complex:
    if x < 0:
        return 0j
    return complex(_wave(p, x, t))


def boundary_flux(p: CableParams, t: float) -> complex:
    """``g(t) = dV/dx`` at ``x = 0+``: ``-(1 + j) k V0 e^{j omega t}``."""
    return -(1 + 1j) * p.k * p.V0 * cmath.exp(1j * p.omega * t)


def current(p: CableParams, x: float, t: float) -> complex:
    if not x > 0:
        raise DomainError("current is defined on the open cable x > 0")
    return (1 + 1j) * math.sqrt(p.omega * p.C / (2 * p.R)) * _wave(p, x, t)


def half_derivative_voltage(p: CableParams, x: float, t: float) -> complex:
    """Half-order time derivative of V with lower terminal t = 0::

        (j omega)^{1/2} [1 + Gamma(-1/2, j omega t) / (2 sqrt(pi))] e^{-kx} e^{j(omega t - kx)} V0
    """
    if x < 0:
        raise DomainError("x must be >= 0")
    if not t > 0:
        raise DomainError("the incomplete-gamma correction diverges at t = 0")
    spatial = p.V0 * math.exp(-p.k * x) * cmath.exp(-1j * p.k * x)
    return differint_exp(0.5, p.omega, t) * spatial


def correction_term(p: CableParams, x: float, t: float) -> complex:
    """``(j omega)^{1/2} Gamma(-1/2, j omega t) / (2 sqrt(pi)) * V(x, t)``."""
    if not t > 0:
        raise DomainError("the incomplete-gamma correction diverges at t = 0")
    jw = 1j * p.omega
    return cmath.sqrt(jw) * upper_incomplete_gamma(-0.5, jw * t) / _TWO_SQRT_PI * voltage(p, x, t)


def current_voltage_residual(p: CableParams, x: float, t: float) -> ResidualPair:
    """Residuals of the current / half-derivative relations.

    ``exact`` keeps the correction term and must vanish; ``habitual`` drops it
    (``i = sqrt(C/R) d^{1/2}V/dt^{1/2}``) and decays like ``(omega t)^{-3/2}``.
    """
    i = current(p, x, t)
    half = half_derivative_voltage(p, x, t)
    g = math.sqrt(p.C / p.R)
    exact = abs(i - g * (half - correction_term(p, x, t)))
    habitual = abs(i - g * half)
    return ResidualPair(exact, habitual)


def pde_residual(p: CableParams, x: float, t: float, h: float) -> float:
    """``|V_xx - R C V_t|`` by second-order centered differences with step h.

    The point must sit more than ``STENCIL_MARGIN`` steps inside the cable.
    """
    if not (h > 0 and x > STENCIL_MARGIN * h):
        raise DomainError(f"need x > {STENCIL_MARGIN} h > 0 to keep the stencil clear of x = 0 (x={x}, h={h})")
    v_xx = (voltage(p, x + h, t) - 2 * voltage(p, x, t) + voltage(p, x - h, t)) / h**2
    v_t = (voltage(p, x, t + h) - voltage(p, x, t - h)) / (2 * h)
    return abs(v_xx - p.R * p.C * v_t)
