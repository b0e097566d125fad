"""Closed-form differintegrals of the step, the delta, the switched-on complex
exponential and normalized one-sided powers.

Every result uses lower terminal 0 (signals vanish for x < 0). Integer orders
whose exact result is a delta or one of its derivatives refuse pointwise
evaluation with :class:`DistributionalResult`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .core import FractionalOrder, IntegrationConstants, as_consts, as_order, INTEGER_TOL
from .errors import DegenerateError, DistributionalResult, DomainError
from .specfun import cpow, power_plus, rgamma, upper_incomplete_gamma

__all__ = [
    "HeavisideStep",
    "DiracDelta",
    "ComplexExponential",
    "PowerLaw",
    "ClosedFormKernel",
    "differint_step",
    "differint_delta",
    "differint_exp",
    "differint_power",
    "differint_kernel",
]


@dataclass(frozen=True)
class HeavisideStep:
    """U(x)."""


@dataclass(frozen=True)
class DiracDelta:
    """delta(x)."""


@dataclass(frozen=True)
class ComplexExponential:
    """U(x) exp(j b x)."""

    b: float

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise DomainError("frequency must be finite")


@dataclass(frozen=True)
class PowerLaw:
    """x_+^mu, divided by Gamma(mu + 1) when ``normalized``."""

    mu: float
    normalized: bool = True

    def __post_init__(self):
        if not self.mu > -1:
            raise DomainError(f"x_+^{self.mu} is not locally integrable (need mu > -1)")

    def differintegrated(self, order: FractionalOrder | float) -> "PowerLaw":
        """The normalized kernel obtained by applying ``order``; composing twice
        lands on the same family, which is the semigroup law in closed form."""
        if not self.normalized:
            raise DomainError("closed-form composition is defined on the normalized family")
        return PowerLaw(self.mu - as_order(order).snapped)


ClosedFormKernel = Union[HeavisideStep, DiracDelta, ComplexExponential, PowerLaw]


def _poly_result(value: float, consts: IntegrationConstants, x: float) -> float | complex:
    if not consts.coefficients:
        return value
    total = value + consts.polynomial(x)
    return total.real if total.imag == 0 else total


def differint_step(order: FractionalOrder | float, x: float,
                   consts: IntegrationConstants | Sequence[complex] | None = None) -> float | complex:
    """Differintegral of the Heaviside step: ``x_+^(-lam) / Gamma(1 - lam)``.

    For ``lam = -n`` the supplied integration constants add
    ``a_0 + a_1 x + ... + a_{n-1} x^{n-1}``; without them the result is
    ``x_+^n / n!``.
    """
    order = as_order(order)
    consts = as_consts(consts)
    consts.check(order)
    n = order.integer
    if n is not None and n > 0:
        raise DistributionalResult(n - 1)
    if n is not None:
        m = -n
        value = x**m / math.factorial(m) if x > 0 else power_plus(x, m)
        return _poly_result(value, consts, x)
    value = power_plus(x, -order.snapped) * rgamma(1 - order.snapped).real
    return _poly_result(value, consts, x)


def differint_delta(order: FractionalOrder | float, x: float) -> float:
    """Differintegral of the Dirac delta: ``x_+^(-lam-1) / Gamma(-lam)``, for x > 0."""
    order = as_order(order)
    n = order.integer
    if n is not None and n >= 0:
        raise DistributionalResult(n)
    if not x > 0:
        raise DomainError("the delta's differintegral is a function only for x > 0")
    if n is not None:
        m = -n
        return x ** (m - 1) / math.factorial(m - 1)
    return x ** (-order.snapped - 1) * rgamma(-order.snapped).real


def _exp_integral_remainder(n: int, z: complex) -> complex:
    # e^z - sum_{k<n} z^k / k!, summed directly when cancellation would bite
    if abs(z) <= 1:
        term = z**n / math.factorial(n)
        total = term
        k = n
        while abs(term) > 1e-17 * abs(total):
            k += 1
            term *= z / k
            total += term
        return total
    head = sum(z**k / math.factorial(k) for k in range(n))
    return cmath.exp(z) - head


def differint_exp(order: FractionalOrder | float, b: float, x: float) -> complex:
    """Differintegral of ``U(x) exp(j b x)`` for x > 0::

        (jb)^lam e^{jbx} [1 + lam Gamma(-lam, jbx) / Gamma(1 - lam)]

    Positive integer orders give exactly ``(jb)^n e^{jbx}``. Negative integer
    orders give the n-fold integral from 0, ``(jb)^-n [e^{jbx} - sum_{k<n}
    (jbx)^k / k!]``, i.e. ``(jb)^-n e^{jbx}`` minus a polynomial of degree n-1.
    """
    order = as_order(order)
    if b == 0:
        raise DegenerateError("b = 0 reduces to the step; use differint_step")
    if not x > 0:
        raise DomainError("differint_exp is evaluated for x > 0")
    jb = 1j * b
    z = jb * x
    n = order.integer
    if n is not None and n >= 0:
        return jb**n * cmath.exp(z)
    if n is not None:
        return _exp_integral_remainder(-n, z) / jb ** (-n)
    lam = order.snapped
    bracket = 1 + lam * upper_incomplete_gamma(-lam, z) * rgamma(1 - lam)
    return cpow(jb, lam) * cmath.exp(z) * bracket


def differint_power(order: FractionalOrder | float, mu: float, x: float) -> float:
    """Differintegral of the normalized power ``x_+^mu / Gamma(mu + 1)``:
    ``x^(mu-lam) / Gamma(mu - lam + 1)`` for x > 0.

    When ``mu - lam + 1`` is a non-positive integer the reciprocal gamma
    vanishes and the pointwise value is exactly 0.
    """
    order = as_order(order)
    if not mu > -1:
        raise DomainError(f"x_+^{mu} is not locally integrable (need mu > -1)")
    if not x > 0:
        raise DomainError("differint_power is evaluated for x > 0")
    p = mu - order.snapped
    arg = p + 1
    if arg <= INTEGER_TOL and abs(arg - round(arg)) <= INTEGER_TOL:
        return 0.0
    return x**p * rgamma(arg).real


def differint_kernel(kernel: ClosedFormKernel, order: FractionalOrder | float, x: float,
                     consts: IntegrationConstants | Sequence[complex] | None = None) -> complex:
    """Dispatch on the kernel variant; constants are accepted for the step only."""
    consts = as_consts(consts)
    if consts.coefficients and not isinstance(kernel, HeavisideStep):
        raise DomainError("integration constants are supported for the step kernel only")
    if isinstance(kernel, HeavisideStep):
        return complex(differint_step(order, x, consts))
    if isinstance(kernel, DiracDelta):
        return complex(differint_delta(order, x))
    if isinstance(kernel, ComplexExponential):
        return differint_exp(order, kernel.b, x)
    if isinstance(kernel, PowerLaw):
        value = differint_power(order, kernel.mu, x)
        if not kernel.normalized:
            value *= math.gamma(kernel.mu + 1)
        return complex(value)
    raise TypeError(f"unknown kernel {kernel!r}")
