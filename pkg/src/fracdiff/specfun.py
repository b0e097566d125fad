"""Complex special functions: gamma, upper incomplete gamma, Kummer's function
and the one-sided power ``x_+^mu``.

All complex powers and logarithms use the principal branch, with the cut on
the negative real axis and ``arg z`` in ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, DomainError, PoleError, SingularError

__all__ = [
    "CF_SWITCH_MIN",
    "KUMMER_SERIES_MAX_ABS_Z",
    "MAX_TERMS",
    "REL_TOL",
    "cpow",
    "gamma",
    "rgamma",
    "is_nonpositive_integer",
    "upper_incomplete_gamma",
    "kummer_phi",
    "power_plus",
]

MAX_TERMS = 10_000
REL_TOL = 1e-15
# Gamma(a, z): series below max(CF_SWITCH_MIN, |a| + 1), continued fraction above.
CF_SWITCH_MIN = 1.0
# Beyond this modulus the Kummer series loses ~|z|/ln(10) digits on the
# imaginary axis, so (1, 1 - lam) is routed through the incomplete gamma.
KUMMER_SERIES_MAX_ABS_Z = 12.0
_SERIES_FALLBACK_MAX_ABS_Z = 25.0

EULER_GAMMA = 0.57721566490153286061

# Lanczos approximation, g = 7, n = 9 (Godfrey's coefficient set). Relative
# accuracy ~1e-15 for Re z >= 0.5; the left half-plane uses reflection.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def cpow(z: complex, p: float | complex) -> complex:
    """Principal-branch power ``z**p = exp(p * Log z)``; ``0**p`` is 0 for Re p > 0."""
    z = complex(z)
    if z == 0:
        if complex(p).real > 0:
            return 0j
        if p == 0:
            return 1 + 0j
        raise SingularError("0 raised to a power with non-positive real part")
    return cmath.exp(p * cmath.log(z))


def is_nonpositive_integer(z: complex, tol: float = 0.0) -> int | None:
    """Return the integer if ``z`` is (within ``tol``) a non-positive integer."""
    z = complex(z)
    if z.imag != 0 or z.real > tol:
        return None
    n = round(z.real)
    if abs(z.real - n) <= tol:
        return int(n)
    return None


def _lanczos(z: complex) -> complex:
    z = z - 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gamma(z: complex) -> complex:
    """Gamma function for complex ``z``; raises :class:`PoleError` at 0, -1, -2, ..."""
    z = complex(z)
    n = is_nonpositive_integer(z)
    if n is not None:
        raise PoleError(n)
    if z.real < 0.5:
        # Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * _lanczos(1 - z))
    return _lanczos(z)


def rgamma(z: complex) -> complex:
    """Reciprocal gamma ``1/Gamma(z)``, exactly 0 at the poles."""
    z = complex(z)
    if is_nonpositive_integer(z) is not None:
        return 0j
    if z.real < 0.5:
        return cmath.sin(math.pi * z) * _lanczos(1 - z) / math.pi
    return 1 / _lanczos(z)


def _lower_gamma_series(a: float, z: complex) -> complex:
    # gamma(a, z) = z^a e^{-z} sum_k z^k / (a (a+1) ... (a+k))
    term = 1 / a
    total = term
    for k in range(1, MAX_TERMS):
        term *= z / (a + k)
        total += term
        if abs(term) <= REL_TOL * abs(total):
            return cpow(z, a) * cmath.exp(-z) * total
    raise ConvergenceError("lower incomplete gamma series", total, abs(term))


def _e1_series(z: complex) -> complex:
    # E1(z) = -gamma_E - Log z - sum_{k>=1} (-z)^k / (k k!)
    term = 1 + 0j
    total = 0j
    for k in range(1, MAX_TERMS):
        term *= -z / k
        total += term / k
        if abs(term / k) <= REL_TOL * max(abs(total), 1.0):
            return -EULER_GAMMA - cmath.log(z) - total
    raise ConvergenceError("E1 series", total, abs(term))


def _upper_gamma_cf(a: float, z: complex) -> complex:
    # Legendre continued fraction, modified Lentz:
    # Gamma(a, z) = z^a e^{-z} / (z + 1 - a - 1(1-a)/(z + 3 - a - 2(2-a)/(z + 5 - a - ...)))
    tiny = 1e-300
    b = z + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, MAX_TERMS):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) <= REL_TOL:
            return cpow(z, a) * cmath.exp(-z) * h
    raise ConvergenceError("incomplete gamma continued fraction", cpow(z, a) * cmath.exp(-z) * h,
                           abs(delta - 1))


def upper_incomplete_gamma(a: float, z: complex) -> complex:
    """Upper incomplete gamma ``Gamma(a, z) = int_z^inf t^(a-1) e^(-t) dt``.

    ``a`` is real and ``z`` complex (principal branch). At ``z = 0`` the value
    is ``Gamma(a)`` for ``a > 0``; for ``a <= 0`` the integral diverges and a
    :class:`DomainError` is raised.
    """
    a = float(a)
    z = complex(z)
    if z == 0:
        if a > 0:
            return gamma(a)
        raise DomainError(f"Gamma({a}, 0) diverges for a <= 0")
    if abs(z) >= max(CF_SWITCH_MIN, abs(a) + 1):
        try:
            return _upper_gamma_cf(a, z)
        except ConvergenceError:
            # the fraction crawls next to the branch cut; the series is still
            # usable there at moderate modulus
            if abs(z) > _SERIES_FALLBACK_MAX_ABS_Z:
                raise
    n = is_nonpositive_integer(a)
    if n is None:
        return gamma(a) - _lower_gamma_series(a, z)
    # Gamma(-m, z) = (-1)^m / m! [E1(z) - e^{-z} sum_{k<m} (-1)^k k! / z^{k+1}]
    m = -n
    tail = 0j
    for k in range(m):
        tail += (-1) ** k * math.factorial(k) / z ** (k + 1)
    return (-1) ** m / math.factorial(m) * (_e1_series(z) - cmath.exp(-z) * tail)


def kummer_phi(a: float, b: float, z: complex) -> complex:
    """Kummer's confluent hypergeometric function ``Phi(a, b, z) = 1F1(a; b; z)``.

    Summed as a power series. For ``|z|`` above :data:`KUMMER_SERIES_MAX_ABS_Z`
    and ``a == 1`` the identity

        Phi(1, 1 - lam, z) = z^lam e^z [Gamma(1 - lam) + lam Gamma(-lam, z)]

    is used instead, because the alternating series cancels badly there.
    """
    z = complex(z)
    n = is_nonpositive_integer(b)
    if n is not None:
        raise PoleError(n, what="Phi(a, b, z) in b")
    if a == 1 and abs(z) > KUMMER_SERIES_MAX_ABS_Z:
        lam = 1 - b
        bracket = gamma(1 - lam)
        if lam != 0:
            bracket += lam * upper_incomplete_gamma(-lam, z)
        return cpow(z, lam) * cmath.exp(z) * bracket
    term = 1 + 0j
    total = term
    for k in range(MAX_TERMS):
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
        if term == 0 or (abs(term) <= REL_TOL * abs(total) and k + 1 > abs(z)):
            return total
    raise ConvergenceError("Kummer series", total, abs(term))


def power_plus(x: float, mu: float) -> float:
    """One-sided power ``x_+^mu``: ``x**mu`` for x > 0 and 0 for x < 0.

    At the origin the value is 0 for mu > 0 and 1 for mu = 0; for mu < 0 the
    point is non-integrable and :class:`SingularError` is raised.
    """
    if x > 0:
        return x**mu
    if x < 0:
        return 0.0
    if mu > 0:
        return 0.0
    if mu == 0:
        return 1.0
    raise SingularError(f"x_+^{mu} is singular at x = 0")
