"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FracdiffError(Exception):
    """Base class for all errors raised by fracdiff."""


class DomainError(FracdiffError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma-type function evaluated at a non-positive integer."""

    def __init__(self, n: int, what: str = "gamma"):
        self.n = n
        super().__init__(f"{what} has a pole at {n}")


class SingularError(DomainError):
    """Pointwise value is infinite (non-integrable point)."""


class DistributionalResult(FracdiffError):
    """The exact result is a distribution (delta or one of its derivatives).

    ``tag`` is a symbolic name such as ``"delta^(2)"`` and ``order`` is the
    derivative order of the delta.
    """

    def __init__(self, order: int):
        self.order = order
        self.tag = "delta" if order == 0 else f"delta^({order})"
        super().__init__(f"result is the distribution {self.tag}(x); it has no pointwise value")


class ConvergenceError(FracdiffError, ArithmeticError):
    """Series or continued fraction did not converge within the budget."""

    def __init__(self, message: str, partial: complex | None = None, bound: float | None = None):
        self.partial = partial
        self.bound = bound
        super().__init__(f"{message} (partial={partial}, bound={bound})")


class DegenerateError(DomainError):
    """Parameters collapse the kernel onto a different one."""


class ContourError(DomainError):
    """Bromwich abscissa does not lie right of the image's singularities."""


class ResolutionError(DomainError):
    """Grid too coarse for the requested evaluation."""


class RegionError(DomainError):
    """Transform variable outside the region of convergence."""


class AccuracyWarning(UserWarning):
    """Reported error bound exceeds the requested tolerance."""
