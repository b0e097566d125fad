"""Value types shared across modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError

INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class FractionalOrder:
    """Real order of the differintegral: positive differentiates, negative integrates."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise DomainError(f"order must be finite, got {self.lam}")

    @property
    def is_integer(self) -> bool:
        return abs(self.lam - round(self.lam)) <= INTEGER_TOL

    @property
    def integer(self) -> int | None:
        """The snapped integer order, or None for a genuinely fractional order."""
        return int(round(self.lam)) if self.is_integer else None

    @property
    def snapped(self) -> float:
        """The order every evaluator actually uses: integer-snapped when within tolerance."""
        n = self.integer
        return float(n) if n is not None else self.lam

    def __float__(self) -> float:
        return float(self.lam)


def as_order(order: FractionalOrder | float) -> FractionalOrder:
    if isinstance(order, FractionalOrder):
        return order
    return FractionalOrder(float(order))


@dataclass(frozen=True)
class IntegrationConstants:
    """Coefficients ``a_0, a_1, ...`` of the arbitrary polynomial that an
    ``n``-fold integration may add. Empty means the lower-terminal-zero result.
    """

    coefficients: tuple[complex, ...] = field(default_factory=tuple)

    def __init__(self, coefficients: Sequence[complex] = ()):
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in coefficients))

    def __len__(self) -> int:
        return len(self.coefficients)

    def check(self, order: FractionalOrder) -> None:
        """Reject constants that the order cannot carry."""
        if not self.coefficients:
            return
        n = order.integer
        if n is None or n >= 0:
            raise DomainError(
                f"integration constants apply only to negative integer orders, got {order.lam}")
        if len(self.coefficients) > -n:
            raise DomainError(
                f"order {n} admits at most {-n} integration constants, got {len(self.coefficients)}")

    def polynomial(self, x: float) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def as_consts(consts: IntegrationConstants | Sequence[complex] | None) -> IntegrationConstants:
    if consts is None:
        return IntegrationConstants()
    if isinstance(consts, IntegrationConstants):
        return consts
    return IntegrationConstants(consts)
