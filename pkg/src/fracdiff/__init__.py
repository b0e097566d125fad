"""Differintegrals of arbitrary real order, evaluated in closed form, along the
Bromwich line, or by discrete oracles; plus the diffusive RC cable model."""

from .core import FractionalOrder, IntegrationConstants
from .errors import (
    AccuracyWarning,
    ContourError,
    ConvergenceError,
    DegenerateError,
    DistributionalResult,
    DomainError,
    FracdiffError,
    PoleError,
    RegionError,
    ResolutionError,
    SingularError,
)
from .kernels import (
    ComplexExponential,
    DiracDelta,
    HeavisideStep,
    PowerLaw,
    differint_delta,
    differint_exp,
    differint_kernel,
    differint_power,
    differint_step,
)
from .transform import (
    BromwichConfig,
    LaplaceImage,
    SampledSignal,
    bromwich_differint,
    fourier_form_differint,
    laplace_numeric,
)
from .cable import CableParams

__version__ = "0.1.0"
