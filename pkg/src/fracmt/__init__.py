"""Numerics for the fractional Moser-Trudinger inequality in the conformal case sp = N."""

from .errors import ConvergenceError, DomainError, FunctionalOverflowError, VerificationError
from .exponents import (
    FractionalParams,
    GammaConstant,
    SeriesEvaluation,
    alpha_star,
    bbm_constant,
    gamma_constant,
    series_direct,
    series_hurwitz_closed,
    unit_ball_volume,
)
from .radialnorm import (
    MoserDecomposition,
    RadialProfile,
    SeminormResult,
    kernel,
    moser_decomposition,
    moser_profile,
    seminorm_radial,
)

__version__ = "0.1.0"
ARTIFACT_VERSION = __version__

__all__ = [
    "ConvergenceError",
    "DomainError",
    "FunctionalOverflowError",
    "VerificationError",
    "FractionalParams",
    "GammaConstant",
    "SeriesEvaluation",
    "alpha_star",
    "bbm_constant",
    "gamma_constant",
    "series_direct",
    "series_hurwitz_closed",
    "unit_ball_volume",
    "MoserDecomposition",
    "RadialProfile",
    "SeminormResult",
    "kernel",
    "moser_decomposition",
    "moser_profile",
    "seminorm_radial",
]
