"""Exact q-series, theta and Appell-Lerch machinery for the (2,3,6) orbifold
potential, with a harness that checks each identity exactly or numerically."""

from .errors import (ConfigError, ConsistencyError, DenominatorError, DivergentTailError, DomainError,
                     MockFormsError, NotInvertibleError, SingularInputError, WindowUnderflowError)
from .gaussian import GaussianRational
from .jets import WJet, jet_coeff, jet_exp_linear, jet_inv, jet_mul
from .numeric import ComplexVal
from .qseries import QSeries, dumps, loads, qs_eval, qs_inv, qs_mul
from .report import CheckSpec, IdentityReport

__version__ = "0.1.0"

__all__ = [
    "GaussianRational", "QSeries", "WJet", "ComplexVal", "CheckSpec", "IdentityReport",
    "qs_mul", "qs_inv", "qs_eval", "dumps", "loads", "jet_mul", "jet_inv", "jet_coeff", "jet_exp_linear",
    "MockFormsError", "DenominatorError", "NotInvertibleError", "WindowUnderflowError", "DomainError",
    "SingularInputError", "DivergentTailError", "ConsistencyError", "ConfigError",
]
