"""Hydrogen eigenstate densities vs classical Kepler orbit ensembles."""

from ._backend import BACKEND
from .hydrogen_quantum import QuantumNumbers
from .kepler_classical import OrbitEnsembleParams, make_params
from .specfun import LogScaledValue

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "QuantumNumbers",
    "OrbitEnsembleParams",
    "make_params",
    "LogScaledValue",
    "__version__",
]
