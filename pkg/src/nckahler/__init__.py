"""Quantum mechanics on a truncated Fock space as Kahler geometry.

Operators become Kahlerian functions of the state; the operator product,
commutator and anticommutator become the Kahler product and the Poisson and
Riemann brackets. The subpackages provide the metric and symplectic tensors,
Hamiltonian fields, operator-valued derivatives, coordinate pull-backs,
Hamiltonian flows and state reconstruction.
"""

from .errors import (
    ChartError,
    DimensionError,
    DomainError,
    GeometryError,
    InconsistencyError,
    ParameterError,
    SingularSeedError,
    TruncationError,
    UndefinedStateError,
)
from .fock import FockSpace, Operator, StateVector, build_coordinate_operators
from .kahler import bracket, evaluate, kahler_product
from .suites import Config, run_suite

__version__ = "0.1.0"

__all__ = [
    "ChartError",
    "Config",
    "DimensionError",
    "DomainError",
    "FockSpace",
    "GeometryError",
    "InconsistencyError",
    "Operator",
    "ParameterError",
    "SingularSeedError",
    "StateVector",
    "TruncationError",
    "UndefinedStateError",
    "bracket",
    "build_coordinate_operators",
    "evaluate",
    "kahler_product",
    "run_suite",
]
