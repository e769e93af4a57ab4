from .logger import Logger
from .exceptions import (
    QuantumKernelError, DimensionError, DomainError, SizeError, InputError,
    SolverError, DegenerateEvidenceError, ConfigurationError, SampleSizeError,
)

__all__ = [
    'Logger',
    'QuantumKernelError', 'DimensionError', 'DomainError', 'SizeError', 'InputError',
    'SolverError', 'DegenerateEvidenceError', 'ConfigurationError', 'SampleSizeError',
]
