"""Exceptions raised by :mod:`hopso.vqe`."""

from __future__ import annotations

__all__ = (
    "HopsoVQEError",
    "InvalidGateError",
    "DimensionError",
    "HamiltonianParseError",
    "MatrixTooLargeError",
    "NumericalError",
    "ConfigurationError",
    "BudgetExhaustedError",
    "ResultsFileError",
)


class HopsoVQEError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGateError(HopsoVQEError, ValueError):
    """A gate addresses a qubit outside the register, or is malformed."""


class DimensionError(HopsoVQEError, ValueError):
    """Operands disagree in qubit count or parameter count."""


class HamiltonianParseError(HopsoVQEError, ValueError):
    """A Hamiltonian text could not be parsed.

    Parameters
    ----------
    msg : str
        Description of the problem.
    lineno : int
        1-based line number of the offending line, ``0`` for whole-input errors.
    """

    def __init__(self, msg: str, lineno: int = 0) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class MatrixTooLargeError(HopsoVQEError, ValueError):
    """The dense matrix of a Hamiltonian exceeds the size guard."""


class NumericalError(HopsoVQEError, ArithmeticError):
    """An eigensolver or expectation computation failed numerically."""


class ConfigurationError(HopsoVQEError, ValueError):
    """Invalid optimizer, cost or experiment configuration."""


class BudgetExhaustedError(HopsoVQEError, RuntimeError):
    """The cost function was called past its evaluation budget."""


class ResultsFileError(HopsoVQEError, ValueError):
    """A results file is missing records, malformed or inconsistent."""
