"""Exception hierarchy shared by tools and checkers"""
from typing import Optional


class QftvError(Exception):
    """Base class for every error the verifier raises on purpose."""


class CircuitFormatError(QftvError):
    """Circuit text is not well-formed JSON."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CircuitValidationError(QftvError):
    """Circuit is well-formed but violates an IR invariant."""

    def __init__(self, message: str, gate_ordinal: Optional[int] = None):
        where = f"gate {gate_ordinal}: " if gate_ordinal is not None else ""
        super().__init__(f"{where}{message}")
        self.gate_ordinal = gate_ordinal


class InjectionError(QftvError):
    """An error mutation cannot be applied to the circuit."""


class WidthError(QftvError):
    """Bit-vector widths disagree or a rotation is finer than representable."""


class UnassignedVariableError(QftvError):
    """Evaluation hit a variable missing from the assignment."""

    def __init__(self, var: int):
        super().__init__(f"variable b{var} is not assigned")
        self.var = var


class AnfOverflow(QftvError):
    """ANF term budget exceeded while normalizing an expression."""

    def __init__(self, budget: int):
        super().__init__(f"ANF term budget of {budget} monomials exceeded")
        self.budget = budget


class CounterexampleError(QftvError):
    """A counterexample failed its own validation."""


class SolverFailure(QftvError):
    """The solver process failed or produced output we cannot read."""


class SimulationError(QftvError):
    """Statevector simulation cannot proceed (cap, malformed gate, norm drift)."""


class BudgetExceeded(QftvError):
    """A benchmark sweep would exceed its configured resource budget."""
