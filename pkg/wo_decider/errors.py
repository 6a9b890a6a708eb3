"""Exception hierarchy shared by the library modules and the CLI."""

from __future__ import annotations

from typing import Optional


class WoDeciderError(Exception):
    """Base class for every error raised by wo-decider."""


class FormulaSyntaxError(WoDeciderError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariableError(WoDeciderError, ValueError):
    pass


class OrdinalSyntaxError(WoDeciderError, ValueError):
    pass


class OrdinalArithmeticError(WoDeciderError, ArithmeticError):
    pass


class LevelError(WoDeciderError, ValueError):
    pass


class BoundExceededError(WoDeciderError, ValueError):
    pass


class AxiomError(WoDeciderError, ValueError):
    pass


class EmptyOrderError(WoDeciderError, ValueError):
    """The empty order was used while the nonempty convention is in force."""


class ResourceLimitError(WoDeciderError):
    """Undecided by resources: a cap was hit before a verdict was reached."""

    def __init__(
        self,
        reason: str,
        *,
        elapsed_seconds: float = 0.0,
        closure_size: int = 0,
        layers_completed: int = 0,
        interned_types: Optional[int] = None,
    ) -> None:
        super().__init__(
            f"undecided by resources: {reason} "
            f"(elapsed {elapsed_seconds:.1f}s, closure {closure_size}, layers {layers_completed})"
        )
        self.reason = reason
        self.elapsed_seconds = elapsed_seconds
        self.closure_size = closure_size
        self.layers_completed = layers_completed
        self.interned_types = interned_types


__all__ = [
    "AxiomError",
    "BoundExceededError",
    "EmptyOrderError",
    "FormulaSyntaxError",
    "LevelError",
    "OrdinalArithmeticError",
    "OrdinalSyntaxError",
    "ResourceLimitError",
    "UnboundVariableError",
    "WoDeciderError",
]
