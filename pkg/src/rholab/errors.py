"""Exception types shared across the library."""


class ShapeError(ValueError):
    """Operands have incompatible or unexpected dimensions."""


class ValidationError(ValueError):
    """An input fails a structural invariant (hermiticity, norm, trace...)."""


class DomainError(ValueError):
    """A scalar function is undefined at a required eigenvalue."""


class NotCompletelyPositiveError(ValidationError):
    """A map has a negative eigenvalue beyond tolerance and admits no Kraus form."""


class IntegrationError(RuntimeError):
    """A numerical trajectory violated an invariant beyond the failure threshold."""

    def __init__(self, message: str, time: float):
        super().__init__(f"{message} at t={time:.6g}")
        self.time = time
