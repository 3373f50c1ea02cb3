from typing import Any


class SlrsmError(Exception):
    """Base class for every error raised by the solver."""

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


# Potential expressions


class PotentialSyntaxError(SlrsmError):
    def __init__(self, position: int, message: str) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.message = message


class UnknownIdentifierError(SlrsmError):
    def __init__(self, position: int, name: str) -> None:
        super().__init__(f"Unknown identifier {name!r} at position {position}")
        self.position = position
        self.name = name


class DomainError(SlrsmError):
    pass


# Integrator


class StepSizeUnderflowError(SlrsmError):
    pass


class MaxStepsExceededError(SlrsmError):
    pass


class NonFiniteStateError(SlrsmError):
    pass


# Sampling and roots


class OutOfBandError(SlrsmError):
    pass


class SingularRegularizerError(SlrsmError):
    pass


class BandExceededError(SlrsmError):
    pass


class DerivativeTooSmallError(SlrsmError):
    pass


# Eigenfunctions


class DegenerateAlphaError(SlrsmError):
    pass


class GridMismatchError(SlrsmError):
    pass


# Front end


class ConfigError(SlrsmError):
    """Invalid run configuration, with one entry per offending field."""

    def __init__(self, detail: str, errors: list[dict[str, Any]] | None = None) -> None:
        self.errors = errors or []
        lines = [detail] + [f"  {err['loc']}: {err['msg']}" for err in self.errors]
        super().__init__("\n".join(lines))


class PhaseError(SlrsmError):
    def __init__(self, phase: str, cause: Exception) -> None:
        super().__init__(f"[{phase}] {cause}")
        self.phase = phase
