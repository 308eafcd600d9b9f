"""Shared exception types."""


class ParameterError(ValueError):
    """A caller-supplied parameter is outside the supported domain."""


class CapabilityError(RuntimeError):
    """The request is well-formed but exceeds a documented size/budget cap."""


class ConstructionError(RuntimeError):
    """A builder produced (or would produce) a structurally invalid object."""


class HypothesisViolationError(RuntimeError):
    """An input violates a structural hypothesis an operation relies on."""
