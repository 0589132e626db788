"""Exception hierarchy shared by all heatscope modules."""


class HeatscopeError(Exception):
    """Base class for all heatscope errors."""


class DomainError(HeatscopeError, ValueError):
    """A parameter value is outside the mathematical domain of the operation."""


class ContractError(HeatscopeError, ValueError):
    """Inputs violate a structural precondition (misaligned shapes, bad ranges)."""


class ResourceError(HeatscopeError, RuntimeError):
    """A configured computational budget would be exceeded."""
