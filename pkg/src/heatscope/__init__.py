"""heatscope: a numerical laboratory for heat-equation observability on unit boxes."""

__version__ = "0.1.0"

from .errors import ContractError, DomainError, HeatscopeError, ResourceError

__all__ = [
    "ContractError",
    "DomainError",
    "HeatscopeError",
    "ResourceError",
    "__version__",
]
