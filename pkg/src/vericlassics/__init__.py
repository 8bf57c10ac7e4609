"""Classic algorithms and containers with executable contracts."""

from .contracts import ContractContext, ContractMode, ContractViolation, using

__version__ = "0.1.0"

__all__ = ["ContractContext", "ContractMode", "ContractViolation", "using", "__version__"]
