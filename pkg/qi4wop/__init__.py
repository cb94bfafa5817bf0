"""Warehouse Optimization Problem solvers: sampling pipeline and classical baseline."""

from .const import VERSION
from .exceptions import WOPError

__version__ = VERSION

__all__ = ["WOPError", "__version__"]
