"""
citer - complex-exponent iterated integrals and the zeta functions they carry
"""

__version__ = "0.1.0"
__author__ = "citer developers"

from .utils.config import Config, QuadratureConfig, load_config
from .core.errors import CiterError, InputError, NumericError

__all__ = [
    "Config",
    "QuadratureConfig",
    "load_config",
    "CiterError",
    "InputError",
    "NumericError",
]
