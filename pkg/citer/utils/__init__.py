"""Utility modules for citer"""

from .config import Config, QuadratureConfig, load_config

__all__ = ["Config", "QuadratureConfig", "load_config"]
