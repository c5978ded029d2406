"""
Configuration management for citer
Quadrature tolerances, contour geometry and suite settings.
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


CONFIG_ENV_VAR = "CITER_CONFIG"


class QuadratureConfig(BaseModel):
    """
    Accuracy knobs shared by every quadrature engine
    """

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(1e-10, description="Target relative error")
    max_level: int = Field(12, description="Maximum tanh-sinh refinement level")
    tail_cutoff: float = Field(50.0, description="Half-line truncation abscissa")
    circle_radius: float = Field(0.5, description="Default Cauchy circle radius")
    circle_points: int = Field(256, description="Samples on a Cauchy circle")

    @field_validator('rel_tol')
    @classmethod
    def validate_rel_tol(cls, v):
        if v <= 0:
            raise ValueError('rel_tol must be positive')
        return v

    @field_validator('max_level')
    @classmethod
    def validate_max_level(cls, v):
        if v < 1:
            raise ValueError('max_level must be at least 1')
        return v

    @field_validator('tail_cutoff')
    @classmethod
    def validate_tail_cutoff(cls, v):
        if v <= 1:
            raise ValueError('tail_cutoff must exceed 1')
        return v

    @field_validator('circle_radius')
    @classmethod
    def validate_circle_radius(cls, v):
        if v <= 0:
            raise ValueError('circle_radius must be positive')
        return v

    @field_validator('circle_points')
    @classmethod
    def validate_circle_points(cls, v):
        if v < 16 or v & (v - 1):
            raise ValueError('circle_points must be a power of two >= 16')
        return v

    def with_tol(self, rel_tol: float) -> "QuadratureConfig":
        """Copy with a different target tolerance"""
        return self.model_copy(update={"rel_tol": rel_tol})


class Config(BaseModel):
    """
    Configuration model for the citer CLI and verification suites
    """

    # Quadrature
    rel_tol: float = 1e-10
    max_level: int = 12
    tail_cutoff: float = 50.0
    circle_radius: float = 0.5
    circle_points: int = 256

    # Series models
    sieve_cap: int = 10**6

    # Analytic continuation
    contour_delta: float = 0.5
    contour_x_max: float = 50.0

    # Comultiplication / monodromy
    comult_terms: int = 40

    # Suite runner
    seed: int = 20240101
    parallel_workers: int = 1

    @field_validator('sieve_cap')
    @classmethod
    def validate_sieve_cap(cls, v):
        if v < 10:
            raise ValueError('sieve_cap must be at least 10')
        return v

    @field_validator('contour_delta')
    @classmethod
    def validate_contour_delta(cls, v):
        if not 0 < v < 2 * 3.141592653589793:
            raise ValueError('contour_delta must lie in (0, 2*pi)')
        return v

    @field_validator('comult_terms')
    @classmethod
    def validate_comult_terms(cls, v):
        if v < 1:
            raise ValueError('comult_terms must be positive')
        return v

    @field_validator('parallel_workers')
    @classmethod
    def validate_workers(cls, v):
        if v <= 0:
            raise ValueError('parallel_workers must be positive')
        return v

    def quadrature(self) -> QuadratureConfig:
        """Quadrature settings carried by this configuration"""
        return QuadratureConfig(
            rel_tol=self.rel_tol,
            max_level=self.max_level,
            tail_cutoff=self.tail_cutoff,
            circle_radius=self.circle_radius,
            circle_points=self.circle_points,
        )


def resolve_config_path(config_path: Optional[Path] = None) -> Optional[Path]:
    """Explicit path first, then the CITER_CONFIG environment variable"""
    if config_path is not None:
        return Path(config_path)
    env_path = os.getenv(CONFIG_ENV_VAR)
    return Path(env_path) if env_path else None


def load_config(config_path: Optional[Path] = None) -> Config:
    """
    Load configuration from file or environment variables

    Args:
        config_path: Path to YAML configuration file (falls back to $CITER_CONFIG)

    Returns:
        Config object with loaded settings
    """
    config_data: Dict[str, Any] = {}

    path = resolve_config_path(config_path)
    if path and path.exists():
        with open(path, 'r', encoding='utf-8') as f:
            file_config = yaml.safe_load(f) or {}
        if not isinstance(file_config, dict):
            raise ValueError(f"Configuration file {path} must contain a mapping")
        config_data.update(file_config)

    # Override with environment variables
    env_config = _load_from_environment()
    config_data.update(env_config)

    return Config(**config_data)


def _load_from_environment() -> Dict[str, Any]:
    """Load configuration from environment variables"""
    env_config: Dict[str, Any] = {}

    env_mappings = {
        'CITER_REL_TOL': ('rel_tol', float),
        'CITER_MAX_LEVEL': ('max_level', int),
        'CITER_TAIL_CUTOFF': ('tail_cutoff', float),
        'CITER_CIRCLE_RADIUS': ('circle_radius', float),
        'CITER_CIRCLE_POINTS': ('circle_points', int),
        'CITER_SIEVE_CAP': ('sieve_cap', int),
        'CITER_CONTOUR_DELTA': ('contour_delta', float),
        'CITER_COMULT_TERMS': ('comult_terms', int),
        'CITER_SEED': ('seed', int),
        'CITER_WORKERS': ('parallel_workers', int),
    }

    for env_var, (field_name, converter) in env_mappings.items():
        value = os.getenv(env_var)
        if value is not None:
            try:
                env_config[field_name] = converter(value)
            except (ValueError, TypeError):
                # Skip invalid values
                pass

    return env_config


def create_default_config_file(output_path: Path) -> None:
    """Create a default configuration file"""
    with open(output_path, 'w', encoding='utf-8') as f:
        yaml.safe_dump(Config().model_dump(), f, default_flow_style=False, sort_keys=True)


def get_config_template() -> str:
    """Get configuration file template as string"""
    return """# citer configuration

# Quadrature
rel_tol: 1.0e-10
max_level: 12
tail_cutoff: 50.0
circle_radius: 0.5
circle_points: 256

# Series models
sieve_cap: 1000000

# Analytic continuation
contour_delta: 0.5
contour_x_max: 50.0

# Comultiplication and monodromy
comult_terms: 40

# Verification suites
seed: 20240101
parallel_workers: 1
"""
