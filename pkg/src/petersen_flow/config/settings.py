"""
Central run configuration using Pydantic Settings for type safety and validation.
"""

from enum import StrEnum
from pathlib import Path

from pydantic import AliasChoices, Field, field_validator  # type: ignore[import-not-found,unused-ignore]
from pydantic_settings import BaseSettings  # type: ignore[import-not-found,unused-ignore]


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    SVG = "svg"
    TEXT = "text"


class RunConfig(BaseSettings):  # type: ignore[misc]
    """Run settings with environment variable support."""

    # Paths
    cache_dir: Path = Field(
        default_factory=lambda: Path.home() / ".cache" / "petersen-flow",
        validation_alias=AliasChoices("FLOWPOLY_CACHE", "FLOWPOLY_CACHE_DIR", "cache_dir"),
    )

    # Modular trace plan
    max_prime: int = Field(default=65521, gt=2)
    primes: list[int] | None = None  # explicit prime list, overrides the plan
    points: list[int] | None = None  # explicit evaluation points, overrides the plan
    jobs: int = Field(default=1, ge=1)

    # Output
    output_format: OutputFormat = OutputFormat.JSON
    log_level: str = "INFO"

    # Budgets and thresholds
    oracle_edge_budget: int = Field(default=26, gt=0)
    dense_threshold: int = Field(default=2048, gt=0)
    root_digits: int = Field(default=50, gt=0)
    equimodular_tol: float = Field(default=1e-8, gt=0)
    eig_tol: float = Field(default=1e-10, gt=0)

    @field_validator("primes", "points")
    @classmethod
    def _non_empty(cls, value: list[int] | None) -> list[int] | None:
        if value is not None and not value:
            raise ValueError("override lists must not be empty")
        return value

    class Config:
        env_file = ".env"
        env_prefix = "FLOWPOLY_"
        populate_by_name = True
        extra = "ignore"


settings = RunConfig()
