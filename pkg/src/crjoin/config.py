"""
Configuration management for crjoin.
"""

from dataclasses import dataclass
from typing import List, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ResourceCapError


class LimitSettings(BaseSettings):
    """Resource caps guarding divergence in the untyped calculus."""

    model_config = SettingsConfigDict(env_prefix="CRJOIN_LIMIT_", case_sensitive=False)

    term_size_cap: int = Field(default=2 ** 22, gt=0)
    path_length_cap: int = Field(default=2 ** 20, gt=0)
    bit_cap: int = Field(default=1_048_576, gt=0)
    pattern_cap: int = Field(default=12, gt=0)

    # Deep terms (the Church tower of height 4 has 2^16 nested applications)
    recursion_limit: int = Field(default=1_000_000, gt=0)
    stack_size_mb: int = Field(default=512, gt=0)


class HarnessSettings(BaseSettings):
    """Random-instance harness configuration."""

    model_config = SettingsConfigDict(env_prefix="CRJOIN_HARNESS_", case_sensitive=False)

    seed: int = Field(default=1, ge=0)
    cases: int = Field(default=100, ge=0)
    max_term_size: int = Field(default=12, gt=0)
    max_chain_length: int = Field(default=6, gt=0)
    step_fuel: int = Field(default=100, gt=0)

    abstraction_weight: int = Field(default=3, ge=0)
    application_weight: int = Field(default=4, ge=0)
    variable_weight: int = Field(default=3, ge=0)
    free_variables: List[str] = Field(default_factory=lambda: ["a", "b", "c"])

    # Tighter caps so tower-sized cases are skipped quickly
    term_size_cap: int = Field(default=20_000, gt=0)
    path_length_cap: int = Field(default=50_000, gt=0)

    @field_validator("free_variables")
    @classmethod
    def validate_free_variables(cls, v):
        if not v:
            raise ValueError("free variable pool must not be empty")
        return v


class MonitoringSettings(BaseSettings):
    """Monitoring and observability configuration."""

    model_config = SettingsConfigDict(env_prefix="CRJOIN_", case_sensitive=False)

    log_level: str = Field(default="WARNING")
    enable_metrics: bool = Field(default=True)


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="CRJOIN_", case_sensitive=False, extra="ignore"
    )

    app_name: str = Field(default="crjoin")

    # Resource caps
    limits: LimitSettings = LimitSettings()

    # Random harness
    harness: HarnessSettings = HarnessSettings()

    # Monitoring
    monitoring: MonitoringSettings = MonitoringSettings()


@dataclass(frozen=True)
class ResourceLimits:
    """Immutable caps handed to the reduction and join algorithms."""

    term_size_cap: int = 2 ** 22
    path_length_cap: int = 2 ** 20

    def __post_init__(self):
        if self.term_size_cap < 1:
            raise ValueError("term_size_cap must be positive")
        if self.path_length_cap < 1:
            raise ValueError("path_length_cap must be positive")

    @classmethod
    def from_settings(cls, settings: Optional["Settings"] = None) -> "ResourceLimits":
        """Build limits from the global settings."""
        limits = (settings or get_settings()).limits
        return cls(
            term_size_cap=limits.term_size_cap,
            path_length_cap=limits.path_length_cap,
        )

    def check_term_size(self, size: int) -> None:
        """Raise ResourceCapError when a term exceeds the size cap."""
        if size > self.term_size_cap:
            raise ResourceCapError(
                f"term size {size} exceeds the cap of {self.term_size_cap} nodes"
            )

    def check_path_length(self, length: int) -> None:
        """Raise ResourceCapError when a path exceeds the length cap."""
        if length > self.path_length_cap:
            raise ResourceCapError(
                f"path length {length} exceeds the cap of {self.path_length_cap} steps"
            )


DEFAULT_LIMITS = ResourceLimits()

# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings."""
    return settings
