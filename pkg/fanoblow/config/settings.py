"""
Configuration settings for the fanoblow toolkit
"""
from pydantic_settings import BaseSettings
from typing import Optional
from functools import lru_cache
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

OUTPUT_FORMATS = ("csv", "json")


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables
    """
    # System Configuration
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Sweep Configuration
    sweep_workers: int = 4
    default_format: str = "csv"

    # Verification grids
    oracle_n_max: int = 12
    oracle_ab_max: int = 8
    sums_n_max: int = 14
    sums_ab_max: int = 6
    identity_x_max: int = 6
    positivity_n_max: int = 50

    class Config:
        env_file = ".env"
        case_sensitive = False

    def validate_configuration(self) -> dict:
        """
        Validate the configuration and return any issues
        """
        issues = {}

        if self.sweep_workers < 1:
            issues["sweep_workers"] = "At least one sweep worker is required"
        if self.default_format not in OUTPUT_FORMATS:
            issues["default_format"] = "Output format must be 'csv' or 'json'"

        # Grid bounds below the smallest meaningful dimension
        if self.oracle_n_max < 3:
            issues["oracle_n_max"] = "Oracle grid needs n >= 3"
        if self.sums_n_max < 2:
            issues["sums_n_max"] = "Sum grid needs n >= 2"
        if self.positivity_n_max < 3:
            issues["positivity_n_max"] = "Positivity grid needs n >= 3"
        if self.oracle_ab_max < 1 or self.sums_ab_max < 1:
            issues["ab_max"] = "Parameter grids need a, b up to at least 1"
        if self.identity_x_max < 1:
            issues["identity_x_max"] = "Identity grid needs x >= 1"

        return issues


@lru_cache()
def get_settings() -> Settings:
    """
    Create and cache settings instance
    """
    return Settings()
