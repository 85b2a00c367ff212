"""
Configuration settings for the flag-variety dHYM toolkit
"""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="FLAGVAR_",
        case_sensitive=True,
        extra="ignore",
    )

    # Numerical Guards
    BOUNDARY_EPSILON: float = Field(1e-9, gt=0)  # radians, window classification
    FLOAT_TOLERANCE: float = Field(1e-12, gt=0)
    FLOAT_SIGNIFICANT_DIGITS: int = Field(6, ge=1, le=17)

    # Search Limits
    MAX_SPLIT_RANK: int = Field(20, ge=1)
    NEF_SEARCH_MAX_NODES: int = Field(5_000_000, ge=1)

    # Property Sweeps
    RANDOM_SEED: int = 42

    # Logging Configuration
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = '%(asctime)s - %(levelname)s - %(message)s'


# Global settings instance
settings = Settings()
