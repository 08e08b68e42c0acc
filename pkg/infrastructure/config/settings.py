"""
Application configuration using Pydantic Settings
"""
import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix SURROCEP_)"""

    model_config = SettingsConfigDict(
        env_prefix="SURROCEP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "surrocep"
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"

    # Parallel replications
    THREADS: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)

    # Chain defaults
    N_ITER: int = Field(default=3000, gt=0)
    BURN_IN: int = Field(default=500, ge=0)
    GRID_COARSE: int = Field(default=100, ge=10)
    GRID_FINE: int = Field(default=100, ge=10)
    FINE_FRACTION: float = Field(default=0.8, gt=0.0, le=1.0)

    # Simulation
    ORACLE_N: int = Field(default=200_000, gt=0)

    # Output
    CEP_GRID_POINTS: int = Field(default=41, ge=2)
    OUTPUT_DIR: str = "results"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
