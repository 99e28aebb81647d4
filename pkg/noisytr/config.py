from functools import lru_cache
from pydantic_settings import BaseSettings
import multiprocessing


class Settings(BaseSettings):
    # Base configuration
    APP_NAME: str = "noisytr"
    DEBUG: bool = False

    # Logging configuration
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    LOG_TO_FILE: bool = False

    # Experiment output
    OUTPUT_DIR: str = "results"
    SVG_HASH_SALT: str = "noisytr"

    # Seed sweeps; 0 means "decide from ENVIRONMENT"
    WORKERS: int = 0

    # Environment-specific settings (for dynamic behavior)
    ENVIRONMENT: str = "development"  # Default to development

    class Config:
        env_file = ".env"  # Single .env file for all environments
        case_sensitive = True


@lru_cache()
def get_settings():
    """
    Function to load settings from the `.env` file.
    """
    settings = Settings()

    # Adjust settings dynamically based on the environment
    if settings.ENVIRONMENT.lower() == "production":
        settings.DEBUG = False
        settings.LOG_LEVEL = "INFO"
        if settings.WORKERS <= 0:
            settings.WORKERS = multiprocessing.cpu_count()
    else:
        settings.DEBUG = True
        settings.LOG_LEVEL = "DEBUG"
        if settings.WORKERS <= 0:
            settings.WORKERS = 1

    return settings


# Create a settings instance
settings = get_settings()
