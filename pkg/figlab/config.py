"""
Configuration management for figlab.
Values come from the environment, optionally through a .env file.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

VALID_FORMATS = ("json", "csv", "table")


class FigLabConfig:
    """Configuration class for engine limits and output defaults."""

    def __init__(self):
        # Materialization limits
        self.max_dim: int = int(os.getenv("FIGLAB_MAX_DIM", "5000"))
        self.retries: int = int(os.getenv("FIGLAB_RETRIES", "3"))

        # Output
        self.default_format: str = os.getenv("FIGLAB_FORMAT", "table").lower()
        self.suite_size: int = int(os.getenv("FIGLAB_SUITE_SIZE", "20"))

        # Logging
        self.log_level: str = os.getenv(
            "FIGLAB_LOG_LEVEL", os.getenv("LOG_LEVEL", "INFO"))

    def validate(self) -> bool:
        """Validate that the configuration is usable."""
        return not self.get_validation_errors()

    def get_validation_errors(self) -> list[str]:
        """Get detailed validation errors for configuration."""
        errors = []

        if self.max_dim <= 0:
            errors.append("FIGLAB_MAX_DIM must be positive")

        if self.retries < 0:
            errors.append("FIGLAB_RETRIES must not be negative")

        if self.default_format not in VALID_FORMATS:
            errors.append(
                f"FIGLAB_FORMAT must be one of {', '.join(VALID_FORMATS)}")

        if self.suite_size <= 0:
            errors.append("FIGLAB_SUITE_SIZE must be positive")

        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"Unknown log level {self.log_level}")

        return errors


# Global configuration instance
config = FigLabConfig()
