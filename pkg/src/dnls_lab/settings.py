"""Process-level settings."""

import os
from dataclasses import dataclass


@dataclass
class Settings:
    """Lab settings read from the environment."""

    workers: int = 1
    log_level: str = "WARNING"
    output_dir: str = "runs"

    @classmethod
    def from_env(cls) -> "Settings":
        """Load settings from environment variables."""
        return cls(
            workers=max(1, int(os.getenv("WORKERS", "1"))),
            log_level=os.getenv("DNLS_LAB_LOG_LEVEL", "WARNING").upper(),
            output_dir=os.getenv("DNLS_LAB_OUTPUT_DIR", "runs"),
        )


settings = Settings.from_env()
