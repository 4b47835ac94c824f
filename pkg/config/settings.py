import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings:
    # Series Configuration
    DEFAULT_PRECISION: int = int(os.getenv("RESTRICTION_DEFAULT_PRECISION", "50"))

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Enumeration Configuration
    DEFAULT_JOBS: int = 1
    MAX_IMAGINARY_NORM: int = 6  # largest imaginary shell the CLI materialises
    MAX_TRIPLE_NORM: int = 3  # triple histograms cover norms <= 3
    CHUNKS_PER_WORKER: int = 4

    # Named index / basis catalog
    CATALOG_FILE: str = os.path.join(os.path.dirname(__file__), "catalog.json")

    @classmethod
    def validate(cls) -> bool:
        """Validate environment-driven settings"""
        if cls.DEFAULT_PRECISION < 1:
            raise ValueError("RESTRICTION_DEFAULT_PRECISION must be a positive integer")
        return True

# Global settings instance
settings = Settings()
