import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        # accept scientific notation such as 1e9
        value = int(float(raw)) if any(c in raw for c in "eE.") else int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer, using default {default}")
        return default
    if value < 1:
        logger.warning(f"{name}={raw!r} must be positive, using default {default}")
        return default
    return value


def _bool_env(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "y")


class Config:
    """Runtime settings, read from the environment on instantiation."""

    PROJECT_NAME: str = "glasnerkit"
    VERSION: str = "1.0.0"

    def __init__(self):
        self.PROJECT_NAME = os.getenv("PROJECT_NAME", Config.PROJECT_NAME)
        self.VERSION = os.getenv("VERSION", Config.VERSION)

        # Budgets
        self.ELEMENTARY_BUDGET: int = _int_env("GLASNER_BUDGET", 10**9)
        self.DIRECT_BUDGET: int = _int_env("GLASNER_DIRECT_BUDGET", 10**8)
        self.EXHAUSTIVE_BUDGET: int = _int_env("GLASNER_EXHAUSTIVE_BUDGET", 10**7)

        # Density certification and nondegeneracy search
        self.MAX_REFINEMENTS: int = _int_env("GLASNER_MAX_REFINEMENTS", 6)
        self.NONDEGENERACY_BOX: int = _int_env("GLASNER_NONDEGENERACY_BOX", 8)

        # Logging / output
        self.LOG_LEVEL: str = os.getenv("GLASNER_LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE: str = os.getenv("GLASNER_LOG_FILE", "")
        self.REPORT_TIMING: bool = _bool_env("GLASNER_REPORT_TIMING", False)

    def reload(self) -> "Config":
        """Re-read the environment in place, so every module sees the new values."""
        self.__init__()
        return self


config = Config()
