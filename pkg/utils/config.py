"""
Application configuration loaded from environment variables.
"""
import os
from dataclasses import dataclass, field
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()


class Config:
    """Application configuration."""

    # Environment: "development" or "production"
    ENV = os.getenv("ENV", "production")
    DEBUG = ENV == "development"

    LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "WARNING")

    # Equivalence test defaults
    GRID_SIZE = int(os.getenv("GRID_SIZE", "5"))
    TOLERANCE = float(os.getenv("TOLERANCE", "1e-9"))
    NEWTON_MAX_ITER = int(os.getenv("NEWTON_MAX_ITER", "20"))
    NEWTON_DAMPING_STEPS = int(os.getenv("NEWTON_DAMPING_STEPS", "8"))

    # Second fiber values for the y0-independence check are y0 + Y_SHIFT
    Y_SHIFT = os.getenv("Y_SHIFT", "1")

    # Thread pool size for grid-parallel phases
    WORKERS = int(os.getenv("WORKERS", "4"))

    # Report format: "text" or "json"
    OUTPUT_FORMAT = os.getenv("OUTPUT_FORMAT", "text")

    # Width used when long expressions are quoted in log messages
    EXPRESSION_PREVIEW = int(os.getenv("EXPRESSION_PREVIEW", "120"))


@dataclass
class RunConfig:
    """Settings of one command-line invocation."""

    subcommand: str
    inputs: List[str] = field(default_factory=list)
    invariants: List[str] = field(default_factory=list)
    grid: int = Config.GRID_SIZE
    tol: float = Config.TOLERANCE
    output: Optional[str] = None
    format: str = Config.OUTPUT_FORMAT
