"""
Constants used throughout the invariants toolkit.
"""
from utils.config import Config

# Version of the JSON report layout
SCHEMA_VERSION = 1

# Exit codes of the command-line surface
EXIT_OK = 0
EXIT_MATH_ERROR = 1
EXIT_USAGE_ERROR = 2

# Default grid and tolerance (from config, environment-aware)
DEFAULT_GRID_SIZE = Config.GRID_SIZE
DEFAULT_TOLERANCE = Config.TOLERANCE

# Fiber coordinate of M x R and prefix of function-jet variables
FIBER_VAR = "y"
JET_PREFIX = "f"

# Generic coefficient symbols are COEFF_PREFIX + multi-index digits (a3, a21, ...)
COEFF_PREFIX = "a"

# Default invariant battery and chart coordinates for the equivalence test
DEFAULT_BATTERY = ["I0", "I1", "BOX:I1", "TRESSE:BOX:I1;I1,I2"]
DEFAULT_CHART = ("I0", "BOX:I0")

SUBCOMMANDS = ["classify", "connection", "symbols", "invariants", "descend", "equiv", "oracle1d"]

CLASSIFICATIONS = ("hyperbolic", "ultrahyperbolic", "degenerate", "regular")

VERDICTS = ("equivalent", "not_equivalent", "inconclusive")
