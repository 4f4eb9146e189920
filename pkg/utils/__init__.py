from utils.config import Config, RunConfig
from utils.constants import SCHEMA_VERSION, DEFAULT_BATTERY, DEFAULT_CHART, FIBER_VAR, JET_PREFIX
from utils.formatters import (
    format_number,
    format_index,
    format_christoffel,
    format_multi_index,
    truncate_expression,
)

__all__ = [
    "Config",
    "RunConfig",
    "SCHEMA_VERSION",
    "DEFAULT_BATTERY",
    "DEFAULT_CHART",
    "FIBER_VAR",
    "JET_PREFIX",
    "format_number",
    "format_index",
    "format_christoffel",
    "format_multi_index",
    "truncate_expression",
]
