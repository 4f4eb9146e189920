from reports.builders import (
    create_classify_report,
    create_connection_report,
    create_symbols_report,
    create_invariants_report,
    create_descent_report,
    create_equivalence_report,
    create_oracle_report,
)
from reports.render import render, render_json, render_text, FORMATS

__all__ = [
    "create_classify_report",
    "create_connection_report",
    "create_symbols_report",
    "create_invariants_report",
    "create_descent_report",
    "create_equivalence_report",
    "create_oracle_report",
    "render",
    "render_json",
    "render_text",
    "FORMATS",
]
