"""Rendering of report dicts as JSON or plain text."""
import json
from typing import Any, Dict, List

from utils.errors import InputError

FORMATS = ("text", "json")


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _text_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)):
                if item:
                    lines.append(f"{pad}{key}:")
                    lines.extend(_text_lines(item, indent + 1))
                else:
                    lines.append(f"{pad}{key}: -")
            else:
                lines.append(f"{pad}{key}: {_text_value(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                body = ", ".join(f"{k}={_text_value(v)}" for k, v in item.items() if not isinstance(v, (dict, list)))
                lines.append(f"{pad}- {body}")
                for k, v in item.items():
                    if isinstance(v, (dict, list)) and v:
                        lines.append(f"{pad}  {k}:")
                        lines.extend(_text_lines(v, indent + 2))
            elif isinstance(item, list):
                lines.append(f"{pad}- {', '.join(_text_value(v) for v in item)}")
            else:
                lines.append(f"{pad}- {_text_value(item)}")
        return lines
    return [f"{pad}{_text_value(value)}"]


def _headline(report: Dict[str, Any]) -> str:
    command = report.get("command")
    if command == "classify":
        if report.get("discriminant") is None:
            return str(report["class"])
        return f"{report['class']}, Δ = {report['discriminant']}"
    if command in ("equiv", "descend"):
        key = "verdict" if command == "equiv" else "status"
        return f"{command}: {report.get(key)}"
    return f"{command}: {report.get('source', '')}".rstrip(": ")


def render_text(report: Dict[str, Any]) -> str:
    """Headline followed by the report body; schema and command keys are implied by the headline."""
    body = {k: v for k, v in report.items() if k not in ("schema", "command")}
    lines = [_headline(report)] + _text_lines(body, 1)
    return "\n".join(lines) + "\n"


def render(report: Dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise InputError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")
