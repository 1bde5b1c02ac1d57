"""
Report rendering: canonical JSON by default, indented text with --pretty.
"""

import json
from typing import Any, Dict, List


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "✓" if v else "✗"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _lines(obj: Any, indent: int) -> List[str]:
    pad = "  " * indent
    out: List[str] = []
    if isinstance(obj, dict):
        for key, v in obj.items():
            nested = (isinstance(v, dict) and v) or (
                isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
            if nested:
                out.append(f"{pad}{key}:")
                out.extend(_lines(v, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                out.append(f"{pad}-")
                out.extend(_lines(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(obj)}")
    return out


def render(report: Dict[str, Any], pretty: bool = False) -> str:
    """
    Args:
        report: JSON-ready dict, keys already in output order
        pretty: human-readable text instead of JSON

    Returns:
        Text ending in a newline; identical for identical reports
    """
    if not pretty:
        return json.dumps(report, ensure_ascii=False, indent=2) + "\n"
    title = report.get("command", "report")
    body = {k: v for k, v in report.items() if k != "command"}
    lines = ["=" * 60, f" {title}", "=" * 60]
    lines.extend(_lines(body, 0))
    return "\n".join(lines) + "\n"


def error_report(command: str, exc: Exception, exit_code: int) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "command": command,
        "ok": False,
        "exit_code": exit_code,
        "error": type(exc).__name__,
        "message": str(exc),
    }
    witness = getattr(exc, "witness", None)
    if witness is not None:
        out["witness"] = [w if isinstance(w, (int, str)) else str(w) for w in witness]
    return out
