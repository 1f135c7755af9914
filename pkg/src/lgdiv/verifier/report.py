"""Report assembly and rendering.

Reports are plain dicts serialised with sorted keys, so the same inputs
always give the same bytes.  Wall-clock timing is only added on request.
"""

from __future__ import annotations

import json
from importlib import resources

from .. import __version__

STATUS_EXIT = {"ok": 0, "mismatch": 1, "error": 2, "indeterminate": 3}


def make_report(command: str, inputs: dict, verdicts: list[dict], status: str,
                cross_validation: dict | None = None, **extra) -> dict:
    if status not in STATUS_EXIT:
        raise ValueError(f"unknown status {status!r}")
    rep = {
        "command": command,
        "inputs": inputs,
        "verdicts": verdicts,
        "cross_validation": cross_validation,
        "status": status,
        "version": __version__,
    }
    rep.update(extra)
    return rep


def error_report(command: str, inputs: dict, message: str) -> dict:
    return make_report(command, inputs, [], "error", None, error=message)


def exit_code(report: dict) -> int:
    return STATUS_EXIT[report["status"]]


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def schema() -> dict:
    text = (resources.files("lgdiv") / "data" / "report.schema.json").read_text()
    return json.loads(text)


def _scalar(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def render_pretty(report: dict) -> str:
    lines = [f"{report['command']}  (lgdiv {report['version']})  status: {report['status'].upper()}"]
    if report["inputs"]:
        lines.append("inputs:")
        for k in sorted(report["inputs"]):
            lines.append(f"  {k}: {_scalar(report['inputs'][k])}")
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    if report["verdicts"]:
        lines.append("verdicts:")
        for v in report["verdicts"]:
            extra = {k: x for k, x in v.items() if k not in ("check", "result")}
            tail = "  " + ", ".join(f"{k}={_scalar(extra[k])}" for k in sorted(extra)) if extra else ""
            lines.append(f"  {v['check']:<36} {v['result']}{tail}")
    cv = report.get("cross_validation")
    if cv:
        lines.append("cross-validation:")
        for k in sorted(cv):
            lines.append(f"  {k}: {_scalar(cv[k])}")
    for key in ("notes",):
        if report.get(key):
            lines.append(f"{key}:")
            for n in report[key]:
                lines.append(f"  - {n}")
    if "timing" in report:
        lines.append(f"elapsed: {report['timing']['seconds']:.3f} s")
    return "\n".join(lines) + "\n"
