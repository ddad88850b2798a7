"""Text and JSON rendering of reports."""
from __future__ import annotations

import json

from .commands import Report


def render_json(rep: Report) -> str:
    return json.dumps(rep.as_dict(), indent=2, sort_keys=True)


def _fmt(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "none" if v is None else str(v)


def render_text(rep: Report) -> str:
    lines = [f"command: {rep.command}"]
    if rep.hypotheses:
        lines.append("hypotheses:")
        lines.extend(f"  {n}: {s}" for n, s in rep.hypotheses)
    lines.append("result:")
    if rep.command == "corpus":
        for row in rep.result["cases"]:
            lines.append(f"  {row['status']}  {row['name']}  [{row['source']}]")
            lines.extend(f"      {m}" for m in row["mismatches"])
        lines.append(f"  passed {rep.result['passed']}/{rep.result['total']}")
    else:
        lines.extend(f"  {k}: {_fmt(v)}" for k, v in rep.result.items())
    if rep.certificates:
        lines.append("certificates:")
        lines.extend(f"  {k}: {_fmt(v)}" for k, v in rep.certificates.items())
    return "\n".join(lines) + "\n"
