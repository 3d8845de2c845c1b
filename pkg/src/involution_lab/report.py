"""Report emission (JSON and markdown) and the catalog listing."""
from __future__ import annotations

import json
from pathlib import Path

from .groups import admissible_kernels
from .specs import CATALOG
from .suites import Report

SUMMARY_COLUMNS = [
    ("group", "group"),
    ("p", "p"),
    ("derived_order", "\\|G'\\|"),
    ("t", "t"),
    ("tL", "tL"),
    ("t_nil", "t_nil"),
    ("cl", "cl"),
    ("verdict", "verdict"),
]


def to_json(report: Report, timings: bool = False) -> str:
    return json.dumps(report.to_dict(timings), indent=2, sort_keys=True) + "\n"


def _cell(value) -> str:
    if value is None:
        return "-"
    text = json.dumps(value) if isinstance(value, (list, dict)) else str(value)
    return text.replace("|", "\\|")


def to_markdown(report: Report, timings: bool = False) -> str:
    data = report.to_dict(timings)
    s = data["summary"]
    lines = [
        f"# {data['config']['suite']} on {s.get('group', data['config']['group'])}",
        "",
        "| " + " | ".join(h for _, h in SUMMARY_COLUMNS) + " |",
        "|" + "---|" * len(SUMMARY_COLUMNS),
        "| " + " | ".join(_cell(s.get(k)) for k, _ in SUMMARY_COLUMNS) + " |",
        "",
        f"status: **{data['status']}** ({', '.join(f'{k} {v}' for k, v in data['counts'].items())})",
        "",
    ]
    head = ["case", "status", "expected", "computed", "source"] + (["runtime"] if timings else [])
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "---|" * len(head))
    for case in data["cases"]:
        row = [case["case"], case["status"], _cell(case["expected"]), _cell(case["computed"]), case["source"]]
        if timings:
            row.append(f"{case['runtime']:.3f}")
        lines.append("| " + " | ".join(row) + " |")
    notes = [c for c in data["cases"] if c["status"] in ("fail", "inconclusive") and c["detail"]]
    if notes:
        lines += ["", "Details:", ""]
        lines += [f"- `{c['case']}` ({c['statement']}): {c['detail']}" for c in notes]
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "json", path: str | Path | None = None, timings: bool = False) -> str:
    """Render the report; write it to ``path`` when given."""
    if fmt == "json":
        text = to_json(report, timings)
    elif fmt in ("md", "markdown"):
        text = to_markdown(report, timings)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def list_catalog(cap: int | None = None) -> str:
    """One line per built-in group: name, order, characteristic, kernel and the admissible kernel orders."""
    rows = []
    for name, entry in CATALOG.items():
        G = entry.group(cap)
        kernels = sorted(len(k) for k in admissible_kernels(G))
        rows.append(f"{name:12s} order {G.order:4d}  p={entry.characteristic}  kernel <{entry.kernel or 'G'}>  "
                    f"admissible kernel orders {kernels}  spec {entry.spec}  ({entry.note})")
    return "\n".join(rows) + "\n"
