"""Report serialization: aligned text table, CSV and JSON."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path

from .evaluation import DmuReport, RunReport

UNRANKED = "—"
_STATUS_CELL = {"infeasible": "Inf.", "undefined": "Und."}


def _score_cell(rec: DmuReport) -> str:
    if rec.score is None:
        return _STATUS_CELL.get(rec.status, rec.status)
    return f"{rec.score:.4f}"


def _fmt_vec(values) -> str:
    if values is None:
        return ""
    return "(" + ", ".join(f"{v:.4f}" for v in values) + ")"


def format_table(report: RunReport) -> str:
    meta = report.metadata
    head = [f"model: {meta.get('model')}  family: {meta.get('family')}  rts: {meta.get('rts')}"]
    direction = meta.get("direction") or {}
    if direction:
        head.append("direction: " + ", ".join(f"{k}={v}" for k, v in direction.items() if v is not None))
    cols = ["DMU", "status", "score", "rank", "projection"]
    rows = [[r.name, r.status, _score_cell(r), str(r.rank) if r.rank else UNRANKED,
             "" if r.projection is None else _fmt_vec(r.projection[0]) + " " + _fmt_vec(r.projection[1])]
            for r in report.records]
    widths = [max(len(c), *(len(row[k]) for row in rows)) if rows else len(c)
              for k, c in enumerate(cols)]
    lines = head + ["", "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip(),
                    "  ".join("-" * w for w in widths)]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    notes = [(r.name, w) for r in report.records for w in r.warnings]
    if notes:
        lines += ["", "warnings:"] + [f"  {name}: {w}" for name, w in notes]
    return "\n".join(lines) + "\n"


def format_csv(report: RunReport) -> str:
    ins, outs = list(report.input_names), list(report.output_names)
    header = (["name", "status", "score", "rank", "objective", "tau_radial"]
              + [f"tau_minus:{k}" for k in ins] + [f"tau_plus:{k}" for k in outs]
              + [f"proj:{k}" for k in ins] + [f"proj:{k}" for k in outs]
              + ["input_factor", "output_factor", "P_o", "Q_o", "warnings"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)

    def cells(values, k):
        return [repr(v) for v in values] if values is not None else [""] * k

    for r in report.records:
        proj = r.projection or (None, None)
        writer.writerow(
            [r.name, r.status, "" if r.score is None else repr(r.score),
             "" if r.rank is None else r.rank,
             "" if r.objective is None else repr(r.objective),
             "" if r.tau_radial is None else repr(r.tau_radial)]
            + cells(r.tau_minus, len(ins)) + cells(r.tau_plus, len(outs))
            + cells(proj[0], len(ins)) + cells(proj[1], len(outs))
            + (cells(r.decomposition, 2))
            + [" ".join(ins[i] for i in r.P_o), " ".join(outs[k] for k in r.Q_o),
               " | ".join(r.warnings)])
    return buf.getvalue()


def to_json_obj(report: RunReport) -> dict:
    records = []
    for r in report.records:
        d = dataclasses.asdict(r)
        d["P_o"] = [report.input_names[i] for i in r.P_o]
        d["Q_o"] = [report.output_names[k] for k in r.Q_o]
        records.append(d)
    return {"metadata": dict(report.metadata), "inputs": list(report.input_names),
            "outputs": list(report.output_names), "records": records}


def format_json(report: RunReport) -> str:
    # float repr round-trips exactly
    return json.dumps(to_json_obj(report), indent=2, sort_keys=False) + "\n"


FORMATTERS = {"table": format_table, "csv": format_csv, "json": format_json}


def emit_report(report: RunReport, format: str = "table", path: str | Path | None = None) -> str:
    """Render ``report``; write it to ``path`` when given. Returns the text."""
    try:
        text = FORMATTERS[format](report)
    except KeyError:
        raise ValueError(f"unknown report format {format!r}") from None
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
