# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""JSON-lines reports of differential runs.

A report holds one ``{"kind": "result", ...}`` record per (curve, d, path) in sorted order,
followed by a single ``{"kind": "summary", ...}`` record. Field names:

* result: ``ainvs``, ``p``, ``d``, ``path``, ``agree``, ``base_fast``, ``base_oracle``,
  ``twisted_fast``, ``twisted_oracle`` and, when present, ``error``, ``minimized`` and
  ``oracle_normalized``.
  Local data objects carry ``type``, ``delta``, ``f``, ``c``, ``m`` and ``reduction``.
* summary: ``spec``, ``total``, ``agreements``, ``disagreements``, ``oracle_normalized``,
  ``skipped_singular``, ``filtered`` and, only when timing is requested, ``elapsed``.
"""

from __future__ import annotations

import json
from typing import Any, TextIO

from prettytable import PrettyTable

from .harness import DiffReport, Outcome


def summary_record(report: DiffReport, timing: bool = False) -> dict[str, Any]:
    record: dict[str, Any] = {
        "kind": "summary",
        "spec": report.spec.to_dict(),
        "total": report.total,
        "agreements": report.agreements,
        "disagreements": len(report.disagreements),
        "oracle_normalized": report.oracle_normalized,
        "skipped_singular": report.skipped_singular,
        "filtered": report.filtered,
    }
    if timing:
        record["elapsed"] = round(report.elapsed, 3)
    return record


def write_report(report: DiffReport, stream: TextIO, timing: bool = False) -> None:
    """Write ``report`` as JSON lines; without ``timing`` the output is reproducible byte for byte."""
    for outcome in report.outcomes:
        stream.write(json.dumps(outcome.to_json(), sort_keys=True) + "\n")
    stream.write(json.dumps(summary_record(report, timing), sort_keys=True) + "\n")


def save_report(report: DiffReport, path: str, timing: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as f:
        write_report(report, f, timing)


def load_report(path: str) -> tuple[list[Outcome], dict[str, Any] | None]:
    """Read a report file back into outcomes and its summary record (None if it has none)."""
    outcomes: list[Outcome] = []
    summary = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ValueError(f"{path}:{lineno}: not a JSON record: {err}") from err
            if record.get("kind") == "summary":
                summary = record
            else:
                outcomes.append(Outcome.from_json(record))
    return outcomes, summary


def render_summary(report: DiffReport) -> str:
    """Human-readable summary table, followed by a table of the disagreements if there are any."""
    table = PrettyTable(
        ["Total", "Agreements", "Disagreements", "Oracle-normalized", "Singular", "Filtered", "Elapsed [s]"]
    )
    table.title = f"Differential run at p = {report.spec.p}"
    table.add_row(
        [
            report.total,
            report.agreements,
            len(report.disagreements),
            report.oracle_normalized,
            report.skipped_singular,
            report.filtered,
            f"{report.elapsed:.2f}",
        ]
    )
    text = table.get_string()
    if report.disagreements:
        text += "\n" + render_outcomes(report.disagreements, title="Disagreements")
    return text


def render_outcomes(outcomes: list[Outcome], title: str | None = None) -> str:
    table = PrettyTable(["ainvs", "d", "path", "fast (E, E^d)", "oracle (E, E^d)", "note"])
    if title:
        table.title = title
    table.align["ainvs"] = "l"
    table.align["note"] = "l"
    for o in outcomes:
        fast = f"{_short(o.base_fast)}, {_short(o.twisted_fast)}"
        oracle = f"{_short(o.base_oracle)}, {_short(o.twisted_oracle)}"
        note = o.error or (f"minimized to {list(o.minimized)}" if o.minimized else "")
        if o.oracle_normalized:
            note = f"{note}; oracle-normalized" if note else "oracle-normalized"
        table.add_row([list(o.ainvs), o.d, o.path, fast, oracle, note])
    return table.get_string()


def _short(data) -> str:
    if data is None:
        return "-"
    return f"{data.type} δ={data.delta} f={data.f} c={data.c}"
