# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Compare two differential-run reports written by ``twistforge verify``.

Usage:
    python scripts/tools/compare_reports.py <report1.jsonl> <report2.jsonl>

Results are matched on (ainvs, d, path). The script prints the results present in only
one report, the results whose verdict or local data changed, and the summary fields that differ.
"""

import argparse
import sys
from pathlib import Path

from twistforge.verify import load_report
from twistforge.verify.report import render_outcomes

# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _index(outcomes) -> dict:
    return {outcome.sort_key: outcome for outcome in outcomes}


def _print_summary_diff(summary1: dict | None, summary2: dict | None, name1: str, name2: str) -> None:
    summary1, summary2 = summary1 or {}, summary2 or {}
    keys = sorted((set(summary1) | set(summary2)) - {"kind", "elapsed"})
    changed = [(k, summary1.get(k), summary2.get(k)) for k in keys if summary1.get(k) != summary2.get(k)]
    if not changed:
        print("  [summaries identical]")
        return
    key_w = max(len(k) for k, *_ in changed)
    col_w = max(len(name1), len(name2), 6)
    print(f"    {'key':<{key_w}}  {name1:<{col_w}}  {name2:<{col_w}}")
    print(f"    {'-' * key_w}  {'-' * col_w}  {'-' * col_w}")
    for k, v1, v2 in changed:
        print(f"    {k:<{key_w}}  {str(v1):<{col_w}}  {str(v2):<{col_w}}")


# ---------------------------------------------------------------------------
# Main
# ---------------------------------------------------------------------------


def main() -> int:
    parser = argparse.ArgumentParser(description="Compare two twistforge reports.")
    parser.add_argument("report1", help="Path to the first report")
    parser.add_argument("report2", help="Path to the second report")
    args = parser.parse_args()

    path1, path2 = Path(args.report1), Path(args.report2)
    try:
        outcomes1, summary1 = load_report(str(path1))
        outcomes2, summary2 = load_report(str(path2))
    except (OSError, ValueError) as e:
        print(f"  ERROR: {e}")
        return 1

    by_key1, by_key2 = _index(outcomes1), _index(outcomes2)
    only1 = [by_key1[k] for k in sorted(by_key1.keys() - by_key2.keys())]
    only2 = [by_key2[k] for k in sorted(by_key2.keys() - by_key1.keys())]
    changed = [by_key2[k] for k in sorted(by_key1.keys() & by_key2.keys()) if by_key1[k] != by_key2[k]]

    print(f"\n{'=' * 70}")
    print(f" {path1.name}  vs  {path2.name}")
    print(f"{'=' * 70}")
    _print_summary_diff(summary1, summary2, path1.name, path2.name)

    if only1:
        print(render_outcomes(only1, title=f"Only in {path1.name}"))
    if only2:
        print(render_outcomes(only2, title=f"Only in {path2.name}"))
    if changed:
        print(render_outcomes(changed, title=f"Changed in {path2.name}"))
    if not (only1 or only2 or changed):
        print("  [results identical]")
    print()
    return 0 if not (only1 or only2 or changed) else 2


if __name__ == "__main__":
    sys.exit(main())
