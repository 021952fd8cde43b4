"""Evaluation report rendering: machine-readable JSON plus a text table.

Every report also prints the published results on the original private
campaign data for orientation. Those numbers are NOT reproducible with
this artifact (the data cannot be distributed) and are clearly labeled.
"""

from __future__ import annotations

import json
import math

PAPER_REPORTED = {
    "English": {
        "train": {"cc": 0.712, "wk": 0.840, "corr": 0.684},
        "test": {"cc": 0.596, "wk": 0.775, "corr": 0.532},
    },
    "German": {
        "train": {"cc": 0.763, "wk": 0.866, "corr": 0.763},
        "test": {"cc": 0.667, "wk": 0.822, "corr": 0.613},
    },
}
PAPER_REPORTED_NOTE = (
    "Paper-reported results on the original 2018 campaign data (private, "
    "not reproducible with this artifact); shown for orientation only."
)


def _fmt(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "   n/a"
    return f"{value:6.3f}"


def render_report_text(report: dict) -> str:
    """Human-readable tables for the evaluation report dict."""
    lines = []
    lines.append("Evaluation on the speaker-disjoint eval split")
    lines.append("=" * 78)
    for group_name in sorted(report["groups"]):
        group = report["groups"][group_name]
        lines.append("")
        lines.append(f"group {group_name}  (n={group['n']})")
        lines.append(f"  {'indicator':<26} {'CC':>6} {'WK':>6} {'Corr':>6} {'n':>5}")
        for indicator, entry in group["indicators"].items():
            lines.append(
                f"  {indicator:<26} {_fmt(entry['cc'])} {_fmt(entry['wk'])} "
                f"{_fmt(entry['corr'])} {entry['n']:>5}"
            )
    lines.append("")
    lines.append("Weighted averages per language (weights: utterance counts)")
    lines.append("-" * 78)
    for language in sorted(report["languages"]):
        summary = report["languages"][language]
        lines.append(f"{language}:")
        lines.append(f"  {'indicator':<26} {'CC':>6} {'WK':>6} {'Corr':>6} {'n':>5}")
        for indicator, entry in summary["indicators"].items():
            lines.append(
                f"  {indicator:<26} {_fmt(entry['cc'])} {_fmt(entry['wk'])} "
                f"{_fmt(entry['corr'])} {entry['n']:>5}"
            )
        overall = summary["overall"]
        lines.append(
            f"  {'(all indicators)':<26} {_fmt(overall['cc'])} {_fmt(overall['wk'])} "
            f"{_fmt(overall['corr'])} {overall['n']:>5}"
        )
    lines.append("")
    lines.append(PAPER_REPORTED_NOTE)
    lines.append(f"  {'dataset':<22} {'CC':>6} {'WK':>6} {'Corr':>6}")
    for language in sorted(PAPER_REPORTED):
        for split in ("train", "test"):
            row = PAPER_REPORTED[language][split]
            lines.append(
                f"  {language + ' 2018 ' + split:<22} {_fmt(row['cc'])} "
                f"{_fmt(row['wk'])} {_fmt(row['corr'])}   [paper-reported]"
            )
    lines.append("")
    return "\n".join(lines)


def _json_safe(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    return value


def write_report(report: dict, json_path, text_path) -> None:
    payload = _json_safe(report)
    payload["paper_reported"] = {"note": PAPER_REPORTED_NOTE, "results": PAPER_REPORTED}
    with open(json_path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
    with open(text_path, "w", encoding="utf-8") as handle:
        handle.write(render_report_text(report))
