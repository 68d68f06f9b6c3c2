"""File formats: trial-table CSV, summary JSON and attempts plot data."""

from __future__ import annotations

import csv
import json
import os
from typing import Iterable, Optional, Sequence

from .metrics import SummaryStats, TrialRecord

RECORD_HEADER = (
    "trial",
    "attempts",
    "interference_detected",
    "alice_result",
    "bob_result",
    "charlie_result",
    "fidelity",
)
PLOT_HEADER = ("trial", "attempts")

_NULL = "None"


def _fmt_result(value: Optional[int]) -> str:
    return _NULL if value is None else f"{float(value):.1f}"


def _parse_result(text: str) -> Optional[int]:
    if text == _NULL:
        return None
    value = float(text)
    if value not in (1.0, -1.0):
        raise ValueError(f"result must be 1.0, -1.0 or None, got {text!r}")
    return int(value)


def _parse_bool(text: str) -> bool:
    if text == "Yes":
        return True
    if text == "No":
        return False
    raise ValueError(f"expected Yes/No, got {text!r}")


def format_record(r: TrialRecord) -> list[str]:
    return [
        str(r.trial_id),
        str(r.attempts),
        "Yes" if r.interference_detected else "No",
        _fmt_result(r.alice_result),
        _fmt_result(r.bob_result),
        _fmt_result(r.charlie_result),
        str(r.fidelity),
    ]


def _sorted(records: Iterable[TrialRecord]) -> list[TrialRecord]:
    return sorted(records, key=lambda r: r.trial_id)


def write_records_csv(records: Iterable[TrialRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_HEADER)
        for r in _sorted(records):
            w.writerow(format_record(r))


def read_records_csv(path) -> list[TrialRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != RECORD_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        out = []
        for row in reader:
            trial, attempts, detected, a, b, c, fid = row
            out.append(
                TrialRecord(
                    trial_id=int(trial),
                    attempts=int(attempts),
                    interference_detected=_parse_bool(detected),
                    alice_result=_parse_result(a),
                    bob_result=_parse_result(b),
                    charlie_result=_parse_result(c),
                    fidelity=int(fid),
                )
            )
    return out


def summary_payload(summary: SummaryStats, comparison: Optional[dict] = None) -> dict:
    payload = summary.to_dict()
    if comparison is not None:
        payload["comparison"] = comparison
    return payload


def _dump_json(payload, path) -> None:
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_summary_json(summary: SummaryStats, path, comparison: Optional[dict] = None) -> None:
    """Write summary fields in declaration order; undefined means become ``null``."""
    _dump_json(summary_payload(summary, comparison), path)


def write_sweep_json(rows: Sequence[tuple[float, SummaryStats]], path) -> None:
    _dump_json([{"gamma": g, **s.to_dict()} for g, s in rows], path)


def write_attempts_plotdata(records: Iterable[TrialRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PLOT_HEADER)
        for r in _sorted(records):
            w.writerow([r.trial_id, r.attempts])


def ensure_parent(path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
