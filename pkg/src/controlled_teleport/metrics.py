"""Per-trial records, binary fidelity and run-level summary statistics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

_SIGNS = (-1, 1)


@dataclass(frozen=True)
class TrialRecord:
    """One row of the trial table.

    Results are either all present (+1/-1) or all ``None``; the latter
    means every attempt hit interference and the retry ceiling was reached.
    """

    trial_id: int
    attempts: int
    interference_detected: bool
    alice_result: Optional[int]
    bob_result: Optional[int]
    charlie_result: Optional[int]
    fidelity: int

    def __post_init__(self):
        results = (self.alice_result, self.bob_result, self.charlie_result)
        n_null = sum(r is None for r in results)
        if n_null not in (0, 3):
            raise ValueError("results must be all present or all None")
        if n_null == 0 and any(r not in _SIGNS for r in results):
            raise ValueError(f"results must be +1/-1, got {results}")
        if self.fidelity not in (0, 1):
            raise ValueError(f"fidelity must be 0 or 1, got {self.fidelity!r}")
        if n_null == 3 and self.fidelity != 0:
            raise ValueError("a trial without results cannot have fidelity 1")
        if self.attempts < 1:
            raise ValueError(f"attempts must be >= 1, got {self.attempts}")

    @property
    def aborted(self) -> bool:
        return self.bob_result is None


@dataclass(frozen=True)
class SummaryStats:
    n_trials: int
    detection_count: int
    detection_rate: float
    success_count: int
    mean_fidelity_all: float
    mean_fidelity_success: Optional[float]
    mean_attempts_success: Optional[float]
    max_retry_aborts: int

    def to_dict(self) -> dict:
        return asdict(self)


def expected_sign(theta: float) -> int:
    """Sign of cos^2(theta/2) - 0.5, with the tie at theta = pi/2 going to +1."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    # cos^2(t/2) - 1/2 == cos(t)/2; the cos form avoids a spurious sign from rounding
    c = math.cos(theta)
    if abs(c) < 1e-15:
        return 1
    return 1 if c > 0 else -1


def binary_fidelity(bob_result: int, expected: int) -> int:
    if bob_result not in _SIGNS or expected not in _SIGNS:
        raise ValueError(f"values must be +1/-1, got {bob_result!r}, {expected!r}")
    return int(bob_result == expected)


def summarize(records: Iterable[TrialRecord]) -> SummaryStats:
    records: Sequence[TrialRecord] = list(records)
    if not records:
        raise ValueError("cannot summarize an empty record list")
    n = len(records)
    detections = sum(r.interference_detected for r in records)
    successes = [r for r in records if r.fidelity == 1]
    k = len(successes)
    return SummaryStats(
        n_trials=n,
        detection_count=detections,
        detection_rate=detections / n,
        success_count=k,
        mean_fidelity_all=k / n,
        # binary fidelity: every success scores exactly 1
        mean_fidelity_success=1.0 if k else None,
        mean_attempts_success=(sum(r.attempts for r in successes) / k) if k else None,
        max_retry_aborts=sum(r.aborted for r in records),
    )


def failure_rate(stats: SummaryStats) -> float:
    return (stats.n_trials - stats.success_count) / stats.n_trials


def failure_reduction(reset: SummaryStats, baseline: SummaryStats) -> Optional[float]:
    """Relative drop in failure rate from ``baseline`` to ``reset``; None if the baseline never fails."""
    base = failure_rate(baseline)
    if base == 0:
        return None
    return (base - failure_rate(reset)) / base
