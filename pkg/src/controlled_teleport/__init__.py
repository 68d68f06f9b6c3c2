"""Statevector simulation of controlled teleportation with interference detection and reset."""

from .harness import (
    ComparisonReport,
    ExperimentResult,
    ExperimentSpec,
    compare_reset_vs_baseline,
    gamma_sweep,
    paper_preset,
    run_experiment,
)
from .metrics import SummaryStats, TrialRecord, binary_fidelity, expected_sign, summarize
from .noise import InjectionReport, NoiseConfig, NoiseModel, apply_interference
from .protocol import (
    AttemptOutcome,
    DetectionSource,
    MessageParams,
    ProtocolConfig,
    detect_interference,
    run_attempt,
    run_trial,
)
from .qsim import StateVector, zero_state

__version__ = "0.1.0"
