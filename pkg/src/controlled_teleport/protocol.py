"""Controlled teleportation circuit, interference check and retry loop.

Wires: 0 = Alice, 1 = Bob, 2 = Charlie.  One attempt runs

    |000> -> H0, CX(0,1), H1, CX(1,2)      channel
          -> RY(theta)0, RZ(phi)0           message
          -> CX(0,1), H0                    Alice's basis change
          -> CX(1,2), H2                    Charlie's control
          -> interference -> [corrections] -> measure all three once
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from . import qsim
from .metrics import TrialRecord, binary_fidelity, expected_sign
from .noise import InjectionReport, NoiseConfig, NoiseModel, apply_interference
from .qsim import StateVector

ALICE, BOB, CHARLIE = 0, 1, 2


class DetectionSource(str, enum.Enum):
    SAMPLED = "sampled"
    EXACT_EXPECTATION = "exact_expectation"

    @classmethod
    def parse(cls, value) -> "DetectionSource":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        if key == "exact":
            key = "exact_expectation"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown detection source {value!r}") from None


@dataclass(frozen=True)
class MessageParams:
    theta: float
    phi: float

    def __post_init__(self):
        for name in ("theta", "phi"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class ProtocolConfig:
    gamma: float = -0.5
    max_retries: int = 5
    detection_source: DetectionSource = DetectionSource.SAMPLED
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    apply_corrections: bool = False
    # swap the roles in Charlie's CNOT (control = Charlie, target = Bob)
    charlie_cnot_reversed: bool = False

    def __post_init__(self):
        g = float(self.gamma)
        if not -1.0 <= g <= 1.0:
            raise ValueError(f"gamma must lie in [-1, 1], got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)
        if int(self.max_retries) != self.max_retries or self.max_retries < 1:
            raise ValueError(f"max_retries must be an integer >= 1, got {self.max_retries!r}")
        object.__setattr__(self, "max_retries", int(self.max_retries))
        object.__setattr__(self, "detection_source", DetectionSource.parse(self.detection_source))


@dataclass(frozen=True)
class AttemptOutcome:
    alice_result: int
    bob_result: int
    charlie_result: int
    z_c_value: float
    detected: bool
    injection: InjectionReport


def _require_three(state: StateVector) -> None:
    if state.n_qubits != 3:
        raise ValueError(f"protocol operates on 3 qubits, got {state.n_qubits}")


def build_channel(state: StateVector) -> StateVector:
    """Entangle Alice-Bob, then Bob-Charlie, each with an H followed by a CNOT."""
    _require_three(state)
    state = qsim.apply_single(state, qsim.hadamard(), ALICE)
    state = qsim.apply_cnot(state, ALICE, BOB)
    state = qsim.apply_single(state, qsim.hadamard(), BOB)
    return qsim.apply_cnot(state, BOB, CHARLIE)


def encode_message(state: StateVector, msg: MessageParams) -> StateVector:
    _require_three(state)
    state = qsim.apply_single(state, qsim.ry(msg.theta), ALICE)
    return qsim.apply_single(state, qsim.rz(msg.phi), ALICE)


def bell_measurement_basis(state: StateVector) -> StateVector:
    _require_three(state)
    state = qsim.apply_cnot(state, ALICE, BOB)
    return qsim.apply_single(state, qsim.hadamard(), ALICE)


def charlie_control(state: StateVector, reversed_cnot: bool = False) -> StateVector:
    _require_three(state)
    if reversed_cnot:
        state = qsim.apply_cnot(state, CHARLIE, BOB)
    else:
        state = qsim.apply_cnot(state, BOB, CHARLIE)
    return qsim.apply_single(state, qsim.hadamard(), CHARLIE)


def apply_corrections(state: StateVector) -> StateVector:
    """Bob's X/Z fix-ups conditioned on Charlie's and Alice's bits.

    Written as controlled gates (deferred measurement), which gives the
    same statistics as classically conditioned corrections after a
    terminal measurement of Alice and Charlie.
    """
    _require_three(state)
    state = qsim.apply_cnot(state, CHARLIE, BOB)
    return qsim.apply_cz(state, ALICE, BOB)


@lru_cache(maxsize=64)
def _circuit_amplitudes(theta: float, phi: float, reversed_cnot: bool) -> np.ndarray:
    state = build_channel(qsim.zero_state(3))
    state = encode_message(state, MessageParams(theta, phi))
    state = bell_measurement_basis(state)
    return charlie_control(state, reversed_cnot).amplitudes


def circuit_state(msg: MessageParams, reversed_cnot: bool = False) -> StateVector:
    """Noise-free state just before interference and measurement."""
    return StateVector(3, _circuit_amplitudes(msg.theta, msg.phi, bool(reversed_cnot)))


def detect_interference(z_value: float, gamma: float) -> bool:
    """True iff Charlie's Z value falls strictly below the threshold."""
    return bool(z_value < gamma)


def run_attempt(cfg: ProtocolConfig, msg: MessageParams, rng) -> AttemptOutcome:
    """One pass through the circuit with a single terminal measurement.

    Draw order on ``rng``: interference (see ``apply_interference``), then
    exactly one uniform for the measurement.
    """
    state = circuit_state(msg, cfg.charlie_cnot_reversed)
    state, report = apply_interference(state, cfg.noise, rng)
    if cfg.apply_corrections:
        state = apply_corrections(state)

    exact_z = None
    if cfg.detection_source is DetectionSource.EXACT_EXPECTATION:
        exact_z = qsim.expectation_z(state, CHARLIE)
    outcome = qsim.sample_all_z(state, rng)
    a, b, c = outcome.per_qubit_values
    z = float(c) if exact_z is None else exact_z

    if cfg.noise.model is NoiseModel.FORCE_DETECT:
        detected = True
    else:
        detected = detect_interference(z, cfg.gamma)
    return AttemptOutcome(a, b, c, z, detected, report)


def run_trial(
    cfg: ProtocolConfig,
    msg: MessageParams,
    rng,
    trial_id: int = 1,
    attempt_log: Optional[list] = None,
) -> TrialRecord:
    """Retry until an attempt passes the interference check or the ceiling is hit.

    When given, ``attempt_log`` receives every AttemptOutcome in order.
    """
    detected_any = False
    outcome = None
    attempts = 0
    for attempts in range(1, cfg.max_retries + 1):
        outcome = run_attempt(cfg, msg, rng)
        if attempt_log is not None:
            attempt_log.append(outcome)
        if not outcome.detected:
            break
        detected_any = True
    else:
        return TrialRecord(trial_id, attempts, True, None, None, None, 0)

    fidelity = binary_fidelity(outcome.bob_result, expected_sign(msg.theta))
    return TrialRecord(
        trial_id,
        attempts,
        detected_any,
        outcome.alice_result,
        outcome.bob_result,
        outcome.charlie_result,
        fidelity,
    )


def with_max_retries(cfg: ProtocolConfig, max_retries: int) -> ProtocolConfig:
    return replace(cfg, max_retries=max_retries)
