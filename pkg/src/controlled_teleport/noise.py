"""Interference injection applied between the ideal circuit and measurement."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from . import qsim
from .qsim import StateVector

CHARLIE = 2


class NoiseModel(str, enum.Enum):
    NONE = "none"
    X_FLIP_CHARLIE = "x_flip_charlie"
    RY_KICK_CHARLIE = "ry_kick_charlie"
    RANDOM_PAULI_ANY = "random_pauli_any"
    FORCE_DETECT = "force_detect"

    @classmethod
    def parse(cls, value) -> "NoiseModel":
        if isinstance(value, cls):
            return value
        # accept the CLI spelling too ("x-flip-charlie", "random-pauli")
        key = str(value).strip().lower().replace("-", "_")
        if key == "random_pauli":
            key = "random_pauli_any"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown noise model {value!r}") from None


_CHARLIE_MODELS = {NoiseModel.X_FLIP_CHARLIE, NoiseModel.RY_KICK_CHARLIE}
_PAULIS = (qsim.pauli_x, qsim.pauli_y, qsim.pauli_z)


@dataclass(frozen=True)
class NoiseConfig:
    model: NoiseModel = NoiseModel.NONE
    p_interf: float = 0.0
    kick_angle: float = math.pi

    def __post_init__(self):
        object.__setattr__(self, "model", NoiseModel.parse(self.model))
        p = float(self.p_interf)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p_interf must lie in [0, 1], got {self.p_interf!r}")
        object.__setattr__(self, "p_interf", p)
        if not math.isfinite(float(self.kick_angle)):
            raise ValueError(f"kick_angle must be finite, got {self.kick_angle!r}")
        object.__setattr__(self, "kick_angle", float(self.kick_angle))


@dataclass(frozen=True)
class InjectionReport:
    injected: bool
    target_qubit: Optional[int]
    applied_model: NoiseModel

    def __post_init__(self):
        if not self.injected and self.target_qubit is not None:
            raise ValueError("target_qubit must be None when nothing was injected")


def apply_interference(
    state: StateVector, cfg: NoiseConfig, rng
) -> tuple[StateVector, InjectionReport]:
    """Possibly disturb ``state`` according to ``cfg``.

    Model ``none`` consumes no randomness.  ``force_detect`` leaves the
    state alone but reports an injection, which the protocol treats as a
    guaranteed detection.  Every other model draws one uniform for the
    Bernoulli(p_interf) decision, and ``random_pauli_any`` draws two more
    integers when it fires.
    """
    model = cfg.model
    if model in _CHARLIE_MODELS and state.n_qubits < 3:
        raise ValueError(f"{model.value} needs at least 3 qubits, got {state.n_qubits}")

    if model is NoiseModel.NONE:
        return state, InjectionReport(False, None, model)
    if model is NoiseModel.FORCE_DETECT:
        return state, InjectionReport(True, None, model)

    if not rng.random() < cfg.p_interf:
        return state, InjectionReport(False, None, model)

    if model is NoiseModel.X_FLIP_CHARLIE:
        target, gate = CHARLIE, qsim.pauli_x()
    elif model is NoiseModel.RY_KICK_CHARLIE:
        target, gate = CHARLIE, qsim.ry(cfg.kick_angle)
    else:
        gate = _PAULIS[int(rng.integers(3))]()
        target = int(rng.integers(state.n_qubits))
    return qsim.apply_single(state, gate, target), InjectionReport(True, target, model)
