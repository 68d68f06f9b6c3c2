"""Dense statevector simulation for a handful of qubits.

Qubit 0 is the most significant bit of the basis index, so for three
qubits the index reads ``b = (bit_0 bit_1 bit_2)``.  Measuring a bit 0
gives the value +1 and a bit 1 gives -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10
UNITARY_TOL = 1e-12
MAX_QUBITS = 24


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes over ``2**n_qubits`` basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2**self.n_qubits:
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = amps.shape[0]
        if n < 2 or n & (n - 1):
            raise ValueError(f"amplitude count must be a power of two >= 2, got {n}")
        return cls(n.bit_length() - 1, amps)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


@dataclass(frozen=True)
class MeasurementOutcome:
    per_qubit_values: tuple[int, ...]
    collapsed_basis_index: int


def zero_state(n_qubits: int) -> StateVector:
    """|0...0> on ``n_qubits`` qubits."""
    if not isinstance(n_qubits, (int, np.integer)) or n_qubits < 1:
        raise ValueError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    if n_qubits > MAX_QUBITS:
        raise ValueError(f"n_qubits={n_qubits} exceeds the dense limit of {MAX_QUBITS}")
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(int(n_qubits), amps)


# --- single-qubit gates ------------------------------------------------------


def _check_angle(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _gate(m) -> np.ndarray:
    return _readonly(np.array(m, dtype=np.complex128))


def hadamard() -> np.ndarray:
    s = 1.0 / math.sqrt(2.0)
    return _gate([[s, s], [s, -s]])


def ry(theta: float) -> np.ndarray:
    theta = _check_angle("theta", theta)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return _gate([[c, -s], [s, c]])


def rz(phi: float) -> np.ndarray:
    phi = _check_angle("phi", phi)
    return _gate([[np.exp(-0.5j * phi), 0], [0, np.exp(0.5j * phi)]])


def pauli_x() -> np.ndarray:
    return _gate([[0, 1], [1, 0]])


def pauli_y() -> np.ndarray:
    return _gate([[0, -1j], [1j, 0]])


def pauli_z() -> np.ndarray:
    return _gate([[1, 0], [0, -1]])


def is_unitary(gate: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    gate = np.asarray(gate)
    if gate.shape != (2, 2):
        return False
    return bool(np.all(np.abs(gate.conj().T @ gate - np.eye(2)) <= tol))


# --- application -------------------------------------------------------------


def _check_qubit(state: StateVector, q: int, name: str = "qubit") -> int:
    if not isinstance(q, (int, np.integer)) or not 0 <= q < state.n_qubits:
        raise IndexError(f"{name} index {q!r} out of range for {state.n_qubits} qubits")
    return int(q)


def _as_tensor(state: StateVector) -> np.ndarray:
    return state.amplitudes.reshape((2,) * state.n_qubits)


def _from_tensor(n: int, tensor: np.ndarray) -> StateVector:
    return StateVector(n, np.ascontiguousarray(tensor).reshape(-1))


def apply_single(state: StateVector, gate: np.ndarray, target: int) -> StateVector:
    """Apply a 2x2 unitary to ``target`` and return the new state."""
    target = _check_qubit(state, target, "target")
    gate = np.asarray(gate, dtype=np.complex128)
    if not is_unitary(gate):
        raise ValueError("gate is not a 2x2 unitary")
    # tensordot puts the contracted axis first; move it back into place
    out = np.tensordot(gate, _as_tensor(state), axes=([1], [target]))
    return _from_tensor(state.n_qubits, np.moveaxis(out, 0, target))


def _controlled(state: StateVector, control: int, target: int, gate: np.ndarray) -> StateVector:
    control = _check_qubit(state, control, "control")
    target = _check_qubit(state, target, "target")
    if control == target:
        raise ValueError("control and target must differ")
    tensor = np.array(_as_tensor(state))
    idx = [slice(None)] * state.n_qubits
    idx[control] = 1
    # after fixing the control axis, the target axis shifts down by one if it came later
    sub_target = target - 1 if target > control else target
    block = tensor[tuple(idx)]
    block = np.moveaxis(np.tensordot(gate, block, axes=([1], [sub_target])), 0, sub_target)
    tensor[tuple(idx)] = block
    return _from_tensor(state.n_qubits, tensor)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    return _controlled(state, control, target, pauli_x())


def apply_cz(state: StateVector, control: int, target: int) -> StateVector:
    return _controlled(state, control, target, pauli_z())


# --- measurement -------------------------------------------------------------


def probability_distribution(state: StateVector) -> np.ndarray:
    amps = state.amplitudes
    return amps.real**2 + amps.imag**2


def marginal_probability_one(state: StateVector, qubit: int) -> float:
    """Probability that ``qubit`` reads bit 1."""
    qubit = _check_qubit(state, qubit)
    probs = probability_distribution(state).reshape((2,) * state.n_qubits)
    return float(np.take(probs, 1, axis=qubit).sum())


def expectation_z(state: StateVector, qubit: int) -> float:
    """<Z> on one qubit: P(bit=0) - P(bit=1)."""
    p1 = marginal_probability_one(state, qubit)
    return float(np.clip(1.0 - 2.0 * p1, -1.0, 1.0))


def index_to_values(index: int, n_qubits: int) -> tuple[int, ...]:
    """Map a basis index to per-qubit +/-1 values, qubit 0 first."""
    return tuple(
        -1 if (index >> (n_qubits - 1 - q)) & 1 else 1 for q in range(n_qubits)
    )


def sample_all_z(state: StateVector, rng) -> MeasurementOutcome:
    """Single-shot Z-basis measurement of every qubit.

    ``rng`` only needs a ``random()`` method returning a float in [0, 1);
    one draw is consumed per call.
    """
    probs = probability_distribution(state)
    cdf = np.cumsum(probs)
    u = float(rng.random()) * cdf[-1]
    k = int(np.searchsorted(cdf, u, side="right"))
    # guard against rounding pushing u past the last nonzero entry
    nonzero = np.flatnonzero(probs > 0.0)
    k = min(max(k, int(nonzero[0])), int(nonzero[-1]))
    return MeasurementOutcome(index_to_values(k, state.n_qubits), k)


def state_fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    return float(min(1.0, abs(overlap) ** 2))
