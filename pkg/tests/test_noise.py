import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from controlled_teleport import qsim
from controlled_teleport.noise import InjectionReport, NoiseConfig, NoiseModel, apply_interference
from controlled_teleport.protocol import MessageParams, circuit_state
from controlled_teleport.rng import substream


def test_none_model_leaves_state_and_consumes_nothing():
    from conftest import FixedStream

    psi = circuit_state(MessageParams(0.3, 0.2))
    rng = FixedStream(0.0)
    out, report = apply_interference(psi, NoiseConfig(), rng)
    np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)
    assert report == InjectionReport(False, None, NoiseModel.NONE)
    assert rng.calls == 0


def test_x_flip_certain_on_zero_state():
    out, report = apply_interference(
        qsim.zero_state(3), NoiseConfig(NoiseModel.X_FLIP_CHARLIE, 1.0), substream(0)
    )
    assert out.amplitudes[0b001] == 1
    assert report.injected and report.target_qubit == 2


def test_ry_kick_uses_angle():
    cfg = NoiseConfig(NoiseModel.RY_KICK_CHARLIE, 1.0, kick_angle=math.pi / 3)
    out, _ = apply_interference(qsim.zero_state(3), cfg, substream(0))
    assert qsim.marginal_probability_one(out, 2) == pytest.approx(math.sin(math.pi / 6) ** 2, abs=1e-12)


def test_force_detect_reports_injection_without_touching_state():
    psi = qsim.zero_state(3)
    out, report = apply_interference(psi, NoiseConfig(NoiseModel.FORCE_DETECT), substream(0))
    np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)
    assert report.injected and report.applied_model is NoiseModel.FORCE_DETECT


def test_charlie_models_need_three_qubits():
    with pytest.raises(ValueError):
        apply_interference(qsim.zero_state(2), NoiseConfig(NoiseModel.X_FLIP_CHARLIE, 1.0), substream(0))


def test_random_pauli_works_on_small_states():
    _, report = apply_interference(qsim.zero_state(1), NoiseConfig(NoiseModel.RANDOM_PAULI_ANY, 1.0), substream(4))
    assert report.target_qubit == 0


def test_random_pauli_covers_all_wires():
    rng = substream(5, "pauli")
    cfg = NoiseConfig(NoiseModel.RANDOM_PAULI_ANY, 1.0)
    targets = {apply_interference(qsim.zero_state(3), cfg, rng)[1].target_qubit for _ in range(200)}
    assert targets == {0, 1, 2}


@pytest.mark.parametrize("bad", [dict(p_interf=-0.1), dict(p_interf=1.5), dict(kick_angle=float("nan"))])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        NoiseConfig(NoiseModel.RY_KICK_CHARLIE, **{"p_interf": 0.5, **bad})


def test_model_parse_accepts_cli_spelling():
    assert NoiseModel.parse("x-flip-charlie") is NoiseModel.X_FLIP_CHARLIE
    assert NoiseModel.parse("random-pauli") is NoiseModel.RANDOM_PAULI_ANY
    with pytest.raises(ValueError):
        NoiseModel.parse("depolarizing")


def test_report_invariant():
    with pytest.raises(ValueError):
        InjectionReport(False, 2, NoiseModel.X_FLIP_CHARLIE)


def test_injection_frequency_binomial():
    n, p = 100_000, 0.3
    cfg = NoiseConfig(NoiseModel.X_FLIP_CHARLIE, p)
    psi = qsim.zero_state(3)
    rng = substream(31, "noise")
    hits = sum(apply_interference(psi, cfg, rng)[1].injected for _ in range(n))
    assert abs(hits - n * p) < 3 * math.sqrt(n * p * (1 - p))


@settings(max_examples=40)
@given(
    st.sampled_from(list(NoiseModel)),
    st.floats(0, 1),
    st.floats(-10, 10),
    st.integers(0, 2**32),
    st.floats(0, 2 * math.pi),
)
def test_norm_and_determinism(model, p, kick, seed, theta):
    psi = circuit_state(MessageParams(theta, 0.5))
    cfg = NoiseConfig(model, p, kick)
    a, ra = apply_interference(psi, cfg, substream(seed))
    b, rb = apply_interference(psi, cfg, substream(seed))
    assert abs(a.norm() - 1) < 1e-12
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    assert ra == rb
