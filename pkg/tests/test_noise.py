"""Noise model: parameter validation, exact draw discipline, channel statistics,
and the end-to-end monotone degradation of estimation success."""

import numpy as np
import pytest

from qpelab.errors import ConfigurationError
from qpelab.harness import ExperimentConfig, compare_methods
from qpelab.noise import (
    DEFAULT_P1,
    DEFAULT_P2,
    DEFAULT_P_READOUT,
    NoiseModel,
    apply_gate_noise,
    apply_readout_noise,
    flip_readout_bit,
    pauli_pair,
)
from qpelab.rng import make_generator
from qpelab.statevector import zero_state


class ScriptedRng:
    """Stands in for a Generator; feeds a fixed list of uniforms and counts draws."""

    def __init__(self, values):
        self.values = list(values)
        self.consumed = 0

    def random(self):
        self.consumed += 1
        return self.values.pop(0)


def random_state(n, seed):
    from qpelab.statevector import StateVector

    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    amps /= np.linalg.norm(amps)
    return StateVector(n, amps)


# -- model ---------------------------------------------------------------------


def test_defaults():
    model = NoiseModel()
    assert (model.p1, model.p2, model.p_readout) == (0.002, 0.02, 0.03)
    assert (DEFAULT_P1, DEFAULT_P2, DEFAULT_P_READOUT) == (0.002, 0.02, 0.03)


@pytest.mark.parametrize("field", ["p1", "p2", "p_readout"])
@pytest.mark.parametrize("value", [-0.1, 1.0001])
def test_probabilities_validated(field, value):
    with pytest.raises(ConfigurationError):
        NoiseModel(**{field: value})


def test_trivial_detection():
    assert NoiseModel.noiseless().is_trivial
    assert NoiseModel(0.0, 0.0, 0.0).is_trivial
    assert not NoiseModel().is_trivial
    assert not NoiseModel(0.0, 0.0, 0.5).is_trivial


def test_pauli_pair_decodes_all_fifteen_products():
    seen = set()
    for index in range(1, 16):
        first, second = pauli_pair(index)
        assert 0 <= first <= 3 and 0 <= second <= 3
        assert (first, second) != (0, 0)
        seen.add((first, second))
    assert len(seen) == 15
    assert pauli_pair(1) == (0, 1)
    assert pauli_pair(4) == (1, 0)
    assert pauli_pair(15) == (3, 3)


# -- draw discipline (bit-compatibility contract with the compiled kernel) ------


def test_zero_probability_consumes_no_draws():
    state = zero_state(1)
    rng = ScriptedRng([])
    apply_gate_noise(state, (0,), NoiseModel(p1=0.0, p2=0.5, p_readout=0.5), rng)
    assert rng.consumed == 0
    assert flip_readout_bit(1, NoiseModel(p_readout=0.0), ScriptedRng([])) == 1


def test_miss_consumes_exactly_one_draw():
    state = zero_state(1)
    before = state.amplitudes.copy()
    rng = ScriptedRng([0.9])
    apply_gate_noise(state, (0,), NoiseModel(p1=0.5), rng)
    assert rng.consumed == 1
    np.testing.assert_array_equal(state.amplitudes, before)


@pytest.mark.parametrize(
    "second_draw,expected_index,expected_amp",
    [
        (0.0, 1, 1.0),    # choice 1 = X: |0> -> |1>
        (0.34, 1, 1.0j),  # choice 2 = Y: |0> -> i|1>
        (0.67, 0, 1.0),   # choice 3 = Z: |0> unchanged
    ],
)
def test_single_qubit_pauli_choice_mapping(second_draw, expected_index, expected_amp):
    state = zero_state(1)
    rng = ScriptedRng([0.1, second_draw])
    apply_gate_noise(state, (0,), NoiseModel(p1=0.5), rng)
    assert rng.consumed == 2
    assert abs(state.amplitudes[expected_index] - expected_amp) < 1e-15


@pytest.mark.parametrize(
    "second_draw,expected_index",
    [
        (0.0, 2),   # pair 1 = (I, X): X on targets[1] -> |10>
        (0.27, 3),  # pair 5 = (X, X): both flip -> |11>
        (0.99, 0),  # pair 15 = (Z, Z): |00> unchanged
    ],
)
def test_two_qubit_pauli_pair_mapping(second_draw, expected_index):
    state = zero_state(2)
    rng = ScriptedRng([0.0, second_draw])
    apply_gate_noise(state, (0, 1), NoiseModel(p2=0.5), rng)
    assert rng.consumed == 2
    assert abs(abs(state.amplitudes[expected_index]) - 1.0) < 1e-15


def test_readout_flip_draw_discipline():
    assert flip_readout_bit(0, NoiseModel(p_readout=0.5), ScriptedRng([0.4])) == 1
    assert flip_readout_bit(0, NoiseModel(p_readout=0.5), ScriptedRng([0.6])) == 0
    rng = ScriptedRng([0.4])
    flip_readout_bit(1, NoiseModel(p_readout=0.5), rng)
    assert rng.consumed == 1


# -- channel statistics (frozen 3-sigma bounds) ----------------------------------


def test_forced_pauli_flips_two_thirds_of_the_time():
    # X and Y send |0> to a |1> outcome, Z does not: expect 2/3 over the 3 choices
    rng = make_generator(2024)
    trials = 9000
    ones = 0
    for _ in range(trials):
        state = zero_state(1)
        apply_gate_noise(state, (0,), NoiseModel(p1=1.0), rng)
        ones += round(state.probability_of_one(0))
    # 3*sqrt((2/9)/9000), frozen
    assert abs(ones / trials - 2.0 / 3.0) <= 0.0149071198499986


def test_noise_injection_preserves_norm():
    state = random_state(3, seed=31)
    rng = make_generator(8)
    model = NoiseModel(p1=1.0, p2=1.0, p_readout=0.0)
    for i in range(100):
        apply_gate_noise(state, (i % 3,), model, rng)
        apply_gate_noise(state, (i % 3, (i + 1) % 3), model, rng)
    assert abs(state.norm() - 1.0) <= 1e-10


def test_readout_noise_end_to_end_statistics():
    rng = make_generator(77)
    model = NoiseModel(p_readout=0.1)
    trials = 10000
    flips = 0
    for _ in range(trials):
        flips += apply_readout_noise("0000", model, rng).count("1")
    # mean flipped bits per word is 4*0.1 = 0.4; 3*sqrt(0.36/10000) = 0.018, frozen
    assert abs(flips / trials - 0.4) <= 0.018


def test_readout_noise_edge_probabilities():
    model_off = NoiseModel(p_readout=0.0)
    assert apply_readout_noise("0101", model_off, make_generator(0)) == "0101"
    model_on = NoiseModel(p_readout=1.0)
    assert apply_readout_noise("0101", model_on, make_generator(0)) == "1010"


def test_readout_noise_rejects_non_bits():
    with pytest.raises(ConfigurationError):
        apply_readout_noise("01x", NoiseModel(p_readout=0.5), make_generator(0))


# -- end-to-end invariant: more noise never helps (2-sigma slack) -----------------


def test_success_degrades_monotonically_with_noise():
    base = ExperimentConfig(method="modified", n_bits=4, phase_bits="1011", shots=1024)
    rows = compare_methods(base, ["modified"], [0.0, 0.01, 0.02, 0.05], runs_per_cell=20)
    success = [row["mean_success"] for row in rows]
    assert success[0] == 1.0
    # each point averages 20*1024 Bernoulli outcomes; 2 sigma <= 0.007
    for a, b in zip(success, success[1:]):
        assert b <= a + 0.007, f"success rose with noise: {success}"
