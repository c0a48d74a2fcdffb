"""Estimation algorithms: interference-test probabilities against frozen oracle
values, digit post-processing, builders' exactness, gate-count claims."""

import math

import numpy as np
import pytest

from qpelab.algorithms import (
    METHOD_NAMES,
    KitaevRound,
    PhasePoint,
    bits_to_turns,
    build_hadamard_test,
    build_inverse_qft,
    build_iterative_stage,
    build_modified_lloyd,
    build_qft_qpe,
    build_semiclassical_iqft_qpe,
    iterative_estimate,
    kitaev_estimate,
    parse_bit_string,
    required_samples,
    round_first_level,
    sharpen_bits,
)
from qpelab.circuit import H as H_KIND
from qpelab.circuit import MEASURE, S, X, Circuit, gate_counts
from qpelab.errors import ConfigurationError, EstimationError
from qpelab.executor import evolve_state, exact_distribution, run_circuit

from oracle_utils import compose_unitary, enumerate_branches

PHI_11_16 = PhasePoint.from_bits("1011")


def circ_dist(a, b):
    d = (a - b) % 1.0
    return min(d, 1.0 - d)


def exact_rounds(phi, n_bits, perturb=None):
    """Noise-free cosine/sine rounds, optionally with angles shifted by perturb[k-1] turns."""
    rounds = []
    for k in range(1, n_bits + 1):
        angle = phi.scaled_turns(k - 1)
        if perturb is not None:
            angle += perturb[k - 1]
        rounds.append(
            KitaevRound.from_estimates(
                k, math.cos(2 * math.pi * angle), math.sin(2 * math.pi * angle)
            )
        )
    return rounds


# -- phase domain types ----------------------------------------------------------


def test_phase_point_from_bits():
    assert PHI_11_16.value_turns == 0.6875
    assert PHI_11_16.bits == (1, 0, 1, 1)
    assert PhasePoint.from_bits([1, 0]) == PhasePoint.from_bits("10")


def test_phase_point_scaled_turns_doubles_mod_one():
    assert [PHI_11_16.scaled_turns(p) for p in range(4)] == [0.6875, 0.375, 0.75, 0.5]


@pytest.mark.parametrize("turns", [1.0, -0.001, 2.5])
def test_phase_point_range_enforced(turns):
    with pytest.raises(ConfigurationError):
        PhasePoint(turns)


def test_phase_point_bits_must_match_value():
    with pytest.raises(ConfigurationError):
        PhasePoint(0.5, bits=(1, 1))
    with pytest.raises(ConfigurationError):
        PhasePoint(0.5, bits=(1, 2))


def test_parse_bit_string_errors():
    with pytest.raises(ConfigurationError):
        parse_bit_string("10x1")
    with pytest.raises(ConfigurationError):
        parse_bit_string("")


def test_bits_to_turns():
    assert bits_to_turns((1, 0, 1, 1)) == 0.6875
    assert bits_to_turns((0,)) == 0.0
    assert bits_to_turns((1,)) == 0.5


def test_kitaev_round_recovers_quadrant():
    assert KitaevRound.from_estimates(1, 0.0, -1.0).phi_k_hat == 0.75
    assert KitaevRound.from_estimates(1, 1.0, 0.0).phi_k_hat == 0.0
    with pytest.raises(EstimationError):
        KitaevRound.from_estimates(2, 0.0, 0.0)


def test_method_names():
    assert METHOD_NAMES == ("kitaev", "iterative", "qft", "modified", "semiclassical")


# -- interference-test probabilities (frozen oracle values) ------------------------


def test_probe_zero_probability_frozen_values():
    # independently computed: P(0) = (1 + cos(2*pi*0.6875))/2 at level 1
    dist = exact_distribution(build_hadamard_test(1, False, PHI_11_16))
    assert abs(dist[0] - 0.30865828381745486) < 1e-10
    # with the quarter-turn probe shift: P(0) = (1 - sin(2*pi*0.6875))/2
    dist_s = exact_distribution(build_hadamard_test(1, True, PHI_11_16))
    assert abs(dist_s[0] - 0.9619397662556433) < 1e-10
    # at level 4 the doubled phase is one half turn: P(0) = 0 exactly
    dist4 = exact_distribution(build_hadamard_test(4, False, PHI_11_16))
    assert abs(dist4[0] - 0.0) < 1e-10


def test_probe_probability_formula_holds_for_random_phases():
    rng = np.random.default_rng(123)
    for _ in range(100):
        k = int(rng.integers(1, 7))
        phi = PhasePoint(float(rng.random()))
        angle = 2 * math.pi * phi.scaled_turns(k - 1)
        p0_plain = exact_distribution(build_hadamard_test(k, False, phi))[0]
        p0_shift = exact_distribution(build_hadamard_test(k, True, phi))[0]
        assert abs(p0_plain - (1 + math.cos(angle)) / 2) < 1e-10
        assert abs(p0_shift - (1 - math.sin(angle)) / 2) < 1e-10


def test_hadamard_test_structure():
    plain = build_hadamard_test(3, False, PHI_11_16)
    kinds = [i.kind for i in plain]
    assert kinds[0] == X and plain.instructions[0].qubits == (1,)
    assert S not in kinds
    assert kinds[-1] == MEASURE
    shifted = build_hadamard_test(3, True, PHI_11_16)
    assert [i.kind for i in shifted].count(S) == 1


def test_hadamard_test_level_bounds():
    with pytest.raises(ConfigurationError):
        build_hadamard_test(0, False, PHI_11_16)
    with pytest.raises(ConfigurationError):
        build_hadamard_test(31, False, PHI_11_16)


# -- angle recovery and digit post-processing ---------------------------------------


def test_infinite_shot_angle_recovery():
    rng = np.random.default_rng(9)
    for _ in range(50):
        phi = PhasePoint(float(rng.random()))
        for k in (1, 3, 6):
            p0 = exact_distribution(build_hadamard_test(k, False, phi))[0]
            p0_s = exact_distribution(build_hadamard_test(k, True, phi))[0]
            r = KitaevRound.from_estimates(k, 2 * p0 - 1, 1 - 2 * p0_s)
            assert circ_dist(r.phi_k_hat, phi.scaled_turns(k - 1)) < 1e-10


def test_sharpen_bits_frozen_example():
    assert sharpen_bits(exact_rounds(PHI_11_16, 4), 4) == [1, 0, 1, 1]


def test_sharpen_bits_zero_phase():
    assert sharpen_bits(exact_rounds(PhasePoint(0.0), 4), 4) == [0, 0, 0, 0]


def test_sharpen_bits_tolerates_per_level_error():
    # every corner of the +-0.05-turn error box still recovers the digits
    for mask in range(16):
        perturb = [0.05 if (mask >> i) & 1 else -0.05 for i in range(4)]
        rounds = exact_rounds(PHI_11_16, 4, perturb)
        assert sharpen_bits(rounds, 4) == [1, 0, 1, 1], f"failed at corner {mask}"


def test_sharpen_bits_requires_every_level():
    with pytest.raises(ConfigurationError):
        sharpen_bits(exact_rounds(PHI_11_16, 3), 4)


def test_round_first_level():
    assert round_first_level(exact_rounds(PHI_11_16, 4), 4) == [1, 0, 1, 1]
    with pytest.raises(ConfigurationError):
        round_first_level(exact_rounds(PHI_11_16, 4)[1:], 4)


def test_kitaev_estimate_noiseless():
    est = kitaev_estimate(4, PHI_11_16, shots_per_circuit=4096, seed=3)
    assert est.bits == (1, 0, 1, 1)
    assert est.phi_hat_turns == 0.6875
    assert est.bit_string == "1011"
    assert len(est.rounds) == 4
    assert est.shots_used == 2 * 4 * 4096
    est_round = kitaev_estimate(4, PHI_11_16, 4096, seed=3, postprocess="round")
    assert est_round.bits == (1, 0, 1, 1)


def test_kitaev_estimate_validation():
    with pytest.raises(ConfigurationError):
        kitaev_estimate(0, PHI_11_16, 100)
    with pytest.raises(ConfigurationError):
        kitaev_estimate(2, PHI_11_16, 100, postprocess="truncate")


# -- iterative estimation -------------------------------------------------------


def test_iterative_stage_structure():
    stage = build_iterative_stage(2, PHI_11_16, feedback=-1.5)
    kinds = [i.kind for i in stage]
    assert kinds == [X, H_KIND, "CPHASE", "PHASE", H_KIND, MEASURE]
    with pytest.raises(ConfigurationError):
        build_iterative_stage(0, PHI_11_16, 0.0)


def test_iterative_estimate_small_exact_cases():
    assert iterative_estimate(1, PhasePoint(0.5), 64).bits == (1,)
    assert iterative_estimate(2, PhasePoint(0.25), 64).bits == (0, 1)


def test_iterative_estimate_four_bits():
    est = iterative_estimate(4, PHI_11_16, shots_per_bit=1024, seed=5)
    assert est.bits == (1, 0, 1, 1)
    assert est.phi_hat_turns == 0.6875
    assert est.vote_ties == ()
    assert est.shots_used == 4 * 1024


def test_iterative_tie_breaks_to_zero_and_is_recorded():
    # at phase 1/4 the single level-1 stage is a fair coin; seed 1 with two
    # shots lands one head and one tail (frozen by the fixed stream protocol)
    est = iterative_estimate(1, PhasePoint(0.25), shots_per_bit=2, seed=1)
    assert est.vote_ties == (1,)
    assert est.bits == (0,)


def test_iterative_estimate_validation():
    with pytest.raises(ConfigurationError):
        iterative_estimate(0, PHI_11_16, 16)


# -- Fourier-register builders -----------------------------------------------------


def test_inverse_qft_single_qubit_is_hadamard():
    c = build_inverse_qft(1)
    assert len(c) == 1 and c.instructions[0].kind == H_KIND
    with pytest.raises(ConfigurationError):
        build_inverse_qft(0)


def test_inverse_qft_maps_fourier_states_to_reversed_basis():
    n = 3
    dim = 1 << n
    u = compose_unitary(build_inverse_qft(n))
    for x in range(dim):
        fourier = np.exp(2j * np.pi * x * np.arange(dim) / dim) / np.sqrt(dim)
        out = u @ fourier
        rev = int(format(x, f"0{n}b")[::-1], 2)
        expected = np.zeros(dim, dtype=complex)
        expected[rev] = 1.0
        # equal up to global phase; here the phase works out to exactly +1
        assert np.abs(np.abs(out[rev]) - 1.0) < 1e-10
        np.testing.assert_allclose(np.abs(out), np.abs(expected), atol=1e-10)


@pytest.mark.parametrize("builder", [build_qft_qpe, build_modified_lloyd])
def test_exhaustive_dyadic_phases_exact(builder):
    n = 4
    for m in range(16):
        dist = exact_distribution(builder(n, PhasePoint(m / 16)))
        assert abs(dist[m] - 1.0) < 1e-10, f"m={m}: {dist}"


def test_exhaustive_dyadic_phases_exact_semiclassical():
    for m in range(16):
        dist = enumerate_branches(build_semiclassical_iqft_qpe(4, PhasePoint(m / 16)))
        assert abs(dist[m] - 1.0) < 1e-10, f"m={m}: {dist}"


def test_semiclassical_equals_modified_for_arbitrary_phases():
    rng = np.random.default_rng(17)
    for n in range(2, 6):
        for phi_val in [float(rng.random()) for _ in range(3)] + [0.0, 1 / 3]:
            phi = PhasePoint(phi_val)
            reference = exact_distribution(build_modified_lloyd(n, phi))
            branched = enumerate_branches(build_semiclassical_iqft_qpe(n, phi))
            np.testing.assert_allclose(branched, reference, atol=1e-10)


def test_ancilla_circuit_register_matches_direct_preparation():
    # with the ancilla factored out (always |1>), the full circuit's register
    # state must equal the ancilla-free circuit's state, for any phase
    n = 3
    for phi_val in (0.3, 11 / 16, 0.925):
        phi = PhasePoint(phi_val)
        full_c = Circuit(n + 1, 0)
        for instr in build_qft_qpe(n, phi):
            if instr.kind != MEASURE:
                full_c.append(instr)
        reg_c = Circuit(n, 0)
        for instr in build_modified_lloyd(n, phi):
            if instr.kind != MEASURE:
                reg_c.append(instr)
        full = evolve_state(full_c).amplitudes
        reg = evolve_state(reg_c).amplitudes
        np.testing.assert_allclose(full[1 << n:], reg, atol=1e-10)
        np.testing.assert_allclose(full[: 1 << n], 0.0, atol=1e-10)


def test_builder_register_bounds():
    for builder in (build_qft_qpe, build_modified_lloyd, build_semiclassical_iqft_qpe):
        with pytest.raises(ConfigurationError):
            builder(0, PHI_11_16)
    with pytest.raises(ConfigurationError):
        build_qft_qpe(21, PHI_11_16)


# -- gate-count claims --------------------------------------------------------------


def test_gate_counts_at_four_bits():
    assert gate_counts(build_qft_qpe(4, PHI_11_16)).two_qubit == 21
    assert gate_counts(build_modified_lloyd(4, PHI_11_16)).two_qubit == 6
    semi = gate_counts(build_semiclassical_iqft_qpe(4, PHI_11_16))
    assert semi.two_qubit == 0
    assert semi.conditioned == 6


def test_gate_count_scaling():
    for n in range(2, 9):
        phi = PhasePoint.from_bits("1" * n)
        pairs = n * (n - 1) // 2
        assert gate_counts(build_qft_qpe(n, phi)).two_qubit == (1 << n) - 1 + pairs
        assert gate_counts(build_modified_lloyd(n, phi)).two_qubit == pairs
        semi = gate_counts(build_semiclassical_iqft_qpe(n, phi))
        assert semi.two_qubit == 0
        assert semi.conditioned == pairs
        assert semi.measurements == n


# -- sample-size bound -----------------------------------------------------------


def test_required_samples_frozen_values():
    assert required_samples(0.1, 0.05) == 185
    assert required_samples(0.05, 0.05) == 738


def test_required_samples_scales_inverse_square():
    # halving epsilon quadruples the count (up to ceiling slack)
    assert abs(required_samples(0.05, 0.05) - 4 * required_samples(0.1, 0.05)) <= 2


def test_required_samples_stays_positive_as_delta_approaches_one():
    assert required_samples(0.1, 0.999999) >= 1


def test_required_samples_validation():
    with pytest.raises(ConfigurationError):
        required_samples(0.0, 0.05)
    with pytest.raises(ConfigurationError):
        required_samples(0.1, 0.0)
    with pytest.raises(ConfigurationError):
        required_samples(0.1, 1.0)


# -- cross-method agreement ---------------------------------------------------------


def test_all_methods_agree_on_exact_phase():
    assert kitaev_estimate(4, PHI_11_16, 1024, seed=11).bit_string == "1011"
    assert iterative_estimate(4, PHI_11_16, 1024, seed=11).bit_string == "1011"
    for builder in (build_qft_qpe, build_modified_lloyd, build_semiclassical_iqft_qpe):
        counts = run_circuit(builder(4, PHI_11_16), 1024, seed=11)
        assert counts == {"1011": 1024}
