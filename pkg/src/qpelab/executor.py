"""Circuit execution: fast exact sampling when possible, trajectories when not.

A run takes the exact-distribution shortcut when the noise model is absent
(or has every channel at zero — the two must be indistinguishable) and no
measurement outcome can influence later instructions. Everything else runs
one full statevector trajectory per shot with per-shot seeded streams, so the
shots of a run are reproducible independently of each other.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from ._program import compile_program, has_mid_circuit_flow
from .circuit import COND_PHASE, CPHASE, H, MEASURE, PHASE, S, X, Circuit
from .errors import ConfigurationError, InvalidGateError
from .gates import H as H_MAT
from .gates import S as S_MAT
from .gates import X as X_MAT
from .noise import NoiseModel
from .rng import make_generator, shot_bit_generator
from .statevector import StateVector, zero_state

ShotHistogram = dict[str, int]

_MAX_CLBITS = 24


def evolve_state(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Apply the unitary part of a circuit instruction by instruction.

    Measurements and classically-conditioned gates are refused — this is the
    deterministic evolution used for exact distributions and algebra checks.
    """
    if state is None:
        state = zero_state(circuit.num_qubits)
    for instr in circuit.instructions:
        if instr.kind == H:
            state.apply_gate(H_MAT, instr.qubits[0])
        elif instr.kind == X:
            state.apply_gate(X_MAT, instr.qubits[0])
        elif instr.kind == S:
            state.apply_gate(S_MAT, instr.qubits[0])
        elif instr.kind == PHASE:
            state.apply_phase(instr.theta, instr.qubits[0])
        elif instr.kind == CPHASE:
            state.apply_controlled_phase(instr.theta, *instr.qubits)
        else:
            raise InvalidGateError(
                f"{instr.kind} is not unitary evolution; run it through run_circuit"
            )
    return state


def exact_distribution(circuit: Circuit) -> np.ndarray:
    """Noiseless probability distribution over classical words (length 2^num_clbits).

    Requires a circuit whose measurements all come last (no mid-circuit flow).
    """
    if has_mid_circuit_flow(circuit):
        raise ConfigurationError(
            "exact distribution needs all measurements at the end and no conditions"
        )
    if circuit.num_clbits > _MAX_CLBITS:
        raise ConfigurationError(f"too many classical bits ({circuit.num_clbits})")
    gates = Circuit(circuit.num_qubits, circuit.num_clbits)
    sources: dict[int, int] = {}
    for instr in circuit.instructions:
        if instr.kind == MEASURE:
            sources[instr.clbit] = instr.qubits[0]
        else:
            gates.append(instr)
    probs = evolve_state(gates).probabilities()
    if not sources:
        dist = np.zeros(1 << circuit.num_clbits)
        dist[0] = probs.sum()
        return dist
    indices = np.arange(probs.size)
    words = np.zeros(probs.size, dtype=np.int64)
    for clbit, qubit in sources.items():
        words |= ((indices >> qubit) & 1) << clbit
    return np.bincount(words, weights=probs, minlength=1 << circuit.num_clbits)


def _histogram(words: np.ndarray, num_clbits: int) -> ShotHistogram:
    width = max(num_clbits, 1)
    return {
        format(w, f"0{width}b"): int(c)
        for w, c in enumerate(words)
        if c
    }


def run_circuit(
    circuit: Circuit,
    shots: int,
    *,
    noise: NoiseModel | None = None,
    seed: int = 0,
    kernel=None,
) -> ShotHistogram:
    """Sample a circuit `shots` times; returns counts keyed by the classical
    register read MSB-first (classical bit 0 is the rightmost character)."""
    if shots < 1:
        raise ConfigurationError(f"shots must be >= 1, got {shots}")
    trivial = noise is None or noise.is_trivial
    if trivial and not has_mid_circuit_flow(circuit):
        dist = exact_distribution(circuit)
        rng = make_generator(seed)
        counts = _backend.sample_counts(dist, shots, rng.bit_generator)
        return _histogram(counts, circuit.num_clbits)

    model = noise if noise is not None else NoiseModel.noiseless()
    if trivial:
        # zero-probability channels must behave exactly like "no model"
        model = NoiseModel.noiseless()
    kern = kernel if kernel is not None else _backend.ACTIVE
    program = compile_program(circuit)
    scratch = np.empty(1 << circuit.num_qubits, dtype=np.complex128)
    tallies = np.zeros(1 << circuit.num_clbits, dtype=np.int64)
    for shot in range(shots):
        word = kern.run_trajectory(program, model, shot_bit_generator(seed, shot), scratch)
        tallies[word] += 1
    return _histogram(tallies, circuit.num_clbits)
