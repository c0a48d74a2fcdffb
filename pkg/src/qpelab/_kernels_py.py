"""Reference trajectory kernel in pure numpy.

One call simulates one shot: evolve from |0...0>, inject gate noise, measure
with collapse, flip recorded bits through the readout channel, honour
classical conditions. The compiled kernel in ``_kernels.pyx`` implements the
same walk with the same random-draw order; the two must agree on every
classical outcome given the same bit generator seed.
"""

from __future__ import annotations

import numpy as np

from ._program import (
    OP_COND_PHASE,
    OP_CPHASE,
    OP_H,
    OP_MEASURE,
    OP_PHASE,
    OP_S,
    OP_X,
    CompiledProgram,
)
from .gates import H as H_MAT
from .gates import S as S_MAT
from .gates import X as X_MAT
from .noise import NoiseModel, apply_gate_noise, flip_readout_bit
from .statevector import StateVector

BACKEND_NAME = "python"


def run_trajectory(
    program: CompiledProgram,
    model: NoiseModel,
    bit_generator: np.random.BitGenerator,
    scratch: np.ndarray | None = None,
) -> int:
    """Run one noisy shot; returns the classical register as a little-endian word."""
    rng = np.random.Generator(bit_generator)
    dim = 1 << program.num_qubits
    if scratch is None:
        scratch = np.empty(dim, dtype=np.complex128)
    scratch[:] = 0.0
    scratch[0] = 1.0
    state = StateVector(program.num_qubits, scratch)

    kinds = program.kind
    qubits = program.qubit
    others = program.other
    values = program.value
    thetas = program.theta
    word = 0
    for i in range(len(kinds)):
        k = kinds[i]
        q = int(qubits[i])
        if k == OP_H:
            state.apply_gate(H_MAT, q)
            apply_gate_noise(state, (q,), model, rng)
        elif k == OP_X:
            state.apply_gate(X_MAT, q)
            apply_gate_noise(state, (q,), model, rng)
        elif k == OP_S:
            state.apply_gate(S_MAT, q)
            apply_gate_noise(state, (q,), model, rng)
        elif k == OP_PHASE:
            state.apply_phase(float(thetas[i]), q)
            apply_gate_noise(state, (q,), model, rng)
        elif k == OP_CPHASE:
            t = int(others[i])
            state.apply_controlled_phase(float(thetas[i]), q, t)
            apply_gate_noise(state, (q, t), model, rng)
        elif k == OP_MEASURE:
            outcome = state.measure(q, rng)
            recorded = flip_readout_bit(outcome, model, rng)
            clbit = int(others[i])
            word = (word & ~(1 << clbit)) | (recorded << clbit)
        else:  # OP_COND_PHASE; fires only on a classical match, else no draws
            if ((word >> int(others[i])) & 1) == int(values[i]):
                state.apply_phase(float(thetas[i]), q)
                apply_gate_noise(state, (q,), model, rng)
    return word
