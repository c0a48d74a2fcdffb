"""Flat array encoding of a circuit for the trajectory kernels.

Both the compiled kernel and the pure-Python one walk the same five parallel
arrays, so a circuit is compiled once per execution and the two backends see
byte-identical programs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import COND_PHASE, CPHASE, H, MEASURE, PHASE, S, X, Circuit

OP_H = 0
OP_X = 1
OP_S = 2
OP_PHASE = 3
OP_CPHASE = 4
OP_MEASURE = 5
OP_COND_PHASE = 6

_OPCODE = {H: OP_H, X: OP_X, S: OP_S, PHASE: OP_PHASE,
           CPHASE: OP_CPHASE, MEASURE: OP_MEASURE, COND_PHASE: OP_COND_PHASE}


@dataclass(frozen=True)
class CompiledProgram:
    num_qubits: int
    num_clbits: int
    kind: np.ndarray   # int32, opcode per instruction
    qubit: np.ndarray  # int32, first quantum target
    other: np.ndarray  # int32, CPHASE target / MEASURE+COND_PHASE clbit / else -1
    value: np.ndarray  # int32, COND_PHASE required value / else -1
    theta: np.ndarray  # float64, angle for parametric kinds / else 0.0

    def __len__(self) -> int:
        return len(self.kind)


def compile_program(circuit: Circuit) -> CompiledProgram:
    n = len(circuit.instructions)
    kind = np.empty(n, dtype=np.int32)
    qubit = np.empty(n, dtype=np.int32)
    other = np.full(n, -1, dtype=np.int32)
    value = np.full(n, -1, dtype=np.int32)
    theta = np.zeros(n, dtype=np.float64)
    for i, instr in enumerate(circuit.instructions):
        kind[i] = _OPCODE[instr.kind]
        qubit[i] = instr.qubits[0]
        if instr.kind == CPHASE:
            other[i] = instr.qubits[1]
        elif instr.clbit is not None:
            other[i] = instr.clbit
        if instr.required_value is not None:
            value[i] = instr.required_value
        if instr.theta is not None:
            theta[i] = instr.theta
    return CompiledProgram(circuit.num_qubits, circuit.num_clbits,
                           kind, qubit, other, value, theta)


def has_mid_circuit_flow(circuit: Circuit) -> bool:
    """True when measurement outcomes can influence later instructions —
    i.e. any conditional gate, or any instruction after the first MEASURE."""
    seen_measure = False
    for instr in circuit.instructions:
        if instr.kind == COND_PHASE:
            return True
        if instr.kind == MEASURE:
            seen_measure = True
        elif seen_measure:
            return True
    return False
