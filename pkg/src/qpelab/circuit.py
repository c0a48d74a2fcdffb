"""Circuit intermediate representation.

A Circuit is an ordered list of Instructions over one quantum and one
classical register. The gate set is deliberately small — H, X, S, Phase,
ControlledPhase, Measure, ConditionalPhase — which is everything the
phase-estimation constructions in this package emit. Circuits are built
once and treated as immutable afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidGateError

# instruction kinds
H = "H"
X = "X"
S = "S"
PHASE = "PHASE"
CPHASE = "CPHASE"
MEASURE = "MEASURE"
COND_PHASE = "COND_PHASE"

_ALL_KINDS = frozenset({H, X, S, PHASE, CPHASE, MEASURE, COND_PHASE})
_PARAMETRIC = frozenset({PHASE, CPHASE, COND_PHASE})


@dataclass(frozen=True)
class Instruction:
    """One circuit operation.

    qubits   — quantum targets; (control, target) for CPHASE.
    theta    — rotation angle in radians for the parametric kinds, else None.
    clbit    — classical bit written by MEASURE or tested by COND_PHASE.
    required_value — classical value (0/1) that arms a COND_PHASE.
    """

    kind: str
    qubits: tuple[int, ...]
    theta: float | None = None
    clbit: int | None = None
    required_value: int | None = None

    def __post_init__(self):
        if self.kind not in _ALL_KINDS:
            raise InvalidGateError(f"unknown instruction kind {self.kind!r}")
        arity = 2 if self.kind == CPHASE else 1
        if len(self.qubits) != arity:
            raise InvalidGateError(
                f"{self.kind} takes {arity} quantum target(s), got {len(self.qubits)}"
            )
        if self.kind == CPHASE and self.qubits[0] == self.qubits[1]:
            raise InvalidGateError("controlled phase needs two distinct qubits")
        if self.kind in _PARAMETRIC:
            if self.theta is None or not math.isfinite(self.theta):
                raise InvalidGateError(f"{self.kind} needs a finite angle, got {self.theta!r}")
        elif self.theta is not None:
            raise InvalidGateError(f"{self.kind} takes no angle")
        needs_clbit = self.kind in (MEASURE, COND_PHASE)
        if needs_clbit and self.clbit is None:
            raise InvalidGateError(f"{self.kind} needs a classical bit")
        if not needs_clbit and self.clbit is not None:
            raise InvalidGateError(f"{self.kind} takes no classical bit")
        if self.kind == COND_PHASE:
            if self.required_value not in (0, 1):
                raise InvalidGateError(
                    f"conditional phase requires value 0 or 1, got {self.required_value!r}"
                )
        elif self.required_value is not None:
            raise InvalidGateError(f"{self.kind} takes no required_value")


@dataclass(frozen=True)
class GateCounts:
    one_qubit: int = 0
    two_qubit: int = 0
    measurements: int = 0
    conditioned: int = 0

    @property
    def total(self) -> int:
        return self.one_qubit + self.two_qubit + self.measurements + self.conditioned

    def __add__(self, other: "GateCounts") -> "GateCounts":
        return GateCounts(
            self.one_qubit + other.one_qubit,
            self.two_qubit + other.two_qubit,
            self.measurements + other.measurements,
            self.conditioned + other.conditioned,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "one_qubit": self.one_qubit,
            "two_qubit": self.two_qubit,
            "measurements": self.measurements,
            "conditioned": self.conditioned,
        }


@dataclass
class Circuit:
    num_qubits: int
    num_clbits: int = 0
    instructions: list[Instruction] = field(default_factory=list)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise InvalidGateError(f"need at least one qubit, got {self.num_qubits}")
        if self.num_clbits < 0:
            raise InvalidGateError(f"negative classical register size {self.num_clbits}")
        for instr in self.instructions:
            self._check_ranges(instr)

    def _check_ranges(self, instr: Instruction) -> None:
        for q in instr.qubits:
            if not 0 <= q < self.num_qubits:
                raise InvalidGateError(
                    f"qubit {q} out of range for {self.num_qubits}-qubit circuit"
                )
        if instr.clbit is not None and not 0 <= instr.clbit < self.num_clbits:
            raise InvalidGateError(
                f"classical bit {instr.clbit} out of range for {self.num_clbits} bits"
            )

    def append(self, instr: Instruction) -> "Circuit":
        self._check_ranges(instr)
        self.instructions.append(instr)
        return self

    # -- builder shorthand ----------------------------------------------

    def h(self, qubit: int) -> "Circuit":
        return self.append(Instruction(H, (qubit,)))

    def x(self, qubit: int) -> "Circuit":
        return self.append(Instruction(X, (qubit,)))

    def s(self, qubit: int) -> "Circuit":
        return self.append(Instruction(S, (qubit,)))

    def phase(self, theta: float, qubit: int) -> "Circuit":
        return self.append(Instruction(PHASE, (qubit,), theta=theta))

    def cphase(self, theta: float, control: int, target: int) -> "Circuit":
        return self.append(Instruction(CPHASE, (control, target), theta=theta))

    def measure(self, qubit: int, clbit: int) -> "Circuit":
        return self.append(Instruction(MEASURE, (qubit,), clbit=clbit))

    def cond_phase(self, theta: float, qubit: int, clbit: int, value: int = 1) -> "Circuit":
        return self.append(
            Instruction(COND_PHASE, (qubit,), theta=theta, clbit=clbit, required_value=value)
        )

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)


def gate_counts(circuit: Circuit) -> GateCounts:
    """Tally instructions by kind. Every instruction lands in exactly one bucket."""
    one = two = meas = cond = 0
    for instr in circuit.instructions:
        if instr.kind == CPHASE:
            two += 1
        elif instr.kind == MEASURE:
            meas += 1
        elif instr.kind == COND_PHASE:
            cond += 1
        else:
            one += 1
    return GateCounts(one, two, meas, cond)


def depth(circuit: Circuit) -> int:
    """Longest dependency chain, where instructions conflict when they share a
    qubit or a classical bit."""
    q_front = [0] * circuit.num_qubits
    c_front = [0] * circuit.num_clbits
    longest = 0
    for instr in circuit.instructions:
        level = max(q_front[q] for q in instr.qubits)
        if instr.clbit is not None:
            level = max(level, c_front[instr.clbit])
        level += 1
        for q in instr.qubits:
            q_front[q] = level
        if instr.clbit is not None:
            c_front[instr.clbit] = level
        longest = max(longest, level)
    return longest


def to_qasm(circuit: Circuit) -> str:
    """Render OpenQASM 2.0 text.

    Angles are printed with repr(), which is exact under round-trip parsing.
    Conditions are written per classical bit — `if(c[k]==v) u1(t) q[i];` — a
    dialect choice: standard QASM 2 compares whole registers, which cannot
    express a single-bit test, and only this package's own reader consumes
    the output.
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    if circuit.num_clbits:
        lines.append(f"creg c[{circuit.num_clbits}];")
    for instr in circuit.instructions:
        q0 = instr.qubits[0]
        if instr.kind == H:
            lines.append(f"h q[{q0}];")
        elif instr.kind == X:
            lines.append(f"x q[{q0}];")
        elif instr.kind == S:
            lines.append(f"s q[{q0}];")
        elif instr.kind == PHASE:
            lines.append(f"u1({instr.theta!r}) q[{q0}];")
        elif instr.kind == CPHASE:
            lines.append(f"cu1({instr.theta!r}) q[{q0}],q[{instr.qubits[1]}];")
        elif instr.kind == MEASURE:
            lines.append(f"measure q[{q0}] -> c[{instr.clbit}];")
        else:  # COND_PHASE
            lines.append(
                f"if(c[{instr.clbit}]=={instr.required_value}) u1({instr.theta!r}) q[{q0}];"
            )
    return "\n".join(lines) + "\n"
