"""Reader for the OpenQASM 2.0 dialect written by `circuit.to_qasm`.

This is a round-trip reader, not a general QASM front end: one quantum and
one classical register named q/c, the fixed gate vocabulary h/x/s/u1/cu1/
measure, and the package's per-bit condition form `if(c[k]==v) u1(t) q[i];`.
Errors carry the 1-based line number of the offending text.
"""

from __future__ import annotations

import re

from .circuit import (
    COND_PHASE,
    CPHASE,
    H,
    MEASURE,
    PHASE,
    S,
    X,
    Circuit,
    Instruction,
)
from .errors import InvalidGateError, QasmParseError

_HEADER = "OPENQASM 2.0;"
_INCLUDE = 'include "qelib1.inc";'

_RE_QREG = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_RE_CREG = re.compile(r"^creg\s+c\[(\d+)\]\s*;$")
_RE_1Q = re.compile(r"^(h|x|s)\s+q\[(\d+)\]\s*;$")
_RE_U1 = re.compile(r"^u1\(([^()]+)\)\s+q\[(\d+)\]\s*;$")
_RE_CU1 = re.compile(r"^cu1\(([^()]+)\)\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$")
_RE_MEASURE = re.compile(r"^measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\]\s*;$")
_RE_IF = re.compile(
    r"^if\s*\(\s*c\[(\d+)\]\s*==\s*(\d+)\s*\)\s*u1\(([^()]+)\)\s+q\[(\d+)\]\s*;$"
)

_1Q_KINDS = {"h": H, "x": X, "s": S}


def _angle(text: str, lineno: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise QasmParseError(lineno, f"bad angle {text!r}") from None


def read_qasm(text: str) -> Circuit:
    """Parse exported QASM text back into an identical Circuit."""
    header_seen = False
    include_seen = False
    num_qubits: int | None = None
    num_clbits = 0
    circuit: Circuit | None = None
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != _HEADER:
                raise QasmParseError(lineno, f"expected {_HEADER!r} header")
            header_seen = True
            continue
        if not include_seen:
            if line != _INCLUDE:
                raise QasmParseError(lineno, f"expected {_INCLUDE!r}")
            include_seen = True
            continue

        if m := _RE_QREG.match(line):
            if num_qubits is not None:
                raise QasmParseError(lineno, "duplicate qreg declaration")
            if circuit is not None:
                raise QasmParseError(lineno, "qreg must precede instructions")
            num_qubits = int(m.group(1))
            continue
        if m := _RE_CREG.match(line):
            if circuit is not None:
                raise QasmParseError(lineno, "creg must precede instructions")
            num_clbits = int(m.group(1))
            continue

        if num_qubits is None:
            raise QasmParseError(lineno, "instruction before qreg declaration")
        if circuit is None:
            try:
                circuit = Circuit(num_qubits, num_clbits)
            except InvalidGateError as exc:
                raise QasmParseError(lineno, str(exc)) from exc

        try:
            if m := _RE_1Q.match(line):
                circuit.append(Instruction(_1Q_KINDS[m.group(1)], (int(m.group(2)),)))
            elif m := _RE_U1.match(line):
                circuit.append(
                    Instruction(PHASE, (int(m.group(2)),), theta=_angle(m.group(1), lineno))
                )
            elif m := _RE_CU1.match(line):
                circuit.append(
                    Instruction(
                        CPHASE,
                        (int(m.group(2)), int(m.group(3))),
                        theta=_angle(m.group(1), lineno),
                    )
                )
            elif m := _RE_MEASURE.match(line):
                circuit.append(
                    Instruction(MEASURE, (int(m.group(1)),), clbit=int(m.group(2)))
                )
            elif m := _RE_IF.match(line):
                circuit.append(
                    Instruction(
                        COND_PHASE,
                        (int(m.group(4)),),
                        theta=_angle(m.group(3), lineno),
                        clbit=int(m.group(1)),
                        required_value=int(m.group(2)),
                    )
                )
            else:
                raise QasmParseError(lineno, f"unrecognized statement {line!r}")
        except InvalidGateError as exc:
            raise QasmParseError(lineno, str(exc)) from exc

    if not header_seen:
        raise QasmParseError(1, f"expected {_HEADER!r} header")
    if num_qubits is None:
        raise QasmParseError(max(lineno, 1), "no qreg declaration found")
    if circuit is None:
        try:
            circuit = Circuit(num_qubits, num_clbits)
        except InvalidGateError as exc:
            raise QasmParseError(max(lineno, 1), str(exc)) from exc
    return circuit
