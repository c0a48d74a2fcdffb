"""Exact complex-amplitude simulation of small qubit registers.

Basis ordering is little-endian: qubit 0 is the least-significant bit of the
basis-state index, so applying X to qubit 0 of |00> yields basis index 1.
Registers are capped at 24 qubits (~256 MiB of amplitudes), far above the
5-qubit circuits this package builds but still desk-scale.
"""

from __future__ import annotations

from math import cos, sin

import numpy as np

from . import _backend
from .errors import ConfigurationError, NumericalError

MAX_QUBITS = 24
NORM_TOL = 1e-10

# below this, both measurement outcomes are impossible and the state is junk
_DEGENERATE_PROB = 1e-14


class StateVector:
    """2^n complex amplitudes over an n-qubit register. Gates mutate in place."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ConfigurationError(
                f"qubit count must be in [1, {MAX_QUBITS}], got {num_qubits}"
            )
        if amplitudes.shape != (1 << num_qubits,):
            raise ConfigurationError(
                f"expected {1 << num_qubits} amplitudes, got {amplitudes.shape}"
            )
        self.num_qubits = num_qubits
        self.amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)

    def copy(self) -> StateVector:
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.amplitudes.real**2 + self.amplitudes.imag**2)))

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise IndexError(f"qubit {qubit} out of range for {self.num_qubits}-qubit register")

    # -- gate application ---------------------------------------------------

    def apply_gate(self, matrix: np.ndarray, qubit: int) -> None:
        """Apply a 2x2 unitary to one qubit."""
        self._check_qubit(qubit)
        a = self.amplitudes.reshape(-1, 2, 1 << qubit)
        a0, a1 = a[:, 0, :], a[:, 1, :]
        new0 = matrix[0, 0] * a0 + matrix[0, 1] * a1
        new1 = matrix[1, 0] * a0 + matrix[1, 1] * a1
        a[:, 0, :] = new0
        a[:, 1, :] = new1

    def apply_phase(self, theta: float, qubit: int) -> None:
        """Multiply amplitudes with the qubit set by e^{i theta}."""
        self._check_qubit(qubit)
        a = self.amplitudes.reshape(-1, 2, 1 << qubit)
        a[:, 1, :] *= complex(cos(theta), sin(theta))

    def apply_controlled_phase(self, theta: float, control: int, target: int) -> None:
        """Multiply amplitudes with both control and target set by e^{i theta}."""
        self._check_qubit(control)
        self._check_qubit(target)
        if control == target:
            raise IndexError(f"control and target coincide (qubit {control})")
        n = self.num_qubits
        view = self.amplitudes.reshape([2] * n)
        idx: list = [slice(None)] * n
        idx[n - 1 - control] = 1
        idx[n - 1 - target] = 1
        view[tuple(idx)] *= complex(cos(theta), sin(theta))

    # -- readout ------------------------------------------------------------

    def probabilities(self) -> np.ndarray:
        """|amplitude|^2 for every basis state."""
        return self.amplitudes.real**2 + self.amplitudes.imag**2

    def probability_of_one(self, qubit: int) -> float:
        """Marginal probability that measuring `qubit` yields 1."""
        self._check_qubit(qubit)
        p = self.probabilities().reshape(-1, 2, 1 << qubit)
        return float(p[:, 1, :].sum())

    def measure(self, qubit: int, rng: np.random.Generator) -> int:
        """Projectively measure one qubit; collapses and renormalizes in place."""
        p_one = self.probability_of_one(qubit)
        p_zero = float(self.probabilities().sum()) - p_one
        if p_one < _DEGENERATE_PROB and p_zero < _DEGENERATE_PROB:
            raise NumericalError(f"state norm vanished at measurement of qubit {qubit}")
        outcome = 1 if rng.random() < p_one else 0
        a = self.amplitudes.reshape(-1, 2, 1 << qubit)
        a[:, 1 - outcome, :] = 0.0
        self.amplitudes /= np.sqrt(p_one if outcome else p_zero)
        return outcome

    def sample(self, shots: int, rng: np.random.Generator) -> dict[str, int]:
        """Draw `shots` independent full-register samples; the state is untouched.

        Keys are bitstrings with qubit n-1 leftmost (most significant).
        """
        if shots < 1:
            raise ConfigurationError(f"shots must be >= 1, got {shots}")
        counts = _backend.sample_counts(self.probabilities(), shots, rng.bit_generator)
        width = self.num_qubits
        return {format(i, f"0{width}b"): int(c) for i, c in enumerate(counts) if c}


def zero_state(num_qubits: int) -> StateVector:
    """|0...0> on `num_qubits` qubits."""
    return basis_state(num_qubits, 0)


def basis_state(num_qubits: int, index: int) -> StateVector:
    """The computational basis state with the given little-endian index."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ConfigurationError(
            f"qubit count must be in [1, {MAX_QUBITS}], got {num_qubits}"
        )
    if not 0 <= index < (1 << num_qubits):
        raise ConfigurationError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)
