"""Stochastic noise: depolarizing Pauli insertion after gates, bit flips at readout.

The model is deliberately simple — three knobs, no hardware calibration data:

* after every 1-qubit gate, with probability ``p1`` a uniformly random
  non-identity Pauli hits the target;
* after every 2-qubit gate, with probability ``p2`` a uniformly random
  non-identity 2-qubit Pauli product hits the pair;
* every recorded measurement bit flips with probability ``p_readout``.

Errors are realized per shot (trajectory sampling), so memory stays at
statevector size and shots are independent given their seeds.

Draw discipline (shared with the compiled kernel, which must consume the
random stream in the identical order): a gate-noise site draws one uniform
only when its probability is positive, and a second uniform only when the
error actually fires, to pick which Pauli.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .gates import X, Y, Z

DEFAULT_P1 = 0.002
DEFAULT_P2 = 0.02
DEFAULT_P_READOUT = 0.03

# single-qubit error choices, drawn uniformly when a 1-qubit site fires
_PAULIS = (None, X, Y, Z)  # index 0 = identity, never drawn on its own


@dataclass(frozen=True)
class NoiseModel:
    p1: float = DEFAULT_P1
    p2: float = DEFAULT_P2
    p_readout: float = DEFAULT_P_READOUT

    def __post_init__(self):
        for name in ("p1", "p2", "p_readout"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"{name} must be a probability in [0,1], got {v}")

    @property
    def is_trivial(self) -> bool:
        """True when every channel is off; such a model must behave exactly
        like running with no model at all."""
        return self.p1 == 0.0 and self.p2 == 0.0 and self.p_readout == 0.0

    @classmethod
    def noiseless(cls) -> "NoiseModel":
        return cls(0.0, 0.0, 0.0)


def pauli_pair(index: int) -> tuple[int, int]:
    """Decode a 2-qubit Pauli product index in 1..15 to per-qubit Pauli ids
    (0=I, 1=X, 2=Y, 3=Z); index 0 would be identity-on-both and is excluded."""
    return index >> 2, index & 3


def apply_gate_noise(state, targets, model: NoiseModel, rng: np.random.Generator) -> None:
    """Maybe corrupt `state` in place after a gate on `targets` (1 or 2 qubits)."""
    p = model.p1 if len(targets) == 1 else model.p2
    if p <= 0.0:
        return
    if rng.random() >= p:
        return
    if len(targets) == 1:
        choice = 1 + int(rng.random() * 3.0)
        state.apply_gate(_PAULIS[choice], targets[0])
    else:
        first, second = pauli_pair(1 + int(rng.random() * 15.0))
        if first:
            state.apply_gate(_PAULIS[first], targets[0])
        if second:
            state.apply_gate(_PAULIS[second], targets[1])


def flip_readout_bit(bit: int, model: NoiseModel, rng: np.random.Generator) -> int:
    """One recorded bit through the readout channel (one draw iff p_readout > 0)."""
    if model.p_readout > 0.0 and rng.random() < model.p_readout:
        return 1 - bit
    return bit


def apply_readout_noise(bits: str, model: NoiseModel, rng: np.random.Generator) -> str:
    """Flip each character of a bitstring independently with p_readout."""
    if model.p_readout <= 0.0:
        return bits
    flipped = []
    for ch in bits:
        if ch not in "01":
            raise ConfigurationError(f"bitstring may contain only 0/1, got {ch!r}")
        flipped.append(str(flip_readout_bit(int(ch), model, rng)))
    return "".join(flipped)
