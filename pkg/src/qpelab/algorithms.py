"""Phase-estimation circuits and estimators.

The unitary under study is the single-qubit diagonal diag(1, e^{2πi·φ}) with
eigenstate |1>, so a controlled power of it is a single controlled phase.
Phases are handled in turns (1 turn = 2π radians) and live in [0, 1).

Four estimation routes are provided:

* two-circuit interference tests per bit position, combined through a
  quadrant-correct arctangent and a back-substitution sharpening pass
  (`kitaev_estimate`);
* one measured bit per stage with a classical feedback rotation
  (`iterative_estimate`);
* the textbook ancilla + inverse-Fourier register circuit, with the
  controlled power written as literal gate repetitions (`build_qft_qpe`);
* the ancilla-free rewrite where each register qubit is prepared directly
  with its known kicked-back phase (`build_modified_lloyd`), plus the
  fully measurement-conditioned variant with zero two-qubit gates
  (`build_semiclassical_iqft_qpe`).

Register convention: register qubit j carries weight 2^j of the encoded
integer, the inverse Fourier pass is wired top-qubit-first (no swap gates),
and qubit m is recorded into classical bit n-1-m. Read MSB-first, the
classical register is then exactly the phase's binary digits.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .circuit import Circuit
from .errors import ConfigurationError, EstimationError
from .executor import run_circuit
from .noise import NoiseModel
from .rng import derive_seed

TWO_PI = 2.0 * math.pi

METHOD_NAMES = ("kitaev", "iterative", "qft", "modified", "semiclassical")


# ---------------------------------------------------------------------------
# domain types


def bits_to_turns(bits: Sequence[int]) -> float:
    """Binary digits (MSB first, first digit weighs 1/2) to an exact float."""
    n = len(bits)
    m = 0
    for b in bits:
        m = (m << 1) | b
    return m / (1 << n)


def parse_bit_string(text: str) -> tuple[int, ...]:
    bits = []
    for ch in text:
        if ch not in "01":
            raise ConfigurationError(f"phase bits may contain only 0/1, got {text!r}")
        bits.append(int(ch))
    if not bits:
        raise ConfigurationError("phase bit string is empty")
    return tuple(bits)


@dataclass(frozen=True)
class PhasePoint:
    """A phase in turns, optionally with its exact binary expansion."""

    value_turns: float
    bits: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 0.0 <= self.value_turns < 1.0:
            raise ConfigurationError(
                f"phase must lie in [0, 1) turns, got {self.value_turns}"
            )
        if self.bits is not None:
            object.__setattr__(self, "bits", tuple(self.bits))
            if any(b not in (0, 1) for b in self.bits):
                raise ConfigurationError(f"binary digits must be 0/1, got {self.bits}")
            if bits_to_turns(self.bits) != self.value_turns:
                raise ConfigurationError(
                    f"bits {self.bits} encode {bits_to_turns(self.bits)}, "
                    f"not {self.value_turns}"
                )

    @classmethod
    def from_bits(cls, bits: Sequence[int] | str) -> "PhasePoint":
        if isinstance(bits, str):
            bits = parse_bit_string(bits)
        bits = tuple(bits)
        if any(b not in (0, 1) for b in bits):
            raise ConfigurationError(f"binary digits must be 0/1, got {bits}")
        return cls(bits_to_turns(bits), bits)

    def scaled_turns(self, power: int) -> float:
        """(value * 2^power) mod 1 — the phase seen at doubling level `power`."""
        return (self.value_turns * (1 << power)) % 1.0


@dataclass(frozen=True)
class KitaevRound:
    """Cosine/sine statistics for one doubling level k."""

    k: int
    c_k: float
    s_k: float
    phi_k_hat: float

    @classmethod
    def from_estimates(cls, k: int, c_k: float, s_k: float) -> "KitaevRound":
        if c_k == 0.0 and s_k == 0.0:
            raise EstimationError(
                f"degenerate cosine/sine statistics at level k={k}: no angle recoverable"
            )
        return cls(k, c_k, s_k, (math.atan2(s_k, c_k) / TWO_PI) % 1.0)


@dataclass(frozen=True)
class PhaseEstimate:
    phi_hat_turns: float
    bits: tuple[int, ...]
    rounds: tuple[KitaevRound, ...] = ()
    shots_used: int = 0
    vote_ties: tuple[int, ...] = ()  # bit positions decided by a 50/50 tie-break

    @property
    def bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)


# ---------------------------------------------------------------------------
# circuit builders


def build_hadamard_test(k: int, use_s_gate: bool, phi: PhasePoint) -> Circuit:
    """Interference test at doubling level k: qubit 0 is the probe, qubit 1 the
    eigenstate. Measured P(0) is (1+cos(2π·φ_k))/2, or (1−sin(2π·φ_k))/2 with
    the extra quarter turn on the probe (use_s_gate)."""
    if k < 1:
        raise ConfigurationError(f"doubling level must be >= 1, got {k}")
    if k > 30:
        raise ConfigurationError(f"doubling level {k} too large (2^(k-1) overflows the angle)")
    circuit = Circuit(2, 1)
    circuit.x(1)
    circuit.h(0)
    if use_s_gate:
        circuit.s(0)
    circuit.cphase(TWO_PI * phi.scaled_turns(k - 1), 0, 1)
    circuit.h(0)
    circuit.measure(0, 0)
    return circuit


def build_inverse_qft(n: int) -> Circuit:
    """Inverse Fourier pass on n register qubits, top qubit first, no swaps.

    Qubit m is preceded by controlled rotations of angle −2π/2^(j−m+1) from
    every not-yet-extracted qubit j > m, then gets its Hadamard. After the
    pass, qubit m holds bit n−1−m of the encoded integer.
    """
    if n < 1:
        raise ConfigurationError(f"register needs at least one qubit, got {n}")
    circuit = Circuit(n, 0)
    for m in range(n - 1, -1, -1):
        for j in range(n - 1, m, -1):
            circuit.cphase(-TWO_PI / (1 << (j - m + 1)), j, m)
        circuit.h(m)
    return circuit


def _append_register_measurements(circuit: Circuit, n: int) -> None:
    # qubit m ends up holding bit n-1-m; record it there so the classical
    # word equals the encoded integer
    for m in range(n - 1, -1, -1):
        circuit.measure(m, n - 1 - m)


def build_qft_qpe(n: int, phi: PhasePoint) -> Circuit:
    """Ancilla-based estimation circuit with literal controlled-power repetitions.

    Register qubit j drives 2^j identical controlled phases onto the ancilla
    (qubit n) — deliberately not folded into one gate, because the point of
    this construction is its two-qubit gate count of 2^n − 1 before the
    inverse Fourier pass even starts.
    """
    if n < 1:
        raise ConfigurationError(f"register needs at least one qubit, got {n}")
    if n > 20:
        raise ConfigurationError(f"register of {n} bits would need 2^{n} gates; capped at 20")
    circuit = Circuit(n + 1, n)
    circuit.x(n)
    for j in range(n):
        circuit.h(j)
    theta = TWO_PI * phi.value_turns
    for j in range(n):
        for _ in range(1 << j):
            circuit.cphase(theta, j, n)
    for instr in build_inverse_qft(n).instructions:
        circuit.append(instr)
    _append_register_measurements(circuit, n)
    return circuit


def build_modified_lloyd(n: int, phi: PhasePoint) -> Circuit:
    """Ancilla-free variant: each register qubit is prepared directly in the
    state the controlled stage would have kicked it into — H then a plain
    phase of 2π·φ·2^j — so only the inverse-Fourier rotations remain
    two-qubit."""
    if n < 1:
        raise ConfigurationError(f"register needs at least one qubit, got {n}")
    circuit = Circuit(n, n)
    for j in range(n):
        circuit.h(j)
        circuit.phase(TWO_PI * phi.scaled_turns(j), j)
    for instr in build_inverse_qft(n).instructions:
        circuit.append(instr)
    _append_register_measurements(circuit, n)
    return circuit


def build_semiclassical_iqft_qpe(n: int, phi: PhasePoint) -> Circuit:
    """Measurement-conditioned variant: same preparation as the ancilla-free
    circuit, but each qubit is measured as soon as it is extracted and every
    controlled rotation becomes a plain rotation conditioned on the recorded
    bit of its former control. Two-qubit gate count: zero."""
    if n < 1:
        raise ConfigurationError(f"register needs at least one qubit, got {n}")
    circuit = Circuit(n, n)
    for j in range(n):
        circuit.h(j)
        circuit.phase(TWO_PI * phi.scaled_turns(j), j)
    for m in range(n - 1, -1, -1):
        for j in range(n - 1, m, -1):
            # former control qubit j was recorded into classical bit n-1-j
            circuit.cond_phase(-TWO_PI / (1 << (j - m + 1)), m, n - 1 - j, 1)
        circuit.h(m)
        circuit.measure(m, n - 1 - m)
    return circuit


# ---------------------------------------------------------------------------
# estimators


def _circular_distance(a: float, b: float) -> float:
    d = (a - b) % 1.0
    return min(d, 1.0 - d)


def sharpen_bits(rounds: Sequence[KitaevRound], n_bits: int) -> list[int]:
    """Back-substitute per-level angle estimates into binary digits.

    Working from the least significant level down to the first, the candidate
    digit (0 or 1) whose implied angle sits closer (circularly) to the level's
    estimate wins; exact ties go to 0. Tolerates per-level errors up to an
    eighth of a turn.
    """
    by_level = {r.k: r for r in rounds}
    if sorted(by_level) != list(range(1, n_bits + 1)):
        raise ConfigurationError(
            f"need one round per level 1..{n_bits}, got {sorted(by_level)}"
        )
    digits = [0] * (n_bits + 1)  # 1-indexed
    for k in range(n_bits, 0, -1):
        tail = 0.0
        for j in range(k + 1, n_bits + 1):
            tail += digits[j] / (1 << (j - k + 1))
        estimate = by_level[k].phi_k_hat
        d_zero = _circular_distance(estimate, tail)
        d_one = _circular_distance(estimate, (0.5 + tail) % 1.0)
        digits[k] = 1 if d_one < d_zero else 0
    return digits[1:]


def round_first_level(rounds: Sequence[KitaevRound], n_bits: int) -> list[int]:
    """Alternative to sharpen_bits: round the level-1 angle estimate to the
    nearest n-bit fraction and read its digits. Simpler, but its accuracy
    rests entirely on one round instead of pooling all of them."""
    by_level = {r.k: r for r in rounds}
    if 1 not in by_level:
        raise ConfigurationError("need the level-1 round to round the angle estimate")
    m = round(by_level[1].phi_k_hat * (1 << n_bits)) % (1 << n_bits)
    return [int(ch) for ch in format(m, f"0{n_bits}b")]


def kitaev_estimate(
    n_bits: int,
    phi: PhasePoint,
    shots_per_circuit: int,
    noise: NoiseModel | None = None,
    seed: int = 0,
    kernel=None,
    postprocess: str = "sharpen",
) -> PhaseEstimate:
    """Estimate n binary digits from 2n interference circuits.

    Level k runs both test circuits; empirical cos ≈ P(0)−P(1) from the plain
    test and sin ≈ P(1)−P(0) from the shifted one, combined with atan2.
    `postprocess` selects how angle estimates become digits: "sharpen"
    (back-substitution, default) or "round" (round the level-1 estimate).
    """
    if n_bits < 1:
        raise ConfigurationError(f"need at least one bit, got {n_bits}")
    if postprocess not in ("sharpen", "round"):
        raise ConfigurationError(
            f"postprocess must be 'sharpen' or 'round', got {postprocess!r}"
        )
    rounds = []
    for k in range(1, n_bits + 1):
        cos_counts = run_circuit(
            build_hadamard_test(k, False, phi),
            shots_per_circuit,
            noise=noise,
            seed=derive_seed(seed, k, 0),
            kernel=kernel,
        )
        sin_counts = run_circuit(
            build_hadamard_test(k, True, phi),
            shots_per_circuit,
            noise=noise,
            seed=derive_seed(seed, k, 1),
            kernel=kernel,
        )
        c_k = (cos_counts.get("0", 0) - cos_counts.get("1", 0)) / shots_per_circuit
        s_k = (sin_counts.get("1", 0) - sin_counts.get("0", 0)) / shots_per_circuit
        rounds.append(KitaevRound.from_estimates(k, c_k, s_k))
    if postprocess == "sharpen":
        bits = sharpen_bits(rounds, n_bits)
    else:
        bits = round_first_level(rounds, n_bits)
    return PhaseEstimate(
        phi_hat_turns=bits_to_turns(bits),
        bits=tuple(bits),
        rounds=tuple(rounds),
        shots_used=2 * n_bits * shots_per_circuit,
    )


def build_iterative_stage(level: int, phi: PhasePoint, feedback: float) -> Circuit:
    """One stage of the bit-at-a-time estimator: probe qubit 0, eigenstate
    qubit 1, the doubled phase for this level, and a plain corrective rotation
    (`feedback`, radians) accounting for the digits already decided."""
    if level < 1:
        raise ConfigurationError(f"stage level must be >= 1, got {level}")
    circuit = Circuit(2, 1)
    circuit.x(1)
    circuit.h(0)
    circuit.cphase(TWO_PI * phi.scaled_turns(level - 1), 0, 1)
    circuit.phase(feedback, 0)
    circuit.h(0)
    circuit.measure(0, 0)
    return circuit


def iterative_estimate(
    n_bits: int,
    phi: PhasePoint,
    shots_per_bit: int,
    noise: NoiseModel | None = None,
    seed: int = 0,
    kernel=None,
) -> PhaseEstimate:
    """Estimate digits one at a time, least significant first, feeding each
    decided digit back as a corrective rotation on the next stage's probe.

    Each stage's digit is the majority vote over its shots; an exact 50/50
    split is broken toward 0 and the position recorded in vote_ties.
    """
    if n_bits < 1:
        raise ConfigurationError(f"need at least one bit, got {n_bits}")
    digits = [0] * (n_bits + 1)  # 1-indexed
    ties = []
    for j in range(n_bits, 0, -1):
        feedback = 0.0
        for l in range(j + 1, n_bits + 1):
            feedback -= TWO_PI * digits[l] / (1 << (l - j + 1))
        circuit = build_iterative_stage(j, phi, feedback)
        counts = run_circuit(
            circuit, shots_per_bit, noise=noise, seed=derive_seed(seed, j), kernel=kernel
        )
        ones = counts.get("1", 0)
        zeros = shots_per_bit - ones
        if ones == zeros:
            ties.append(j)
        digits[j] = 1 if ones > zeros else 0
    bits = digits[1:]
    return PhaseEstimate(
        phi_hat_turns=bits_to_turns(bits),
        bits=tuple(bits),
        shots_used=n_bits * shots_per_bit,
        vote_ties=tuple(ties),
    )


def required_samples(epsilon: float, delta: float) -> int:
    """Shots needed so a Bernoulli mean is within epsilon of truth with
    probability at least 1−delta (two-sided concentration bound)."""
    if not epsilon > 0.0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise ConfigurationError(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(math.log(2.0 / delta) / (2.0 * epsilon * epsilon))
