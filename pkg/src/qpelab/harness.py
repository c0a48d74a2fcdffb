"""Experiment configuration, reports, and method comparison.

A single JSON-serializable config drives one estimation run; reports carry
the histogram, the post-processed estimate, gate counts, and either the
success probability (phase exactly representable in n_bits) or the circular
error of the estimate (any other phase). Comparison sweeps rescale the whole
noise model from its two-qubit error rate: p1 = p2/10, p_readout = 1.5*p2 —
ratios chosen to pass through the default operating point — so a single grid
axis moves every channel together and p2 = 0 is exactly the noiseless run.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace

from .algorithms import (
    METHOD_NAMES,
    PhaseEstimate,
    PhasePoint,
    bits_to_turns,
    build_hadamard_test,
    build_iterative_stage,
    build_modified_lloyd,
    build_qft_qpe,
    build_semiclassical_iqft_qpe,
    iterative_estimate,
    kitaev_estimate,
)
from .circuit import GateCounts, gate_counts
from .errors import ConfigurationError
from .executor import run_circuit
from .noise import NoiseModel
from .qasm import read_qasm  # re-exported: the harness owns the round-trip reader
from .rng import derive_seed

__all__ = [
    "ExperimentConfig",
    "Report",
    "run_experiment",
    "compare_methods",
    "method_gate_counts",
    "rows_to_csv",
    "read_qasm",
]

_BUILDERS = {
    "qft": build_qft_qpe,
    "modified": build_modified_lloyd,
    "semiclassical": build_semiclassical_iqft_qpe,
}

CSV_COLUMNS = ("method", "p2", "mean_success", "two_qubit_gates")


@dataclass(frozen=True)
class ExperimentConfig:
    method: str
    n_bits: int
    phase_turns: float | None = None
    phase_bits: str | None = None
    shots: int = 1024
    noise: NoiseModel | None = None
    seed: int = 0
    sweep: tuple[float, ...] | None = None
    kitaev_postprocess: str = "sharpen"

    def __post_init__(self):
        if self.method not in METHOD_NAMES:
            raise ConfigurationError(
                f"method: must be one of {METHOD_NAMES}, got {self.method!r}"
            )
        if not isinstance(self.n_bits, int) or isinstance(self.n_bits, bool) or self.n_bits < 1:
            raise ConfigurationError(f"n_bits: need a positive integer, got {self.n_bits!r}")
        if (self.phase_turns is None) == (self.phase_bits is None):
            raise ConfigurationError(
                "phase_turns/phase_bits: exactly one of the two must be given"
            )
        if self.shots < 1:
            raise ConfigurationError(f"shots: must be >= 1, got {self.shots}")
        if self.kitaev_postprocess not in ("sharpen", "round"):
            raise ConfigurationError(
                f"kitaev_postprocess: must be 'sharpen' or 'round', "
                f"got {self.kitaev_postprocess!r}"
            )
        if self.sweep is not None:
            object.__setattr__(self, "sweep", tuple(float(p) for p in self.sweep))
            if any(not 0.0 <= p <= 1.0 for p in self.sweep):
                raise ConfigurationError(f"sweep: p2 values must lie in [0,1], got {self.sweep}")
        # fail fast on a malformed phase instead of at run time
        self.phase_point()

    def phase_point(self) -> PhasePoint:
        if self.phase_bits is not None:
            try:
                return PhasePoint.from_bits(self.phase_bits)
            except ConfigurationError as exc:
                raise ConfigurationError(f"phase_bits: {exc}") from None
        try:
            return PhasePoint(float(self.phase_turns))
        except (ConfigurationError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"phase_turns: {exc}") from None

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigurationError(f"config: expected a JSON object, got {type(data).__name__}")
        allowed = {
            "method", "n_bits", "phase_turns", "phase_bits", "shots",
            "noise", "seed", "sweep", "kitaev_postprocess",
        }
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigurationError(f"config: unknown field(s) {unknown}")
        for required in ("method", "n_bits"):
            if required not in data:
                raise ConfigurationError(f"{required}: field is required")
        noise = data.get("noise")
        if noise is not None:
            if not isinstance(noise, dict):
                raise ConfigurationError("noise: expected an object with p1/p2/p_readout")
            bad = sorted(set(noise) - {"p1", "p2", "p_readout"})
            if bad:
                raise ConfigurationError(f"noise: unknown field(s) {bad}")
            noise = NoiseModel(**noise)
        kwargs = {k: data[k] for k in data if k not in ("noise",)}
        kwargs["noise"] = noise
        if "sweep" in kwargs and kwargs["sweep"] is not None:
            kwargs["sweep"] = tuple(kwargs["sweep"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "n_bits": self.n_bits,
            "phase_turns": self.phase_turns,
            "phase_bits": self.phase_bits,
            "shots": self.shots,
            "noise": None if self.noise is None else {
                "p1": self.noise.p1,
                "p2": self.noise.p2,
                "p_readout": self.noise.p_readout,
            },
            "seed": self.seed,
            "sweep": None if self.sweep is None else list(self.sweep),
            "kitaev_postprocess": self.kitaev_postprocess,
        }


@dataclass(frozen=True)
class Report:
    config: ExperimentConfig
    histogram: dict[str, int]
    shots: int
    estimate: PhaseEstimate
    gate_counts: GateCounts
    success_probability: float | None
    circular_error: float | None
    mode_bitstring: str

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "histogram": {"counts": dict(self.histogram), "shots": self.shots},
            "estimate": {
                "phi_hat_turns": self.estimate.phi_hat_turns,
                "bits": list(self.estimate.bits),
                "rounds": [
                    {"k": r.k, "c_k": r.c_k, "s_k": r.s_k, "phi_k_hat": r.phi_k_hat}
                    for r in self.estimate.rounds
                ],
                "shots_used": self.estimate.shots_used,
                "vote_ties": list(self.estimate.vote_ties),
            },
            "gate_counts": self.gate_counts.as_dict(),
            "success_probability": self.success_probability,
            "circular_error": self.circular_error,
            "mode_bitstring": self.mode_bitstring,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def true_bit_string(phi: PhasePoint, n_bits: int) -> str | None:
    """The n-bit expansion of the phase, or None when it is not n-bit exact."""
    scaled = phi.value_turns * (1 << n_bits)
    if scaled != math.floor(scaled):
        return None
    return format(int(scaled), f"0{n_bits}b")


def method_gate_counts(method: str, n_bits: int, phi: PhasePoint) -> GateCounts:
    """Gate totals for a method at a given precision — a single circuit for
    the Fourier-register methods, the sum over all constituent circuits for
    the multi-circuit estimators."""
    if method in _BUILDERS:
        return gate_counts(_BUILDERS[method](n_bits, phi))
    total = GateCounts()
    if method == "kitaev":
        for k in range(1, n_bits + 1):
            total = total + gate_counts(build_hadamard_test(k, False, phi))
            total = total + gate_counts(build_hadamard_test(k, True, phi))
        return total
    if method == "iterative":
        for j in range(1, n_bits + 1):
            total = total + gate_counts(build_iterative_stage(j, phi, 0.0))
        return total
    raise ConfigurationError(f"method: must be one of {METHOD_NAMES}, got {method!r}")


def _mode(histogram: dict[str, int]) -> str:
    # highest count wins; equal counts resolve to the smallest bitstring
    return min(histogram, key=lambda key: (-histogram[key], key))


def run_experiment(config: ExperimentConfig, kernel=None) -> Report:
    """Run one configured estimation end to end. Deterministic per (config, seed)."""
    phi = config.phase_point()
    n = config.n_bits
    if config.method in _BUILDERS:
        circuit = _BUILDERS[config.method](n, phi)
        histogram = run_circuit(
            circuit, config.shots, noise=config.noise, seed=config.seed, kernel=kernel
        )
        counts = gate_counts(circuit)
        mode = _mode(histogram)
        bits = tuple(int(ch) for ch in mode)
        estimate = PhaseEstimate(
            phi_hat_turns=bits_to_turns(bits), bits=bits, shots_used=config.shots
        )
    else:
        if config.method == "kitaev":
            estimate = kitaev_estimate(
                n, phi, config.shots, config.noise, config.seed,
                kernel=kernel, postprocess=config.kitaev_postprocess,
            )
        else:
            estimate = iterative_estimate(
                n, phi, config.shots, config.noise, config.seed, kernel=kernel
            )
        # bit-deciding methods have no per-shot register readout; their
        # histogram is the decided bitstring carrying the full shot budget
        histogram = {estimate.bit_string: config.shots}
        counts = method_gate_counts(config.method, n, phi)
        mode = estimate.bit_string

    truth = true_bit_string(phi, n)
    if truth is not None:
        success = histogram.get(truth, 0) / config.shots
        error = None
    else:
        success = None
        d = (estimate.phi_hat_turns - phi.value_turns) % 1.0
        error = min(d, 1.0 - d)
    return Report(
        config=config,
        histogram=histogram,
        shots=config.shots,
        estimate=estimate,
        gate_counts=counts,
        success_probability=success,
        circular_error=error,
        mode_bitstring=mode,
    )


def compare_methods(
    base_config: ExperimentConfig,
    methods: list[str],
    p2_grid: list[float],
    runs_per_cell: int,
    kernel=None,
) -> list[dict]:
    """Success-vs-noise table. Each cell averages `runs_per_cell` independent
    seeded runs of one method at one noise level; rows come back in
    (method, p2) order with the method's two-qubit gate count attached."""
    if not p2_grid:
        raise ConfigurationError("p2_grid: must be non-empty")
    if runs_per_cell < 1:
        raise ConfigurationError(f"runs_per_cell: must be >= 1, got {runs_per_cell}")
    if not methods:
        raise ConfigurationError("methods: must be non-empty")
    phi = base_config.phase_point()
    if true_bit_string(phi, base_config.n_bits) is None:
        raise ConfigurationError(
            "phase_turns: comparison needs a phase exactly representable in n_bits"
        )
    rows = []
    for mi, method in enumerate(methods):
        counts = method_gate_counts(method, base_config.n_bits, phi)
        for pi, p2 in enumerate(p2_grid):
            if not 0.0 <= p2 <= 1.0 or 1.5 * p2 > 1.0:
                raise ConfigurationError(f"p2_grid: {p2} scales outside [0,1]")
            noise = NoiseModel(p1=p2 / 10.0, p2=p2, p_readout=1.5 * p2)
            total = 0.0
            for r in range(runs_per_cell):
                cfg = replace(
                    base_config,
                    method=method,
                    noise=noise,
                    sweep=None,
                    seed=derive_seed(base_config.seed, mi, pi, r),
                )
                total += run_experiment(cfg, kernel=kernel).success_probability
            rows.append(
                {
                    "method": method,
                    "p2": p2,
                    "mean_success": total / runs_per_cell,
                    "two_qubit_gates": counts.two_qubit,
                }
            )
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({col: row[col] for col in CSV_COLUMNS})
    return out.getvalue()
