"""qpelab — a statevector laboratory for quantum phase estimation under noise.

The package simulates small qubit registers exactly, runs four
phase-estimation strategies over a configurable stochastic noise model, and
reports how estimation accuracy tracks the two-qubit gate count of each
circuit construction. A compiled trajectory kernel accelerates noisy
per-shot simulation when available; a pure-numpy fallback keeps every
feature working without it.
"""

from ._backend import available_backends, backend_name
from .algorithms import (
    METHOD_NAMES,
    KitaevRound,
    PhaseEstimate,
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
    required_samples,
    round_first_level,
    sharpen_bits,
)
from .circuit import Circuit, GateCounts, Instruction, depth, gate_counts, to_qasm
from .errors import (
    ConfigurationError,
    EstimationError,
    InvalidGateError,
    NumericalError,
    QasmParseError,
    QpeLabError,
)
from .executor import evolve_state, exact_distribution, run_circuit
from .harness import (
    ExperimentConfig,
    Report,
    compare_methods,
    method_gate_counts,
    rows_to_csv,
    run_experiment,
    true_bit_string,
)
from .noise import NoiseModel, apply_gate_noise, apply_readout_noise
from .qasm import read_qasm
from .statevector import MAX_QUBITS, StateVector, basis_state, zero_state

__version__ = "0.1.0"

__all__ = [
    "available_backends",
    "backend_name",
    "METHOD_NAMES",
    "KitaevRound",
    "PhaseEstimate",
    "PhasePoint",
    "bits_to_turns",
    "build_hadamard_test",
    "build_inverse_qft",
    "build_iterative_stage",
    "build_modified_lloyd",
    "build_qft_qpe",
    "build_semiclassical_iqft_qpe",
    "iterative_estimate",
    "kitaev_estimate",
    "required_samples",
    "round_first_level",
    "sharpen_bits",
    "Circuit",
    "GateCounts",
    "Instruction",
    "depth",
    "gate_counts",
    "to_qasm",
    "ConfigurationError",
    "EstimationError",
    "InvalidGateError",
    "NumericalError",
    "QasmParseError",
    "QpeLabError",
    "evolve_state",
    "exact_distribution",
    "run_circuit",
    "ExperimentConfig",
    "Report",
    "compare_methods",
    "method_gate_counts",
    "rows_to_csv",
    "run_experiment",
    "true_bit_string",
    "NoiseModel",
    "apply_gate_noise",
    "apply_readout_noise",
    "read_qasm",
    "MAX_QUBITS",
    "StateVector",
    "basis_state",
    "zero_state",
    "__version__",
]
