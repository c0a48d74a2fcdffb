#!/usr/bin/env python3
"""Timing comparison of the trajectory kernels (compiled extension vs numpy).

Runs the per-shot noisy simulation — the hot loop of every noisy experiment —
through each available backend on representative circuits and prints a
throughput table. Usage:

    python3 benchmarks/bench_backends.py [--shots 4000]
"""

from __future__ import annotations

import argparse
import time

from qpelab import NoiseModel, PhasePoint, available_backends
from qpelab import build_modified_lloyd, build_qft_qpe, build_semiclassical_iqft_qpe
from qpelab._backend import get_kernel
from qpelab._program import compile_program
from qpelab.rng import shot_bit_generator

import numpy as np


def time_backend(kernel, program, model, shots: int, seed: int = 12345) -> float:
    scratch = np.empty(1 << program.num_qubits, dtype=np.complex128)
    start = time.perf_counter()
    for shot in range(shots):
        kernel.run_trajectory(program, model, shot_bit_generator(seed, shot), scratch)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=4000)
    args = parser.parse_args()

    phi = PhasePoint.from_bits("1011")
    model = NoiseModel()  # default error rates
    cases = [
        ("qft n=4", build_qft_qpe(4, phi)),
        ("modified n=4", build_modified_lloyd(4, phi)),
        ("semiclassical n=4 (mid-circuit)", build_semiclassical_iqft_qpe(4, phi)),
    ]
    cases = [
        (f"{label} ({c.num_qubits} qubits, {len(c)} instructions)", c)
        for label, c in cases
    ]
    backends = available_backends()
    print(f"shots per case: {args.shots}\n")
    header = f"{'circuit':44s}" + "".join(f"{b:>14s}" for b in backends) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, circuit in cases:
        program = compile_program(circuit)
        times = {}
        for name in backends:
            times[name] = time_backend(get_kernel(name), program, model, args.shots)
        row = f"{label:44s}"
        for name in backends:
            per_shot = times[name] / args.shots * 1e6
            row += f"{per_shot:>11.1f} us"
        if "compiled" in times and "python" in times:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
