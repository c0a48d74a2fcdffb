"""`qpe` command line: run one experiment, compare methods over a noise grid,
or export a builder circuit as QASM text.

Exit codes: 0 success, 2 configuration problem, 3 QASM parse problem.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import PhasePoint
from .circuit import to_qasm
from .errors import ConfigurationError, QasmParseError, QpeLabError
from .harness import (
    ExperimentConfig,
    _BUILDERS,
    compare_methods,
    rows_to_csv,
    run_experiment,
)


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"config: cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config: {path} is not valid JSON: {exc}") from None


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _merge_noise_flags(data: dict, args: argparse.Namespace) -> None:
    # any noise flag turns the model on; fields not mentioned anywhere take
    # the package defaults, so `--p2 0.05` means "default noise, but p2=0.05"
    flags = {"p1": args.p1, "p2": args.p2, "p_readout": args.p_readout}
    if all(v is None for v in flags.values()):
        return
    noise = dict(data.get("noise") or {})
    for key, v in flags.items():
        if v is not None:
            noise[key] = v
    data["noise"] = noise


def _cmd_run(args: argparse.Namespace) -> int:
    data = _load_json(args.config) if args.config else {}
    if not isinstance(data, dict):
        raise ConfigurationError("config: expected a JSON object at top level")
    for key in ("method", "n_bits", "shots", "seed", "kitaev_postprocess"):
        flag = getattr(args, key)
        if flag is not None:
            data[key] = flag
    if args.phase_bits is not None:
        data["phase_bits"] = args.phase_bits
        data["phase_turns"] = None
    elif args.phase is not None:
        data["phase_turns"] = args.phase
        data["phase_bits"] = None
    _merge_noise_flags(data, args)
    report = run_experiment(ExperimentConfig.from_dict(data))
    _write_or_print(report.to_json(), args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    base = ExperimentConfig.from_dict(_load_json(args.config))
    try:
        grid = [float(tok) for tok in args.p2_grid.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigurationError(f"p2_grid: cannot parse {args.p2_grid!r}") from None
    methods = [tok.strip() for tok in args.methods.split(",") if tok.strip()]
    rows = compare_methods(base, methods, grid, args.runs)
    _write_or_print(rows_to_csv(rows), args.out)
    return 0


def _cmd_export_qasm(args: argparse.Namespace) -> int:
    builder = _BUILDERS.get(args.method)
    if builder is None:
        raise ConfigurationError(
            f"method: export needs a single-circuit method {tuple(_BUILDERS)}, "
            f"got {args.method!r}"
        )
    circuit = builder(args.n_bits, PhasePoint.from_bits(args.phase_bits))
    _write_or_print(to_qasm(circuit), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpe",
        description="Phase-estimation experiments on a noisy statevector simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one configured experiment, emit a JSON report")
    run_p.add_argument("--config", help="JSON config file; flags below override its fields")
    run_p.add_argument("--method", choices=("kitaev", "iterative", "qft", "modified", "semiclassical"))
    run_p.add_argument("--n-bits", dest="n_bits", type=int)
    phase = run_p.add_mutually_exclusive_group()
    phase.add_argument("--phase-bits", dest="phase_bits", help='binary digits, e.g. "1011"')
    phase.add_argument("--phase", type=float, help="phase in turns, [0,1)")
    run_p.add_argument("--shots", type=int)
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--p1", type=float, help="1-qubit gate error probability")
    run_p.add_argument("--p2", type=float, help="2-qubit gate error probability")
    run_p.add_argument("--p-readout", dest="p_readout", type=float, help="readout flip probability")
    run_p.add_argument("--kitaev-postprocess", dest="kitaev_postprocess",
                       choices=("sharpen", "round"))
    run_p.add_argument("--out", help="write the JSON report here instead of stdout")
    run_p.set_defaults(func=_cmd_run)

    cmp_p = sub.add_parser("compare", help="sweep methods over a p2 grid, emit CSV")
    cmp_p.add_argument("--config", required=True, help="base JSON config")
    cmp_p.add_argument("--p2-grid", dest="p2_grid", required=True,
                       help="comma-separated two-qubit error rates, e.g. 0,0.01,0.02")
    cmp_p.add_argument("--runs", type=int, default=20, help="seeded runs per cell")
    cmp_p.add_argument("--methods", default="qft,modified",
                       help="comma-separated method names (default: qft,modified)")
    cmp_p.add_argument("--out", required=True, help="output CSV path")
    cmp_p.set_defaults(func=_cmd_compare)

    exp_p = sub.add_parser("export-qasm", help="write a builder circuit as OpenQASM 2.0")
    exp_p.add_argument("--method", required=True)
    exp_p.add_argument("--n-bits", dest="n_bits", type=int, required=True)
    exp_p.add_argument("--phase-bits", dest="phase_bits", required=True)
    exp_p.add_argument("--out", required=True, help="output QASM path")
    exp_p.set_defaults(func=_cmd_export_qasm)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QasmParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except QpeLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
