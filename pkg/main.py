"""Main Application - qftv command-line interface"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from config import Config
from errors import QftvError
from tools.circuit_io_tools import read_circuit, write_circuit
from tools.circuit_tools import generate_qft, qft_gate_count
from tools.fault_tools import inject_errors, parse_error_spec, split_rotation
from tools.smt_tools import emit_smt2
from tools.wire_tools import CircuitTypeError
from checkers.bench_runner import (
    BenchSweep,
    position_sweep,
    run_bench,
    write_csv,
    write_plot_data,
)
from checkers.coordinator import BACKENDS, CheckerConfig, VerificationReport, verify_circuit
from checkers.oracle_checker import cross_check
from checkers.property_checker import Verdict

logger = logging.getLogger(__name__)

EXIT_USAGE = 3


class CliParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _name_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def cmd_generate(args) -> int:
    circuit = generate_qft(args.qubits)
    write_circuit(args.output, circuit)
    print(f"✓ QFT circuit on {circuit.m} qubits, {circuit.gate_count} gates -> {args.output}")
    return 0


def cmd_inject(args) -> int:
    circuit = read_circuit(args.input)
    specs = [parse_error_spec(text) for text in args.error]
    circuit = inject_errors(circuit, specs)
    for text in args.split:
        target, _, ordinal = text.partition(":")
        try:
            circuit = split_rotation(circuit, int(target), int(ordinal))
        except ValueError:
            raise QftvError(f"--split expects TARGET:ORDINAL, got {text!r}")
    write_circuit(args.output, circuit)
    applied = [s.to_text() for s in specs] + [f"split:{t}" for t in args.split]
    print(f"✓ Applied {', '.join(applied) or 'nothing'} -> {args.output}")
    return 0


def _print_report(report: VerificationReport) -> None:
    header = f"{report.qubits} qubits, {report.gate_count} gates"
    if report.verdict is Verdict.VERIFIED:
        print(f"✓ Verified: {header}")
        print(f"  critical path {report.critical_path_millis:.2f} ms, "
              f"total {report.total_millis:.2f} ms ({report.mode})")
        return
    if report.verdict is Verdict.TYPE_ERROR:
        error = report.type_error
        print(f"❌ TypeError: {error['kind']} at gate {error['gate_ordinal']} "
              f"({error['gate']}), qubit line {error['line']}")
        return
    for qv in report.qubit_verdicts:
        if qv.is_verified:
            continue
        print(f"❌ {qv.verdict.value} on qubit {qv.qubit} ({qv.backend.value}): {header}")
        if qv.counterexample:
            ones = [name for name, value in qv.counterexample.items() if value]
            print(f"   counterexample: {' '.join(ones) or 'all inputs 0'} set, others 0")
            print(f"   expected <.{qv.expected}>  actual <.{qv.actual}>")
        if qv.defaulted:
            print(f"   defaulted by solver: {', '.join(qv.defaulted)}")
        if qv.detail:
            print(f"   {qv.detail}")


def cmd_verify(args) -> int:
    circuit = read_circuit(args.input)
    cfg = CheckerConfig(
        backend=args.backend,
        exhaustive=args.exhaustive,
        workers=args.workers,
        smt_dir=Path(args.smt_dir) if args.smt_dir else None,
    )
    report = verify_circuit(circuit, cfg)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        _print_report(report)
    return report.exit_code


def cmd_oracle_check(args) -> int:
    circuit = read_circuit(args.input)
    report = cross_check(circuit.m, circuit, cap=args.max_qubits, workers=args.workers)
    if args.json:
        print(json.dumps(report.model_dump(), indent=2))
        return 0 if report.passed else 1
    mark = "✓" if report.passed else "❌"
    print(f"{mark} Oracle: {report.inputs_checked} basis inputs "
          f"({'exhaustive' if report.exhaustive else 'sampled'}), "
          f"max deviation {report.max_deviation:.2e}")
    print(f"  abstraction vs simulation: {'ok' if report.abstraction_ok else 'FAIL'}")
    print(f"  simulation vs bit-reversed DFT: {'ok' if report.dft_ok else 'FAIL'}")
    for failure in report.failures[:10]:
        print(f"  input {failure.input}: qubits {failure.failing_qubits or '-'}, "
              f"deviation {max(failure.abstraction_deviation, failure.dft_deviation):.2e}")
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    sizes = args.sizes
    max_gates = Config.BENCH_MAX_GATES
    if args.huge:
        sizes = (sizes or list(Config.DESK_SIZES)) + list(Config.HUGE_SIZES)
        max_gates = qft_gate_count(max(Config.HUGE_SIZES))
    sweep = BenchSweep(
        sizes=sizes if sizes is not None else list(Config.DESK_SIZES),
        scenarios=args.scenarios or list(Config.BENCH_SCENARIOS),
        backend=args.backend,
        repeats=args.repeats,
        max_gates=max_gates,
        parallel=args.parallel,
        measure_memory=not args.no_memory,
    )
    print("=" * 60)
    print(f"📊 Benchmark: sizes {list(sweep.sizes)}, scenarios {list(sweep.scenarios)}")
    print("=" * 60)
    result = run_bench(sweep)
    positions = []
    if args.positions:
        positions = position_sweep(args.positions, kind=args.position_kind, repeats=args.repeats,
                                   backend=args.backend, measure_memory=not args.no_memory)
        result.records.extend(positions)

    for record in result.records:
        mem = f"{record.mem_mb:.2f} MB" if record.mem_mb is not None else "n/a"
        time_text = f"{record.time_s:.4f} s" if record.time_s is not None else "n/a"
        print(f"  m={record.qubits:<6} {record.scenario:<12} {record.verdict:<10} "
              f"{time_text}  {mem}")
    if result.truncated:
        print(f"❌ Truncated: {result.truncated}")

    if args.csv:
        write_csv(result, args.csv)
        print(f"✓ CSV -> {args.csv}")
    if args.plot_data:
        sized = [r for r in result.records if "@" not in r.scenario]
        write_plot_data(args.plot_data, sized, positions)
        print(f"✓ Plot data -> {args.plot_data}")
    return 0


def cmd_emit_smt(args) -> int:
    circuit = read_circuit(args.input)
    text = emit_smt2(circuit, args.qubit)
    Path(args.output).write_text(text)
    print(f"✓ Obligation for qubit {args.qubit} -> {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog=Config.APP_NAME,
                       description="Verify QFT circuits by rotational abstraction")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--version", action="version", version=f"%(prog)s {Config.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the QFT circuit on M qubits")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("inject", help="apply error mutations to a circuit")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--error", action="append", default=[],
                   help="e.g. control:1:1:3, gate-order:1:1:3, missing-h:2")
    p.add_argument("--split", action="append", default=[],
                   help="TARGET:ORDINAL, replace an R_n by two R_(n+1)")
    p.set_defaults(handler=cmd_inject)

    p = sub.add_parser("verify", help="check every qubit output of a circuit")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--backend", choices=BACKENDS, default="auto")
    p.add_argument("--exhaustive", action="store_true", help="check all qubits")
    p.add_argument("--workers", type=int, default=Config.CHECK_WORKERS)
    p.add_argument("--smt-dir", help="keep q<i>.smt2 obligations here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle-check", help="cross-check against statevector simulation")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--max-qubits", type=int, default=Config.SIMULATION_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_oracle_check)

    p = sub.add_parser("bench", help="benchmark sweep over sizes and scenarios")
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--scenarios", type=_name_list)
    p.add_argument("--backend", choices=BACKENDS, default="anf")
    p.add_argument("--repeats", type=int, default=Config.BENCH_REPEATS)
    p.add_argument("--csv")
    p.add_argument("--plot-data")
    p.add_argument("--positions", type=int, metavar="M",
                   help="also sweep an error across qubits of QFT(M)")
    p.add_argument("--position-kind", choices=("gate", "control"), default="gate",
                   help="error moved by --positions")
    p.add_argument("--huge", action="store_true", help=f"add sizes {Config.HUGE_SIZES}")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--no-memory", action="store_true", help="do not record peak memory")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("emit-smt", help="write the SMT-LIB2 obligation of one qubit")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--qubit", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_emit_smt)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else Config.LOG_LEVEL,
                        format=Config.LOG_FORMAT)
    try:
        return args.handler(args)
    except CircuitTypeError as e:
        print(f"❌ TypeError: {e}", file=sys.stderr)
        return 2
    except (QftvError, ValueError, OSError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
