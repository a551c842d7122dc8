"""Bench Runner - verification sweeps over QFT sizes and error scenarios"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from config import Config
from errors import BudgetExceeded, InjectionError
from tools.circuit_tools import CircuitDescription, generate_qft, qft_gate_count
from tools.fault_tools import inject_error, scenario_error
from tools.smt_tools import maxrss_mb
from checkers.coordinator import CheckerConfig, VerificationReport, verify_circuit

try:
    import resource
except ImportError:  # not available on Windows
    resource = None

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class BenchSweep:
    """What to run: sizes x scenarios, each timed as the best of `repeats`."""
    sizes: Sequence[int] = field(default_factory=lambda: list(Config.DESK_SIZES))
    scenarios: Sequence[str] = field(default_factory=lambda: list(Config.BENCH_SCENARIOS))
    backend: str = "anf"
    repeats: int = field(default_factory=lambda: Config.BENCH_REPEATS)
    max_gates: int = field(default_factory=lambda: Config.BENCH_MAX_GATES)
    parallel: int = 1
    measure_memory: bool = True


class BenchRecord(BaseModel):
    qubits: int
    gates: int
    scenario: str
    verdict: str
    backend: str
    time_s: Optional[float] = None
    mem_mb: Optional[float] = None

    @property
    def applicable(self) -> bool:
        return self.verdict != NOT_APPLICABLE


class BenchResult(BaseModel):
    records: List[BenchRecord] = Field(default_factory=list)
    truncated: Optional[str] = None


def _decisive_millis(report: VerificationReport) -> float:
    """Time of the qubit job that decided the verdict (type checking for type errors)."""
    if not report.qubit_verdicts:
        return report.setup_millis
    failing = report.failing
    if failing is not None:
        return failing.millis
    return max(qv.millis for qv in report.qubit_verdicts)


def process_peak_mb() -> Optional[float]:
    """Peak resident set of this process from OS accounting."""
    if resource is None:
        return None
    return maxrss_mb(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)


def _peak_mb(report: VerificationReport) -> Optional[float]:
    """Largest solver child when a solver ran, otherwise this process's peak."""
    solver = [qv.solver_mem_mb for qv in report.qubit_verdicts if qv.solver_mem_mb is not None]
    if solver:
        return max(solver)
    return process_peak_mb()


def measure(circuit: CircuitDescription, scenario: str, cfg: CheckerConfig,
            repeats: int = 1, measure_memory: bool = True) -> BenchRecord:
    """
    Verify a circuit `repeats` times and keep the fastest run.

    Memory is the peak RSS reported by the OS: the solver process for
    SMT-decided runs, this process for structural ones. The process
    figure is a high-water mark, so it never decreases within a sweep.
    """
    best: Optional[float] = None
    report: Optional[VerificationReport] = None
    peak: Optional[float] = None
    for _ in range(max(1, repeats)):
        report = verify_circuit(circuit, cfg)
        elapsed = _decisive_millis(report)
        best = elapsed if best is None else min(best, elapsed)
        if measure_memory:
            run_peak = _peak_mb(report)
            if run_peak is not None:
                peak = run_peak if peak is None else max(peak, run_peak)

    failing = report.failing
    decider = failing or (report.qubit_verdicts[0] if report.qubit_verdicts else None)
    return BenchRecord(
        qubits=circuit.m,
        gates=circuit.gate_count,
        scenario=scenario,
        verdict=report.verdict.value,
        backend=decider.backend.value if decider is not None else "typecheck",
        time_s=best / 1000.0,
        mem_mb=peak,
    )


def check_budget(m: int, max_gates: int) -> int:
    """
    Gate count of generate_qft(m), checked against a budget.

    Raises:
        BudgetExceeded: the circuit would have more than max_gates gates
    """
    gates = qft_gate_count(m)
    if gates > max_gates:
        raise BudgetExceeded(f"m={m} needs {gates} gates, over the budget of {max_gates}")
    return gates


def _scenario_circuit(base: CircuitDescription, scenario: str) -> Optional[CircuitDescription]:
    """
    The scenario's mutant of base, or None when the width cannot host it.

    Raises:
        InjectionError: the scenario name is unknown
    """
    spec = scenario_error(base.m, scenario)
    if spec is None:
        return base
    try:
        return inject_error(base, spec)
    except InjectionError as e:
        logger.warning("scenario %s skipped at m=%d: %s", scenario, base.m, e)
        return None


def _not_applicable(base: CircuitDescription, scenario: str) -> BenchRecord:
    return BenchRecord(qubits=base.m, gates=base.gate_count, scenario=scenario,
                       verdict=NOT_APPLICABLE, backend=NOT_APPLICABLE)


def run_bench(sweep: BenchSweep) -> BenchResult:
    """
    Run every size and scenario of a sweep, smallest size first.

    A size whose gate count exceeds the sweep's budget stops the sweep;
    the records gathered so far are returned with a truncation note.
    Scenarios a width cannot host (e.g. R3 on a 2-qubit circuit) are
    recorded with verdict "n/a".

    Args:
        sweep: Sizes, scenarios and measurement settings

    Returns:
        BenchResult
    """
    cfg = CheckerConfig(backend=sweep.backend)
    records: List[BenchRecord] = []
    truncated = None

    for m in sorted(sweep.sizes):
        try:
            check_budget(m, sweep.max_gates)
        except BudgetExceeded as e:
            truncated = str(e)
            logger.warning("benchmark truncated: %s", e)
            break

        base = generate_qft(m)
        circuits = [(s, _scenario_circuit(base, s)) for s in sweep.scenarios]

        def run(item) -> BenchRecord:
            scenario, circuit = item
            if circuit is None:
                return _not_applicable(base, scenario)
            return measure(circuit, scenario, cfg, sweep.repeats, sweep.measure_memory)

        if sweep.parallel > 1:
            with ThreadPoolExecutor(max_workers=sweep.parallel) as pool:
                batch = list(pool.map(run, circuits))
        else:
            batch = [run(item) for item in circuits]

        for record in batch:
            logger.info("bench m=%d %s: %s in %ss", record.qubits, record.scenario,
                        record.verdict, record.time_s)
        records.extend(batch)

    return BenchResult(records=records, truncated=truncated)


def sample_positions(m: int, count: int = 8) -> List[int]:
    """Evenly spread qubit positions in 1..m-1 (the last qubit has no rotation)."""
    if m < 2:
        return []
    spread = np.linspace(1, m - 1, num=min(count, m - 1))
    return sorted({int(round(q)) for q in spread})


def position_sweep(m: int, kind: str = "gate", positions: Optional[Iterable[int]] = None,
                   repeats: Optional[int] = None, backend: str = "anf",
                   measure_memory: bool = True) -> List[BenchRecord]:
    """Move one injected error (`gate` or `control`) across qubit positions of generate_qft(m)."""
    if kind not in ("gate", "control"):
        raise ValueError(f"position kind must be 'gate' or 'control', got {kind!r}")
    cfg = CheckerConfig(backend=backend)
    repeats = Config.BENCH_REPEATS if repeats is None else repeats
    base = generate_qft(m)
    records = []
    for q in (sample_positions(m) if positions is None else positions):
        scenario = f"{kind}@{q}"
        circuit = _scenario_circuit(base, scenario)
        if circuit is None:
            records.append(_not_applicable(base, scenario))
            continue
        record = measure(circuit, scenario, cfg, repeats, measure_memory)
        logger.info("position m=%d %s: %s in %.6fs", m, scenario, record.verdict, record.time_s)
        records.append(record)
    return records


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in records], columns=Config.CSV_COLUMNS)


def write_csv(result: BenchResult, path: Union[str, Path]) -> None:
    """CSV in Config.CSV_COLUMNS order; a truncated sweep ends with a '#' note."""
    frame = records_frame(result.records)
    with open(path, "w", newline="") as handle:
        frame.to_csv(handle, index=False)
        if result.truncated:
            handle.write(f"# truncated: {result.truncated}\n")


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    # "n/a" is a verdict here, not a missing value
    return pd.read_csv(path, comment="#", keep_default_na=False, na_values=[""])


def write_plot_data(path: Union[str, Path], records: Sequence[BenchRecord],
                    positions: Sequence[BenchRecord] = ()) -> None:
    """
    gnuplot data: one indexed block per scenario (gates, time, memory),
    then an error-position block (position, time, memory). Records with
    verdict "n/a" have nothing to plot and are left out.
    """
    records = [r for r in records if r.applicable]
    positions = [r for r in positions if r.applicable]
    frame = records_frame(records)
    blocks: List[str] = []
    for scenario, group in frame.groupby("scenario", sort=False):
        rows = [f"# scenario {scenario}", "# gates time_s mem_mb"]
        for row in group.sort_values("gates").itertuples(index=False):
            rows.append(f"{row.gates} {row.time_s:.6f} {_mem_text(row.mem_mb)}")
        blocks.append("\n".join(rows))
    if positions:
        rows = [f"# error-position m={positions[0].qubits}", "# position time_s mem_mb"]
        for record in positions:
            q = record.scenario.partition("@")[2]
            rows.append(f"{q} {record.time_s:.6f} {_mem_text(record.mem_mb)}")
        blocks.append("\n".join(rows))
    Path(path).write_text("\n\n\n".join(blocks) + ("\n" if blocks else ""))


def _mem_text(value) -> str:
    return "NaN" if value is None or pd.isna(value) else f"{value:.3f}"


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation, ties averaged."""
    if len(xs) != len(ys):
        raise ValueError("sequences differ in length")
    left = pd.Series(list(xs), dtype=float).rank()
    right = pd.Series(list(ys), dtype=float).rank()
    return float(left.corr(right))
