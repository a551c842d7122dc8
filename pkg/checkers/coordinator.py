"""Coordinator - runs the type checker, the abstraction and the per-qubit checks"""
import logging
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, Field

from config import Config
from errors import AnfOverflow
from tools.circuit_tools import CircuitDescription
from tools.wire_tools import CircuitTypeError, typecheck
from checkers.abstract_runner import AbstractOutputs, run_abstract
from checkers.property_checker import (
    Backend,
    QubitVerdict,
    Verdict,
    check_qubit,
    check_qubit_smt,
)

logger = logging.getLogger(__name__)

BACKENDS = ("auto", "anf", "smt")

EXIT_CODES: Dict[Verdict, int] = {
    Verdict.VERIFIED: 0,
    Verdict.VIOLATION: 1,
    Verdict.TYPE_ERROR: 2,
    Verdict.SOLVER_UNAVAILABLE: 4,
    Verdict.SOLVER_FAILURE: 4,
    Verdict.UNKNOWN: 4,
}


@dataclass(frozen=True)
class CheckerConfig:
    """Per-run checker settings; defaults come from Config."""
    backend: str = "auto"
    exhaustive: bool = False
    workers: int = field(default_factory=lambda: Config.CHECK_WORKERS)
    solver_command: Optional[str] = field(default_factory=lambda: Config.SOLVER_COMMAND)
    solver_timeout_s: Optional[float] = field(default_factory=lambda: Config.SOLVER_TIMEOUT_S)
    anf_budget: int = field(default_factory=lambda: Config.ANF_TERM_BUDGET)
    smt_dir: Optional[Path] = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}; expected one of {BACKENDS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


class VerificationReport(BaseModel):
    """Whole-circuit result, qubit verdicts ordered by qubit index."""
    qubits: int
    gate_count: int
    verdict: Verdict
    mode: str
    type_error: Optional[dict] = None
    qubit_verdicts: List[QubitVerdict] = Field(default_factory=list)
    setup_millis: float = 0.0
    critical_path_millis: float = 0.0
    total_millis: float = 0.0

    @property
    def failing(self) -> Optional[QubitVerdict]:
        """Lowest-indexed qubit verdict that is not Verified."""
        for qv in self.qubit_verdicts:
            if not qv.is_verified:
                return qv
        return None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def _qubit_job(outputs: AbstractOutputs, cfg: CheckerConfig,
               workdir: Path) -> Callable[[int], QubitVerdict]:
    def smt(i: int) -> QubitVerdict:
        return check_qubit_smt(outputs, i, cfg.solver_command, cfg.solver_timeout_s, workdir)

    def job(i: int) -> QubitVerdict:
        if cfg.backend == "smt":
            return smt(i)
        if cfg.backend == "auto":
            return check_qubit(outputs, i, smt_fallback=smt, budget=cfg.anf_budget)
        try:
            return check_qubit(outputs, i, budget=cfg.anf_budget)
        except AnfOverflow as e:
            logger.warning("qubit %d: %s", i, e)
            return QubitVerdict(qubit=i, verdict=Verdict.UNKNOWN, backend=Backend.ANF,
                                detail=str(e))

    return job


def _run_sequential(job, m: int, exhaustive: bool) -> List[QubitVerdict]:
    verdicts = []
    for i in range(1, m + 1):
        verdict = job(i)
        verdicts.append(verdict)
        if not exhaustive and not verdict.is_verified:
            break
    return verdicts


def _run_parallel(job, m: int, exhaustive: bool, workers: int) -> List[QubitVerdict]:
    results: Dict[int, QubitVerdict] = {}
    first_failure = m + 1
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(job, i): i for i in range(1, m + 1)}
        for future in as_completed(futures):
            if future.cancelled():
                continue
            i = futures[future]
            verdict = future.result()
            results[i] = verdict
            if not exhaustive and not verdict.is_verified and i < first_failure:
                first_failure = i
                for pending, j in futures.items():
                    if j > i:
                        pending.cancel()
    limit = m if exhaustive else min(first_failure, m)
    return [results[i] for i in range(1, limit + 1)]


def verify_circuit(circuit: CircuitDescription,
                   cfg: Optional[CheckerConfig] = None) -> VerificationReport:
    """
    Type check, abstract and check every qubit output of a circuit.

    In short-circuit mode (the default) checking stops at the lowest
    failing qubit; exhaustive mode checks all of them. The report is
    assembled by qubit index whatever order workers finish in.

    Args:
        circuit: Circuit to verify
        cfg: Checker settings

    Returns:
        VerificationReport
    """
    cfg = cfg or CheckerConfig()
    mode = "exhaustive" if cfg.exhaustive else "short-circuit"
    started = time.perf_counter()

    try:
        typing = typecheck(circuit)
    except CircuitTypeError as e:
        setup = (time.perf_counter() - started) * 1000.0
        return VerificationReport(
            qubits=circuit.m, gate_count=circuit.gate_count, verdict=Verdict.TYPE_ERROR,
            mode=mode, type_error=e.to_dict(), setup_millis=setup,
            critical_path_millis=setup, total_millis=setup,
        )
    setup = (time.perf_counter() - started) * 1000.0

    outputs = run_abstract(circuit, typing)
    with tempfile.TemporaryDirectory(prefix="qftv-") as scratch:
        workdir = Path(cfg.smt_dir) if cfg.smt_dir is not None else Path(scratch)
        job = _qubit_job(outputs, cfg, workdir)
        if cfg.workers > 1:
            verdicts = _run_parallel(job, circuit.m, cfg.exhaustive, cfg.workers)
        else:
            verdicts = _run_sequential(job, circuit.m, cfg.exhaustive)

    failing = next((qv for qv in verdicts if not qv.is_verified), None)
    if failing is None:
        overall = Verdict.VERIFIED
        critical = setup + max((qv.millis for qv in verdicts), default=0.0)
    else:
        overall = failing.verdict
        critical = setup + failing.millis

    report = VerificationReport(
        qubits=circuit.m, gate_count=circuit.gate_count, verdict=overall, mode=mode,
        qubit_verdicts=verdicts, setup_millis=setup, critical_path_millis=critical,
        total_millis=(time.perf_counter() - started) * 1000.0,
    )
    logger.info("verified m=%d gates=%d: %s", circuit.m, circuit.gate_count, overall.value)
    return report
