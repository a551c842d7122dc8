"""Property Checker - per-qubit QFT output correctness over the abstract outputs"""
import logging
import time
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional

from pydantic import BaseModel, Field

from errors import AnfOverflow, CounterexampleError
from tools.anf_tools import ANFPoly, anf_normalize
from tools.bitvector_tools import SymbolicBitVector, bits_text, eval_bits, zeros
from tools.expr_tools import FALSE, var
from tools.smt_tools import (
    SolverResult,
    SolverStatus,
    emit_smt2,
    invoke_solver,
    obligation_name,
    solver_available,
)
from checkers.abstract_runner import AbstractOutputs, run_concrete

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    VERIFIED = "Verified"
    VIOLATION = "Violation"
    TYPE_ERROR = "TypeError"
    SOLVER_UNAVAILABLE = "SolverUnavailable"
    SOLVER_FAILURE = "SolverFailure"
    UNKNOWN = "Unknown"


class Backend(str, Enum):
    ANF = "structural-anf"
    SMT = "smt"


class QubitVerdict(BaseModel):
    """Outcome for one qubit output; a Violation carries its witness."""
    qubit: int
    verdict: Verdict
    backend: Backend
    millis: float = 0.0
    counterexample: Optional[Dict[str, int]] = None
    expected: Optional[str] = None
    actual: Optional[str] = None
    defaulted: List[str] = Field(default_factory=list)
    detail: Optional[str] = None
    solver_wall_s: Optional[float] = None
    solver_mem_mb: Optional[float] = None

    @property
    def is_verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def assignment(self) -> Dict[int, int]:
        """Counterexample keyed by variable index."""
        if not self.counterexample:
            return {}
        return {int(name[1:]): value for name, value in self.counterexample.items()}


def target_vector(i: int, m: int) -> SymbolicBitVector:
    """
    Expected abstract output of qubit i: <.b_i b_(i+1) ... b_m 0 ... 0>.

    Raises:
        ValueError: i outside 1..m
    """
    if m < 1 or not 1 <= i <= m:
        raise ValueError(f"qubit {i} out of range 1..{m}")
    return SymbolicBitVector(tuple(
        var(i + p - 1) if p <= m - i + 1 else FALSE
        for p in range(1, m + 1)
    ))


def find_counterexample(diff: ANFPoly, m: int) -> Dict[int, int]:
    """
    Assignment of b1..bm under which a nonzero polynomial evaluates to 1.

    With a constant term the all-false assignment works. Otherwise a
    lowest-degree monomial is inclusion-minimal, so setting exactly its
    variables makes it the only monomial that fires.

    Raises:
        CounterexampleError: diff is the zero polynomial
    """
    if diff.is_zero:
        raise CounterexampleError("no counterexample exists for the zero polynomial")
    if diff.has_constant:
        chosen: set = set()
    else:
        chosen = set(diff.sorted_monomials()[0])
    return {v: 1 if v in chosen else 0 for v in range(1, m + 1)}


def _as_names(assignment: Mapping[int, int]) -> Dict[str, int]:
    return {f"b{v}": int(assignment[v]) for v in sorted(assignment)}


def _solver_usage(result: Optional[SolverResult]) -> Dict[str, Optional[float]]:
    if result is None:
        return {}
    return {"solver_wall_s": result.wall_s, "solver_mem_mb": result.peak_mem_mb}

def _violation(i: int, backend: Backend, assignment: Dict[int, int],
               actual_bits, expected_bits, started: float,
               defaulted=(), solver: Optional[SolverResult] = None) -> QubitVerdict:
    if tuple(actual_bits) == tuple(expected_bits):
        raise CounterexampleError(
            f"qubit {i}: assignment {_as_names(assignment)} does not separate "
            f"actual {bits_text(actual_bits)} from expected {bits_text(expected_bits)}"
        )
    verdict = QubitVerdict(
        qubit=i,
        verdict=Verdict.VIOLATION,
        backend=backend,
        millis=(time.perf_counter() - started) * 1000.0,
        counterexample=_as_names(assignment),
        expected=bits_text(expected_bits),
        actual=bits_text(actual_bits),
        defaulted=[f"b{v}" for v in defaulted],
        **_solver_usage(solver),
    )
    logger.info("qubit %d violates its target under %s: actual %s, expected %s",
                i, verdict.counterexample, verdict.actual, verdict.expected)
    return verdict


def check_qubit(outputs: AbstractOutputs, i: int,
                smt_fallback: Optional[Callable[[int], QubitVerdict]] = None,
                budget: Optional[int] = None) -> QubitVerdict:
    """
    Decide whether qubit i's abstract output equals its target.

    Bits are compared through their ANF; hash-consing makes identical
    bits the same node, which skips normalization for them.

    Args:
        outputs: Abstract outputs of a type-correct circuit
        i: Qubit index 1..m
        smt_fallback: Called with i when the ANF budget overflows
        budget: ANF term budget (defaults to Config.ANF_TERM_BUDGET)

    Returns:
        QubitVerdict from the structural-ANF backend, or the fallback's

    Raises:
        AnfOverflow: budget exceeded and no fallback given
    """
    started = time.perf_counter()
    m = outputs.m
    target = target_vector(i, m)
    actual = outputs[i]

    if actual is None:
        # the line never left Control, so its output is <.0...0>
        assignment = {v: 1 if v == i else 0 for v in range(1, m + 1)}
        return _violation(i, Backend.ANF, assignment, eval_bits(zeros(m), assignment),
                          eval_bits(target, assignment), started)

    try:
        for got, want in zip(actual.bits, target.bits):
            if got is want:
                continue
            diff = anf_normalize(got, budget) ^ anf_normalize(want, budget)
            if diff.is_zero:
                continue
            assignment = find_counterexample(diff, m)
            return _violation(i, Backend.ANF, assignment, eval_bits(actual, assignment),
                              eval_bits(target, assignment), started)
    except AnfOverflow:
        if smt_fallback is None:
            raise
        logger.warning("qubit %d exceeds the ANF term budget; falling back to SMT", i)
        return smt_fallback(i)

    return QubitVerdict(qubit=i, verdict=Verdict.VERIFIED, backend=Backend.ANF,
                        millis=(time.perf_counter() - started) * 1000.0)


def _concrete_bits(value: Optional[int], m: int) -> tuple:
    if value is None:
        return (0,) * m
    return tuple((value >> (m - p)) & 1 for p in range(1, m + 1))


def check_qubit_smt(outputs: AbstractOutputs, i: int, solver_command: Optional[str],
                    timeout_s: Optional[float], workdir: Path) -> QubitVerdict:
    """
    Decide qubit i through an external solver on its q<i>.smt2 obligation.

    A sat model is re-validated with the concrete interpreter before it is
    reported.
    """
    started = time.perf_counter()
    circuit = outputs.circuit
    m = circuit.m

    def elapsed() -> float:
        return (time.perf_counter() - started) * 1000.0

    if not solver_available(solver_command):
        return QubitVerdict(qubit=i, verdict=Verdict.SOLVER_UNAVAILABLE, backend=Backend.SMT,
                            millis=elapsed(),
                            detail=f"no solver executable for {solver_command!r}")

    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    obligation = workdir / obligation_name(i)
    obligation.write_text(emit_smt2(circuit, i))

    result = invoke_solver(solver_command, obligation, timeout_s, variables=m)
    if result.status is SolverStatus.UNSAT:
        return QubitVerdict(qubit=i, verdict=Verdict.VERIFIED, backend=Backend.SMT,
                            millis=elapsed(), **_solver_usage(result))
    if result.status is SolverStatus.SAT:
        assignment = dict(result.model.assignment)
        for v in range(1, m + 1):
            assignment.setdefault(v, 0)
        actual = _concrete_bits(run_concrete(circuit, assignment)[i], m)
        expected = eval_bits(target_vector(i, m), assignment)
        return _violation(i, Backend.SMT, assignment, actual, expected, started,
                          result.model.defaulted, result)
    verdict = Verdict.UNKNOWN if result.status is SolverStatus.UNKNOWN else Verdict.SOLVER_FAILURE
    return QubitVerdict(qubit=i, verdict=verdict, backend=Backend.SMT,
                        millis=elapsed(), detail=result.reason, **_solver_usage(result))
