"""SMT Tools - QF_BV per-qubit obligations and the external solver process"""
import logging
import os
import re
import shlex
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from errors import SolverFailure
from tools.circuit_tools import CircuitDescription, GateKind, cone_positions
from tools.wire_tools import typecheck

logger = logging.getLogger(__name__)

_DEFINE_BOOL = re.compile(
    r"\(\s*define-fun\s+\|?b(\d+)\|?\s+\(\s*\)\s+Bool\s+(true|false)\s*\)"
)
_EMPTY_MODEL = re.compile(r"^\s*\(\s*(model\s*)?\)\s*$")


def _bv(value: int, m: int) -> str:
    return f"(_ bv{value} {m})"


def _weight(position: int, m: int) -> int:
    """Integer weight of fractional position p in an m-bit vector."""
    return 1 << (m - position)


def emit_smt2(circuit: CircuitDescription, qubit: int) -> str:
    """
    SMT-LIB2 obligation stating that qubit's abstract output differs from
    its QFT target. unsat means the qubit is correct.

    Only the gates in the qubit's dataflow cone are emitted, one
    define-fun per gate, so the text is byte-stable for a given circuit.

    Args:
        circuit: Type-correct circuit
        qubit: Qubit index 1..m

    Returns:
        SMT-LIB2 text

    Raises:
        CircuitTypeError: the circuit does not typecheck
    """
    m = circuit.m
    if not 1 <= qubit <= m:
        raise ValueError(f"qubit {qubit} out of range 1..{m}")
    typecheck(circuit)

    sort = f"(_ BitVec {m})"
    zero = _bv(0, m)
    lines: List[str] = [
        f"; obligation: qubit {qubit} of {m}, {circuit.gate_count} gates",
        "(set-logic QF_BV)",
    ]
    lines.extend(f"(declare-fun b{v} () Bool)" for v in range(1, m + 1))

    positions = cone_positions(circuit, qubit)
    if positions is None:
        actual = zero
    else:
        previous = None
        for step, p in enumerate(positions):
            gate = circuit.gates[p]
            name = f"s{step}"
            if gate.kind is GateKind.H:
                term = f"(ite b{gate.data_source} {_bv(_weight(1, m), m)} {zero})"
            else:
                addend = f"(ite b{gate.control} {_bv(_weight(gate.n, m), m)} {zero})"
                term = f"(bvadd {previous} {addend})"
            lines.append(f"(define-fun {name} () {sort} {term})")
            previous = name
        actual = previous

    target_terms = [
        f"(ite b{qubit + p - 1} {_bv(_weight(p, m), m)} {zero})"
        for p in range(1, m - qubit + 2)
    ]
    target = target_terms[0] if len(target_terms) == 1 else f"(bvor {' '.join(target_terms)})"

    lines.append(f"(define-fun actual () {sort} {actual})")
    lines.append(f"(define-fun target () {sort} {target})")
    lines.append("(assert (not (= actual target)))")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"


def obligation_name(qubit: int) -> str:
    return f"q{qubit}.smt2"


class SolverStatus(str, Enum):
    UNSAT = "unsat"
    SAT = "sat"
    UNKNOWN = "unknown"
    FAILURE = "failure"


@dataclass(frozen=True)
class ParsedModel:
    """Assignment b_i -> 0/1; `defaulted` lists variables the solver omitted."""
    assignment: Dict[int, int]
    defaulted: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SolverResult:
    status: SolverStatus
    model: Optional[ParsedModel] = None
    reason: str = ""
    wall_s: float = 0.0
    peak_mem_mb: Optional[float] = None
    output: str = field(default="", repr=False)


def parse_model(text: str, variables: Optional[int] = None) -> ParsedModel:
    """
    Read Boolean b_i values from a get-model response.

    Tolerates whitespace, ordering and quoting differences across solvers.
    When `variables` is given, b1..b_variables missing from the model
    default to 0 and are reported in `defaulted`.

    Raises:
        SolverFailure: the text is not a model
    """
    assignment: Dict[int, int] = {}
    for index, value in _DEFINE_BOOL.findall(text):
        assignment[int(index)] = 1 if value == "true" else 0
    if not assignment and not _EMPTY_MODEL.match(text):
        raise SolverFailure(f"unparseable model: {text.strip()[:120]!r}")

    defaulted: List[int] = []
    if variables is not None:
        for v in range(1, variables + 1):
            if v not in assignment:
                assignment[v] = 0
                defaulted.append(v)
    if defaulted:
        logger.warning("solver model omitted %s; defaulted to false",
                       ", ".join(f"b{v}" for v in defaulted))
    return ParsedModel(assignment, tuple(defaulted))


def solver_argv(command: str, obligation: Union[str, Path]) -> List[str]:
    """Split the command template; {file} is replaced, else the path is appended."""
    argv = shlex.split(command)
    path = str(obligation)
    if any("{file}" in arg for arg in argv):
        return [arg.replace("{file}", path) for arg in argv]
    return argv + [path]


def solver_available(command: Optional[str]) -> bool:
    if not command or not command.strip():
        return False
    return shutil.which(shlex.split(command)[0]) is not None


def maxrss_mb(maxrss: int) -> float:
    """ru_maxrss in MB; macOS reports bytes, Linux KiB."""
    return maxrss / (1024.0 * 1024.0) if sys.platform == "darwin" else maxrss / 1024.0


def _run_measured(argv: List[str], timeout_s: Optional[float]) -> Tuple[int, str, str, Optional[float]]:
    """
    Run one solver process and reap it with wait4, so its peak RSS is
    that child's own rather than the high-water mark of all children.

    Raises:
        subprocess.TimeoutExpired: the process outlived timeout_s and was killed
        OSError: the process could not be spawned
    """
    with tempfile.TemporaryFile(mode="w+") as out, tempfile.TemporaryFile(mode="w+") as err:
        process = subprocess.Popen(argv, stdout=out, stderr=err)
        peak = None
        if hasattr(os, "wait4"):
            deadline = None if timeout_s is None else time.monotonic() + timeout_s
            delay = 0.001
            while True:
                pid, status, usage = os.wait4(process.pid, os.WNOHANG)
                if pid:
                    break
                if deadline is not None and time.monotonic() > deadline:
                    process.kill()
                    os.wait4(process.pid, 0)
                    process.returncode = -9
                    raise subprocess.TimeoutExpired(argv, timeout_s)
                time.sleep(delay)
                delay = min(delay * 2, 0.02)
            process.returncode = os.waitstatus_to_exitcode(status)
            peak = maxrss_mb(usage.ru_maxrss)
        else:
            try:
                process.wait(timeout=timeout_s)
            except subprocess.TimeoutExpired:
                process.kill()
                process.wait()
                raise
        out.seek(0)
        err.seek(0)
        return process.returncode, out.read(), err.read(), peak


def invoke_solver(command: str, obligation: Union[str, Path],
                  timeout_s: Optional[float] = None,
                  variables: Optional[int] = None) -> SolverResult:
    """
    Run the solver on one obligation file and classify its answer.

    Args:
        command: Solver command template (see solver_argv)
        obligation: Path of the .smt2 file
        timeout_s: Wall-clock limit; expiry yields Unknown("timeout")
        variables: Number of declared b_i, for model completion

    Returns:
        SolverResult
    """
    argv = solver_argv(command, obligation)
    if not Path(obligation).exists():
        return SolverResult(SolverStatus.FAILURE, reason=f"obligation not found: {obligation}")

    start = time.perf_counter()
    try:
        returncode, output, stderr, peak = _run_measured(argv, timeout_s)
    except subprocess.TimeoutExpired:
        logger.warning("solver timed out after %ss on %s", timeout_s, obligation)
        return SolverResult(SolverStatus.UNKNOWN, reason="timeout",
                            wall_s=time.perf_counter() - start)
    except OSError as e:
        logger.warning("cannot spawn solver %r: %s", argv[0], e)
        return SolverResult(SolverStatus.FAILURE, reason=f"spawn error: {e}")
    wall = time.perf_counter() - start

    lines = [line.strip() for line in output.splitlines() if line.strip()]
    head = lines[0] if lines else ""
    if head == "unsat":
        return SolverResult(SolverStatus.UNSAT, wall_s=wall, peak_mem_mb=peak, output=output)
    if head == "sat":
        rest = output.split("sat", 1)[1]
        try:
            model = parse_model(rest, variables)
        except SolverFailure as e:
            return SolverResult(SolverStatus.FAILURE, reason=str(e), wall_s=wall,
                                peak_mem_mb=peak, output=output)
        return SolverResult(SolverStatus.SAT, model=model, wall_s=wall,
                            peak_mem_mb=peak, output=output)
    if head == "unknown":
        reason = " ".join(lines[1:]) or "solver returned unknown"
        return SolverResult(SolverStatus.UNKNOWN, reason=reason, wall_s=wall,
                            peak_mem_mb=peak, output=output)

    detail = (stderr or output).strip()[:200]
    return SolverResult(
        SolverStatus.FAILURE,
        reason=f"exit {returncode}: {detail or 'no output'}",
        wall_s=wall, peak_mem_mb=peak, output=output,
    )
