"""Oracle Checker - cross-validates the abstraction against dense simulation"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from config import Config
from tools.bitvector_tools import bits_value, eval_bits
from tools.circuit_tools import CircuitDescription, generate_qft
from tools.simulation_tools import (
    basis_factor,
    bit_reversal_permutation,
    extract_phases,
    input_bits,
    phase_factor,
    product_state,
    qft_reference,
    simulate,
)
from checkers.abstract_runner import run_abstract

logger = logging.getLogger(__name__)


class InputResult(BaseModel):
    """Outcome for one basis input."""
    input: str
    abstraction_ok: bool
    dft_ok: bool
    abstraction_deviation: float
    dft_deviation: float
    failing_qubits: List[int] = Field(default_factory=list)


class OracleReport(BaseModel):
    """Per-input outcomes in input order; `failures` repeats the failing ones."""
    qubits: int
    gate_count: int
    canonical: bool
    exhaustive: bool
    inputs_checked: int
    abstraction_ok: bool
    dft_ok: bool
    max_deviation: float
    results: List[InputResult] = Field(default_factory=list)
    failures: List[InputResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.abstraction_ok and self.dft_ok


def _sample_inputs(m: int, seed: int) -> List[int]:
    size = 1 << m
    if m <= Config.EXHAUSTIVE_INPUT_CAP:
        return list(range(size))
    count = min(Config.ORACLE_SAMPLE_INPUTS, size)
    rng = np.random.default_rng(seed)
    return sorted(int(j) for j in rng.choice(size, size=count, replace=False))


def cross_check(m: int, circuit: CircuitDescription, cap: Optional[int] = None,
                workers: int = 1, seed: Optional[int] = None) -> OracleReport:
    """
    Compare simulation with the abstraction and with the DFT on basis inputs.

    For each input the simulated state must equal the product of
    per-qubit factors whose phases come from the abstract outputs, and
    the extracted phases must equal them exactly. It must also equal the
    DFT of the input with output indices bit-reversed.

    Inputs are exhaustive up to Config.EXHAUSTIVE_INPUT_CAP qubits and a
    seeded sample beyond.

    Args:
        m: Qubit count, must match the circuit
        circuit: Type-correct circuit without re-routed inputs
        cap: Simulation cap (defaults to Config.SIMULATION_CAP)
        workers: Threads for independent inputs
        seed: Sampling seed (defaults to Config.ORACLE_SEED)

    Returns:
        OracleReport

    Raises:
        CircuitTypeError: the circuit does not typecheck
        SimulationError: over the cap or not simulable
    """
    if circuit.m != m:
        raise ValueError(f"circuit has {circuit.m} qubits, expected {m}")
    tolerance = Config.AMPLITUDE_TOLERANCE
    outputs = run_abstract(circuit).materialize()
    permutation = bit_reversal_permutation(m)
    inputs = _sample_inputs(m, Config.ORACLE_SEED if seed is None else seed)

    def check(j: int) -> InputResult:
        bits = input_bits(j, m)
        state = simulate(circuit, bits, cap)

        factors, phases = [], []
        for line in range(1, m + 1):
            vector = outputs[line]
            if vector is None:
                factors.append(basis_factor(bits[line - 1]))
                phases.append(None)
            else:
                phase = bits_value(eval_bits(vector, dict(enumerate(bits, start=1))))
                factors.append(phase_factor(phase))
                phases.append(phase)
        expected = product_state(factors)
        abstraction_dev = float(np.max(np.abs(state - expected)))

        failing: List[int] = []
        if all(p is not None for p in phases) and abstraction_dev <= tolerance:
            extracted = extract_phases(state, m)
            failing = [line for line, (got, want) in enumerate(zip(extracted, phases), start=1)
                       if got != want]
        elif abstraction_dev > tolerance:
            failing = [line for line in range(1, m + 1)
                       if not _factor_matches(state, m, line, factors[line - 1], tolerance)]

        dft = qft_reference(j, m, cap)[permutation]
        dft_dev = float(np.max(np.abs(state - dft)))
        return InputResult(
            input="".join(map(str, bits)),
            abstraction_ok=abstraction_dev <= tolerance and not failing,
            dft_ok=dft_dev <= tolerance,
            abstraction_deviation=abstraction_dev,
            dft_deviation=dft_dev,
            failing_qubits=failing,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, inputs))
    else:
        results = [check(j) for j in inputs]

    failures = [r for r in results if not (r.abstraction_ok and r.dft_ok)]
    report = OracleReport(
        qubits=m,
        gate_count=circuit.gate_count,
        canonical=circuit == generate_qft(m),
        exhaustive=len(inputs) == (1 << m),
        inputs_checked=len(inputs),
        abstraction_ok=all(r.abstraction_ok for r in results),
        dft_ok=all(r.dft_ok for r in results),
        max_deviation=max((max(r.abstraction_deviation, r.dft_deviation) for r in results),
                          default=0.0),
        results=results,
        failures=failures,
    )
    logger.info("oracle m=%d: %d inputs, abstraction %s, dft %s", m, len(inputs),
                "ok" if report.abstraction_ok else "FAIL", "ok" if report.dft_ok else "FAIL")
    return report


def _factor_matches(state: np.ndarray, m: int, line: int, factor: np.ndarray,
                    tolerance: float) -> bool:
    """Whether a line's reduced state is the expected factor, up to global phase."""
    tensor = state.reshape((2,) * m)
    moved = np.moveaxis(tensor, line - 1, 0).reshape(2, -1)
    overlap = np.abs(factor.conj() @ moved) ** 2
    reduced = float(np.sum(overlap))
    return abs(reduced - 1.0) <= np.sqrt(tolerance)
