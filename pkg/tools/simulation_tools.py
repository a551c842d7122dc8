"""Simulation Tools - dense statevector reference for small QFT circuits"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from config import Config
from errors import SimulationError
from tools.circuit_tools import CircuitDescription, GateKind

logger = logging.getLogger(__name__)

_SQRT2_INV = 1 / np.sqrt(2)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV


def input_bits(j: int, m: int) -> List[int]:
    """Bits b1..bm of basis index j; b1 is the most significant."""
    if not 0 <= j < (1 << m):
        raise ValueError(f"basis index {j} out of range for {m} qubits")
    return [(j >> (m - line)) & 1 for line in range(1, m + 1)]


def basis_index(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | (1 if b else 0)
    return index


def bit_reverse(k: int, m: int) -> int:
    out = 0
    for _ in range(m):
        out = (out << 1) | (k & 1)
        k >>= 1
    return out


def bit_reversal_permutation(m: int) -> np.ndarray:
    return np.array([bit_reverse(k, m) for k in range(1 << m)], dtype=np.int64)


def _check_cap(m: int, cap: Optional[int]) -> None:
    cap = Config.SIMULATION_CAP if cap is None else cap
    if m > cap:
        raise SimulationError(f"{m} qubits exceeds the simulation cap of {cap}")


def _apply_h(state: np.ndarray, axis: int) -> np.ndarray:
    moved = np.moveaxis(state, axis, -1)
    moved = np.tensordot(moved, _H, axes=([-1], [1]))
    return np.moveaxis(moved, -1, axis)


def _apply_controlled_phase(state: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    index = [slice(None)] * state.ndim
    index[control] = 1
    index[target] = 1
    state[tuple(index)] *= np.exp(2j * np.pi / (1 << n))
    return state


def simulate(circuit: CircuitDescription, bits: Sequence[int],
             cap: Optional[int] = None) -> np.ndarray:
    """
    Run the concrete circuit on the basis state |b1 ... bm>.

    H acts on its target; R_n is the controlled phase diag(1, 1, 1, e^(2 pi i / 2^n))
    between control and target, applied literally in program order.
    Line 1 is the most significant amplitude index bit.

    Args:
        circuit: Circuit without re-routed inputs
        bits: Input bits b1..bm
        cap: Qubit cap (defaults to Config.SIMULATION_CAP)

    Returns:
        Amplitude vector of length 2^m

    Raises:
        SimulationError: over the cap, a re-routed gate, or norm drift
    """
    m = circuit.m
    _check_cap(m, cap)
    if len(bits) != m:
        raise SimulationError(f"expected {m} input bits, got {len(bits)}")

    state = np.zeros((2,) * m, dtype=complex)
    state[tuple(1 if b else 0 for b in bits)] = 1.0

    for ordinal, gate in enumerate(circuit.gates, start=1):
        if gate.is_rerouted:
            raise SimulationError(f"gate {ordinal} ({gate.describe()}) has no unitary counterpart")
        if gate.kind is GateKind.H:
            state = _apply_h(state, gate.target - 1)
        else:
            state = _apply_controlled_phase(state, gate.control - 1, gate.target - 1, gate.n)
        norm = float(np.sum(np.abs(state) ** 2))
        if abs(norm - 1.0) > Config.AMPLITUDE_TOLERANCE:
            raise SimulationError(f"norm drifted to {norm!r} after gate {ordinal}")

    return state.reshape(-1)


def qft_reference(j: int, m: int, cap: Optional[int] = None) -> np.ndarray:
    """DFT of |j>: amplitude e^(2 pi i j k / N) / sqrt(N) at every k."""
    _check_cap(m, cap)
    size = 1 << m
    if not 0 <= j < size:
        raise ValueError(f"j={j} out of range 0..{size - 1}")
    k = np.arange(size)
    return np.exp(2j * np.pi * j * k / size) / np.sqrt(size)


def per_qubit_phase(bits: Sequence[int], i: int) -> Fraction:
    """Binary fraction 0.b_i b_(i+1) ... b_m."""
    m = len(bits)
    if not 1 <= i <= m:
        raise ValueError(f"qubit {i} out of range 1..{m}")
    tail = bits[i - 1:]
    return Fraction(basis_index(tail), 1 << len(tail))


def phase_factor(phase: Fraction) -> np.ndarray:
    """(|0> + e^(2 pi i phase)|1>) / sqrt(2)."""
    return np.array([1.0, np.exp(2j * np.pi * float(phase))], dtype=complex) * _SQRT2_INV


def basis_factor(bit: int) -> np.ndarray:
    return np.array([0.0, 1.0] if bit else [1.0, 0.0], dtype=complex)


def product_state(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Tensor product of single-qubit factors, line 1 first."""
    state = np.array([1.0], dtype=complex)
    for factor in factors:
        state = np.kron(state, factor)
    return state


def extract_phases(state: np.ndarray, m: int) -> List[Fraction]:
    """
    Per-qubit phases of a uniform-magnitude product state, each rounded
    to the nearest multiple of 2^-m.

    Raises:
        SimulationError: the |0...0> amplitude vanishes
    """
    if state.shape != (1 << m,):
        raise SimulationError(f"state of shape {state.shape} is not an {m}-qubit vector")
    reference = state[0]
    if abs(reference) < Config.AMPLITUDE_TOLERANCE:
        raise SimulationError("|0...0> amplitude vanishes; not a uniform product state")
    size = 1 << m
    phases = []
    for line in range(1, m + 1):
        ratio = state[1 << (m - line)] / reference
        turns = (np.angle(ratio) / (2 * np.pi)) % 1.0
        phases.append(Fraction(int(round(turns * size)) % size, size))
    return phases
