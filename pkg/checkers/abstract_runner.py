"""Abstract Runner - rotational-abstraction semantics of a whole circuit"""
import logging
from collections.abc import Mapping
from typing import Dict, Iterator, List, Optional

from tools.bitvector_tools import SymbolicBitVector, abstract_h, add_onehot_inplace
from tools.circuit_tools import CircuitDescription, GateKind, cone_positions
from tools.expr_tools import var
from tools.wire_tools import WireType, WireTyping, typecheck

logger = logging.getLogger(__name__)


def _fold(circuit: CircuitDescription, positions: List[int]) -> SymbolicBitVector:
    m = circuit.m
    bits: List = []
    for p in positions:
        gate = circuit.gates[p]
        if gate.kind is GateKind.H:
            bits = list(abstract_h(var(gate.data_source), m).bits)
        else:
            add_onehot_inplace(bits, gate.n, var(gate.control))
    return SymbolicBitVector(tuple(bits))


class AbstractOutputs(Mapping):
    """
    Final abstract value of every qubit line, indexed 1..m.

    A line's vector is computed on first access from its own dataflow
    cone, so independent per-qubit checks pay only for their cone. Lines
    that never became Data map to None.
    """

    def __init__(self, circuit: CircuitDescription, typing: WireTyping):
        self.circuit = circuit
        self.typing = typing
        self._values: Dict[int, Optional[SymbolicBitVector]] = {}

    @property
    def m(self) -> int:
        return self.circuit.m

    def __getitem__(self, line: int) -> Optional[SymbolicBitVector]:
        if not 1 <= line <= self.circuit.m:
            raise KeyError(line)
        if line not in self._values:
            if self.typing.final_type(line) is WireType.CONTROL:
                self._values[line] = None
            else:
                self._values[line] = _fold(self.circuit, cone_positions(self.circuit, line))
        return self._values[line]

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.circuit.m + 1))

    def __len__(self) -> int:
        return self.circuit.m

    def materialize(self) -> Dict[int, Optional[SymbolicBitVector]]:
        return {line: self[line] for line in self}


def run_abstract(circuit: CircuitDescription,
                 typing: Optional[WireTyping] = None) -> AbstractOutputs:
    """
    Abstracted circuit: H and R_n replaced by their abstract gates.

    Args:
        circuit: Circuit to abstract
        typing: Result of an earlier typecheck, if already done

    Returns:
        AbstractOutputs for the circuit

    Raises:
        CircuitTypeError: from typecheck
    """
    typing = typing or typecheck(circuit)
    return AbstractOutputs(circuit, typing)


def run_concrete(circuit: CircuitDescription,
                 assignment: Mapping[int, int]) -> Dict[int, Optional[int]]:
    """
    Program-order interpreter over integers modulo 2^m.

    Each line's result is the integer whose m-bit binary expansion is the
    fractional bit-vector, or None for a line that stayed Control.
    """
    typecheck(circuit)
    m = circuit.m
    modulus = 1 << m
    state: Dict[int, Optional[int]] = {line: None for line in range(1, m + 1)}
    for gate in circuit.gates:
        if gate.kind is GateKind.H:
            bit = 1 if assignment[gate.data_source] else 0
            state[gate.target] = bit << (m - 1)
        else:
            addend = (1 if assignment[gate.control] else 0) << (m - gate.n)
            state[gate.target] = (state[gate.data_source] + addend) % modulus
    return state
