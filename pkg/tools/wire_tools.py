"""Wire Typing Tools - control/data wire typing of the abstracted circuit"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from errors import QftvError
from tools.circuit_tools import CircuitDescription, GateKind

logger = logging.getLogger(__name__)


class WireType(str, Enum):
    CONTROL = "control"
    DATA = "data"


class TypeErrorKind(str, Enum):
    H_ON_DATA_WIRE = "HOnDataWire"
    RN_DATA_PORT_GOT_CONTROL = "RnDataPortGotControl"
    RN_CONTROL_PORT_GOT_DATA = "RnControlPortGotData"
    DUPLICATE_H = "DuplicateH"


class CircuitTypeError(QftvError):
    """A wire-kind mismatch at a specific gate."""

    def __init__(self, kind: TypeErrorKind, gate_ordinal: int, line: int, gate_text: str):
        super().__init__(
            f"{kind.value} at gate {gate_ordinal} ({gate_text}), qubit line {line}"
        )
        self.kind = kind
        self.gate_ordinal = gate_ordinal
        self.line = line
        self.gate_text = gate_text

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "gate_ordinal": self.gate_ordinal,
            "line": self.line,
            "gate": self.gate_text,
        }


@dataclass(frozen=True)
class WireTyping:
    """
    Per-line typing. A line is Control until the gate recorded in
    `data_from` (1-based gate ordinal) and Data from then on.
    """
    m: int
    data_from: Tuple[Optional[int], ...]

    def wire_type(self, line: int, before_ordinal: Optional[int] = None) -> WireType:
        """Type of a line just before a gate (or at the end of the circuit)."""
        start = self.data_from[line - 1]
        if start is None:
            return WireType.CONTROL
        if before_ordinal is not None and before_ordinal <= start:
            return WireType.CONTROL
        return WireType.DATA

    def final_type(self, line: int) -> WireType:
        return self.wire_type(line)


def typecheck(circuit: CircuitDescription) -> WireTyping:
    """
    Type the circuit's wires.

    Inputs are Boolean (Control); a line becomes Data at its H. H reads a
    Control value, an R reads Control at its control port and Data at its
    data port. Controls tap the initial line, so a control line must not
    have passed its own H yet.

    Args:
        circuit: Structurally valid circuit

    Returns:
        WireTyping on success

    Raises:
        CircuitTypeError: first mismatch in program order
    """
    m = circuit.m
    is_data = [False] * (m + 1)
    had_h = [False] * (m + 1)
    data_from: list = [None] * m

    def fail(kind: TypeErrorKind, ordinal: int, line: int, text: str):
        error = CircuitTypeError(kind, ordinal, line, text)
        logger.info("type error: %s", error)
        raise error

    for ordinal, gate in enumerate(circuit.gates, start=1):
        target, source = gate.target, gate.data_source
        if gate.kind is GateKind.H:
            if is_data[target]:
                kind = TypeErrorKind.DUPLICATE_H if had_h[target] else TypeErrorKind.H_ON_DATA_WIRE
                fail(kind, ordinal, target, gate.describe())
            if source != target and is_data[source]:
                fail(TypeErrorKind.H_ON_DATA_WIRE, ordinal, source, gate.describe())
            had_h[target] = True
        else:
            if is_data[gate.control]:
                fail(TypeErrorKind.RN_CONTROL_PORT_GOT_DATA, ordinal, gate.control,
                     gate.describe())
            if not is_data[source]:
                fail(TypeErrorKind.RN_DATA_PORT_GOT_CONTROL, ordinal, source,
                     gate.describe())
        if not is_data[target]:
            is_data[target] = True
            data_from[target - 1] = ordinal

    return WireTyping(m, tuple(data_from))
