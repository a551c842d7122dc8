"""Circuit IR Tools - gate list over m qubit lines and the QFT generator"""
import logging
from bisect import bisect_left
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

from errors import CircuitValidationError

logger = logging.getLogger(__name__)


class GateKind(str, Enum):
    """Gate kinds of a QFT circuit."""
    H = "H"
    R = "R"


@dataclass(frozen=True, slots=True)
class GateInstance:
    """
    One gate application.

    Qubit lines are 1-based. `control` names an initial (pre-H) qubit line.
    `source` is the line the data input is read from when it is re-routed;
    None means the gate reads its own target line.
    """
    kind: GateKind
    target: int
    control: Optional[int] = None
    n: Optional[int] = None
    source: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.kind, GateKind):
            object.__setattr__(self, "kind", GateKind(self.kind))
        if self.source == self.target:
            object.__setattr__(self, "source", None)
        if self.kind is GateKind.H:
            if self.control is not None:
                raise CircuitValidationError("H gate must not have a control")
            if self.n is not None:
                raise CircuitValidationError("H gate has no rotation order")
        else:
            if self.control is None:
                raise CircuitValidationError("R gate requires a control")
            if self.n is None or self.n < 1:
                raise CircuitValidationError("R gate order n must be >= 1")
            if self.control == self.target:
                raise CircuitValidationError("control equals target")

    @property
    def data_source(self) -> int:
        """Line whose current value feeds the data input."""
        return self.target if self.source is None else self.source

    @property
    def is_rerouted(self) -> bool:
        return self.source is not None

    def lines(self) -> Tuple[int, ...]:
        """Every line index the gate mentions."""
        found = [self.target]
        if self.control is not None:
            found.append(self.control)
        if self.source is not None:
            found.append(self.source)
        return tuple(found)

    def describe(self) -> str:
        src = f", src {self.source}" if self.source is not None else ""
        if self.kind is GateKind.H:
            return f"H({self.target}{src})"
        return f"R{self.n}({self.target}, ctl {self.control}{src})"


@dataclass(frozen=True)
class CircuitDescription:
    """Gate list over m qubit lines; list order is application order."""
    m: int
    gates: Tuple[GateInstance, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        if not isinstance(self.m, int) or self.m < 1:
            raise CircuitValidationError("m must be >= 1")
        m = self.m
        for ordinal, gate in enumerate(self.gates, start=1):
            for line in gate.lines():
                if not 1 <= line <= m:
                    raise CircuitValidationError(
                        f"qubit index {line} out of range 1..{m}", ordinal
                    )
            if gate.n is not None and gate.n > m:
                raise CircuitValidationError(
                    f"rotation order {gate.n} exceeds width {m}", ordinal
                )

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @cached_property
    def line_index(self) -> Dict[int, List[int]]:
        """0-based gate indices targeting each line, in program order."""
        index: Dict[int, List[int]] = {line: [] for line in range(1, self.m + 1)}
        for position, gate in enumerate(self.gates):
            index[gate.target].append(position)
        return index

    def rotation_positions(self, target: int) -> List[int]:
        """0-based indices of the R gates targeting a line."""
        return [p for p in self.line_index[target]
                if self.gates[p].kind is GateKind.R]

    def h_positions(self, target: int) -> List[int]:
        return [p for p in self.line_index[target]
                if self.gates[p].kind is GateKind.H]

    def with_gates(self, gates: Iterable[GateInstance]) -> "CircuitDescription":
        return CircuitDescription(self.m, tuple(gates))

    def with_gate(self, position: int, **changes) -> "CircuitDescription":
        """Copy of the circuit with one gate's fields replaced."""
        gates = list(self.gates)
        gates[position] = replace(gates[position], **changes)
        return self.with_gates(gates)


def hadamard(target: int, source: Optional[int] = None) -> GateInstance:
    return GateInstance(GateKind.H, target, source=source)


def rotation(n: int, target: int, control: int,
             source: Optional[int] = None) -> GateInstance:
    return GateInstance(GateKind.R, target, control=control, n=n, source=source)


def qft_gate_count(m: int) -> int:
    """Gate count of the swap-free QFT circuit on m qubits, m(m+1)/2."""
    if m < 1:
        raise CircuitValidationError("m must be >= 1")
    return m * (m + 1) // 2


def generate_qft(m: int) -> CircuitDescription:
    """
    Build the QFT circuit on m qubits.

    Qubit i gets H, then R2..R(m-i+1) controlled by lines i+1..m.
    No terminal swaps are emitted.

    Args:
        m: Number of qubits

    Returns:
        CircuitDescription with m(m+1)/2 gates
    """
    if not isinstance(m, int) or m < 1:
        raise CircuitValidationError("m must be >= 1")

    gates: List[GateInstance] = []
    for i in range(1, m + 1):
        gates.append(GateInstance(GateKind.H, i))
        for control in range(i + 1, m + 1):
            gates.append(GateInstance(GateKind.R, i, control=control,
                                      n=control - i + 1))

    logger.debug("generated QFT circuit: m=%d gates=%d", m, len(gates))
    return CircuitDescription(m, tuple(gates))


def cone_positions(circuit: CircuitDescription, line: int,
                   end: Optional[int] = None) -> Optional[List[int]]:
    """
    Gates (0-based, in application order) that determine a line's value
    just before position `end`.

    The walk starts at the last gate that initializes the line (its H, or
    a rotation reading another line) and follows re-routed inputs back.

    Returns:
        Position list, or None when the line is still a Control wire
    """
    end = len(circuit.gates) if end is None else end
    gates = circuit.gates
    segments: List[List[int]] = []
    while True:
        on_line = circuit.line_index[line]
        stop = bisect_left(on_line, end)
        start = None
        for j in range(stop - 1, -1, -1):
            gate = gates[on_line[j]]
            if gate.kind is GateKind.H or gate.is_rerouted:
                start = j
                break
        if start is None:
            if segments:
                raise CircuitValidationError(
                    f"re-routed input reads control line {line}; typecheck first"
                )
            return None
        segments.append(on_line[start:stop])
        head = gates[on_line[start]]
        if head.kind is GateKind.H:
            break
        line, end = head.data_source, on_line[start]

    chain: List[int] = []
    for segment in reversed(segments):
        chain.extend(segment)
    return chain
