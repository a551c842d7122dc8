"""Fault Injection Tools - error classes, mutation and benchmark scenarios"""
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional

from errors import InjectionError
from tools.circuit_tools import (
    CircuitDescription,
    GateInstance,
    GateKind,
    hadamard,
    rotation,
)

logger = logging.getLogger(__name__)


def _check_line(circuit: CircuitDescription, line: int, what: str) -> None:
    if not 1 <= line <= circuit.m:
        raise InjectionError(f"{what} {line} out of range 1..{circuit.m}")


def _rotation_position(circuit: CircuitDescription, target: int, ordinal: int) -> int:
    _check_line(circuit, target, "target")
    positions = circuit.rotation_positions(target)
    if not 1 <= ordinal <= len(positions):
        raise InjectionError(
            f"qubit {target} has {len(positions)} rotation gates, no ordinal {ordinal}"
        )
    return positions[ordinal - 1]


def _h_position(circuit: CircuitDescription, target: int) -> int:
    _check_line(circuit, target, "target")
    positions = circuit.h_positions(target)
    if not positions:
        raise InjectionError(f"qubit {target} has no H gate")
    return positions[0]


class ErrorSpec:
    """Base of all error classes. `token` is the CLI spelling."""
    token = ""

    def apply(self, circuit: CircuitDescription) -> CircuitDescription:
        raise NotImplementedError

    def to_text(self) -> str:
        values = [str(v) for v in vars_of(self)]
        return ":".join([self.token] + values)


def vars_of(spec: ErrorSpec) -> List[int]:
    return [getattr(spec, name) for name in spec.__dataclass_fields__]


@dataclass(frozen=True)
class IncorrectGateOrder(ErrorSpec):
    """The ordinal-th rotation on `target` gets order `wrong_n`."""
    target: int
    ordinal: int
    wrong_n: int
    token = "gate-order"

    def apply(self, circuit):
        position = _rotation_position(circuit, self.target, self.ordinal)
        if not 1 <= self.wrong_n <= circuit.m:
            raise InjectionError(f"wrong-n {self.wrong_n} out of range 1..{circuit.m}")
        if circuit.gates[position].n == self.wrong_n:
            raise InjectionError("mutation is a no-op: wrong-n equals the gate's order")
        return circuit.with_gate(position, n=self.wrong_n)


@dataclass(frozen=True)
class IncorrectControl(ErrorSpec):
    """The ordinal-th rotation on `target` is controlled by `wrong_control`."""
    target: int
    ordinal: int
    wrong_control: int
    token = "control"

    def apply(self, circuit):
        position = _rotation_position(circuit, self.target, self.ordinal)
        _check_line(circuit, self.wrong_control, "wrong-control")
        if self.wrong_control == self.target:
            raise InjectionError("wrong-control equals the target line")
        if circuit.gates[position].control == self.wrong_control:
            raise InjectionError("mutation is a no-op: wrong-control equals the gate's control")
        return circuit.with_gate(position, control=self.wrong_control)


@dataclass(frozen=True)
class MissingH(ErrorSpec):
    target: int
    token = "missing-h"

    def apply(self, circuit):
        position = _h_position(circuit, self.target)
        gates = list(circuit.gates)
        del gates[position]
        return circuit.with_gates(gates)


@dataclass(frozen=True)
class DuplicateH(ErrorSpec):
    """A second H directly after the first H of `target`."""
    target: int
    token = "duplicate-h"

    def apply(self, circuit):
        position = _h_position(circuit, self.target)
        gates = list(circuit.gates)
        gates.insert(position + 1, hadamard(self.target))
        return circuit.with_gates(gates)


@dataclass(frozen=True)
class WrongHInput(ErrorSpec):
    """The H of `target` reads line `wrong_source` instead."""
    target: int
    wrong_source: int
    token = "h-input"

    def apply(self, circuit):
        position = _h_position(circuit, self.target)
        _check_line(circuit, self.wrong_source, "wrong-source")
        if circuit.gates[position].data_source == self.wrong_source:
            raise InjectionError("mutation is a no-op: wrong-source equals the H input")
        return circuit.with_gate(position, source=self.wrong_source)


@dataclass(frozen=True)
class WrongRnDataInput(ErrorSpec):
    """The ordinal-th rotation on `target` reads its data input from `wrong_source`."""
    target: int
    ordinal: int
    wrong_source: int
    token = "rn-data"

    def apply(self, circuit):
        position = _rotation_position(circuit, self.target, self.ordinal)
        _check_line(circuit, self.wrong_source, "wrong-source")
        if circuit.gates[position].data_source == self.wrong_source:
            raise InjectionError("mutation is a no-op: wrong-source equals the data input")
        return circuit.with_gate(position, source=self.wrong_source)


@dataclass(frozen=True)
class MissingRotation(ErrorSpec):
    target: int
    ordinal: int
    token = "missing-r"

    def apply(self, circuit):
        position = _rotation_position(circuit, self.target, self.ordinal)
        gates = list(circuit.gates)
        del gates[position]
        return circuit.with_gates(gates)


@dataclass(frozen=True)
class ExtraRotation(ErrorSpec):
    """An additional R_n on `target`, placed after the line's last gate."""
    target: int
    n: int
    control: int
    token = "extra-r"

    def apply(self, circuit):
        _check_line(circuit, self.target, "target")
        _check_line(circuit, self.control, "control")
        if self.control == self.target:
            raise InjectionError("control equals the target line")
        if not 1 <= self.n <= circuit.m:
            raise InjectionError(f"n {self.n} out of range 1..{circuit.m}")
        on_line = circuit.line_index[self.target]
        position = on_line[-1] + 1 if on_line else len(circuit.gates)
        gates = list(circuit.gates)
        gates.insert(position, rotation(self.n, self.target, self.control))
        return circuit.with_gates(gates)


ERROR_CLASSES = {
    cls.token: cls
    for cls in (IncorrectGateOrder, IncorrectControl, MissingH, DuplicateH,
                WrongHInput, WrongRnDataInput, MissingRotation, ExtraRotation)
}


def parse_error_spec(text: str) -> ErrorSpec:
    """
    Parse the CLI spelling of an error, e.g. "control:1:2:2" or "missing-h:2".

    Args:
        text: token followed by colon-separated integer fields

    Returns:
        The ErrorSpec instance
    """
    token, *fields = text.strip().split(":")
    cls = ERROR_CLASSES.get(token)
    if cls is None:
        raise InjectionError(
            f"unknown error class '{token}'. Supported: {', '.join(ERROR_CLASSES)}"
        )
    expected = len(cls.__dataclass_fields__)
    if len(fields) != expected:
        raise InjectionError(f"'{token}' takes {expected} fields, got {len(fields)}")
    try:
        return cls(*(int(f) for f in fields))
    except ValueError as e:
        raise InjectionError(f"non-integer field in '{text}'") from e


def inject_error(circuit: CircuitDescription, spec: ErrorSpec) -> CircuitDescription:
    """
    Apply exactly one mutation; the input circuit is left untouched.

    Raises:
        InjectionError: index out of range or the mutation would be a no-op
    """
    mutated = spec.apply(circuit)
    logger.debug("injected %s into %d-qubit circuit", spec.to_text(), circuit.m)
    return mutated


def inject_errors(circuit: CircuitDescription,
                  specs: Iterable[ErrorSpec]) -> CircuitDescription:
    """Compose several mutations in order; indices refer to the evolving circuit."""
    for spec in specs:
        circuit = inject_error(circuit, spec)
    return circuit


def split_rotation(circuit: CircuitDescription, target: int,
                   ordinal: int) -> CircuitDescription:
    """
    Replace an R_n by two R_(n+1) gates with the same control.

    The total rotation is unchanged, so a correct circuit stays correct.
    """
    position = _rotation_position(circuit, target, ordinal)
    gate = circuit.gates[position]
    if gate.n + 1 > circuit.m:
        raise InjectionError(
            f"R{gate.n} on qubit {target} cannot be split within width {circuit.m}"
        )
    # the first half keeps any re-routed input; the second reads the target line
    first = GateInstance(GateKind.R, gate.target, control=gate.control,
                         n=gate.n + 1, source=gate.source)
    second = rotation(gate.n + 1, gate.target, gate.control)
    gates = list(circuit.gates)
    gates[position:position + 1] = [first, second]
    return circuit.with_gates(gates)


def enumerate_single_errors(m: int) -> Iterator[ErrorSpec]:
    """Every single-error mutation of generate_qft(m) at every legal position."""
    lines = range(1, m + 1)
    for target in lines:
        yield MissingH(target)
        yield DuplicateH(target)
        for source in lines:
            if source != target:
                yield WrongHInput(target, source)
        for ordinal in range(1, m - target + 1):
            n, control = ordinal + 1, target + ordinal
            yield MissingRotation(target, ordinal)
            for wrong_n in lines:
                if wrong_n != n:
                    yield IncorrectGateOrder(target, ordinal, wrong_n)
            for other in lines:
                if other not in (target, control):
                    yield IncorrectControl(target, ordinal, other)
                if other != target:
                    yield WrongRnDataInput(target, ordinal, other)
        for n in lines:
            for control in lines:
                if control != target:
                    yield ExtraRotation(target, n, control)


def scenario_error(m: int, scenario: str) -> Optional[ErrorSpec]:
    """
    Map a benchmark scenario name to its mutation.

    correct     -> no mutation
    gate-2      -> R3 instead of R2 on qubit 1
    gate-n      -> R(m-1) instead of R(m) on qubit 1
    control-2   -> R2 on qubit 1 controlled by qubit 3
    control-n   -> R(m) on qubit 1 controlled by qubit m-1
    gate@q      -> first rotation on qubit q gets order 3 instead of 2
    control@q   -> first rotation on qubit q controlled by q+2 (or q-1 near the end)
    """
    if scenario == "correct":
        return None
    if scenario == "gate-2":
        return IncorrectGateOrder(1, 1, 3)
    if scenario == "gate-n":
        return IncorrectGateOrder(1, m - 1, m - 1)
    if scenario == "control-2":
        return IncorrectControl(1, 1, 3)
    if scenario == "control-n":
        return IncorrectControl(1, m - 1, m - 1)
    if "@" in scenario:
        kind, _, position = scenario.partition("@")
        try:
            q = int(position)
        except ValueError as e:
            raise InjectionError(f"bad scenario position in '{scenario}'") from e
        if kind == "gate":
            return IncorrectGateOrder(q, 1, 3)
        if kind == "control":
            wrong = q + 2 if q + 2 <= m else q - 1
            return IncorrectControl(q, 1, wrong)
    raise InjectionError(f"unknown scenario '{scenario}'")
