"""Circuit File Tools - JSON circuit format"""
import json
from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError

from errors import CircuitFormatError, CircuitValidationError
from tools.circuit_tools import CircuitDescription, GateInstance, GateKind


class GateEntry(BaseModel):
    """One entry of the "gates" array."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["H", "R"]
    n: Optional[StrictInt] = None
    target: StrictInt
    control: Optional[StrictInt] = None
    source: Optional[StrictInt] = None


class CircuitFile(BaseModel):
    """Top-level circuit document: {"qubits": m, "gates": [...]}."""
    model_config = ConfigDict(extra="forbid")

    qubits: StrictInt
    gates: List[GateEntry]


def _validation_message(exc: ValidationError) -> CircuitValidationError:
    first = exc.errors()[0]
    loc = first.get("loc", ())
    ordinal = None
    if len(loc) >= 2 and loc[0] == "gates" and isinstance(loc[1], int):
        ordinal = loc[1] + 1
    field_path = ".".join(str(part) for part in loc)
    return CircuitValidationError(f"{field_path}: {first.get('msg')}", ordinal)


def parse_circuit(text: str) -> CircuitDescription:
    """
    Parse circuit-file content.

    Args:
        text: UTF-8 JSON circuit document

    Returns:
        The described circuit

    Raises:
        CircuitFormatError: JSON syntax error (with line and column)
        CircuitValidationError: schema or IR invariant violated (with gate ordinal)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitFormatError(e.msg, e.lineno, e.colno) from e

    try:
        document = CircuitFile.model_validate(data)
    except ValidationError as e:
        raise _validation_message(e) from e

    if document.qubits < 1:
        raise CircuitValidationError("m must be >= 1")

    gates: List[GateInstance] = []
    for ordinal, entry in enumerate(document.gates, start=1):
        try:
            gates.append(GateInstance(
                GateKind(entry.kind),
                entry.target,
                control=entry.control,
                n=entry.n,
                source=entry.source,
            ))
        except CircuitValidationError as e:
            raise CircuitValidationError(str(e), ordinal) from e

    return CircuitDescription(document.qubits, tuple(gates))


def _gate_entry(gate: GateInstance) -> GateEntry:
    return GateEntry(
        kind=gate.kind.value,
        n=gate.n,
        target=gate.target,
        control=gate.control,
        source=gate.source,
    )


def serialize_circuit(circuit: CircuitDescription) -> str:
    """
    Canonical JSON text for a circuit, one gate per line.

    Semantics are not re-validated, so mutated circuits (duplicate H,
    re-routed inputs) serialize exactly as they are.
    """
    entries = [
        json.dumps(_gate_entry(g).model_dump(exclude_none=True))
        for g in circuit.gates
    ]
    if not entries:
        return f'{{\n  "qubits": {circuit.m},\n  "gates": []\n}}\n'
    body = ",\n".join(f"    {e}" for e in entries)
    return f'{{\n  "qubits": {circuit.m},\n  "gates": [\n{body}\n  ]\n}}\n'


def read_circuit(path: Union[str, Path]) -> CircuitDescription:
    return parse_circuit(Path(path).read_text(encoding="utf-8"))


def write_circuit(path: Union[str, Path], circuit: CircuitDescription) -> None:
    Path(path).write_text(serialize_circuit(circuit), encoding="utf-8")
