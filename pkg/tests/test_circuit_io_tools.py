"""Tests for the JSON circuit format"""
import pytest

from errors import CircuitFormatError, CircuitValidationError
from tools.circuit_io_tools import parse_circuit, read_circuit, serialize_circuit, write_circuit
from tools.circuit_tools import CircuitDescription, generate_qft
from tools.fault_tools import WrongRnDataInput, enumerate_single_errors, inject_error


def test_serialize_matches_golden_file(qft3, data_dir):
    assert serialize_circuit(qft3) == (data_dir / "qft3.json").read_text()


def test_read_golden_file(qft3, data_dir):
    assert read_circuit(data_dir / "qft3.json") == qft3


def test_write_then_read(tmp_path):
    circuit = inject_error(generate_qft(5), WrongRnDataInput(2, 1, 1))
    path = tmp_path / "c.json"
    write_circuit(path, circuit)
    assert read_circuit(path) == circuit
    assert '"source": 1' in path.read_text()


def test_empty_gate_list():
    text = serialize_circuit(CircuitDescription(2, ()))
    assert '"gates": []' in text
    assert parse_circuit(text) == CircuitDescription(2, ())


def test_syntax_error_has_position():
    with pytest.raises(CircuitFormatError, match=r"line 2, column"):
        parse_circuit('{"qubits": 2,\n "gates": [}')


@pytest.mark.parametrize("text,match", [
    ('{"qubits": 0, "gates": []}', "m must be >= 1"),
    ('{"qubits": 2, "gates": [{"kind": "X", "target": 1}]}', "gate 1"),
    ('{"qubits": 2, "gates": [{"kind": "H", "target": 1}, {"kind": "R", "target": 1}]}',
     "gate 2: R gate requires a control"),
    ('{"qubits": 2, "gates": [{"kind": "H", "target": 3}]}', "gate 1: qubit index 3"),
    ('{"qubits": 2, "gates": [{"kind": "H", "target": 1, "extra": 1}]}', "gate 1"),
    ('{"qubits": 2, "gates": [{"kind": "H", "target": "1"}]}', "gate 1"),
    ('{"gates": []}', "qubits"),
])
def test_semantic_errors(text, match):
    with pytest.raises(CircuitValidationError, match=match):
        parse_circuit(text)


@pytest.mark.parametrize("m", range(1, 5))
def test_serialized_mutants_parse_back(m):
    base = generate_qft(m)
    for spec in enumerate_single_errors(m):
        circuit = inject_error(base, spec)
        assert parse_circuit(serialize_circuit(circuit)) == circuit, spec
