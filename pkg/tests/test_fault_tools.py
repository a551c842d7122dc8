"""Tests for error injection"""
import pytest

from errors import InjectionError
from tools.circuit_tools import GateKind, generate_qft, hadamard, rotation
from tools.fault_tools import (
    DuplicateH,
    ExtraRotation,
    IncorrectControl,
    IncorrectGateOrder,
    MissingH,
    MissingRotation,
    WrongHInput,
    WrongRnDataInput,
    enumerate_single_errors,
    inject_error,
    inject_errors,
    parse_error_spec,
    scenario_error,
    split_rotation,
)


def test_incorrect_gate_order(qft3):
    mutated = inject_error(qft3, IncorrectGateOrder(1, 1, 3))
    assert mutated.gates[1] == rotation(3, 1, 2)
    assert mutated.gate_count == qft3.gate_count


def test_incorrect_control(qft3):
    mutated = inject_error(qft3, IncorrectControl(1, 1, 3))
    assert mutated.gates[1] == rotation(2, 1, 3)


def test_missing_h(qft3):
    mutated = inject_error(qft3, MissingH(2))
    assert mutated.gate_count == 5
    assert mutated.h_positions(2) == []


def test_duplicate_h_directly_after_first(qft3):
    mutated = inject_error(qft3, DuplicateH(1))
    assert mutated.gates[:2] == (hadamard(1), hadamard(1))


def test_wrong_inputs(qft3):
    assert inject_error(qft3, WrongHInput(2, 3)).gates[3] == hadamard(2, source=3)
    assert inject_error(qft3, WrongRnDataInput(2, 1, 1)).gates[4] == rotation(2, 2, 3, source=1)


def test_missing_and_extra_rotation(qft3):
    assert inject_error(qft3, MissingRotation(1, 2)).gates[:3] == (
        hadamard(1), rotation(2, 1, 2), hadamard(2))
    extra = inject_error(qft3, ExtraRotation(2, 3, 1))
    assert extra.gates[5] == rotation(3, 2, 1)
    assert extra.gates[6] == hadamard(3)


def test_input_circuit_is_not_modified(qft3):
    before = qft3.gates
    inject_error(qft3, MissingH(1))
    assert qft3.gates == before


@pytest.mark.parametrize("spec,match", [
    (IncorrectGateOrder(1, 1, 2), "no-op"),
    (IncorrectControl(1, 1, 2), "no-op"),
    (IncorrectControl(1, 1, 1), "target line"),
    (IncorrectGateOrder(3, 1, 2), "no ordinal 1"),
    (IncorrectGateOrder(1, 1, 9), "out of range"),
    (MissingH(4), "out of range"),
    (WrongHInput(2, 2), "no-op"),
])
def test_rejected_mutations(qft3, spec, match):
    with pytest.raises(InjectionError, match=match):
        inject_error(qft3, spec)


@pytest.mark.parametrize("text,expected", [
    ("gate-order:1:1:3", IncorrectGateOrder(1, 1, 3)),
    ("control:1:2:2", IncorrectControl(1, 2, 2)),
    ("missing-h:2", MissingH(2)),
    ("duplicate-h:1", DuplicateH(1)),
    ("h-input:2:3", WrongHInput(2, 3)),
    ("rn-data:1:1:2", WrongRnDataInput(1, 1, 2)),
    ("missing-r:1:1", MissingRotation(1, 1)),
    ("extra-r:1:2:3", ExtraRotation(1, 2, 3)),
])
def test_parse_error_spec(text, expected):
    spec = parse_error_spec(text)
    assert spec == expected
    assert spec.to_text() == text


@pytest.mark.parametrize("text", ["bogus:1", "missing-h", "control:1:x:2", "missing-h:1:2"])
def test_parse_error_spec_rejects(text):
    with pytest.raises(InjectionError):
        parse_error_spec(text)


def test_inject_errors_composes_in_order(qft3):
    mutated = inject_errors(qft3, [MissingRotation(1, 1), IncorrectGateOrder(1, 1, 2)])
    assert mutated.gates[1] == rotation(2, 1, 3)


def test_split_rotation(qft3):
    split = split_rotation(qft3, 1, 1)
    assert split.gates[1:3] == (rotation(3, 1, 2), rotation(3, 1, 2))
    assert split.gate_count == qft3.gate_count + 1


def test_split_rotation_needs_room(qft3):
    with pytest.raises(InjectionError, match="cannot be split"):
        split_rotation(qft3, 1, 2)


def test_catalogue_only_yields_applicable_mutations():
    circuit = generate_qft(4)
    specs = list(enumerate_single_errors(4))
    assert len(specs) == len(set(specs))
    for spec in specs:
        inject_error(circuit, spec)
    kinds = {type(s) for s in specs}
    assert kinds == {IncorrectGateOrder, IncorrectControl, MissingH, DuplicateH,
                     WrongHInput, WrongRnDataInput, MissingRotation, ExtraRotation}


@pytest.mark.parametrize("scenario,expected", [
    ("correct", None),
    ("gate-2", IncorrectGateOrder(1, 1, 3)),
    ("gate-n", IncorrectGateOrder(1, 15, 15)),
    ("control-2", IncorrectControl(1, 1, 3)),
    ("control-n", IncorrectControl(1, 15, 15)),
    ("gate@5", IncorrectGateOrder(5, 1, 3)),
    ("control@5", IncorrectControl(5, 1, 7)),
    ("control@15", IncorrectControl(15, 1, 14)),
])
def test_scenarios(scenario, expected):
    assert scenario_error(16, scenario) == expected


def test_scenarios_apply_to_qft16():
    base = generate_qft(16)
    gate_n = inject_error(base, scenario_error(16, "gate-n"))
    position = base.rotation_positions(1)[-1]
    assert (gate_n.gates[position].kind, gate_n.gates[position].n) == (GateKind.R, 15)
    control_n = inject_error(base, scenario_error(16, "control-n"))
    assert control_n.gates[position].control == 15


def test_unknown_scenario():
    with pytest.raises(InjectionError, match="unknown scenario"):
        scenario_error(16, "nonsense")


def _changed_slices(before, after):
    """Slices of before/after left once the common prefix and suffix are dropped."""
    start = 0
    while start < min(len(before), len(after)) and before[start] == after[start]:
        start += 1
    end = 0
    while (end < min(len(before), len(after)) - start
           and before[-1 - end] == after[-1 - end]):
        end += 1
    return before[start:len(before) - end], after[start:len(after) - end]


@pytest.mark.parametrize("m", range(1, 6))
def test_mutation_touches_exactly_one_gate(m):
    base = generate_qft(m)
    for spec in enumerate_single_errors(m):
        mutated = inject_error(base, spec)
        assert mutated != base, spec
        removed, added = _changed_slices(base.gates, mutated.gates)
        assert len(removed) <= 1 and len(added) <= 1, spec
        assert all(g.target == spec.target for g in removed + added), spec
