"""Tests for whole-circuit verification"""
import os
import random
import sys

import pytest

from config import Config
from errors import CounterexampleError
from tools.circuit_tools import generate_qft
from tools.fault_tools import (
    IncorrectControl,
    IncorrectGateOrder,
    MissingH,
    enumerate_single_errors,
    inject_error,
    inject_errors,
    split_rotation,
)
from checkers.coordinator import CheckerConfig, verify_circuit
from checkers.property_checker import Backend, Verdict

NO_SOLVER = "qftv-no-such-solver-binary"


def _fake_solver(tmp_path, output):
    script = tmp_path / "fake_solver.py"
    script.write_text(f"import sys\nsys.stdout.write({output!r})\n")
    return f"{sys.executable} {script}"


def test_qft3_verifies(qft3):
    report = verify_circuit(qft3)
    assert report.verdict is Verdict.VERIFIED
    assert [qv.qubit for qv in report.qubit_verdicts] == [1, 2, 3]
    assert report.exit_code == 0
    assert report.critical_path_millis >= report.setup_millis


def test_wrong_control_on_qft16():
    circuit = inject_error(generate_qft(16), IncorrectControl(1, 1, 3))
    report = verify_circuit(circuit)
    assert report.verdict is Verdict.VIOLATION
    assert report.failing.qubit == 1
    assert len(report.qubit_verdicts) == 1
    assert report.exit_code == 1


def test_missing_h_is_a_type_error(qft3):
    report = verify_circuit(inject_error(qft3, MissingH(2)))
    assert report.verdict is Verdict.TYPE_ERROR
    assert report.type_error["kind"] == "RnDataPortGotControl"
    assert report.qubit_verdicts == []
    assert report.exit_code == 2


def test_exhaustive_mode_checks_every_qubit(qft3):
    report = verify_circuit(inject_error(qft3, MissingH(3)), CheckerConfig(exhaustive=True))
    assert [qv.verdict for qv in report.qubit_verdicts] == [
        Verdict.VERIFIED, Verdict.VERIFIED, Verdict.VIOLATION]
    assert report.verdict is Verdict.VIOLATION
    assert report.failing.qubit == 3


@pytest.mark.parametrize("exhaustive", [False, True])
def test_parallel_matches_sequential(exhaustive):
    circuit = inject_errors(generate_qft(8), [IncorrectGateOrder(3, 1, 4),
                                             IncorrectGateOrder(5, 1, 4)])
    sequential = verify_circuit(circuit, CheckerConfig(exhaustive=exhaustive, workers=1))
    parallel = verify_circuit(circuit, CheckerConfig(exhaustive=exhaustive, workers=4))
    strip = {"millis"}
    assert ([qv.model_dump(exclude=strip) for qv in parallel.qubit_verdicts]
            == [qv.model_dump(exclude=strip) for qv in sequential.qubit_verdicts])
    assert parallel.failing.qubit == 3


def test_report_json(qft3):
    report = verify_circuit(inject_error(qft3, IncorrectGateOrder(1, 1, 3)))
    data = report.model_dump(mode="json")
    assert data["verdict"] == "Violation"
    assert data["qubit_verdicts"][0]["counterexample"] == {"b1": 0, "b2": 1, "b3": 0}


def test_correct_circuit_needs_no_normalization():
    report = verify_circuit(generate_qft(32), CheckerConfig(backend="anf", anf_budget=0))
    assert report.verdict is Verdict.VERIFIED


def test_overflow_in_anf_mode_is_unknown(qft3):
    circuit = inject_error(qft3, IncorrectGateOrder(1, 1, 3))
    report = verify_circuit(circuit, CheckerConfig(backend="anf", anf_budget=0))
    assert report.verdict is Verdict.UNKNOWN
    assert report.exit_code == 4


def test_overflow_without_solver_is_reported(qft3):
    circuit = inject_error(qft3, IncorrectGateOrder(1, 1, 3))
    cfg = CheckerConfig(backend="auto", anf_budget=0, solver_command=NO_SOLVER)
    report = verify_circuit(circuit, cfg)
    assert report.verdict is Verdict.SOLVER_UNAVAILABLE
    assert report.failing.backend is Backend.SMT
    assert report.exit_code == 4


def test_smt_backend_with_unsat_solver(qft3, tmp_path):
    cfg = CheckerConfig(backend="smt", solver_command=_fake_solver(tmp_path, "unsat\n"),
                        smt_dir=tmp_path / "smt")
    report = verify_circuit(qft3, cfg)
    assert report.verdict is Verdict.VERIFIED
    assert {qv.backend for qv in report.qubit_verdicts} == {Backend.SMT}
    assert sorted(p.name for p in (tmp_path / "smt").iterdir()) == [
        "q1.smt2", "q2.smt2", "q3.smt2"]


def test_smt_backend_with_sat_model(qft3, tmp_path):
    output = "sat\n(\n  (define-fun b2 () Bool\n    true)\n)\n"
    cfg = CheckerConfig(backend="smt", solver_command=_fake_solver(tmp_path, output))
    report = verify_circuit(inject_error(qft3, IncorrectGateOrder(1, 1, 3)), cfg)
    failing = report.failing
    assert failing.verdict is Verdict.VIOLATION
    assert failing.counterexample == {"b1": 0, "b2": 1, "b3": 0}
    assert failing.defaulted == ["b1", "b3"]
    assert (failing.expected, failing.actual) == ("010", "001")


def test_smt_model_that_is_no_counterexample(qft3, tmp_path):
    cfg = CheckerConfig(backend="smt", solver_command=_fake_solver(tmp_path, "sat\n(model)\n"))
    with pytest.raises(CounterexampleError):
        verify_circuit(inject_error(qft3, IncorrectGateOrder(1, 1, 3)), cfg)


def test_smt_backend_without_solver(qft3):
    report = verify_circuit(qft3, CheckerConfig(backend="smt", solver_command=NO_SOLVER))
    assert report.verdict is Verdict.SOLVER_UNAVAILABLE


def test_checker_config_validation():
    with pytest.raises(ValueError, match="unknown backend"):
        CheckerConfig(backend="bdd")
    with pytest.raises(ValueError):
        CheckerConfig(workers=0)


@pytest.mark.parametrize("m", range(1, 9))
def test_every_single_error_is_caught(m):
    base = generate_qft(m)
    checked = 0
    for spec in enumerate_single_errors(m):
        report = verify_circuit(inject_error(base, spec), CheckerConfig(backend="anf"))
        assert report.verdict in (Verdict.VIOLATION, Verdict.TYPE_ERROR), spec
        checked += 1
    assert checked > 0


@pytest.mark.parametrize("m", [4, 8, 16])
def test_rotation_split_is_accepted(m):
    rng = random.Random(Config.ORACLE_SEED + m)
    base = generate_qft(m)
    sites = [(t, k) for t in range(1, m) for k in range(1, m - t + 1) if k + 2 <= m]
    for target, ordinal in (rng.choice(sites) for _ in range(10)):
        report = verify_circuit(split_rotation(base, target, ordinal))
        assert report.verdict is Verdict.VERIFIED, (target, ordinal)


@pytest.mark.slow
@pytest.mark.parametrize("m", Config.DESK_SIZES)
def test_correct_circuits_verify_at_desk_scale(m):
    report = verify_circuit(generate_qft(m), CheckerConfig(backend="anf"))
    assert report.verdict is Verdict.VERIFIED
    assert len(report.qubit_verdicts) == m


def test_smt_verdicts_carry_solver_usage(qft3, tmp_path):
    cfg = CheckerConfig(backend="smt", exhaustive=True,
                        solver_command=_fake_solver(tmp_path, "unsat\n"))
    report = verify_circuit(qft3, cfg)
    for qv in report.qubit_verdicts:
        assert qv.solver_wall_s is not None and qv.solver_wall_s >= 0
        if hasattr(os, "wait4"):
            assert qv.solver_mem_mb > 0


def test_structural_verdicts_have_no_solver_usage(qft3):
    report = verify_circuit(qft3, CheckerConfig(backend="anf"))
    assert all(qv.solver_mem_mb is None for qv in report.qubit_verdicts)
