"""Tests for the command-line entry point"""
import json

import pandas as pd
import pytest

from config import Config
from main import main
from tools.circuit_io_tools import read_circuit
from tools.circuit_tools import generate_qft


@pytest.fixture
def qft4_file(tmp_path):
    path = tmp_path / "qft4.json"
    assert main(["generate", "--qubits", "4", "-o", str(path)]) == 0
    return path


def test_generate(capsys, qft4_file):
    assert read_circuit(qft4_file) == generate_qft(4)
    assert "10 gates" in capsys.readouterr().out


def test_generate_matches_golden_file(tmp_path, data_dir):
    path = tmp_path / "qft3.json"
    main(["generate", "--qubits", "3", "-o", str(path)])
    assert path.read_text() == (data_dir / "qft3.json").read_text()


def test_verify_correct_circuit(qft4_file, capsys):
    assert main(["verify", "-i", str(qft4_file)]) == 0
    assert "✓ Verified" in capsys.readouterr().out


def test_verify_reports_violation(qft4_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    assert main(["inject", "-i", str(qft4_file), "-o", str(bad), "--error", "control:1:1:3"]) == 0
    capsys.readouterr()
    assert main(["verify", "-i", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "Violation on qubit 1" in out
    assert "counterexample" in out


def test_verify_reports_type_error(qft4_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    main(["inject", "-i", str(qft4_file), "-o", str(bad), "--error", "missing-h:1"])
    capsys.readouterr()
    assert main(["verify", "-i", str(bad)]) == 2
    assert "TypeError" in capsys.readouterr().out


def test_verify_json(qft4_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    main(["inject", "-i", str(qft4_file), "-o", str(bad), "--error", "gate-order:1:1:3"])
    capsys.readouterr()
    assert main(["verify", "-i", str(bad), "--exhaustive", "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "Violation"
    assert report["mode"] == "exhaustive"
    assert len(report["qubit_verdicts"]) == 4


def test_split_rotation_still_verifies(qft4_file, tmp_path):
    split = tmp_path / "split.json"
    assert main(["inject", "-i", str(qft4_file), "-o", str(split), "--split", "1:1"]) == 0
    assert len(read_circuit(split).gates) == 11
    assert main(["verify", "-i", str(split)]) == 0


def test_bad_split_is_a_usage_error(qft4_file, tmp_path):
    out = tmp_path / "out.json"
    assert main(["inject", "-i", str(qft4_file), "-o", str(out), "--split", "one"]) == 3


def test_unknown_error_class(qft4_file, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["inject", "-i", str(qft4_file), "-o", str(out), "--error", "bogus:1"]) == 3
    assert "unknown error class" in capsys.readouterr().err


def test_missing_input_file(tmp_path):
    assert main(["verify", "-i", str(tmp_path / "absent.json")]) == 3


def test_malformed_circuit_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"qubits": 2, "gates": [')
    assert main(["verify", "-i", str(path)]) == 3
    assert "line 1" in capsys.readouterr().err


def test_usage_error_exits_3():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 3


def test_missing_solver(qft4_file, monkeypatch):
    monkeypatch.setattr(Config, "SOLVER_COMMAND", "qftv-no-such-solver-binary")
    assert main(["verify", "-i", str(qft4_file), "--backend", "smt"]) == 4


def test_emit_smt(tmp_path, data_dir):
    circuit = tmp_path / "qft3.json"
    main(["generate", "--qubits", "3", "-o", str(circuit)])
    out = tmp_path / "q3.smt2"
    assert main(["emit-smt", "-i", str(circuit), "--qubit", "3", "-o", str(out)]) == 0
    assert out.read_text() == (data_dir / "qft3_q3.smt2").read_text()


def test_oracle_check(qft4_file, capsys):
    assert main(["oracle-check", "-i", str(qft4_file), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["inputs_checked"] == 16
    assert report["dft_ok"] is True


def test_oracle_check_flags_non_dft(qft4_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    main(["inject", "-i", str(qft4_file), "-o", str(bad), "--error", "gate-order:1:1:3"])
    capsys.readouterr()
    assert main(["oracle-check", "-i", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "abstraction vs simulation: ok" in out
    assert "simulation vs bit-reversed DFT: FAIL" in out


def test_oracle_check_over_cap(tmp_path):
    path = tmp_path / "qft6.json"
    main(["generate", "--qubits", "6", "-o", str(path)])
    assert main(["oracle-check", "-i", str(path), "--max-qubits", "4"]) == 3


def test_bench_csv_and_plot_data(tmp_path):
    csv_path = tmp_path / "bench.csv"
    plot_path = tmp_path / "bench.dat"
    code = main(["bench", "--sizes", "4,8", "--scenarios", "correct,gate-2", "--repeats", "1",
                 "--no-memory", "--csv", str(csv_path), "--plot-data", str(plot_path),
                 "--positions", "8"])
    assert code == 0
    frame = pd.read_csv(csv_path, comment="#")
    sized = frame[~frame["scenario"].str.contains("@")]
    assert list(sized["scenario"]) == ["correct", "gate-2", "correct", "gate-2"]
    assert list(sized["verdict"]) == ["Verified", "Violation", "Verified", "Violation"]
    assert frame["scenario"].str.startswith("gate@").any()
    assert "# error-position m=8" in plot_path.read_text()


def test_bench_control_positions(tmp_path):
    csv_path = tmp_path / "bench.csv"
    code = main(["bench", "--sizes", "4", "--scenarios", "correct", "--repeats", "1",
                 "--no-memory", "--csv", str(csv_path),
                 "--positions", "8", "--position-kind", "control"])
    assert code == 0
    scenarios = pd.read_csv(csv_path, comment="#")["scenario"]
    positioned = scenarios[scenarios.str.contains("@")]
    assert len(positioned) > 0
    assert positioned.str.startswith("control@").all()


def test_bench_small_width_prints_not_applicable(capsys):
    code = main(["bench", "--sizes", "1", "--repeats", "1", "--no-memory"])
    assert code == 0
    out = capsys.readouterr().out
    assert "gate-2" in out
    assert "n/a" in out


def test_bench_rejects_unknown_position_kind():
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--positions", "8", "--position-kind", "missing-h"])
    assert exc.value.code == 3


def test_bench_bad_sizes():
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--sizes", "4,x"])
    assert exc.value.code == 3
