"""Configuration for the QFT rotational-abstraction verifier"""
import os
from typing import List


class Config:
    """Application configuration"""
    APP_NAME = "qftv"
    VERSION = "1.0.0"

    # SMT solver (external process; the obligation file is appended or fills {file})
    SOLVER_COMMAND = os.getenv("QFTV_SOLVER", "z3 -smt2")
    SOLVER_TIMEOUT_S = float(os.getenv("QFTV_SOLVER_TIMEOUT", "300"))

    # Abstraction
    ANF_TERM_BUDGET = int(os.getenv("QFTV_ANF_BUDGET", str(2 ** 20)))
    CHECK_WORKERS = int(os.getenv("QFTV_WORKERS", "1"))

    # Oracle
    SIMULATION_CAP = 12
    EXHAUSTIVE_INPUT_CAP = 8
    ORACLE_SAMPLE_INPUTS = 64
    ORACLE_SEED = 2021
    AMPLITUDE_TOLERANCE = 1e-9

    # Benchmarks
    DESK_SIZES: List[int] = [16, 32, 64, 128, 256, 512, 1024, 2048]
    HUGE_SIZES: List[int] = [4096, 8192, 10000]
    BENCH_SCENARIOS: List[str] = [
        "correct", "gate-2", "gate-n", "control-2", "control-n"
    ]
    CSV_COLUMNS: List[str] = [
        "qubits", "gates", "scenario", "verdict", "backend", "time_s", "mem_mb"
    ]
    BENCH_REPEATS = 3
    BENCH_MAX_GATES = 2_100_000

    # Logging
    LOG_LEVEL = os.getenv("QFTV_LOG_LEVEL", "WARNING")
    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
