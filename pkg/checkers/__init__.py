"""Checkers Package - Export the verification components"""

from .abstract_runner import (
    AbstractOutputs,
    run_abstract,
    run_concrete
)

from .property_checker import (
    Verdict,
    Backend,
    QubitVerdict,
    target_vector,
    find_counterexample,
    check_qubit,
    check_qubit_smt
)

from .coordinator import (
    CheckerConfig,
    VerificationReport,
    verify_circuit
)

from .oracle_checker import (
    OracleReport,
    cross_check
)

from .bench_runner import (
    BenchSweep,
    BenchRecord,
    BenchResult,
    run_bench,
    position_sweep,
    rank_correlation
)

__all__ = [
    'AbstractOutputs',
    'run_abstract',
    'run_concrete',
    'Verdict',
    'Backend',
    'QubitVerdict',
    'target_vector',
    'find_counterexample',
    'check_qubit',
    'check_qubit_smt',
    'CheckerConfig',
    'VerificationReport',
    'verify_circuit',
    'OracleReport',
    'cross_check',
    'BenchSweep',
    'BenchRecord',
    'BenchResult',
    'run_bench',
    'position_sweep',
    'rank_correlation'
]
