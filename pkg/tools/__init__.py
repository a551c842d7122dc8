"""Tools Package - Export all tool functions"""

from .circuit_tools import (
    GateKind,
    GateInstance,
    CircuitDescription,
    hadamard,
    rotation,
    qft_gate_count,
    generate_qft,
    cone_positions
)

from .circuit_io_tools import (
    parse_circuit,
    serialize_circuit,
    read_circuit,
    write_circuit
)

from .fault_tools import (
    ErrorSpec,
    IncorrectGateOrder,
    IncorrectControl,
    MissingH,
    DuplicateH,
    WrongHInput,
    WrongRnDataInput,
    MissingRotation,
    ExtraRotation,
    parse_error_spec,
    inject_error,
    inject_errors,
    split_rotation,
    enumerate_single_errors,
    scenario_error
)

from .expr_tools import (
    BoolExpr,
    FALSE,
    TRUE,
    const,
    var,
    xor,
    and_,
    evaluate
)

from .anf_tools import (
    ANFPoly,
    anf_normalize
)

from .bitvector_tools import (
    SymbolicBitVector,
    abstract_h,
    abstract_rn,
    symbolic_add_mod,
    eval_bits,
    bits_value
)

from .wire_tools import (
    WireType,
    TypeErrorKind,
    CircuitTypeError,
    WireTyping,
    typecheck
)

from .smt_tools import (
    SolverStatus,
    SolverResult,
    emit_smt2,
    parse_model,
    invoke_solver,
    solver_available
)

from .simulation_tools import (
    simulate,
    qft_reference,
    per_qubit_phase,
    product_state,
    extract_phases
)

__all__ = [
    'GateKind',
    'GateInstance',
    'CircuitDescription',
    'hadamard',
    'rotation',
    'qft_gate_count',
    'generate_qft',
    'cone_positions',
    'parse_circuit',
    'serialize_circuit',
    'read_circuit',
    'write_circuit',
    'ErrorSpec',
    'IncorrectGateOrder',
    'IncorrectControl',
    'MissingH',
    'DuplicateH',
    'WrongHInput',
    'WrongRnDataInput',
    'MissingRotation',
    'ExtraRotation',
    'parse_error_spec',
    'inject_error',
    'inject_errors',
    'split_rotation',
    'enumerate_single_errors',
    'scenario_error',
    'BoolExpr',
    'FALSE',
    'TRUE',
    'const',
    'var',
    'xor',
    'and_',
    'evaluate',
    'ANFPoly',
    'anf_normalize',
    'SymbolicBitVector',
    'abstract_h',
    'abstract_rn',
    'symbolic_add_mod',
    'eval_bits',
    'bits_value',
    'WireType',
    'TypeErrorKind',
    'CircuitTypeError',
    'WireTyping',
    'typecheck',
    'SolverStatus',
    'SolverResult',
    'emit_smt2',
    'parse_model',
    'invoke_solver',
    'solver_available',
    'simulate',
    'qft_reference',
    'per_qubit_phase',
    'product_state',
    'extract_phases'
]
