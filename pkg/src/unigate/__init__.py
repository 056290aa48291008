"""unigate: networks of a single two-qubit gate, lowered and verified numerically."""

__version__ = "0.1.0"

from .approx import (
    DEFAULT_BASE,
    ApproxQuery,
    ApproxResult,
    ScalingRow,
    find_power,
    inverse_params,
    power_params,
    scaling_study,
    torus_dist,
)
from .gates import (
    BlochDecomp,
    GateParams,
    Placement,
    a_block,
    a_matrix,
    bloch_decompose,
    bloch_reconstruct,
    controlled_embed,
    d_matrix,
    p_matrix,
    q_matrix,
    qubit_perm,
    rz_matrix,
    v_matrix,
)
from .matcore import (
    TAU,
    adjoint,
    apply,
    basis_state,
    kron,
    mat_power,
    mul,
    phase_dist,
    unitarity_defect,
)
from .netdsl import Document, ErrorKind, ParseError, parse, run, serialize
from .synth import (
    CompileError,
    CompileReport,
    CompileStage,
    ConvergenceSample,
    Network,
    NetOp,
    OpKind,
    approx_rz,
    approx_vperp,
    build_d,
    build_d_exact,
    build_q,
    build_t,
    compile_d,
    concat,
    convergence_study,
    eval_network,
    lower_v,
    lower_vbar,
    t_generator,
)

__all__ = [
    "TAU",
    "ApproxQuery",
    "ApproxResult",
    "BlochDecomp",
    "CompileError",
    "CompileReport",
    "CompileStage",
    "ConvergenceSample",
    "DEFAULT_BASE",
    "Document",
    "ErrorKind",
    "GateParams",
    "NetOp",
    "Network",
    "OpKind",
    "ParseError",
    "Placement",
    "ScalingRow",
    "a_block",
    "a_matrix",
    "adjoint",
    "apply",
    "approx_rz",
    "approx_vperp",
    "basis_state",
    "bloch_decompose",
    "bloch_reconstruct",
    "build_d",
    "build_d_exact",
    "build_q",
    "build_t",
    "compile_d",
    "concat",
    "controlled_embed",
    "convergence_study",
    "d_matrix",
    "eval_network",
    "find_power",
    "inverse_params",
    "kron",
    "lower_v",
    "lower_vbar",
    "mat_power",
    "mul",
    "p_matrix",
    "parse",
    "phase_dist",
    "power_params",
    "q_matrix",
    "qubit_perm",
    "run",
    "rz_matrix",
    "scaling_study",
    "serialize",
    "t_generator",
    "torus_dist",
    "unitarity_defect",
    "v_matrix",
]
