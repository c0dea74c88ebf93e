"""Linear maps on matrix algebras: Choi matrices, complete positivity, Kraus operators."""
from .builtin import ChannelSpec, SweepRecord, family, geometric_weights, make_channel, reference_kraus, truncation_sweep
from .channels import (
    ORDERING,
    ChannelMap,
    ChoiMatrix,
    KrausSet,
    apply,
    apply_kraus,
    build_choi,
    channel_from_choi,
    channel_from_function,
    channel_from_kraus,
    compose,
    convex_mix,
    identity_channel,
    is_hermiticity_preserving,
    is_trace_preserving,
    partial_trace_output,
)
from .cp import (
    CpReport,
    CriterionViolation,
    QFactor,
    choi_coefficient,
    cp_oracle,
    is_completely_positive,
    kraus_from_choi,
    kraus_from_q,
    minimal_kraus_rank,
    q_factor,
    rotate_kraus,
)
from .linalg import (
    DomainError,
    EigenDecomposition,
    eig_hermitian,
    hs_expand,
    hs_inner,
    is_positive_semidefinite,
    kron,
    matrix_unit,
)

__version__ = "0.1.0"
