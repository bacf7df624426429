# Numlin layer package
from .spectral import (
    SpectralDecomposition,
    as_hermitian,
    gram_power,
    gram_root_trace,
    hermitian_eig,
    is_psd,
    operator_norm,
    positive_projection,
    pseudo_power,
    rank_cutoff,
    require_finite,
    require_psd,
    singular_cutoff,
    trace_norm,
    trace_of_sqrt,
)
from .tensor import (
    TensorFactorization,
    double_ket,
    double_ket_inverse,
    maximally_entangled,
    partial_trace,
    partial_transpose,
    permute_factors,
    tensor,
)

__all__ = [
    "SpectralDecomposition",
    "TensorFactorization",
    "as_hermitian",
    "double_ket",
    "double_ket_inverse",
    "gram_power",
    "gram_root_trace",
    "hermitian_eig",
    "is_psd",
    "maximally_entangled",
    "operator_norm",
    "partial_trace",
    "partial_transpose",
    "permute_factors",
    "positive_projection",
    "pseudo_power",
    "rank_cutoff",
    "require_finite",
    "require_psd",
    "singular_cutoff",
    "tensor",
    "trace_norm",
    "trace_of_sqrt",
]
