# Overlap layer package
from .bounds import (
    ensemble_to_overlap,
    overlap_bounds,
    overlap_kernel,
    overlap_lambda,
    perfectly_overlappable,
    quadratic_overlapper,
    refined_upper,
)
from .instance import (
    HattedInstance,
    OverlapInstance,
    hat,
    overlap_value,
    pulled_back_vectors,
    reduced_states,
    rescale,
)
from .min_entropy import (
    MinEntropyReport,
    MinEntropySweep,
    min_entropy_bounds,
    min_entropy_instance,
    min_entropy_sweep,
)

__all__ = [
    "HattedInstance",
    "MinEntropyReport",
    "MinEntropySweep",
    "OverlapInstance",
    "ensemble_to_overlap",
    "hat",
    "min_entropy_bounds",
    "min_entropy_instance",
    "min_entropy_sweep",
    "overlap_bounds",
    "overlap_kernel",
    "overlap_lambda",
    "overlap_value",
    "perfectly_overlappable",
    "pulled_back_vectors",
    "quadratic_overlapper",
    "reduced_states",
    "refined_upper",
    "rescale",
]
