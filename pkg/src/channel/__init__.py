# Channel layer package
from .cpmap import (
    ChoiMatrix,
    CpMap,
    StinespringDilation,
    adjoint_apply,
    apply,
    canonical_stinespring,
    choi,
    choi_distance,
    compose,
    map_from_action,
    map_from_choi,
)
from .library import (
    GATES,
    amplitude_damping,
    depolarizing,
    depolarizing_recovery_parameter,
    identity_channel,
    measurement_channel,
    unitary_channel,
    weyl_operators,
)
from .recovery import (
    barnum_knill_recovery,
    entanglement_fidelity,
    quadratic_recovery,
    recovery_bounds,
    recovery_lambda,
    transpose_channel,
)
from .rho_kraus import (
    RhoKrausDecomposition,
    functional_calculus,
    functional_calculus_from_choi,
    purified_output,
    quadratic_reweighting,
    reweighting_kernel,
    rho_kraus,
)

__all__ = [
    "GATES",
    "ChoiMatrix",
    "CpMap",
    "RhoKrausDecomposition",
    "StinespringDilation",
    "adjoint_apply",
    "amplitude_damping",
    "apply",
    "barnum_knill_recovery",
    "canonical_stinespring",
    "choi",
    "choi_distance",
    "compose",
    "depolarizing",
    "depolarizing_recovery_parameter",
    "entanglement_fidelity",
    "functional_calculus",
    "functional_calculus_from_choi",
    "identity_channel",
    "map_from_action",
    "map_from_choi",
    "measurement_channel",
    "purified_output",
    "quadratic_recovery",
    "quadratic_reweighting",
    "recovery_bounds",
    "recovery_lambda",
    "reweighting_kernel",
    "rho_kraus",
    "transpose_channel",
    "unitary_channel",
    "weyl_operators",
]
