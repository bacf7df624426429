# Measure layer package
from .bounds import BoundReport, holevo_curlander_bounds
from .ensemble import Ensemble, GeneralizedMeasurement, Povm, ensemble_inner_product, p_succ
from .measurements import (
    directional_lambda,
    gm_iterate,
    helstrom_optimal,
    holevo_pure_measurement,
    identity_guess,
    jrf_iterate,
    pretty_good_measurement,
    quadratic_measurement,
)

__all__ = [
    "BoundReport",
    "Ensemble",
    "GeneralizedMeasurement",
    "Povm",
    "directional_lambda",
    "ensemble_inner_product",
    "gm_iterate",
    "helstrom_optimal",
    "holevo_curlander_bounds",
    "holevo_pure_measurement",
    "identity_guess",
    "jrf_iterate",
    "p_succ",
    "pretty_good_measurement",
    "quadratic_measurement",
]
