"""
Configuration constants for the Quadbound discrimination and recovery toolkit
"""
from typing import List

# =============================================================================
# LINEAR ALGEBRA
# =============================================================================
HERMITICITY_TOL: float = 1e-10  # Scaled by max(1, ||A||_inf)
SPECTRAL_TOL: float = 1e-12
RANK_CUTOFF_FACTOR: float = 1.0  # lambda <= factor * dim * eps * max(lambda_max, 1) is zero
SINGULAR_CUTOFF_FACTOR: float = 10.0  # sigma <= factor * max(shape) * eps * max(sigma_max, 1) is zero
PSD_TOL: float = 1e-10
NORMALIZATION_TOL: float = 1e-10
UNIT_VECTOR_TOL: float = 1e-12

# =============================================================================
# BOUNDS
# =============================================================================
REPORT_SLACK: float = 1e-9
MONOTONE_SLACK: float = 1e-12

# =============================================================================
# ITERATION
# =============================================================================
DEFAULT_TOL: float = 1e-10
DEFAULT_MAX_ITERS: int = 1000
TRACE_LABEL: str = "monotone lower estimate"

# =============================================================================
# MIN-ENTROPY
# =============================================================================
DEFAULT_S_GRID: List[float] = [0.0, 0.25, 0.5, 0.75, 1.0]

# =============================================================================
# RANDOM INSTANCES
# =============================================================================
DEFAULT_SEED: int = 0

# =============================================================================
# OUTPUT
# =============================================================================
CSV_FLOAT_FORMAT: str = "%.6g"  # Lossy human table
JSON_INDENT: int = 2

# =============================================================================
# SELF-TEST
# =============================================================================
SELFTEST_DISCRIMINATION_SEEDS: int = 20
SELFTEST_ITERATION_SEEDS: int = 5
SELFTEST_ITERATION_STEPS: int = 30
SELFTEST_RECOVERY_SEEDS: int = 10
SELFTEST_OVERLAP_SEEDS: int = 10
SELFTEST_MIN_ENTROPY_SEEDS: int = 5

# =============================================================================
# LOGGING
# =============================================================================
LOG_LEVEL: str = "WARNING"
LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"
