# Alerts layer package
from .invariant_engine import (
    InvariantAuditor,
    InvariantRule,
    InvariantSeverity,
    InvariantType,
    Violation,
)

__all__ = ["InvariantAuditor", "InvariantRule", "InvariantSeverity", "InvariantType", "Violation"]
