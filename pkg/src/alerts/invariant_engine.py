"""
Rule-based auditor for the guaranteed inequalities of computed reports
"""
import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config import REPORT_SLACK
from ..iterate import IterationTrace, StopReason
from ..measure import BoundReport
from ..overlap import MinEntropyReport

logger = logging.getLogger(__name__)


class InvariantSeverity(Enum):
    INFO = "info"
    WARNING = "warning"
    CRITICAL = "critical"


class InvariantType(Enum):
    LOWER_LEG = "lower_leg"
    UPPER_LEG = "upper_leg"
    LAMBDA_SIGN = "lambda_sign"
    LAMBDA_CEILING = "lambda_ceiling"
    ORACLE_BRACKET = "oracle_bracket"
    NON_FINITE = "non_finite"
    ENTROPY_ORDER = "entropy_order"
    MONOTONICITY = "monotonicity"
    ORACLE_SANDWICH = "oracle_sandwich"
    PLATEAU = "plateau"
    CUSTOM = "custom"


@dataclass
class Violation:
    """A broken invariant on one audited result."""
    timestamp: datetime
    invariant_type: InvariantType
    message: str
    severity: InvariantSeverity
    value: float
    subject: Optional[str] = None
    metadata: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "timestamp": self.timestamp.isoformat(),
            "type": self.invariant_type.value,
            "message": self.message,
            "severity": self.severity.value,
            "value": self.value,
            "subject": self.subject,
            "metadata": self.metadata,
        }


@dataclass
class InvariantRule:
    """
    A check over one kind of result.

    condition(subject, slack) is True when the invariant is broken; value
    extracts the number quoted in the message.
    """
    name: str
    invariant_type: InvariantType
    applies_to: Tuple[type, ...]
    condition: Callable[[Any, float], bool]
    value: Callable[[Any], float]
    message_template: str
    severity: InvariantSeverity = InvariantSeverity.CRITICAL


def _report_finite(r: BoundReport) -> bool:
    return bool(np.all(np.isfinite([r.lam, r.lambda_sq, r.achieved, r.upper])))


def _oracle_outside(r: BoundReport, slack: float) -> bool:
    if r.oracle_optimal is None:
        return False
    return r.oracle_optimal < r.achieved - slack or r.oracle_optimal > r.upper + slack


class InvariantAuditor:
    """
    Rule engine that re-validates bound reports, min-entropy reports and
    iteration traces before they are emitted.

    Features:
    - Configurable rules per result type
    - Violation history
    - Callbacks for new violations
    """

    DEFAULT_RULES = [
        InvariantRule(
            name="lower_leg",
            invariant_type=InvariantType.LOWER_LEG,
            applies_to=(BoundReport,),
            condition=lambda r, slack: r.lambda_sq > r.achieved + slack,
            value=lambda r: r.lambda_sq - r.achieved,
            message_template="lower bound exceeds achieved value by {value:.3e}",
        ),
        InvariantRule(
            name="upper_leg",
            invariant_type=InvariantType.UPPER_LEG,
            applies_to=(BoundReport,),
            condition=lambda r, slack: r.achieved > r.upper + slack,
            value=lambda r: r.achieved - r.upper,
            message_template="achieved value exceeds upper bound by {value:.3e}",
        ),
        InvariantRule(
            name="lambda_sign",
            invariant_type=InvariantType.LAMBDA_SIGN,
            applies_to=(BoundReport,),
            condition=lambda r, slack: r.lam < -slack,
            value=lambda r: r.lam,
            message_template="Lambda is negative: {value:.12g}",
        ),
        InvariantRule(
            name="lambda_ceiling",
            invariant_type=InvariantType.LAMBDA_CEILING,
            applies_to=(BoundReport,),
            condition=lambda r, slack: r.ceiling is not None and r.lam > r.ceiling + slack,
            value=lambda r: r.lam - (r.ceiling or 0.0),
            message_template="Lambda exceeds its ceiling by {value:.3e}",
        ),
        InvariantRule(
            name="oracle_bracket",
            invariant_type=InvariantType.ORACLE_BRACKET,
            applies_to=(BoundReport,),
            condition=_oracle_outside,
            value=lambda r: r.oracle_optimal if r.oracle_optimal is not None else float("nan"),
            message_template="oracle optimum {value:.12g} lies outside [achieved, upper]",
        ),
        InvariantRule(
            name="finite_report",
            invariant_type=InvariantType.NON_FINITE,
            applies_to=(BoundReport,),
            condition=lambda r, slack: not _report_finite(r),
            value=lambda r: float("nan"),
            message_template="report contains non-finite values",
        ),
        InvariantRule(
            name="entropy_order",
            invariant_type=InvariantType.ENTROPY_ORDER,
            applies_to=(MinEntropyReport,),
            condition=lambda r, slack: bool(r.violations(slack)),
            value=lambda r: r.lower - r.upper,
            message_template="min-entropy estimates out of order (lower - upper = {value:.3e})",
        ),
        InvariantRule(
            name="trace_monotone",
            invariant_type=InvariantType.MONOTONICITY,
            applies_to=(IterationTrace,),
            condition=lambda t, slack: not t.is_monotone(),
            value=lambda t: float(len(t.decreases())),
            message_template="seminorm decreased at {value:.0f} steps",
        ),
        InvariantRule(
            name="trace_oracle_sandwich",
            invariant_type=InvariantType.ORACLE_SANDWICH,
            applies_to=(IterationTrace,),
            condition=lambda t, slack: not t.satisfies_oracle_sandwich(slack),
            value=lambda t: t.oracle_value if t.oracle_value is not None else float("nan"),
            message_template="trace leaves the sandwich below the oracle optimum {value:.12g}",
            severity=InvariantSeverity.WARNING,
        ),
        InvariantRule(
            name="trace_plateau",
            invariant_type=InvariantType.PLATEAU,
            applies_to=(IterationTrace,),
            condition=lambda t, slack: t.stop_reason == StopReason.MAX_ITERS,
            value=lambda t: float(t.steps),
            message_template="iteration stopped at max_iters after {value:.0f} steps",
            severity=InvariantSeverity.INFO,
        ),
    ]

    def __init__(self, max_history: int = 100, slack: float = REPORT_SLACK):
        """
        Initialize the auditor.

        Args:
            max_history: Maximum violations to retain in history
            slack: Tolerance for report inequalities
        """
        self._rules: List[InvariantRule] = list(self.DEFAULT_RULES)
        self._history: deque = deque(maxlen=max_history)
        self._callbacks: List[Callable[[Violation], None]] = []
        self._lock = threading.Lock()
        self._slack = slack
        self._audited = 0

    def add_rule(self, rule: InvariantRule) -> None:
        self._rules.append(rule)

    def remove_rule(self, name: str) -> bool:
        for i, rule in enumerate(self._rules):
            if rule.name == name:
                self._rules.pop(i)
                return True
        return False

    def on_violation(self, callback: Callable[[Violation], None]) -> None:
        """Register a callback for new violations."""
        self._callbacks.append(callback)

    def audit(
        self,
        subject: Any,
        label: Optional[str] = None,
        timestamp: Optional[datetime] = None,
    ) -> List[Violation]:
        """
        Check a result against every rule that applies to its type.

        Args:
            subject: BoundReport, MinEntropyReport or IterationTrace
            label: Name used in messages and history
            timestamp: Audit time

        Returns:
            List of violations found
        """
        if timestamp is None:
            timestamp = datetime.now(timezone.utc)
        if label is None:
            label = getattr(subject, "label", None) or type(subject).__name__

        found = []
        with self._lock:
            self._audited += 1
            for rule in self._rules:
                if not isinstance(subject, rule.applies_to):
                    continue
                if not rule.condition(subject, self._slack):
                    continue
                value = float(rule.value(subject))
                violation = Violation(
                    timestamp=timestamp,
                    invariant_type=rule.invariant_type,
                    message=f"{label}: " + rule.message_template.format(value=value),
                    severity=rule.severity,
                    value=value,
                    subject=label,
                    metadata={"rule": rule.name},
                )
                self._history.append(violation)
                found.append(violation)

                for callback in self._callbacks:
                    try:
                        callback(violation)
                    except Exception as e:
                        logger.warning(f"violation callback failed: {e}")

        for violation in found:
            if violation.severity == InvariantSeverity.CRITICAL:
                logger.error(violation.message)
            else:
                logger.info(violation.message)
        return found

    def get_history(
        self,
        n: Optional[int] = None,
        severity: Optional[InvariantSeverity] = None,
        invariant_type: Optional[InvariantType] = None,
    ) -> List[Violation]:
        with self._lock:
            violations = list(self._history)

        if severity:
            violations = [v for v in violations if v.severity == severity]
        if invariant_type:
            violations = [v for v in violations if v.invariant_type == invariant_type]

        if n:
            return violations[-n:]
        return violations

    def has_critical(self) -> bool:
        return bool(self.get_history(severity=InvariantSeverity.CRITICAL))

    def clear_history(self) -> None:
        with self._lock:
            self._history.clear()

    @property
    def violation_count(self) -> int:
        return len(self._history)

    @property
    def audited_count(self) -> int:
        return self._audited
