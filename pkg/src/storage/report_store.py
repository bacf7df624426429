"""
Thread-safe result store with pandas CSV and full-precision JSON export
"""
import json
import logging
from collections import deque
from threading import Lock
from typing import Any, Deque, Dict, List, Optional

import pandas as pd

from config import CSV_FLOAT_FORMAT, JSON_INDENT

logger = logging.getLogger(__name__)


def _as_row(item: Any) -> Dict[str, Any]:
    if isinstance(item, dict):
        return dict(item)
    if hasattr(item, "to_dict"):
        return item.to_dict()
    raise TypeError(f"cannot store {type(item).__name__} as a result row")


class ReportStore:
    """
    Result rows grouped by section, kept in insertion order.

    Features:
    - Automatic pruning via deque maxlen
    - Thread-safe operations
    - DataFrame views and CSV / JSON export
    """

    def __init__(self, max_rows: int = 100000):
        """
        Initialize the store.

        Args:
            max_rows: Maximum rows to retain per section
        """
        self._max_rows = max_rows
        self._sections: Dict[str, Deque[Dict[str, Any]]] = {}
        self._lock = Lock()

    def add(self, section: str, item: Any, **extra: Any) -> None:
        """Append a dict, or anything with to_dict(), to a section."""
        row = _as_row(item)
        row.update(extra)
        with self._lock:
            if section not in self._sections:
                self._sections[section] = deque(maxlen=self._max_rows)
            self._sections[section].append(row)

    def rows(self, section: str, n: Optional[int] = None) -> List[Dict[str, Any]]:
        with self._lock:
            rows = list(self._sections.get(section, []))
        if n is None:
            return rows
        return rows[-n:]

    def get_dataframe(self, section: str) -> pd.DataFrame:
        rows = self.rows(section)
        if not rows:
            return pd.DataFrame()
        return pd.DataFrame(rows)

    def to_csv_text(self, section: str) -> str:
        """Lossy human table, floats to six significant digits."""
        return self.get_dataframe(section).to_csv(index=False, float_format=CSV_FLOAT_FORMAT)

    def to_json_text(self, sections: Optional[List[str]] = None) -> str:
        """Full-precision JSON; floats use the shortest round-trip representation."""
        with self._lock:
            names = sections if sections is not None else list(self._sections.keys())
            payload = {name: list(self._sections.get(name, [])) for name in names}
        return json.dumps(payload, indent=JSON_INDENT)

    def export_to_csv(self, section: str, filepath: str) -> bool:
        """Write one section as CSV; returns False when the section is empty."""
        df = self.get_dataframe(section)
        if df.empty:
            return False
        df.to_csv(filepath, index=False, float_format=CSV_FLOAT_FORMAT)
        logger.info(f"wrote {len(df)} rows of {section} to {filepath}")
        return True

    def export_to_json(self, filepath: str, sections: Optional[List[str]] = None) -> None:
        with open(filepath, "w", encoding="utf-8") as handle:
            handle.write(self.to_json_text(sections))
            handle.write("\n")
        logger.info(f"wrote JSON results to {filepath}")

    @property
    def sections(self) -> List[str]:
        with self._lock:
            return list(self._sections.keys())

    def row_count(self, section: Optional[str] = None) -> int:
        with self._lock:
            if section is not None:
                return len(self._sections.get(section, []))
            return sum(len(rows) for rows in self._sections.values())

    def clear(self, section: Optional[str] = None) -> None:
        with self._lock:
            if section:
                self._sections.pop(section, None)
            else:
                self._sections.clear()
