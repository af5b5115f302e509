# qaffine/core/report.py

"""
Report Module for qaffine

This module provides CheckResult, the outcome of a single verification, and
Report, an ordered collection of results with deterministic JSON and text
renderings and the exit code of a run.
"""

import json
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, SKIPPED)


class CheckResult:
    """
    Represents the result of one verification.
    """

    def __init__(self, name: str, status: str, failing_cells: Optional[Sequence] = None,
                 safe_window: Optional[Sequence[int]] = None, detail: str = "",
                 elapsed_ms: float = 0.0, group: str = "", notes: Optional[List[str]] = None):
        """
        Initializes a CheckResult.

        Args:
            name (str): Name of the check (relation label, identity name).
            status (str): One of 'pass', 'fail', 'skipped'.
            failing_cells (Optional[Sequence]): Cells or entries with a nonzero residual.
            safe_window (Optional[Sequence[int]]): Bounding box of the verified cells.
            detail (str): Human-readable explanation.
            elapsed_ms (float): Wall-clock time of the check.
            group (str): Suite or family the check belongs to.
            notes (Optional[List[str]]): Conventions and caveats attached to the check.
        """
        if status not in STATUSES:
            raise ValueError(f"invalid status '{status}'")
        self.name = name
        self.status = status
        self.failing_cells = [list(c) if isinstance(c, tuple) else c for c in (failing_cells or [])]
        self.safe_window = list(safe_window) if safe_window is not None else None
        self.detail = detail
        self.elapsed_ms = elapsed_ms
        self.group = group
        self.notes = list(notes or [])

    @classmethod
    def passed(cls, name: str, **kwargs) -> "CheckResult":
        return cls(name, PASS, **kwargs)

    @classmethod
    def failed(cls, name: str, failing_cells=None, **kwargs) -> "CheckResult":
        return cls(name, FAIL, failing_cells=failing_cells, **kwargs)

    @classmethod
    def skipped(cls, name: str, detail: str, **kwargs) -> "CheckResult":
        return cls(name, SKIPPED, detail=detail, **kwargs)

    @classmethod
    def from_cells(cls, name: str, failing_cells: Sequence, **kwargs) -> "CheckResult":
        """Pass when there are no failing cells, fail otherwise."""
        status = FAIL if failing_cells else PASS
        return cls(name, status, failing_cells=failing_cells, **kwargs)

    def __bool__(self):
        return self.status == PASS

    def __repr__(self):
        return f"CheckResult(name='{self.name}', status='{self.status}', failing={len(self.failing_cells)})"

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "group": self.group,
            "name": self.name,
            "status": self.status,
            "failing_cells": self.failing_cells,
            "safe_window": self.safe_window,
            "detail": self.detail,
        }
        if self.notes:
            data["notes"] = self.notes
        if include_timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


@contextmanager
def timed() -> Iterator[Dict[str, float]]:
    """Measures the wall-clock time of a block in milliseconds."""
    holder = {"elapsed_ms": 0.0}
    start = time.perf_counter()
    try:
        yield holder
    finally:
        holder["elapsed_ms"] = (time.perf_counter() - start) * 1000.0


class Report:
    """
    Ordered collection of check results.
    """

    def __init__(self, title: str, results: Optional[Iterable[CheckResult]] = None,
                 extras: Optional[Dict[str, Any]] = None):
        self.title = title
        self.results: List[CheckResult] = list(results or [])
        self.extras: Dict[str, Any] = dict(extras or {})

    def add(self, result: CheckResult) -> None:
        self.results.append(result)
        logger.info(f"{result.group}/{result.name}: {result.status}")

    def extend(self, results: Iterable[CheckResult]) -> None:
        for result in results:
            self.add(result)

    def sorted_results(self) -> List[CheckResult]:
        return sorted(self.results, key=lambda r: (r.group, r.name))

    def by_status(self, status: str) -> List[CheckResult]:
        return [r for r in self.sorted_results() if r.status == status]

    @property
    def passed(self) -> List[CheckResult]:
        return self.by_status(PASS)

    @property
    def failed(self) -> List[CheckResult]:
        return self.by_status(FAIL)

    @property
    def skipped(self) -> List[CheckResult]:
        return self.by_status(SKIPPED)

    def exit_code(self) -> int:
        """
        0 when nothing failed and something passed, 1 on any failure,
        2 when every check was skipped. A report without checks only carries
        extras and exits with 0.
        """
        if not self.results:
            return 0
        if self.failed:
            return 1
        if not self.passed:
            return 2
        return 0

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        return {
            "title": self.title,
            "summary": {
                "pass": len(self.passed),
                "fail": len(self.failed),
                "skipped": len(self.skipped),
            },
            "results": [r.to_dict(include_timing) for r in self.sorted_results()],
            **({"extras": self.extras} if self.extras else {}),
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, default=str)

    def to_text(self) -> str:
        lines = [self.title, "=" * len(self.title)]
        group = None
        for result in self.sorted_results():
            if result.group != group:
                group = result.group
                if group:
                    lines.append(f"[{group}]")
            line = f"  {result.status.upper():7s} {result.name}"
            if result.safe_window is not None:
                line += f"  window={result.safe_window}"
            if result.failing_cells:
                shown = ", ".join(str(c) for c in result.failing_cells[:5])
                more = len(result.failing_cells) - 5
                line += f"  failing={shown}" + (f" (+{more})" if more > 0 else "")
            lines.append(line)
            if result.detail and result.status != PASS:
                lines.append(f"          {result.detail}")
            for note in result.notes:
                lines.append(f"          note: {note}")
        for key in sorted(self.extras):
            lines.append(f"{key}: {self.extras[key]}")
        lines.append(f"summary: {len(self.passed)} pass, {len(self.failed)} fail, {len(self.skipped)} skipped")
        return "\n".join(lines)


def failing_entries(cells: Dict, limit: int = 50) -> List[List]:
    """
    Flattens nonzero residual cells into [m, n] or [m, n, row, col] records.

    Matrix-valued cells contribute their first nonzero entry (1-based).
    """
    records = []
    for (m, n) in sorted(cells)[:limit]:
        value = cells[(m, n)]
        entries = getattr(value, "entries", None)
        if entries:
            i, j = min(entries)
            records.append([m, n, i + 1, j + 1])
        else:
            records.append([m, n])
    return records


def grid_result(name: str, residual, group: str = "", notes: Optional[List[str]] = None,
                elapsed_ms: float = 0.0) -> CheckResult:
    """
    Turns a residual grid into a CheckResult.

    A residual with no known cell yields 'skipped' so that an empty safe
    window never counts as a pass.
    """
    window = residual.safe_window()
    if window is None:
        logger.warning(f"{group}/{name}: empty safe window, skipped.")
        return CheckResult.skipped(name, "empty safe window at this cutoff", group=group,
                                   notes=notes, elapsed_ms=elapsed_ms)
    bad = {c: residual.cells[c] for c in residual.nonzero_cells()}
    detail = f"{len(bad)} nonzero cells of {len(residual.known)}" if bad else \
        f"{len(residual.known)} cells vanish"
    return CheckResult.from_cells(name, failing_entries(bad), safe_window=window, detail=detail,
                                  group=group, notes=notes, elapsed_ms=elapsed_ms)
