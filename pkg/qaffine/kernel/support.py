# qaffine/kernel/support.py

"""
Support Module for qaffine

Integer intervals (possibly unbounded) and two-dimensional regions cut out by
interval constraints on m, n and m + n. Series and grids record a support of
this kind next to the finite set of indices they actually know; convolution
uses the supports to decide whether a coefficient is a finite sum whose every
term is known.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

Cell = Tuple[int, int]


def _max(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class Interval:
    """Integer interval [lo, hi]; None marks an infinite end."""

    lo: Optional[int] = None
    hi: Optional[int] = None

    @classmethod
    def everything(cls) -> "Interval":
        return cls(None, None)

    @classmethod
    def point(cls, value: int) -> "Interval":
        return cls(value, value)

    def is_empty(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo > self.hi

    def is_bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def __contains__(self, value: int) -> bool:
        if self.lo is not None and value < self.lo:
            return False
        if self.hi is not None and value > self.hi:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(_max(self.lo, other.lo), _min(self.hi, other.hi))

    def hull(self, other: "Interval") -> "Interval":
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        lo = None if self.lo is None or other.lo is None else min(self.lo, other.lo)
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return Interval(lo, hi)

    def __add__(self, other: "Interval") -> "Interval":
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return Interval(lo, hi)

    def __neg__(self) -> "Interval":
        return Interval(None if self.hi is None else -self.hi, None if self.lo is None else -self.lo)

    def shifted(self, offset: int) -> "Interval":
        return Interval(None if self.lo is None else self.lo + offset,
                        None if self.hi is None else self.hi + offset)

    def points(self) -> Iterator[int]:
        if not self.is_bounded():
            raise ValueError(f"cannot enumerate unbounded interval {self}")
        return iter(range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


@dataclass(frozen=True)
class Region:
    """
    Cells (m, n) with m in ``m``, n in ``n`` and m + n in ``d``.
    """

    m: Interval = Interval()
    n: Interval = Interval()
    d: Interval = Interval()

    @classmethod
    def rectangle(cls, m: Interval, n: Interval) -> "Region":
        return cls(m, n, m + n)

    @classmethod
    def diagonal(cls, n: Interval, offset: int = 0) -> "Region":
        """Cells (offset - k, k) for k in n, i.e. the powers of (w/z)^k."""
        return cls((-n).shifted(offset), n, Interval.point(offset))

    def __contains__(self, cell: Cell) -> bool:
        m, n = cell
        return m in self.m and n in self.n and (m + n) in self.d

    def __add__(self, other: "Region") -> "Region":
        return Region(self.m + other.m, self.n + other.n, self.d + other.d).tightened()

    def __neg__(self) -> "Region":
        return Region(-self.m, -self.n, -self.d)

    def translated(self, cell: Cell) -> "Region":
        m, n = cell
        return Region(self.m.shifted(m), self.n.shifted(n), self.d.shifted(m + n))

    def intersect(self, other: "Region") -> "Region":
        return Region(self.m.intersect(other.m), self.n.intersect(other.n),
                      self.d.intersect(other.d)).tightened()

    def transposed(self) -> "Region":
        return Region(self.n, self.m, self.d)

    def tightened(self) -> "Region":
        """Propagates each constraint through the other two."""
        m, n, d = self.m, self.n, self.d
        for _ in range(2):
            m = m.intersect(d + (-n))
            n = n.intersect(d + (-m))
            d = d.intersect(m + n)
        return Region(m, n, d)

    def is_empty(self) -> bool:
        t = self.tightened()
        return t.m.is_empty() or t.n.is_empty() or t.d.is_empty()

    def is_bounded(self) -> bool:
        t = self.tightened()
        return t.is_empty() or (t.m.is_bounded() and t.n.is_bounded())

    def cells(self) -> Iterator[Cell]:
        """Enumerates a bounded region in row-major order."""
        t = self.tightened()
        if t.m.is_empty() or t.n.is_empty() or t.d.is_empty():
            return
        for m in t.m.points():
            column = t.n.intersect(t.d.shifted(-m))
            if column.is_empty():
                continue
            for n in column.points():
                yield (m, n)

    def __str__(self) -> str:
        return f"Region(m={self.m}, n={self.n}, m+n={self.d})"
