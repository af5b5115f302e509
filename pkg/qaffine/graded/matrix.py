# qaffine/graded/matrix.py

"""
Graded Matrix Module for qaffine

This module provides the Grading of a Z2-graded space and GradedMatrix, a
sparse square matrix over it. Entries are any ring values exposing
``is_zero`` (rational expressions, or matrices for block operators); absent
entries are zero. Products, sums and Kronecker products are the ordinary
ungraded ones: grading signs enter only through the explicit operators of
qaffine.graded.tensor.
"""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

from qaffine.kernel.ratexpr import RatExpr

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


@dataclass(frozen=True)
class Grading:
    """
    Parities (0 even, 1 odd) of the basis vectors, in basis order.
    """

    parities: Tuple[int, ...]

    def __post_init__(self):
        if any(p not in (0, 1) for p in self.parities):
            logger.error(f"Invalid parities {self.parities}.")
            raise ValueError(f"parities must be 0 or 1, got {self.parities}")

    @classmethod
    def even(cls, dim: int) -> "Grading":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.parities)

    def __getitem__(self, index: int) -> int:
        return self.parities[index]

    def tensor(self, other: "Grading") -> "Grading":
        """Grading of the tensor product in row-major pair order."""
        return Grading(tuple((a + b) % 2 for a, b in product(self.parities, other.parities)))


OSP12_GRADING = Grading((0, 1, 0))


class GradedMatrix:
    """
    Sparse square matrix on a graded space.

    Attributes:
        dim (int): Size of the matrix.
        grading (Grading): Parities of the basis.
        entries (Dict[Index, object]): Nonzero entries by (row, column), 0-based.
    """

    __slots__ = ("dim", "grading", "entries")

    def __init__(self, dim: int, grading: Optional[Grading] = None,
                 entries: Optional[Dict[Index, object]] = None):
        if dim <= 0:
            raise ValueError(f"matrix dimension must be positive, got {dim}")
        if grading is None:
            grading = Grading.even(dim)
        if grading.dim != dim:
            logger.error(f"Grading of length {grading.dim} does not fit dimension {dim}.")
            raise ValueError(f"grading of length {grading.dim} does not fit dimension {dim}")
        self.dim = dim
        self.grading = grading
        cleaned = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"entry ({i}, {j}) outside a {dim}x{dim} matrix")
            if isinstance(value, int):
                value = RatExpr.constant(value)
            if value is not None and not value.is_zero():
                cleaned[(i, j)] = value
        self.entries = cleaned

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, grading: Optional[Grading] = None) -> "GradedMatrix":
        return cls(dim, grading)

    @classmethod
    def identity(cls, dim: int, grading: Optional[Grading] = None, one=None) -> "GradedMatrix":
        one = RatExpr.one() if one is None else one
        return cls(dim, grading, {(i, i): one for i in range(dim)})

    @classmethod
    def diagonal(cls, values: Sequence, grading: Optional[Grading] = None) -> "GradedMatrix":
        return cls(len(values), grading, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], grading: Optional[Grading] = None) -> "GradedMatrix":
        dim = len(rows)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise ValueError("matrix rows must form a square")
            for j, value in enumerate(row):
                if isinstance(value, int):
                    value = RatExpr.constant(value)
                entries[(i, j)] = value
        return cls(dim, grading, entries)

    @classmethod
    def elementary(cls, dim: int, i: int, j: int, value=None,
                   grading: Optional[Grading] = None) -> "GradedMatrix":
        """E_ij (0-based) scaled by value."""
        return cls(dim, grading, {(i, j): RatExpr.one() if value is None else value})

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def get(self, i: int, j: int, default=None):
        return self.entries.get((i, j), default)

    def __getitem__(self, index: Index) -> RatExpr:
        """Entry as a RatExpr, zero when absent (scalar matrices only)."""
        return self.entries.get(index, RatExpr.zero())

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def items(self) -> Iterator[Tuple[Index, object]]:
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def rows(self) -> List[List[object]]:
        return [[self.entries.get((i, j)) for j in range(self.dim)] for i in range(self.dim)]

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_shape(self, other: "GradedMatrix") -> None:
        if self.dim != other.dim:
            logger.error(f"Shape mismatch: {self.dim} vs {other.dim}.")
            raise ValueError(f"cannot combine {self.dim}x{self.dim} and {other.dim}x{other.dim} matrices")

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check_shape(other)
        entries = dict(self.entries)
        for key, value in other.entries.items():
            current = entries.get(key)
            entries[key] = value if current is None else current + value
        return GradedMatrix(self.dim, self.grading, entries)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(self.dim, self.grading, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "GradedMatrix":
        if isinstance(other, GradedMatrix):
            return self.matmul(other)
        return self.map(lambda v: v * other)

    def __rmul__(self, other) -> "GradedMatrix":
        if isinstance(other, GradedMatrix):
            return other.matmul(self)
        return self.map(lambda v: other * v)

    def matmul(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check_shape(other)
        by_row: Dict[int, List[Tuple[int, object]]] = {}
        for (k, j), value in other.entries.items():
            by_row.setdefault(k, []).append((j, value))
        entries: Dict[Index, object] = {}
        for (i, k), left in self.entries.items():
            for j, right in by_row.get(k, ()):
                prod = left * right
                current = entries.get((i, j))
                entries[(i, j)] = prod if current is None else current + prod
        return GradedMatrix(self.dim, self.grading, entries)

    def map(self, fn: Callable[[object], object]) -> "GradedMatrix":
        return GradedMatrix(self.dim, self.grading, {k: fn(v) for k, v in self.entries.items()})

    def transpose(self) -> "GradedMatrix":
        return GradedMatrix(self.dim, self.grading, {(j, i): v for (i, j), v in self.entries.items()})

    def kron(self, other: "GradedMatrix") -> "GradedMatrix":
        """Plain Kronecker product in row-major pair order."""
        n = other.dim
        entries = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                entries[(i * n + k, j * n + l)] = a * b
        return GradedMatrix(self.dim * n, self.grading.tensor(other.grading), entries)

    def block(self, row: int, col: int, size: int) -> "GradedMatrix":
        """
        The (row, col) block of a matrix on V (x) W with dim W = size.

        Entry (i, j) of the block is entry (row*size + i, col*size + j).
        """
        entries = {}
        for (i, j), value in self.entries.items():
            if i // size == row and j // size == col:
                entries[(i % size, j % size)] = value
        return GradedMatrix(size, None, entries)

    def permuted(self, perm: Sequence[int]) -> "GradedMatrix":
        """Relabels basis index i as perm[i]."""
        return GradedMatrix(self.dim, self.grading,
                            {(perm[i], perm[j]): v for (i, j), v in self.entries.items()})

    # ------------------------------------------------------------------
    # Scalar-entry helpers
    # ------------------------------------------------------------------

    def rename(self, mapping) -> "GradedMatrix":
        return self.map(lambda v: v.rename(mapping))

    def substitute(self, name: str, value) -> "GradedMatrix":
        return self.map(lambda v: v.substitute(name, value))

    def scale_variable(self, name: str, factor) -> "GradedMatrix":
        return self.map(lambda v: v.scale_variable(name, factor))

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def difference_cells(self, other: "GradedMatrix") -> List[Index]:
        """Entries where the two matrices differ, in row-major order."""
        self._check_shape(other)
        return sorted(key for key in set(self.entries) | set(other.entries)
                      if not _entry_equal(self.entries.get(key), other.entries.get(key)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix) or self.dim != other.dim:
            return NotImplemented
        return not self.difference_cells(other)

    __hash__ = None

    def __str__(self) -> str:
        lines = [f"{self.dim}x{self.dim} matrix, grading {list(self.grading.parities)}"]
        for (i, j), value in self.items():
            lines.append(f"  ({i + 1},{j + 1}): {value}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"GradedMatrix(dim={self.dim}, nonzero={len(self.entries)})"


def _entry_equal(a, b) -> bool:
    if a is None and b is None:
        return True
    if a is None:
        return b.is_zero()
    if b is None:
        return a.is_zero()
    return (a - b).is_zero()


def pair_index(alpha: int, beta: int, dim: int = 3) -> int:
    """0-based index of v_alpha (x) v_beta for 1-based alpha, beta."""
    return (alpha - 1) * dim + (beta - 1)


def pair_label(index: int, dim: int = 3) -> str:
    """Two-digit label (e.g. '12') of a 0-based pair index."""
    return f"{index // dim + 1}{index % dim + 1}"
