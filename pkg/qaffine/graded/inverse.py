# qaffine/graded/inverse.py

"""
Matrix Inversion Module for qaffine

Exact inversion of matrices of rational expressions without polynomial gcds.
The matrix is split into the independent blocks of its sparsity pattern; each
block is scaled to a Laurent-polynomial matrix row by row and inverted with
fraction-free Gauss-Jordan elimination, whose divisions are all exact.
"""

from typing import Dict, List, Tuple
import logging

from qaffine.core.exceptions import NotInvertible
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.ratexpr import RatExpr

logger = logging.getLogger(__name__)


def common_denominator(values: List[RatExpr]) -> MPoly:
    """
    A product of denominators divisible by every denominator in the list.

    Denominators dividing one already taken are skipped, so shared factors
    such as (zq^2 - w) are not repeated needlessly.
    """
    dens: List[MPoly] = []
    for value in sorted(values, key=lambda v: -len(v.den)):
        den = value.den
        if den.is_one():
            continue
        if any(den.divides(kept) for kept in dens):
            continue
        dens = [kept for kept in dens if not kept.divides(den)]
        dens.append(den)
    total = MPoly.one()
    for den in dens:
        total = total * den
    return total


def clear_denominators(m: GradedMatrix) -> Tuple[GradedMatrix, MPoly]:
    """
    Returns (D*m, D) with D*m a matrix of Laurent polynomials.
    """
    d = common_denominator(list(m.entries.values()))
    entries = {k: RatExpr(v.num * d.exquo(v.den)) for k, v in m.entries.items()}
    return GradedMatrix(m.dim, m.grading, entries), d


def _blocks(m: GradedMatrix) -> List[Tuple[List[int], List[int]]]:
    """Connected components of the row/column incidence graph."""
    parent: Dict[Tuple[str, int], Tuple[str, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m.dim):
        find(("r", i))
        find(("c", i))
    for (i, j) in m.entries:
        a, b = find(("r", i)), find(("c", j))
        if a != b:
            parent[a] = b
    groups: Dict[Tuple[str, int], Tuple[List[int], List[int]]] = {}
    for kind in ("r", "c"):
        for i in range(m.dim):
            rows, cols = groups.setdefault(find((kind, i)), ([], []))
            (rows if kind == "r" else cols).append(i)
    return sorted(groups.values(), key=lambda g: (g[0][:1], g[1][:1]))


def _bareiss_inverse(rows: List[List[MPoly]]) -> Tuple[List[List[MPoly]], MPoly]:
    """
    Fraction-free Gauss-Jordan on [A | I].

    Returns:
        (X, delta) with A^-1 = X / delta.

    Raises:
        NotInvertible: If A is singular.
    """
    n = len(rows)
    aug = [list(row) + [MPoly.one() if i == j else MPoly.zero() for j in range(n)]
           for i, row in enumerate(rows)]
    prev = MPoly.one()
    for k in range(n):
        pivot = next((p for p in range(k, n) if not aug[p][k].is_zero()), None)
        if pivot is None:
            raise NotInvertible(f"singular matrix: no pivot in column {k}")
        if pivot != k:
            aug[k], aug[pivot] = aug[pivot], aug[k]
        akk = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = aug[i][k]
            row = aug[i]
            for j in range(2 * n):
                if j == k:
                    continue
                value = akk * row[j] - aik * aug[k][j]
                row[j] = value.exquo(prev) if not value.is_zero() else value
            row[k] = MPoly.zero()
        prev = akk
    delta = aug[n - 1][n - 1]
    return [row[n:] for row in aug], delta


def inverse(m: GradedMatrix) -> GradedMatrix:
    """
    Exact inverse of a matrix of rational expressions.

    Args:
        m (GradedMatrix): Square matrix with RatExpr entries.

    Returns:
        GradedMatrix: m^-1 (same grading).

    Raises:
        NotInvertible: If m is singular.
    """
    result: Dict[Tuple[int, int], RatExpr] = {}
    for rows, cols in _blocks(m):
        if len(rows) != len(cols):
            logger.error(f"Block with rows {rows} and columns {cols} is not square.")
            raise NotInvertible(f"matrix has a non-square block (rows {rows}, columns {cols})")
        multipliers = []
        poly_rows = []
        for i in rows:
            values = [m.entries[(i, j)] for j in cols if (i, j) in m.entries]
            d = common_denominator(values)
            multipliers.append(d)
            poly_rows.append([
                m.entries[(i, j)].num * d.exquo(m.entries[(i, j)].den)
                if (i, j) in m.entries else MPoly.zero()
                for j in cols])
        x, delta = _bareiss_inverse(poly_rows)
        if delta.is_zero():
            raise NotInvertible("singular matrix: zero determinant")
        for a, col in enumerate(cols):
            for b, row in enumerate(rows):
                if not x[a][b].is_zero():
                    result[(col, row)] = RatExpr(x[a][b] * multipliers[b], delta)
    logger.debug(f"Inverted a {m.dim}x{m.dim} matrix.")
    return GradedMatrix(m.dim, m.grading, result)
