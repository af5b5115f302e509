# qaffine/rs/expansion.py

"""
Entry-wise expansion of matrices of rational expressions, either as a
one-variable FormalSeries or as a two-variable CoeffGrid whose coefficients
are GradedMatrix values.
"""

from typing import Callable, Dict, Optional, Tuple
import logging

from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.grid import DEFAULT_TAGS, CoeffGrid, Tags, coefficient_grid, region_hull
from qaffine.kernel.series import FormalSeries, expand
from qaffine.kernel.support import Interval, Region

logger = logging.getLogger(__name__)

Embedding = Optional[Callable[[GradedMatrix], GradedMatrix]]


def _assemble(dim: int, grading, values: Dict[Tuple[int, int], object], embed: Embedding) -> GradedMatrix:
    matrix = GradedMatrix(dim, grading, values)
    return embed(matrix) if embed is not None else matrix


def matrix_series(m: GradedMatrix, ratio: Tuple[str, str], window: Interval,
                  variable: str) -> FormalSeries:
    """
    Expands every entry of m in powers of ratio and re-indexes by ``variable``.

    Returns:
        FormalSeries: Series in ``variable`` with GradedMatrix coefficients,
        known where every entry is determined.
    """
    parts = {key: expand(value, ratio, window).to_formal(variable)
             for key, value in m.entries.items()}
    if not parts:
        return FormalSeries.constant(variable, GradedMatrix.zero(m.dim, m.grading), window.points())
    supports = [p.support for p in parts.values()]
    support = supports[0]
    for other in supports[1:]:
        support = support.hull(other)
    candidates = set()
    for p in parts.values():
        candidates |= p.known
    known = frozenset(n for n in candidates if all(p.is_determined(n) for p in parts.values()))
    coeffs = {}
    for n in known:
        values = {key: p.coeffs[n] for key, p in parts.items() if n in p.coeffs}
        if values:
            coeffs[n] = GradedMatrix(m.dim, m.grading, values)
    return FormalSeries(variable, support, known, coeffs)


def matrix_grid(m: GradedMatrix, ratio: Tuple[str, str], depth: int,
                tags: Tags = DEFAULT_TAGS, embed: Embedding = None) -> CoeffGrid:
    """
    Expands every entry of m as a coefficient grid and stacks the cells.

    Args:
        m: Matrix of homogeneous rational expressions in the two tags.
        ratio: Expansion direction, e.g. ("w", "z") for powers of w/z.
        depth: Orders computed beyond the lowest one.
        embed: Optional map applied to every assembled cell (e.g. a Kronecker
            product with an identity).
    """
    grids = {key: coefficient_grid(value, ratio, depth, tags) for key, value in m.entries.items()}
    if not grids:
        origin = Interval.point(0)
        return CoeffGrid(Region.rectangle(origin, origin), frozenset({(0, 0)}), {}, tags)
    regions = [g.support for g in grids.values()]
    support = regions[0]
    for region in regions[1:]:
        support = region_hull(support, region)
    candidates = set()
    for g in grids.values():
        candidates |= g.known
    known = frozenset(c for c in candidates if all(g.is_determined(c) for g in grids.values()))
    cells = {}
    for c in known:
        values = {key: g.cells[c] for key, g in grids.items() if c in g.cells}
        if values:
            cells[c] = _assemble(m.dim, m.grading, values, embed)
    logger.debug(f"Expanded a {m.dim}x{m.dim} matrix in {ratio[0]}/{ratio[1]}: {len(known)} known cells.")
    return CoeffGrid(support, known, cells, tags)
