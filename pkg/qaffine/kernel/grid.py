# qaffine/kernel/grid.py

"""
Coefficient Grid Module for qaffine

A CoeffGrid is a truncated two-variable distribution: cell (m, n) holds the
coefficient of x^m y^n for the grid's variable tags (x, y), usually (z, w).
Like FormalSeries it stores a support Region and the finite set of cells it
knows exactly. Products are two-dimensional convolutions that only keep the
cells whose defining sum is finite and fully known; everything a relation
check asserts is restricted to those cells.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union
import logging

from qaffine.core.exceptions import EmptySafeWindow, NonExpandable
from qaffine.kernel.mpoly import var_index
from qaffine.kernel.qpowers import q_power
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries, LaurentSeries, expand
from qaffine.kernel.support import Cell, Interval, Region

logger = logging.getLogger(__name__)

Tags = Tuple[str, str]
DEFAULT_TAGS: Tags = ("z", "w")


@dataclass(frozen=True)
class CoeffGrid:
    """
    Truncated distribution sum_{(m, n)} cells[(m, n)] x^m y^n.

    Attributes:
        support: Region containing every cell that can be nonzero.
        known: Cells whose value is exact (absent from ``cells`` means zero).
        cells: Nonzero values (RatExpr or GradedMatrix).
        tags: The two formal variables (x, y).
    """

    support: Region
    known: FrozenSet[Cell]
    cells: Dict[Cell, object] = field(default_factory=dict, compare=False)
    tags: Tags = DEFAULT_TAGS

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def is_determined(self, cell: Cell) -> bool:
        return cell in self.known or cell not in self.support

    def __getitem__(self, cell: Cell):
        if not self.is_determined(cell):
            raise IndexError(f"cell {cell} is outside the safe window")
        return self.cells.get(cell)

    def value(self, cell: Cell, zero=None):
        found = self[cell]
        return zero if found is None else found

    def nonzero_cells(self) -> List[Cell]:
        return sorted(c for c in self.cells if c in self.known)

    def is_zero_on_known(self) -> bool:
        return not any(c in self.known for c in self.cells)

    def safe_window(self) -> Optional[Tuple[int, int, int, int]]:
        """Bounding box (m_lo, m_hi, n_lo, n_hi) of the known cells."""
        if not self.known:
            return None
        ms = [c[0] for c in self.known]
        ns = [c[1] for c in self.known]
        return min(ms), max(ms), min(ns), max(ns)

    def require_nonempty(self, what: str = "grid") -> "CoeffGrid":
        if not self.known:
            raise EmptySafeWindow(f"{what} has no verifiable cells at this cutoff")
        return self

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check_tags(self, other: "CoeffGrid") -> None:
        if self.tags != other.tags:
            raise ValueError(f"grids over {self.tags} and {other.tags} cannot be combined")

    def _combine(self, other: "CoeffGrid", sign: int) -> "CoeffGrid":
        self._check_tags(other)
        support = region_hull(self.support, other.support)
        known = frozenset(c for c in self.known | other.known
                          if self.is_determined(c) and other.is_determined(c))
        cells = {}
        for c in known:
            a = self.cells.get(c)
            b = other.cells.get(c)
            if b is not None and sign < 0:
                b = -b
            if a is None:
                total = b
            elif b is None:
                total = a
            else:
                total = a + b
            if total is not None and not total.is_zero():
                cells[c] = total
        return CoeffGrid(support, known, cells, self.tags)

    def __add__(self, other: "CoeffGrid") -> "CoeffGrid":
        return self._combine(other, 1)

    def __sub__(self, other: "CoeffGrid") -> "CoeffGrid":
        return self._combine(other, -1)

    def __neg__(self) -> "CoeffGrid":
        return CoeffGrid(self.support, self.known, {c: -v for c, v in self.cells.items()}, self.tags)

    def __mul__(self, other: "CoeffGrid") -> "CoeffGrid":
        return convolve(self, other)

    def scaled(self, value) -> "CoeffGrid":
        """Multiplies every cell on the left by a constant ring value."""
        cells = {}
        for c, v in self.cells.items():
            image = value * v
            if not image.is_zero():
                cells[c] = image
        return CoeffGrid(self.support, self.known, cells, self.tags)

    def transposed(self) -> "CoeffGrid":
        """Swaps the roles of the two variables: cell (m, n) moves to (n, m)."""
        return CoeffGrid(self.support.transposed(),
                         frozenset((n, m) for m, n in self.known),
                         {(n, m): v for (m, n), v in self.cells.items()},
                         (self.tags[1], self.tags[0]))

    def restricted(self, cells: Iterable[Cell]) -> "CoeffGrid":
        keep = frozenset(cells) & self.known
        return CoeffGrid(self.support, keep,
                         {c: v for c, v in self.cells.items() if c in keep}, self.tags)

    def equals_on_common(self, other: "CoeffGrid") -> Tuple[bool, List[Cell]]:
        """
        Compares two grids on the cells both determine.

        Raises:
            EmptySafeWindow: If no cell is known to both grids.
        """
        diff = (self - other).require_nonempty("grid comparison")
        bad = diff.nonzero_cells()
        return not bad, bad


def region_hull(a: Region, b: Region) -> Region:
    return Region(a.m.hull(b.m), a.n.hull(b.n), a.d.hull(b.d))


def convolve(left: CoeffGrid, right: CoeffGrid) -> CoeffGrid:
    """
    Product of two distributions in the same pair of variables.

    Cell c of the result is sum_p left[p] * right[c - p] over p in
    S_left intersected with (c - S_right). A cell is kept only when that set
    is finite and every contributing cell is known on both sides. Operands are
    multiplied in order, so matrix-valued cells keep their operator ordering.
    """
    left._check_tags(right)
    support = left.support + right.support
    neg_right = -right.support
    known = set()
    cells = {}
    candidates = {(a[0] + b[0], a[1] + b[1]) for a in left.known for b in right.known}
    for c in sorted(candidates):
        terms = left.support.intersect(neg_right.translated(c))
        if not terms.is_bounded():
            continue
        acc = None
        safe = True
        for p in terms.cells():
            q = (c[0] - p[0], c[1] - p[1])
            if p not in left.known or q not in right.known:
                safe = False
                break
            a = left.cells.get(p)
            if a is None:
                continue
            b = right.cells.get(q)
            if b is None:
                continue
            prod = a * b
            acc = prod if acc is None else acc + prod
        if not safe:
            continue
        known.add(c)
        if acc is not None and not acc.is_zero():
            cells[c] = acc
    logger.debug(f"Convolved grids: {len(candidates)} candidate cells, {len(known)} safe.")
    return CoeffGrid(support, frozenset(known), cells, left.tags)


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------

def delta_grid(shift: int, window: Interval, tags: Tags = DEFAULT_TAGS) -> CoeffGrid:
    """
    The distribution delta(x/y * q^shift) = sum_l q^(shift*l) x^l y^(-l).

    Args:
        shift: Power k of q.
        window: Finite range of l to materialize.

    Returns:
        CoeffGrid: Scalar grid on the anti-diagonal m + n = 0.
    """
    if not window.is_bounded():
        raise ValueError("delta window must be finite")
    cells = {}
    for l in window.points():
        cells[(l, -l)] = RatExpr(q_power(shift * l))
    known = frozenset((l, -l) for l in window.points())
    support = Region(Interval.everything(), Interval.everything(), Interval.point(0))
    return CoeffGrid(support, known, cells, tags)


def lift_series(series: FormalSeries, tags: Tags = DEFAULT_TAGS) -> CoeffGrid:
    """Embeds a one-variable series as a grid along the axis of its variable."""
    if series.var == tags[0]:
        support = Region(series.support, Interval.point(0), series.support)
        known = frozenset((n, 0) for n in series.known)
        cells = {(n, 0): v for n, v in series.coeffs.items()}
    elif series.var == tags[1]:
        support = Region(Interval.point(0), series.support, series.support)
        known = frozenset((0, n) for n in series.known)
        cells = {(0, n): v for n, v in series.coeffs.items()}
    else:
        raise ValueError(f"series in {series.var} does not live on grid {tags}")
    return CoeffGrid(support, known, cells, tags)


def constant_grid(value, tags: Tags = DEFAULT_TAGS) -> CoeffGrid:
    cells = {} if value.is_zero() else {(0, 0): value}
    return CoeffGrid(Region.rectangle(Interval.point(0), Interval.point(0)),
                     frozenset({(0, 0)}), cells, tags)


def grid_mul_series(grid: CoeffGrid, series: Union[FormalSeries, LaurentSeries],
                    side: str = "right") -> CoeffGrid:
    """
    Multiplies a grid by a one-variable series.

    Args:
        grid: The distribution.
        series: A FormalSeries in one of the grid tags, or a LaurentSeries
            whose ratio involves one of them.
        side: "left" or "right" (position of the series in the product).

    Raises:
        EmptySafeWindow: If no cell of the product is verifiable.
    """
    if isinstance(series, LaurentSeries):
        variable = next((v for v in grid.tags if v in series.ratio), None)
        if variable is None:
            raise ValueError(f"series in {series.ratio} shares no variable with grid {grid.tags}")
        series = series.to_formal(variable)
    lifted = lift_series(series, grid.tags)
    if side == "left":
        result = convolve(lifted, grid)
    elif side == "right":
        result = convolve(grid, lifted)
    else:
        raise ValueError(f"side must be 'left' or 'right', got '{side}'")
    return result.require_nonempty("series product")


def _homogeneous_degree(f: RatExpr, x: str, y: str) -> int:
    ix, iy = var_index(x), var_index(y)
    degrees = []
    for part in (f.num, f.den):
        seen = {e[ix] + e[iy] for e, _ in part.iter_terms()}
        if len(seen) != 1:
            raise NonExpandable(f"coefficient {f} is not homogeneous in {x}, {y}")
        degrees.append(seen.pop())
    return degrees[0] - degrees[1]


def coefficient_grid(f: RatExpr, ratio: Tuple[str, str], depth: int,
                     tags: Tags = DEFAULT_TAGS) -> CoeffGrid:
    """
    Expands a homogeneous coefficient f(z, w) as a grid.

    With ratio (w, z) the expansion is f = z^d * sum_k g_k (w/z)^k, giving
    cells (d - k, k); with ratio (z, w) it gives cells (k, d - k). Exactly
    ``depth + 1`` orders are known beyond the lowest one; a Laurent
    polynomial coefficient is known everywhere.

    Raises:
        NonExpandable: If f is not homogeneous or its expansion fails.
    """
    x, y = ratio
    if set(ratio) != set(tags):
        raise ValueError(f"ratio {ratio} does not match grid tags {tags}")
    if f.is_zero():
        return CoeffGrid(Region.rectangle(Interval.point(0), Interval.point(0)),
                         frozenset({(0, 0)}), {}, tags)
    d = _homogeneous_degree(f, x, y)
    normalized = f * RatExpr.var(y, -d)
    lo_guess = _lowest_order(normalized, x, y)
    series = expand(normalized, ratio, Interval(lo_guess, lo_guess + depth))
    finite = _is_laurent_polynomial_in_ratio(normalized, x, y)
    if finite:
        top = max(series.coeffs) if series.coeffs else series.lowest
        ks = Interval(series.lowest, top)
    else:
        ks = Interval(series.lowest, None)
    cells = {}
    known = set()
    for k in range(series.lowest, lo_guess + depth + 1):
        cell = _ratio_cell(k, d, x, tags)
        known.add(cell)
        c = series.coeffs.get(k)
        if c is None:
            continue
        if x in c.free_variables() or y in c.free_variables():
            raise NonExpandable(f"coefficient {f} left a spectral variable after expansion")
        cells[cell] = c
    if finite:
        known.update(_ratio_cell(k, d, x, tags) for k in ks.points())
    if x == tags[1]:
        support = Region(((-ks).shifted(d)), ks, Interval.point(d))
    else:
        support = Region(ks, (-ks).shifted(d), Interval.point(d))
    return CoeffGrid(support, frozenset(known), cells, tags)


def _ratio_cell(k: int, d: int, x: str, tags: Tags) -> Cell:
    if x == tags[1]:
        return (d - k, k)
    return (k, d - k)


def _lowest_order(f: RatExpr, x: str, y: str) -> int:
    ix = var_index(x)
    num_lo = min(e[ix] for e, _ in f.num.iter_terms())
    den_lo = min(e[ix] for e, _ in f.den.iter_terms())
    return num_lo - den_lo


def _is_laurent_polynomial_in_ratio(f: RatExpr, x: str, y: str) -> bool:
    ix = var_index(x)
    return len({e[ix] for e, _ in f.den.iter_terms()}) == 1
