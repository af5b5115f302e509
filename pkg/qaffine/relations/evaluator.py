# qaffine/relations/evaluator.py

"""
Relation Evaluator Module for qaffine

Evaluates a relation as the residual grid sum(lhs) - sum(rhs) in the two
spectral variables (z, w). Each term is the convolution of its coefficient
expansion with the grids of its factors, taken in the written order:

- a current NAME(x * q^k) is the bound series, inverted for NAME^-1, with
  coefficient n multiplied by q^(k n), and lifted onto the axis of x;
- delta(z/w * q^k) is the anti-diagonal grid sum_l q^(k l) z^l w^-l;
- a coefficient depending on z and w is expanded in its direction (term tag,
  then relation tag, then z/w when the leftmost current argument is z and
  w/z otherwise).

A relation whose every term vanishes on the safe window says nothing about
the algebra and is reported as skipped rather than passed.

The central charge is substituted when the suite is bound; z_± = z q^(±c/2)
and w_± likewise.
"""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple
import logging

from qaffine.core.exceptions import NonExpandable, SeriesNotInvertible, UnknownCurrent
from qaffine.core.report import CheckResult, grid_result, timed
from qaffine.gauss.currents import q_shift
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.grid import CoeffGrid, coefficient_grid, constant_grid, delta_grid, lift_series
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.qpowers import q_ratexpr
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries, series_inverse
from qaffine.kernel.support import Interval
from qaffine.relations.model import (BinOp, CurrentRef, Delta, Exponent, Expr, Num, Pow, Relation,
                                     RelationSuite, Sum, Term, Var)
from qaffine.rs.loperator import invert_coefficient

logger = logging.getLogger(__name__)

TAGS = ("z", "w")

# variable -> (spectral variable, multiple of c/2 in the q-exponent)
SPECTRAL = {
    "z": ("z", 0), "zp": ("z", 1), "zm": ("z", -1),
    "w": ("w", 0), "wp": ("w", 1), "wm": ("w", -1),
}

CONVENTION_NOTE = "X^+_i = f^+_i - f^-_i, X^-_i = e^-_i - e^+_i (c = 0)"
DELTA_NOTE = "c-dependent delta shifts coincide at c = 0"
VACUOUS_DETAIL = "every term vanishes in the evaluation representation"


def _spectral(name: str, central_charge: int) -> Tuple[str, Fraction]:
    try:
        var, half = SPECTRAL[name]
    except KeyError:
        raise ValueError(f"'{name}' is not a spectral variable of a trigonometric suite") from None
    return var, Fraction(half * central_charge, 2)


def coefficient_value(expr: Optional[Expr], central_charge: int = 0) -> RatExpr:
    """
    The rational expression of a coefficient tree.

    Raises:
        ValueError: For variables other than z, w, q and their ± tags, or a
            non-integral power of anything but q.
    """
    if expr is None:
        return RatExpr.one()
    if isinstance(expr, Num):
        return RatExpr.constant(expr.value)
    if isinstance(expr, Var):
        if expr.name == "q":
            return q_ratexpr(1)
        var, shift = _spectral(expr.name, central_charge)
        return RatExpr.var(var) * q_ratexpr(shift)
    if isinstance(expr, Pow):
        exponent = expr.exponent.at(central_charge)
        if expr.base == Var("q"):
            return q_ratexpr(exponent)
        if exponent.denominator != 1:
            raise ValueError(f"non-integral power {exponent} of a non-q base")
        return coefficient_value(expr.base, central_charge) ** int(exponent)
    if isinstance(expr, BinOp):
        left = coefficient_value(expr.left, central_charge)
        right = coefficient_value(expr.right, central_charge)
        return left * right if expr.op == "*" else left / right
    if isinstance(expr, Sum):
        total = RatExpr.zero()
        for sign, item in expr.items:
            value = coefficient_value(item, central_charge)
            total = total + value if sign == "+" else total - value
        return total
    raise TypeError(f"not a coefficient expression: {expr!r}")


def delta_ratio(expr: Expr) -> Tuple[str, str, Exponent]:
    """
    Reads delta(x/y) or delta(x/y * q^k).

    Raises:
        ValueError: For any other delta argument.
    """
    shift = Exponent()
    if isinstance(expr, BinOp) and expr.op == "*" and isinstance(expr.right, Pow) \
            and expr.right.base == Var("q"):
        shift = expr.right.exponent
        expr = expr.left
    if isinstance(expr, BinOp) and expr.op == "/" and isinstance(expr.left, Var) \
            and isinstance(expr.right, Var):
        return expr.left.name, expr.right.name, shift
    raise ValueError("delta argument must read x/y or x/y * q^k")


def swap_variables(grid: CoeffGrid) -> CoeffGrid:
    """The same distribution with z and w exchanged, on the same tags."""
    flipped = grid.transposed()
    return CoeffGrid(flipped.support, flipped.known, flipped.cells, grid.tags)


def is_vacuous(term_grids: List[CoeffGrid]) -> bool:
    """True when there are known cells and every term is zero on them."""
    return any(g.known for g in term_grids) and all(g.is_zero_on_known() for g in term_grids)


def _total(grids: List[CoeffGrid], dim: int) -> CoeffGrid:
    if not grids:
        return constant_grid(GradedMatrix.zero(dim), TAGS)
    total = grids[0]
    for grid in grids[1:]:
        total = total + grid
    return total


class RelationEvaluator:
    """
    Evaluates relations against a set of bound currents.

    Args:
        bindings: Current name to series of operator matrices.
        cutoff: The cutoff the series were built with.
        central_charge: Value substituted for c.
        dim: Size of the operator matrices.
    """

    def __init__(self, bindings: Mapping[str, FormalSeries], cutoff: int,
                 central_charge: int = 0, dim: int = 3):
        self.bindings = dict(bindings)
        self.cutoff = cutoff
        self.central_charge = central_charge
        self.dim = dim
        self.depth = 2 * cutoff + 4
        self._inverses: Dict[str, FormalSeries] = {}

    # -- binding -------------------------------------------------------

    def check_bound(self, suite: RelationSuite) -> None:
        """
        Raises:
            UnknownCurrent: Naming the suite, relation and current.
        """
        for relation in suite.relations:
            for name in relation.current_names():
                if name not in self.bindings:
                    logger.error(f"{suite.name}/{relation.label}: unknown current '{name}'.")
                    raise UnknownCurrent(f"{suite.name}/{relation.label}: current '{name}' is not bound")

    def _series(self, ref: CurrentRef) -> FormalSeries:
        if ref.name not in self.bindings:
            raise UnknownCurrent(f"current '{ref.name}' is not bound")
        if not ref.inverse:
            return self.bindings[ref.name]
        if ref.name not in self._inverses:
            self._inverses[ref.name] = series_inverse(self.bindings[ref.name], invert_coefficient)
        return self._inverses[ref.name]

    # -- grids ---------------------------------------------------------

    def current_grid(self, ref: CurrentRef) -> CoeffGrid:
        var, tag_shift = _spectral(ref.arg.var, self.central_charge)
        shift = ref.arg.shift.at(self.central_charge) + tag_shift
        series = q_shift(self._series(ref), shift).renamed(var)
        return lift_series(series, TAGS)

    def delta_grid(self, delta: Delta) -> CoeffGrid:
        x, y, exponent = delta_ratio(delta.argument)
        x_var, x_shift = _spectral(x, self.central_charge)
        y_var, y_shift = _spectral(y, self.central_charge)
        if x_var == y_var:
            raise ValueError(f"delta({x}/{y}) must relate z and w")
        shift = exponent.at(self.central_charge) + x_shift - y_shift
        window = Interval(-self.depth, self.depth)
        if (x_var, y_var) == TAGS:
            return delta_grid(shift, window, TAGS)
        return delta_grid(-shift, window, TAGS)

    def direction(self, term: Term, relation: Relation) -> str:
        if term.expand is not None:
            return term.expand
        if relation.expand is not None:
            return relation.expand
        currents = term.currents()
        if not currents:
            return "z/w"
        var, _ = _spectral(currents[0].arg.var, self.central_charge)
        return "z/w" if var == "z" else "w/z"

    def coefficients(self, relation: Relation) -> List[RatExpr]:
        """Coefficient of every term (lhs then rhs), cleared if the relation asks for it."""
        values = [coefficient_value(t.coefficient, self.central_charge) for _, t in relation.terms()]
        if not relation.cleared:
            return values
        cleared = []
        for i, value in enumerate(values):
            scale = MPoly.one()
            for j, other in enumerate(values):
                if j != i:
                    scale = scale * other.den
            cleared.append(RatExpr(value.num * scale))
        return cleared

    def term_grid(self, term: Term, relation: Relation, coefficient: RatExpr) -> CoeffGrid:
        grid: Optional[CoeffGrid] = None
        for factor in term.factors:
            piece = self.current_grid(factor) if isinstance(factor, CurrentRef) else self.delta_grid(factor)
            grid = piece if grid is None else grid * piece
        spectral = {"z", "w"} & set(coefficient.free_variables())
        if grid is None:
            x, y = self.direction(term, relation).split("/")
            scalar = coefficient_grid(coefficient, (x, y), self.depth, TAGS)
            cells = {c: GradedMatrix.identity(self.dim, one=v) for c, v in scalar.cells.items()}
            grid = CoeffGrid(scalar.support, scalar.known, cells, TAGS)
        elif spectral:
            x, y = self.direction(term, relation).split("/")
            grid = coefficient_grid(coefficient, (x, y), self.depth, TAGS) * grid
        elif not (coefficient.is_constant() and coefficient == RatExpr.one()):
            grid = grid.scaled(coefficient)
        return -grid if term.sign < 0 else grid

    def term_grids(self, relation: Relation) -> List[CoeffGrid]:
        """Every term moved to the left-hand side, in written order."""
        grids = []
        coefficients = self.coefficients(relation)
        for (side, term), coefficient in zip(relation.terms(), coefficients):
            grid = self.term_grid(term, relation, coefficient)
            grids.append(-grid if side < 0 else grid)
            logger.debug(f"{relation.label}: term with {len(term.factors)} factors, "
                         f"{len(grid.known)} known cells.")
        return grids

    def residual(self, relation: Relation) -> CoeffGrid:
        """
        sum(lhs) - sum(rhs).

        Raises:
            SeriesNotInvertible, NonExpandable, UnknownCurrent, ValueError.
        """
        return _total(self.term_grids(relation), self.dim)

    # -- results -------------------------------------------------------

    def notes(self, relation: Relation) -> List[str]:
        notes = []
        if any(name.startswith("X") for name in relation.current_names()):
            notes.append(CONVENTION_NOTE)
        for _, term in relation.terms():
            for factor in term.factors:
                if isinstance(factor, Delta):
                    try:
                        _, _, exponent = delta_ratio(factor.argument)
                    except ValueError:
                        continue
                    if exponent.c and DELTA_NOTE not in notes:
                        notes.append(DELTA_NOTE)
        return notes

    def evaluate(self, relation: Relation, group: str = "") -> CheckResult:
        """
        Evaluates one relation; arithmetic failures become failed results and
        a relation whose terms all vanish is skipped.
        """
        with timed() as elapsed:
            try:
                grids = self.term_grids(relation)
            except (SeriesNotInvertible, NonExpandable, ValueError) as e:
                logger.error(f"{group}/{relation.label}: {e}", exc_info=True)
                return CheckResult.failed(relation.label, detail=str(e), group=group,
                                          notes=self.notes(relation), elapsed_ms=elapsed["elapsed_ms"])
            residual = _total(grids, self.dim)
        if is_vacuous(grids):
            logger.warning(f"{group}/{relation.label}: {VACUOUS_DETAIL}, skipped.")
            return CheckResult.skipped(relation.label, VACUOUS_DETAIL, group=group,
                                       notes=self.notes(relation), elapsed_ms=elapsed["elapsed_ms"])
        result = grid_result(relation.label, residual, group=group, notes=self.notes(relation),
                             elapsed_ms=elapsed["elapsed_ms"])
        logger.info(f"{group}/{relation.label}: {result.status}.")
        return result

    def evaluate_suite(self, suite: RelationSuite) -> List[CheckResult]:
        self.check_bound(suite)
        return [self.evaluate(relation, suite.name) for relation in suite.relations]

    def compare_residuals(self, first: Relation, second: Relation, group: str = "",
                          swap: bool = True) -> CheckResult:
        """
        Checks that two relations have the same residual, the second one
        read with z and w exchanged when ``swap`` is set.
        """
        name = f"{first.label}~{second.label}"
        with timed() as elapsed:
            try:
                a = self.residual(first)
                b = self.residual(second)
            except (SeriesNotInvertible, NonExpandable, ValueError) as e:
                logger.error(f"{group}/{name}: {e}", exc_info=True)
                return CheckResult.failed(name, detail=str(e), group=group)
            if swap:
                b = swap_variables(b)
        return grid_result(name, a - b, group=group, elapsed_ms=elapsed["elapsed_ms"])
