# qaffine/rs/verify.py

"""
RS Relation Verification Module for qaffine

Checks the exchange relations of the super RS algebra in the evaluation
representation (central charge 0). Operators act on aux_1 (x) aux_2 (x)
quantum; the L-operators sit on legs (1, 3) and (2, 3) and the legs-(2, 3)
factor is conjugated by theta_12, so every product is an ordinary matrix
product. Both sides of a relation are CoeffGrids in (z, w) and a relation
holds when their difference vanishes on its safe window.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from qaffine.core.exceptions import EmptySafeWindow, SeriesNotInvertible
from qaffine.core.report import CheckResult, grid_result, timed
from qaffine.graded.inverse import clear_denominators
from qaffine.graded.matrix import OSP12_GRADING, GradedMatrix
from qaffine.graded.tensor import (component_form_rll, embed_pair, gauge_first_leg,
                                   theta_form_rll, theta_matrix)
from qaffine.kernel.grid import CoeffGrid, lift_series
from qaffine.kernel.series import FormalSeries, series_mul
from qaffine.rmatrix.builder import RMatrixSpec, conjugate_by_permutation
from qaffine.rs.expansion import matrix_grid
from qaffine.rs.loperator import MINUS, PLUS, LOperator

logger = logging.getLogger(__name__)

GROUP = "rs"
SIGN_PAIRS = ("++", "--", "+-")


# ----------------------------------------------------------------------
# Building blocks on aux_1 (x) aux_2 (x) quantum
# ----------------------------------------------------------------------

def _ratio(direction: str) -> Tuple[str, str]:
    x, y = direction.split("/")
    return x, y


def _depth(*operators: LOperator) -> int:
    reach = 0
    for op in operators:
        window = op.window()
        if not window.is_empty():
            reach = max(reach, abs(window.lo), abs(window.hi))
    return 2 * reach + 2


def r_grid(matrix: GradedMatrix, direction: str, depth: int) -> CoeffGrid:
    """A 9x9 R-matrix in (z, w) expanded in ``direction``, placed on legs (1, 2)."""
    identity = GradedMatrix.identity(3)
    return matrix_grid(matrix, _ratio(direction), depth, embed=lambda m: m.kron(identity))


def leg1_grid(op: LOperator) -> CoeffGrid:
    """L_1 = L on legs (1, 3)."""
    return lift_series(op.series.map(lambda c: embed_pair(c, (1, 3))))


def leg2_grid(op: LOperator) -> CoeffGrid:
    """theta_12 L_2 theta_12 with L on legs (2, 3)."""
    theta = theta_matrix(OSP12_GRADING).kron(GradedMatrix.identity(3))
    return lift_series(op.series.map(lambda c: theta * embed_pair(c, (2, 3)) * theta))


def _product(tokens: Sequence[str], grids: Dict[str, CoeffGrid]) -> CoeffGrid:
    result = grids[tokens[0]]
    for token in tokens[1:]:
        result = result * grids[token]
    return result


def _pick(sign: str, l_plus: LOperator, l_minus: LOperator) -> LOperator:
    return l_plus if sign == PLUS else l_minus


# ----------------------------------------------------------------------
# RLL relations
# ----------------------------------------------------------------------

def rll_residual(sign_pair: str, r: RMatrixSpec, l_plus: LOperator, l_minus: LOperator) -> CoeffGrid:
    """
    R(z/w) L_1(z) theta L_2(w) theta - theta L_2(w) theta L_1(z) R(z/w).

    ``sign_pair`` gives the signs of L_1 and L_2; R is expanded in powers of
    z/w in every case.
    """
    if sign_pair not in SIGN_PAIRS:
        logger.error(f"Invalid sign pair '{sign_pair}'.")
        raise ValueError(f"sign pair must be one of {', '.join(SIGN_PAIRS)}, got '{sign_pair}'")
    first = _pick(sign_pair[0], l_plus, l_minus).at("z")
    second = _pick(sign_pair[1], l_plus, l_minus).at("w")
    grids = {
        "R": r_grid(r.at("z", "w"), "z/w", _depth(first, second)),
        "L1": leg1_grid(first),
        "L2": leg2_grid(second),
    }
    return _product(("R", "L1", "L2"), grids) - _product(("L2", "L1", "R"), grids)


def verify_rll(sign_pair: str, r: RMatrixSpec, l_plus: LOperator, l_minus: LOperator) -> CheckResult:
    """
    Checks one RLL relation on its safe window.

    Returns:
        CheckResult: pass, fail with the nonzero cells, or skipped when the
        safe window is empty.
    """
    with timed() as elapsed:
        residual = rll_residual(sign_pair, r, l_plus, l_minus)
    return grid_result(f"rll({sign_pair})", residual, GROUP, elapsed_ms=elapsed["elapsed_ms"],
                       notes=["R expanded in z/w"])


# ----------------------------------------------------------------------
# Consequences of the RLL relations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaFamily:
    """
    One consequence family, written with R = R_21(z/w),
    A = L_1(w) (or its inverse when marked '~') and B = theta L_2(z) theta.

    Attributes:
        name: Family label.
        lhs, rhs: Ordered factor tokens of both sides.
        pairs: (sign of L_2(z), sign of L_1(w)) combinations to check.
    """

    name: str
    lhs: Tuple[str, ...]
    rhs: Tuple[str, ...]
    pairs: Tuple[Tuple[str, str], ...]


_SAME = ((PLUS, PLUS), (MINUS, MINUS))

THETA_FAMILIES = (
    ThetaFamily("llr2", ("R", "B", "A"), ("A", "B", "R"), _SAME),
    ThetaFamily("llr3", ("R", "B", "A"), ("A", "B", "R"), ((PLUS, MINUS),)),
    ThetaFamily("llr4", ("R", "B", "A"), ("A", "B", "R"), ((MINUS, PLUS),)),
    ThetaFamily("llr5", ("B~", "A~", "R"), ("R", "A~", "B~"), _SAME),
    ThetaFamily("llr6", ("B~", "A~", "R"), ("R", "A~", "B~"), ((PLUS, MINUS),)),
    ThetaFamily("llr7", ("B~", "A~", "R"), ("R", "A~", "B~"), ((MINUS, PLUS),)),
    ThetaFamily("llr8", ("A~", "R", "B"), ("B", "R", "A~"), _SAME),
    ThetaFamily("llr9", ("A~", "R", "B"), ("B", "R", "A~"), ((PLUS, MINUS),)),
    ThetaFamily("llr10", ("A~", "R", "B"), ("B", "R", "A~"), ((MINUS, PLUS),)),
)


def consequence_direction(sign_z: str, sign_w: str) -> str:
    """
    Expansion ratio of R_21 for L_2^{sign_z}(z) and L_1^{sign_w}(w).

    Equal signs use z/w; mixed signs use (argument of L^+)/(argument of L^-),
    the only choice with finite coefficients.
    """
    if sign_z == sign_w or sign_z == PLUS:
        return "z/w"
    return "w/z"


def theta_residual_grid(family: ThetaFamily, sign_z: str, sign_w: str, r21: RMatrixSpec,
                        operators: Dict[Tuple[str, bool], LOperator]) -> Tuple[CoeffGrid, str]:
    """
    Residual of one family for one sign combination.

    Args:
        operators: L-operators keyed by (sign, inverted).

    Returns:
        (residual, direction)
    """
    direction = consequence_direction(sign_z, sign_w)
    a = operators[(sign_w, False)].at("w")
    b = operators[(sign_z, False)].at("z")
    grids: Dict[str, CoeffGrid] = {}
    tokens = set(family.lhs) | set(family.rhs)
    if "A" in tokens:
        grids["A"] = leg1_grid(a)
    if "A~" in tokens:
        grids["A~"] = leg1_grid(operators[(sign_w, True)].at("w"))
    if "B" in tokens:
        grids["B"] = leg2_grid(b)
    if "B~" in tokens:
        grids["B~"] = leg2_grid(operators[(sign_z, True)].at("z"))
    grids["R"] = r_grid(r21.at("z", "w"), direction, _depth(a, b))
    residual = _product(family.lhs, grids) - _product(family.rhs, grids)
    return residual, direction


def verify_theta_consequences(r: RMatrixSpec, l_plus: LOperator, l_minus: LOperator,
                              r21: Optional[RMatrixSpec] = None,
                              families: Sequence[ThetaFamily] = THETA_FAMILIES) -> List[CheckResult]:
    """
    Checks every consequence family for every listed sign combination.

    The expansion direction chosen for R_21 is recorded in each result.

    Raises:
        SeriesNotInvertible: If an L-operator has a singular leading coefficient.
    """
    r21 = r21 or conjugate_by_permutation(r)
    operators = {
        (PLUS, False): l_plus,
        (MINUS, False): l_minus,
        (PLUS, True): l_plus.inverse(),
        (MINUS, True): l_minus.inverse(),
    }
    results = []
    for family in families:
        for sign_z, sign_w in family.pairs:
            name = f"{family.name}({sign_z}{sign_w})"
            with timed() as elapsed:
                residual, direction = theta_residual_grid(family, sign_z, sign_w, r21, operators)
            results.append(grid_result(name, residual, GROUP, elapsed_ms=elapsed["elapsed_ms"],
                                       notes=[f"R21 expanded in {direction}"]))
    return results


# ----------------------------------------------------------------------
# Component form and series inverses
# ----------------------------------------------------------------------

def _operator_blocks(m: GradedMatrix, dim: int = 3) -> GradedMatrix:
    """A 9x9 matrix on aux (x) quantum as a 3x3 matrix of quantum operators."""
    entries = {}
    for i in range(dim):
        for j in range(dim):
            block = m.block(i, j, dim)
            if not block.is_zero():
                entries[(i, j)] = block
    return GradedMatrix(dim, OSP12_GRADING, entries)


def component_residual(r: GradedMatrix, l_first: GradedMatrix, l_second: GradedMatrix) -> Dict:
    """Nonzero entries of lhs - rhs of the sign-decorated component RLL relation."""
    lhs, rhs = component_form_rll(r, l_first, l_second)
    residual = {}
    for key in set(lhs) | set(rhs):
        left, right = lhs.get(key), rhs.get(key)
        value = left if right is None else (-right if left is None else left - right)
        if not value.is_zero():
            residual[key] = value
    return residual


def theta_residual(r: GradedMatrix, l_first: GradedMatrix, l_second: GradedMatrix) -> Dict:
    """Nonzero entries of lhs - rhs of the theta-conjugated matrix form."""
    lhs, rhs = theta_form_rll(r, l_first, l_second)
    return dict((lhs - rhs).entries)


def verify_component_form(r: RMatrixSpec) -> CheckResult:
    """
    Compares the component form and the theta-form of R L_1 L_2 = L_2 L_1 R
    for the rational L-operators L(z) = R(z/a), L(w) = R(w/a), both taken in
    the sign gauge of build_L.

    Scalar factors are cleared first; both forms must give the same
    residual, and that residual must vanish.
    """
    with timed() as elapsed:
        rzw, _ = clear_denominators(r.at("z", "w"))
        rza, _ = clear_denominators(gauge_first_leg(r.at("z", "a"), r.grading))
        rwa, _ = clear_denominators(gauge_first_leg(r.at("w", "a"), r.grading))
        first, second = _operator_blocks(rza, r.dim), _operator_blocks(rwa, r.dim)
        component = component_residual(rzw, first, second)
        theta = theta_residual(rzw, first, second)
        keys = sorted(set(component) | set(theta))
        mismatched = [k for k in keys
                      if k not in component or k not in theta or not (component[k] - theta[k]).is_zero()]
    failing = [["mismatch", i + 1, j + 1] for i, j in mismatched] + \
              [["residual", i + 1, j + 1] for i, j in sorted(theta)]
    detail = f"{len(mismatched)} entries differ between the two forms, {len(theta)} nonzero residual entries"
    return CheckResult.from_cells("component-vs-theta", failing, detail=detail if failing else "",
                                  group=GROUP, elapsed_ms=elapsed["elapsed_ms"])


def verify_inverse(op: LOperator) -> CheckResult:
    """Checks L L^-1 = L^-1 L = 1 on the known orders."""
    name = f"inverse(L^{op.sign})"
    with timed() as elapsed:
        try:
            inv = op.inverse()
        except SeriesNotInvertible as e:
            logger.error(f"{name}: {e}")
            return CheckResult.failed(name, detail=str(e), group=GROUP)
        identity = GradedMatrix.identity(op.dim * op.dim)
        one = FormalSeries.constant(op.var, identity, [0])
        bad = []
        for product in (series_mul(op.series, inv.series), series_mul(inv.series, op.series)):
            try:
                _, differing = product.equal_on_known(one)
            except EmptySafeWindow as e:
                logger.warning(f"{name}: {e}")
                return CheckResult.skipped(name, str(e), group=GROUP)
            bad.extend(differing)
    window = inv.window()
    return CheckResult.from_cells(name, sorted(set(bad)), safe_window=[window.lo, window.hi],
                                  group=GROUP, elapsed_ms=elapsed["elapsed_ms"])


def verify_all(r: RMatrixSpec, l_plus: LOperator, l_minus: LOperator,
               r21: Optional[RMatrixSpec] = None) -> List[CheckResult]:
    """Every RS check: RLL relations, inverses, component form and the consequence families."""
    results = [verify_rll(pair, r, l_plus, l_minus) for pair in SIGN_PAIRS]
    results.append(verify_inverse(l_plus))
    results.append(verify_inverse(l_minus))
    results.append(verify_component_form(r))
    results.extend(verify_theta_consequences(r, l_plus, l_minus, r21))
    return results
