# qaffine/rs/loperator.py

"""
L-Operator Module for qaffine

Level-zero L-operators in the evaluation representation. The quantum space
is a second copy of V carrying the spectral parameter ``a``:

    L^+(z) = R(z/a) expanded in nonnegative powers of z/a,
    L^-(z) = R_21(a/z)^-1 = R(z/a) expanded in nonnegative powers of a/z.

Before expansion R(z/a) is conjugated on its auxiliary leg by the sign gauge
of qaffine.graded.tensor.theta_gauge, which puts the odd entries in the
sign convention of the theta-conjugated RLL relation.

An LOperator is a FormalSeries in its spectral variable whose coefficients
are 9x9 matrices on aux (x) quantum; block (alpha, beta) of a coefficient is
the quantum operator L_{alpha beta}.
"""

from dataclasses import dataclass
from typing import Dict, Tuple
import logging

from qaffine.core.exceptions import NotInvertible, SeriesNotInvertible
from qaffine.graded.inverse import inverse
from qaffine.graded.matrix import GradedMatrix
from qaffine.graded.tensor import gauge_first_leg
from qaffine.kernel.series import FormalSeries, series_inverse
from qaffine.kernel.support import Interval
from qaffine.rmatrix.builder import RMatrixSpec
from qaffine.rs.expansion import matrix_series

logger = logging.getLogger(__name__)

PLUS = "+"
MINUS = "-"
EVALUATION_VARIABLE = "a"


def invert_coefficient(m: GradedMatrix) -> GradedMatrix:
    """Inverse of a series coefficient, as SeriesNotInvertible when singular."""
    try:
        return inverse(m)
    except NotInvertible as e:
        raise SeriesNotInvertible(f"leading coefficient is singular: {e}") from e


@dataclass(frozen=True)
class LOperator:
    """
    An L-operator L^{sign}(var).

    Attributes:
        sign: '+' or '-'.
        series: Series in the spectral variable with 9x9 coefficients.
        dim: Dimension of the auxiliary (and quantum) space.
        inverted: True for L^{sign}(var)^-1.
    """

    sign: str
    series: FormalSeries
    dim: int = 3
    inverted: bool = False

    @property
    def var(self) -> str:
        return self.series.var

    @property
    def direction(self) -> str:
        """The expansion ratio of the entries."""
        if self.sign == PLUS:
            return f"{self.var}/{EVALUATION_VARIABLE}"
        return f"{EVALUATION_VARIABLE}/{self.var}"

    def window(self) -> Interval:
        return self.series.window()

    def coefficient(self, n: int) -> GradedMatrix:
        value = self.series[n]
        return value if value is not None else GradedMatrix.zero(self.dim * self.dim)

    def block(self, alpha: int, beta: int) -> FormalSeries:
        """The entry L_{alpha beta} (1-based) as a series of quantum operators."""
        return self.series.map(lambda c: c.block(alpha - 1, beta - 1, self.dim))

    def blocks(self) -> Dict[Tuple[int, int], FormalSeries]:
        return {(i, j): self.block(i, j)
                for i in range(1, self.dim + 1) for j in range(1, self.dim + 1)}

    def at(self, var: str) -> "LOperator":
        """The same operator with its spectral variable renamed."""
        return LOperator(self.sign, self.series.renamed(var), self.dim, self.inverted)

    def inverse(self) -> "LOperator":
        """
        Series inverse of the operator.

        Raises:
            SeriesNotInvertible: If the order-zero coefficient is singular.
        """
        result = series_inverse(self.series, invert_coefficient)
        logger.debug(f"Inverted L^{self.sign}({self.var}) on window {result.window()}.")
        return LOperator(self.sign, result, self.dim, not self.inverted)

    def __str__(self) -> str:
        power = "^-1" if self.inverted else ""
        return f"L^{self.sign}({self.var}){power}"


def build_L(sign: str, r: RMatrixSpec, cutoff: int, var: str = "z") -> LOperator:
    """
    Builds L^{sign}(var) from an R-matrix.

    Args:
        sign: '+' (expansion in var/a) or '-' (expansion in a/var).
        r: The R-matrix; its second variable becomes the evaluation
            parameter a.
        cutoff: Number of orders computed beyond order zero.
        var: Spectral variable of the operator.

    Returns:
        LOperator: Known on orders 0..cutoff in the expansion direction.

    Raises:
        NonExpandable: If an entry has no expansion in that direction.
        ValueError: For a sign other than '+' or '-'.
    """
    if sign not in (PLUS, MINUS):
        logger.error(f"Invalid L-operator sign '{sign}'.")
        raise ValueError(f"sign must be '+' or '-', got '{sign}'")
    if cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    matrix = gauge_first_leg(r.at(var, EVALUATION_VARIABLE), r.grading)
    ratio = (var, EVALUATION_VARIABLE) if sign == PLUS else (EVALUATION_VARIABLE, var)
    series = matrix_series(matrix, ratio, Interval(0, cutoff), var)
    logger.info(f"Built L^{sign}({var}) from {r.name}: {len(series.coeffs)} nonzero orders.")
    return LOperator(sign, series, r.dim)


def build_pair(r: RMatrixSpec, cutoff: int, var: str = "z") -> Tuple[LOperator, LOperator]:
    """(L^+(var), L^-(var)) at the same cutoff."""
    return build_L(PLUS, r, cutoff, var), build_L(MINUS, r, cutoff, var)
