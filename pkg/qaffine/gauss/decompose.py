# qaffine/gauss/decompose.py

"""
Gauss Decomposition Module for qaffine

Splits a 3x3 L-operator, whose entries are operator-valued series, into

    L = E K F,   E lower unipotent (e_1, e_2, e_31),
                 K = diag(k_1, k_2, k_3),
                 F upper unipotent (f_1, f_2, f_13),

with the closed formulas of the unique decomposition. Products keep the
left-to-right operator order of the formulas. The module also recomposes
the factors, builds the closed-form inverse of L from them, and performs the
same decomposition on rational (unexpanded) block matrices.
"""

from dataclasses import dataclass, fields
from typing import Callable, Dict, Tuple
import logging

from qaffine.graded.inverse import inverse
from qaffine.graded.matrix import GradedMatrix
from qaffine.kernel.series import FormalSeries, series_inverse
from qaffine.rs.loperator import LOperator, invert_coefficient

logger = logging.getLogger(__name__)

Blocks = Dict[Tuple[int, int], object]

FACTOR_NAMES = ("k1", "k2", "k3", "e1", "e2", "e31", "f1", "f2", "f13")


@dataclass(frozen=True)
class GaussData:
    """
    The nine Gauss factors of L^{sign}.

    Every field is a FormalSeries of 3x3 operator matrices (or, for
    ``rational_gauss``, a single GradedMatrix of rational expressions).
    """

    sign: str
    k1: object
    k2: object
    k3: object
    e1: object
    e2: object
    e31: object
    f1: object
    f2: object
    f13: object

    def factors(self) -> Dict[str, object]:
        return {name: getattr(self, name) for name in FACTOR_NAMES}

    def replace(self, **changes) -> "GaussData":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return GaussData(**values)


def invert_series(x: FormalSeries) -> FormalSeries:
    """Series inverse of a diagonal factor."""
    return series_inverse(x, invert_coefficient)


def _decompose(blocks: Blocks, invert: Callable) -> Dict[str, object]:
    l11, l12, l13 = blocks[(1, 1)], blocks[(1, 2)], blocks[(1, 3)]
    l21, l22, l23 = blocks[(2, 1)], blocks[(2, 2)], blocks[(2, 3)]
    l31, l32, l33 = blocks[(3, 1)], blocks[(3, 2)], blocks[(3, 3)]
    k1 = l11
    k1_inv = invert(k1)
    f1 = k1_inv * l12
    f13 = k1_inv * l13
    e1 = l21 * k1_inv
    e31 = l31 * k1_inv
    k2 = l22 - e1 * k1 * f1
    k2_inv = invert(k2)
    f2 = k2_inv * (l23 - e1 * k1 * f13)
    e2 = (l32 - e31 * k1 * f1) * k2_inv
    k3 = l33 - e2 * k2 * f2 - e31 * k1 * f13
    return {"k1": k1, "k2": k2, "k3": k3, "e1": e1, "e2": e2, "e31": e31,
            "f1": f1, "f2": f2, "f13": f13}


def gauss_decompose(op: LOperator) -> GaussData:
    """
    Gauss-decomposes an L-operator.

    Args:
        op (LOperator): L^+ or L^-.

    Returns:
        GaussData: The nine factors, truncated to the operator's window.

    Raises:
        SeriesNotInvertible: If k_1 or k_2 has a singular leading coefficient.
    """
    parts = _decompose(op.blocks(), invert_series)
    logger.info(f"Gauss-decomposed L^{op.sign}({op.var}) on window {op.window()}.")
    return GaussData(op.sign, **parts)


def rational_gauss(matrix: GradedMatrix, sign: str = "", dim: int = 3) -> GaussData:
    """
    Gauss factors of an unexpanded matrix on aux (x) quantum, e.g. R(z/a).

    Raises:
        NotInvertible: If k_1 or k_2 is singular.
    """
    blocks = {(i + 1, j + 1): matrix.block(i, j, dim) for i in range(dim) for j in range(dim)}
    return GaussData(sign, **_decompose(blocks, inverse))


def recompose(g: GaussData) -> Blocks:
    """The blocks of E K F, 1-based."""
    k1, k2, k3 = g.k1, g.k2, g.k3
    e1, e2, e31 = g.e1, g.e2, g.e31
    f1, f2, f13 = g.f1, g.f2, g.f13
    return {
        (1, 1): k1,
        (1, 2): k1 * f1,
        (1, 3): k1 * f13,
        (2, 1): e1 * k1,
        (2, 2): k2 + e1 * k1 * f1,
        (2, 3): k2 * f2 + e1 * k1 * f13,
        (3, 1): e31 * k1,
        (3, 2): e2 * k2 + e31 * k1 * f1,
        (3, 3): k3 + e2 * k2 * f2 + e31 * k1 * f13,
    }


def explicit_inverse(g: GaussData, invert: Callable = None) -> Blocks:
    """
    The blocks of L^-1 = F^-1 K^-1 E^-1 written out in the Gauss factors.

    Args:
        g: Factors of L (series or rational).
        invert: Inverse of a diagonal factor; defaults to series inversion.
    """
    invert = invert or invert_series
    k1_inv, k2_inv, k3_inv = invert(g.k1), invert(g.k2), invert(g.k3)
    e1, e2, e31 = g.e1, g.e2, g.e31
    f1, f2, f13 = g.f1, g.f2, g.f13
    upper = f1 * f2 - f13
    lower = e2 * e1 - e31
    return {
        (1, 1): k1_inv + f1 * k2_inv * e1 + upper * k3_inv * lower,
        (1, 2): -(f1 * k2_inv) + (f13 - f1 * f2) * k3_inv * e2,
        (1, 3): upper * k3_inv,
        (2, 1): -(k2_inv * e1) + f2 * k3_inv * (e31 - e2 * e1),
        (2, 2): k2_inv + f2 * k3_inv * e2,
        (2, 3): -(f2 * k3_inv),
        (3, 1): k3_inv * lower,
        (3, 2): -(k3_inv * e2),
        (3, 3): k3_inv,
    }


def leading_coefficients(g: GaussData) -> Dict[str, object]:
    """
    Order-zero coefficients of the nine factors as nested lists of strings.
    """
    document = {}
    for name, series in g.factors().items():
        value = series.coeffs.get(0) if series.is_determined(0) else None
        if value is None:
            value = GradedMatrix.zero(3)
        document[name] = [[str(value.get(i, j, "0")) for j in range(value.dim)]
                          for i in range(value.dim)]
    return {"sign": g.sign, "factors": document}
