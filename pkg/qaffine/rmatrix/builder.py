# qaffine/rmatrix/builder.py

"""
R-Matrix Builder Module for qaffine

Builds the trigonometric R-matrix of U_q[osp(1|2)^(1)] on the vector
representation V (x) V, V with basis v_1, v_2, v_3 of parities (0, 1, 0),
together with R_21. Rows and columns use the pair order
11, 12, 13, 21, 22, 23, 31, 32, 33. Entries are rational expressions in
s = q^(1/2) and the two spectral variables.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple
import logging

from qaffine.graded.matrix import GradedMatrix, Grading, OSP12_GRADING, pair_index
from qaffine.graded.tensor import graded_permutation
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.qpowers import q_power
from qaffine.kernel.ratexpr import RatExpr

logger = logging.getLogger(__name__)


@dataclass
class RMatrixSpec:
    """
    A 9x9 R-matrix R(x/y) with its grading and spectral variable names.

    Attributes:
        matrix (GradedMatrix): Entries as rational expressions.
        variables (Tuple[str, str]): Names (x, y) of the spectral variables.
        name (str): Label used in reports.
    """

    matrix: GradedMatrix
    variables: Tuple[str, str] = ("z", "w")
    name: str = "osp(1|2)"
    grading: Grading = OSP12_GRADING

    @property
    def dim(self) -> int:
        return self.grading.dim

    def at(self, x: str, y: str) -> GradedMatrix:
        """The matrix with its spectral variables renamed to (x, y)."""
        if (x, y) == self.variables:
            return self.matrix
        old_x, old_y = self.variables
        return self.matrix.rename({old_x: x, old_y: y})

    def entry(self, row: str, col: str) -> RatExpr:
        """Entry by two-digit pair labels, e.g. entry('12', '21')."""
        return self.matrix[(pair_index(int(row[0]), int(row[1]), self.dim),
                            pair_index(int(col[0]), int(col[1]), self.dim))]

    def with_entry(self, row: str, col: str, value: RatExpr) -> "RMatrixSpec":
        entries = dict(self.matrix.entries)
        key = (pair_index(int(row[0]), int(row[1]), self.dim),
               pair_index(int(col[0]), int(col[1]), self.dim))
        entries[key] = value
        return RMatrixSpec(GradedMatrix(self.matrix.dim, self.matrix.grading, entries),
                           self.variables, f"{self.name} (mutated {row},{col})", self.grading)


def osp12_entries(x: str = "z", y: str = "w") -> Dict[str, RatExpr]:
    """
    The nine structure functions a, b, c, d, e, f, g, r, s of R(x/y).
    """
    z = MPoly.var(x)
    w = MPoly.var(y)
    q = q_power(1)
    q2 = q_power(2)
    q3 = q_power(3)
    one = MPoly.one()
    d2 = z * q2 - w
    d3 = z * q3 - w
    d23 = d2 * d3
    a = RatExpr(q * (z - w), d2)
    entries = {
        "a": a,
        "b": RatExpr(w * (q2 - one), d2),
        "c": RatExpr(q_power(Fraction(1, 2)) * w * (q2 - one) * (z - w), d23),
        "d": RatExpr(q2 * (z - w) * (z * q - w), d23),
        "e": a - RatExpr(z * w * (q2 - one) * (q3 - one), d23),
        "f": RatExpr(z * (q2 - one), d2),
        "g": RatExpr(-(q_power(Fraction(5, 2)) * z * (q2 - one) * (z - w)), d23),
        "r": RatExpr(w * (q2 - one) * (q3 * z + q * (z - w) - w), d23),
        "s": RatExpr(z * (q2 - one) * (q3 * z + q2 * (z - w) - w), d23),
    }
    return entries


# (row, column, entry name, sign) in pair labels
_R_LAYOUT = (
    ("11", "11", None, 1),
    ("12", "12", "a", 1), ("12", "21", "b", 1),
    ("13", "13", "d", 1), ("13", "22", "c", 1), ("13", "31", "r", 1),
    ("21", "12", "f", 1), ("21", "21", "a", 1),
    ("22", "13", "g", 1), ("22", "22", "e", 1), ("22", "31", "c", 1),
    ("23", "23", "a", 1), ("23", "32", "b", 1),
    ("31", "13", "s", 1), ("31", "22", "g", 1), ("31", "31", "d", 1),
    ("32", "23", "f", 1), ("32", "32", "a", 1),
    ("33", "33", None, 1),
)

_R21_LAYOUT = (
    ("11", "11", None, 1),
    ("12", "12", "a", 1), ("12", "21", "f", 1),
    ("13", "13", "d", 1), ("13", "22", "g", -1), ("13", "31", "s", 1),
    ("21", "12", "b", 1), ("21", "21", "a", 1),
    ("22", "13", "c", -1), ("22", "22", "e", 1), ("22", "31", "g", -1),
    ("23", "23", "a", 1), ("23", "32", "f", 1),
    ("31", "13", "r", 1), ("31", "22", "c", -1), ("31", "31", "d", 1),
    ("32", "23", "b", 1), ("32", "32", "a", 1),
    ("33", "33", None, 1),
)


def _assemble(layout, values: Dict[str, RatExpr]) -> GradedMatrix:
    entries = {}
    for row, col, name, sign in layout:
        value = RatExpr.one() if name is None else values[name]
        if sign < 0:
            value = -value
        entries[(pair_index(int(row[0]), int(row[1])), pair_index(int(col[0]), int(col[1])))] = value
    return GradedMatrix(9, OSP12_GRADING.tensor(OSP12_GRADING), entries)


def build_r(x: str = "z", y: str = "w") -> RMatrixSpec:
    """
    Builds R(x/y) for osp(1|2).

    Args:
        x (str): Numerator spectral variable.
        y (str): Denominator spectral variable.

    Returns:
        RMatrixSpec: The exact 9x9 matrix.
    """
    logger.debug(f"Building the osp(1|2) R-matrix R({x}/{y}).")
    return RMatrixSpec(_assemble(_R_LAYOUT, osp12_entries(x, y)), (x, y))


def build_r21(x: str = "z", y: str = "w") -> RMatrixSpec:
    """Builds R_21(x/y) from its own entry layout."""
    return RMatrixSpec(_assemble(_R21_LAYOUT, osp12_entries(x, y)), (x, y), "osp(1|2) R21")


def conjugate_by_permutation(r: RMatrixSpec) -> RMatrixSpec:
    """P R P with the graded permutation P; for R this is R_21."""
    p = graded_permutation(r.grading)
    return RMatrixSpec(p * r.matrix * p, r.variables, f"P {r.name} P", r.grading)


def identity_r(x: str = "z", y: str = "w") -> RMatrixSpec:
    """The identity 'R-matrix', a trivial solution used as a baseline."""
    return RMatrixSpec(GradedMatrix.identity(9, OSP12_GRADING.tensor(OSP12_GRADING)), (x, y), "identity")
