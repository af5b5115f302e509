# qaffine/rmatrix/verify.py

"""
R-Matrix Verification Module for qaffine

Exact checks of the identities satisfied by the osp(1|2) R-matrix: the graded
Yang-Baxter equation, unitarity, the R_21 identities, the initial condition
R(z = w) = P, weight conservation, scale invariance, rho-commutation and
crossing-unitarity, together with the search for the crossing parameters.
Each check returns a CheckResult listing the failing entries.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple
import logging

from qaffine.core.exceptions import NoSolution, NotInvertible
from qaffine.core.report import CheckResult, timed
from qaffine.graded.inverse import clear_denominators, inverse
from qaffine.graded.matrix import GradedMatrix, pair_label
from qaffine.graded.tensor import graded_permutation, partial_supertranspose
from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.qpowers import q_power
from qaffine.kernel.ratexpr import RatExpr
from qaffine.rmatrix.builder import RMatrixSpec, conjugate_by_permutation

logger = logging.getLogger(__name__)

GROUP = "rmatrix"


@dataclass(frozen=True)
class CrossingParams:
    """
    Parameters of the crossing-unitarity identity.

    Attributes:
        g: Shift exponent, the spectral variable is scaled by q^(-2g).
        t: Weight exponent, pi(q^(2 h_rho)) = diag(q^t, 1, q^-t).
    """

    g: Fraction
    t: Fraction

    def __str__(self) -> str:
        return f"g={self.g}, t={self.t}"


def _labels(cells: Iterable[Tuple[int, int]], dim: int = 3) -> List[str]:
    return [f"{pair_label(i, dim)},{pair_label(j, dim)}" for i, j in cells]


def _result(name: str, cells, elapsed, detail: str = "", window=None) -> CheckResult:
    return CheckResult.from_cells(name, cells, safe_window=window, detail=detail,
                                  elapsed_ms=elapsed["elapsed_ms"], group=GROUP)


# ----------------------------------------------------------------------
# Yang-Baxter equation
# ----------------------------------------------------------------------

def ybe_sides(r: RMatrixSpec) -> Tuple[GradedMatrix, GradedMatrix]:
    """
    Both sides of R_12(z1/z2) R_13(z1/z3) R_23(z2/z3) = R_23 R_13 R_12 on V^(x3).

    The spectral variables z1, z2, z3 are z, w, a. Each factor is scaled by
    its common denominator first; the scalar factors are the same on both
    sides, so the polynomial matrices satisfy the same identity.
    """
    identity = GradedMatrix.identity(r.dim, r.grading)
    p = graded_permutation(r.grading)
    p23 = identity.kron(p)
    r12, _ = clear_denominators(r.at("z", "w"))
    r13, _ = clear_denominators(r.at("z", "a"))
    r23, _ = clear_denominators(r.at("w", "a"))
    big12 = r12.kron(identity)
    big13 = p23 * r13.kron(identity) * p23
    big23 = identity.kron(r23)
    return big12 * big13 * big23, big23 * big13 * big12


def verify_ybe(r: RMatrixSpec) -> CheckResult:
    """
    Checks the graded Yang-Baxter equation exactly on all 729 entries.

    Returns:
        CheckResult: 'pass', or 'fail' listing the differing (row, col) entries.
    """
    with timed() as elapsed:
        lhs, rhs = ybe_sides(r)
        cells = lhs.difference_cells(rhs)
    logger.info(f"YBE for {r.name}: {len(cells)} failing cells.")
    return _result("ybe", [list(c) for c in cells], elapsed,
                   detail=f"{len(cells)} of 729 cells differ" if cells else "all 729 cells agree")


# ----------------------------------------------------------------------
# Unitarity, R_21 and the initial condition
# ----------------------------------------------------------------------

def verify_unitarity(r: RMatrixSpec, r21: Optional[RMatrixSpec] = None) -> CheckResult:
    """
    Checks R_12(z/w) R_21(w/z) = 1, with R_21 = P R P unless given.
    """
    with timed() as elapsed:
        r21 = r21 or conjugate_by_permutation(r)
        product = r.at("z", "w") * r21.at("w", "z")
        identity = GradedMatrix.identity(product.dim, product.grading)
        cells = product.difference_cells(identity)
    return _result("unitarity", _labels(cells), elapsed)


def verify_r21(r: RMatrixSpec, r21: RMatrixSpec) -> CheckResult:
    """
    Checks a transcribed R_21 against P R P and against R_21(z/w) R(w/z) = 1.
    """
    with timed() as elapsed:
        conjugated = conjugate_by_permutation(r).at("z", "w")
        cells = r21.at("z", "w").difference_cells(conjugated)
        product = r21.at("z", "w") * r.at("w", "z")
        identity = GradedMatrix.identity(product.dim, product.grading)
        inverse_cells = product.difference_cells(identity)
    detail = []
    if cells:
        detail.append(f"differs from P R P at {len(cells)} entries")
    if inverse_cells:
        detail.append(f"R21(z/w) R(w/z) differs from 1 at {len(inverse_cells)} entries")
    return _result("r21", _labels(cells) + _labels(inverse_cells), elapsed, "; ".join(detail))


def verify_initial_condition(r: RMatrixSpec) -> CheckResult:
    """Checks R(z = w) = P."""
    with timed() as elapsed:
        x, y = r.variables
        at_equal = r.matrix.rename({x: y})
        cells = at_equal.difference_cells(graded_permutation(r.grading))
    return _result("initial-condition", _labels(cells), elapsed)


def verify_weight_conservation(r: RMatrixSpec) -> CheckResult:
    """
    Checks that entry (ab, a'b') vanishes unless the parities balance and
    the weights agree, a + b = a' + b' for 0-based indices.
    """
    with timed() as elapsed:
        n = r.dim
        g = r.grading
        bad = []
        for (row, col) in r.matrix.entries:
            a, b = divmod(row, n)
            c, d = divmod(col, n)
            parity_ok = (g[a] + g[b] + g[c] + g[d]) % 2 == 0
            weight_ok = a + b == c + d
            if not (parity_ok and weight_ok):
                bad.append((row, col))
    return _result("weight-conservation", _labels(sorted(bad)), elapsed)


def verify_scale_invariance(r: RMatrixSpec) -> CheckResult:
    """Checks that R is unchanged under (z, w) -> (lambda z, lambda w)."""
    with timed() as elapsed:
        x, y = r.variables
        scale = MPoly.var("u")
        scaled = r.matrix.scale_variable(x, scale).scale_variable(y, scale)
        cells = scaled.difference_cells(r.matrix)
    return _result("scale-invariance", _labels(cells), elapsed)


# ----------------------------------------------------------------------
# rho-commutation and crossing-unitarity
# ----------------------------------------------------------------------

def rho_matrix(t, dim: int = 3, grading=None) -> GradedMatrix:
    """pi(q^(2 h_rho)) = diag(q^t, 1, q^-t) for the three-dimensional space."""
    if dim != 3:
        raise ValueError("rho_matrix is defined for the three-dimensional representation")
    t = Fraction(t)
    return GradedMatrix.diagonal([RatExpr(q_power(t)), RatExpr.one(), RatExpr(q_power(-t))], grading)


def verify_rho_commutation(r: RMatrixSpec, t=1) -> CheckResult:
    """Checks (D (x) D) R = R (D (x) D) for D = diag(q^t, 1, q^-t)."""
    with timed() as elapsed:
        d = rho_matrix(t, r.dim, r.grading)
        dd = d.kron(d)
        cells = (dd * r.matrix).difference_cells(r.matrix * dd)
    return _result(f"rho-commutation(t={Fraction(t)})", _labels(cells), elapsed)


def crossing_lhs(r: RMatrixSpec, leg: int) -> GradedMatrix:
    """
    (((R^-1)^{st_leg})^-1)^{st_leg}.

    Raises:
        NotInvertible: If R or its partial supertranspose is singular.
    """
    g = r.grading
    step = partial_supertranspose(inverse(r.matrix), leg, g)
    return partial_supertranspose(inverse(step), leg, g)


def crossing_rhs(r: RMatrixSpec, params: CrossingParams, leg: int) -> GradedMatrix:
    """
    (D^-1 (x) 1) ((R(z q^-2g, w))^{st_1})^{st_1} (D (x) 1) for leg 1 and
    (1 (x) D) ((R(z, w q^2g))^{st_2})^{st_2} (1 (x) D^-1) for leg 2.

    Both shifts give R(z/w q^-2g); leg 2 moves the second variable.
    """
    g = r.grading
    x, y = r.variables
    identity = GradedMatrix.identity(r.dim, g)
    d = rho_matrix(params.t, r.dim, g)
    d_inv = rho_matrix(-params.t, r.dim, g)
    if leg == 1:
        shifted = r.matrix.scale_variable(x, q_power(-2 * params.g))
    else:
        shifted = r.matrix.scale_variable(y, q_power(2 * params.g))
    twice = partial_supertranspose(partial_supertranspose(shifted, leg, g), leg, g)
    if leg == 1:
        return d_inv.kron(identity) * twice * d.kron(identity)
    return identity.kron(d) * twice * identity.kron(d_inv)


def proportionality(left: GradedMatrix, right: GradedMatrix) -> Tuple[Optional[RatExpr], List[Tuple[int, int]]]:
    """
    The scalar lambda with left = lambda * right, read off entry (11, 11),
    and the entries where left * right_(11,11) != right * left_(11,11).

    Returns (None, every differing entry) when either (11, 11) entry vanishes.
    """
    l00, r00 = left.get(0, 0), right.get(0, 0)
    if l00 is None or r00 is None:
        return None, left.difference_cells(right) or [(0, 0)]
    cells = sorted(key for key in set(left.entries) | set(right.entries)
                   if not _cross_equal(left.get(*key), r00, right.get(*key), l00))
    return l00 / r00, cells


def _cross_equal(a, r00: RatExpr, b, l00: RatExpr) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return (a * r00 - b * l00).is_zero()


def verify_crossing(r: RMatrixSpec, params: CrossingParams,
                    lhs: Optional[Tuple[GradedMatrix, GradedMatrix]] = None) -> CheckResult:
    """
    Checks both crossing-unitarity identities for the given parameters.

    Each identity holds up to a scalar function lambda(z/w); the check
    compares the two sides projectively and requires one lambda for both
    legs.

    Args:
        r: The R-matrix.
        params: Candidate (g, t).
        lhs: Precomputed left-hand sides for legs 1 and 2.

    Raises:
        NotInvertible: If an st-conjugated matrix is singular.
    """
    with timed() as elapsed:
        if lhs is None:
            lhs = (crossing_lhs(r, 1), crossing_lhs(r, 2))
        cells = []
        scalars = []
        for leg, left in zip((1, 2), lhs):
            scalar, diff = proportionality(left, crossing_rhs(r, params, leg))
            scalars.append(scalar)
            cells.extend(f"st{leg}:{label}" for label in _labels(diff))
        first, second = scalars
        if not cells and not (first - second).is_zero():
            cells.append("lambda differs between st1 and st2")
    detail = "" if cells else f"lambda = {first}"
    return _result(f"crossing({params})", cells, elapsed, detail=detail)


def find_crossing_params(r: RMatrixSpec, values: Iterable) -> List[CrossingParams]:
    """
    Returns every (g, t) on the grid values x values passing verify_crossing.

    Raises:
        NotInvertible: If the left-hand sides cannot be formed.
        NoSolution: If no grid point passes.
    """
    values = [Fraction(v) for v in values]
    lhs = (crossing_lhs(r, 1), crossing_lhs(r, 2))
    found = []
    for g in values:
        for t in values:
            params = CrossingParams(g, t)
            if verify_crossing(r, params, lhs):
                logger.info(f"Crossing parameters found: {params}.")
                found.append(params)
    if not found:
        logger.warning(f"No crossing parameters for {r.name} on a grid of {len(values)}^2 points.")
        raise NoSolution(f"no crossing parameters on the grid {values[0]}..{values[-1]}")
    return found


def verify_all(r: RMatrixSpec, r21: Optional[RMatrixSpec], crossing_values: Iterable) -> List[CheckResult]:
    """Runs every R-matrix check; crossing failures become report outcomes."""
    results = [
        verify_weight_conservation(r),
        verify_scale_invariance(r),
        verify_initial_condition(r),
        verify_unitarity(r),
        verify_rho_commutation(r, 1),
        verify_ybe(r),
    ]
    if r21 is not None:
        results.append(verify_r21(r, r21))
    try:
        with timed() as elapsed:
            found = find_crossing_params(r, crossing_values)
        results.append(CheckResult.passed(
            "crossing-search", group=GROUP, elapsed_ms=elapsed["elapsed_ms"],
            detail="; ".join(str(p) for p in found),
            notes=[f"discovered parameters: {', '.join(str(p) for p in found)}"]))
    except (NoSolution, NotInvertible) as e:
        logger.error(f"Crossing search failed: {e}")
        results.append(CheckResult.failed("crossing-search", detail=str(e), group=GROUP))
    return results
