# qaffine/gauss/verify.py

"""
Checks of the Gauss decomposition: recomposition, the closed-form inverse and
the delta support of the X currents.
"""

from typing import Dict, List, Tuple
import logging

from qaffine.core.exceptions import EmptySafeWindow, NotInvertible, SeriesNotInvertible
from qaffine.core.report import CheckResult, timed
from qaffine.gauss.currents import CurrentSet, build_currents
from qaffine.gauss.decompose import (GaussData, explicit_inverse, gauss_decompose,
                                     rational_gauss, recompose)
from qaffine.graded.inverse import common_denominator
from qaffine.graded.matrix import GradedMatrix
from qaffine.graded.tensor import gauge_first_leg
from qaffine.kernel.mpoly import MPoly, var_index
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries, series_mul
from qaffine.kernel.support import Interval
from qaffine.rmatrix.builder import RMatrixSpec
from qaffine.rs.loperator import EVALUATION_VARIABLE, LOperator

logger = logging.getLogger(__name__)

GROUP = "gauss"
CONVENTION_NOTE = "X^+_i = f^+_i - f^-_i, X^-_i = e^-_i - e^+_i (c = 0)"


def _compare_blocks(name: str, actual: Dict[Tuple[int, int], FormalSeries],
                    expected: Dict[Tuple[int, int], FormalSeries], elapsed_ms: float) -> CheckResult:
    failing = []
    lo, hi = None, None
    for key in sorted(expected):
        try:
            _, differing = actual[key].equal_on_known(expected[key])
        except EmptySafeWindow as e:
            logger.warning(f"{name}: block {key}: {e}")
            return CheckResult.skipped(name, f"block {key}: {e}", group=GROUP)
        failing.extend([n, key[0], key[1]] for n in differing)
        window = actual[key].window()
        if not window.is_empty():
            lo = window.lo if lo is None else max(lo, window.lo)
            hi = window.hi if hi is None else min(hi, window.hi)
    logger.info(f"{name}: {len(failing)} differing coefficients.")
    return CheckResult.from_cells(name, failing, safe_window=[lo, hi], group=GROUP,
                                  elapsed_ms=elapsed_ms)


def verify_roundtrip(op: LOperator, g: GaussData) -> CheckResult:
    """E K F reproduces every block of L on the known orders."""
    with timed() as elapsed:
        blocks = recompose(g)
    return _compare_blocks(f"recompose(L^{op.sign})", blocks, op.blocks(), elapsed["elapsed_ms"])


def verify_explicit_inverse(op: LOperator, g: GaussData) -> CheckResult:
    """The closed-form inverse agrees with series inversion of L."""
    name = f"explicit-inverse(L^{op.sign})"
    with timed() as elapsed:
        try:
            closed = explicit_inverse(g)
            series = op.inverse().blocks()
        except SeriesNotInvertible as e:
            logger.error(f"{name}: {e}")
            return CheckResult.failed(name, detail=str(e), group=GROUP)
    return _compare_blocks(name, closed, series, elapsed["elapsed_ms"])


def polynomial_series(poly: MPoly, var: str, dim: int = 3) -> FormalSeries:
    """A Laurent polynomial as a finite series in var with scalar-matrix coefficients."""
    index = var_index(var)
    grouped: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for exps, coeff in poly.iter_terms():
        rest = list(exps)
        n = rest[index]
        rest[index] = 0
        grouped.setdefault(n, {})[tuple(rest)] = coeff
    coeffs = {n: GradedMatrix.identity(dim, one=RatExpr(MPoly.from_terms(terms)))
              for n, terms in grouped.items()}
    lo, hi = poly.degree_bounds(var)
    return FormalSeries(var, Interval(lo, hi), frozenset(range(lo, hi + 1)), coeffs)


def _delta_check(name: str, current: FormalSeries, rational: GradedMatrix) -> CheckResult:
    with timed() as elapsed:
        denominator = common_denominator(list(rational.entries.values()))
        cleared = series_mul(polynomial_series(denominator, current.var), current)
        failing = sorted(n for n in cleared.coeffs)
        window = cleared.window()
    if window.is_empty():
        logger.warning(f"{name}: empty safe window, skipped.")
        return CheckResult.skipped(name, "empty safe window at this cutoff", group=GROUP)
    return CheckResult.from_cells(name, failing, safe_window=[window.lo, window.hi],
                                  detail=f"annihilated by {denominator}", group=GROUP,
                                  notes=[CONVENTION_NOTE], elapsed_ms=elapsed["elapsed_ms"])


def verify_delta_support(r: RMatrixSpec, currents: CurrentSet, var: str = "z") -> List[CheckResult]:
    """
    Checks that each X^±_i is a sum of delta functions: the common
    denominator of the rational Gauss factor annihilates it.
    """
    try:
        g = rational_gauss(gauge_first_leg(r.at(var, EVALUATION_VARIABLE), r.grading), dim=r.dim)
    except NotInvertible as e:
        logger.error(f"Rational Gauss decomposition of {r.name} failed: {e}", exc_info=True)
        return [CheckResult.failed("delta-support", detail=str(e), group=GROUP)]
    pairs = (("X1p", g.f1), ("X2p", g.f2), ("X1m", g.e1), ("X2m", g.e2))
    return [_delta_check(f"delta-support({name})", getattr(currents, name), rational)
            for name, rational in pairs]


def verify_all(r: RMatrixSpec, l_plus: LOperator, l_minus: LOperator) -> List[CheckResult]:
    """Round trip and explicit inverse for both signs, then the delta supports."""
    results = []
    data = {}
    for op in (l_plus, l_minus):
        try:
            data[op.sign] = gauss_decompose(op)
        except SeriesNotInvertible as e:
            logger.error(f"Gauss decomposition of L^{op.sign} failed: {e}", exc_info=True)
            results.append(CheckResult.failed(f"decompose(L^{op.sign})", detail=str(e), group=GROUP))
            continue
        results.append(verify_roundtrip(op, data[op.sign]))
        results.append(verify_explicit_inverse(op, data[op.sign]))
    if len(data) == 2:
        currents = build_currents(data[l_plus.sign], data[l_minus.sign])
        results.extend(verify_delta_support(r, currents, l_plus.var))
    return results
