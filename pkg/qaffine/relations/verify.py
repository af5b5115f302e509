# qaffine/relations/verify.py

"""
Runs relation suites against the currents of an R-matrix in the evaluation
representation.
"""

from typing import Dict, List, Optional, Sequence
import logging

from qaffine.core.exceptions import SeriesNotInvertible
from qaffine.core.report import CheckResult
from qaffine.gauss.currents import current_bindings
from qaffine.gauss.decompose import gauss_decompose
from qaffine.kernel.series import FormalSeries
from qaffine.relations.builtin import RECAST_PAIR
from qaffine.relations.evaluator import RelationEvaluator
from qaffine.relations.model import RelationSuite
from qaffine.relations.mutation import mutation_probe
from qaffine.rmatrix.builder import RMatrixSpec
from qaffine.rs.loperator import build_pair

logger = logging.getLogger(__name__)


def bindings_for(r: RMatrixSpec, cutoff: int) -> Dict[str, FormalSeries]:
    """
    Gauss factors and currents of L^± built from ``r`` at ``cutoff``.

    Raises:
        NonExpandable, SeriesNotInvertible: If L^± or its Gauss factors do not exist.
    """
    l_plus, l_minus = build_pair(r, cutoff)
    return current_bindings(gauss_decompose(l_plus), gauss_decompose(l_minus))


def recast_check(evaluator: RelationEvaluator, suite: RelationSuite) -> Optional[CheckResult]:
    """Compares the two relations of RECAST_PAIR when the suite holds both."""
    labels = {r.label for r in suite.relations}
    if not set(RECAST_PAIR) <= labels:
        return None
    first, second = (suite.get(label) for label in RECAST_PAIR)
    return evaluator.compare_residuals(first, second, group=suite.name)


def verify_suites(r: RMatrixSpec, cutoff: int, suites: Sequence[RelationSuite],
                  mutations: bool = False, seed: int = 0) -> List[CheckResult]:
    """
    Evaluates every relation of every suite at c = 0.

    Args:
        r: R-matrix the L-operators are built from.
        cutoff: Series cutoff.
        suites: Suites to evaluate; all their currents must be bound.
        mutations: Also run one seeded mutation probe per suite.
        seed: Seed of the mutation probes.

    Raises:
        UnknownCurrent: If a suite references a current that is not bound.
    """
    try:
        bindings = bindings_for(r, cutoff)
    except SeriesNotInvertible as e:
        logger.error(f"Cannot build currents from {r.name}: {e}", exc_info=True)
        return [CheckResult.failed("currents", detail=str(e), group="relations")]
    evaluator = RelationEvaluator(bindings, cutoff, dim=r.dim)
    for suite in suites:
        evaluator.check_bound(suite)
    results: List[CheckResult] = []
    for suite in suites:
        logger.info(f"Evaluating suite '{suite.name}' ({len(suite)} relations).")
        results.extend(evaluator.evaluate_suite(suite))
        recast = recast_check(evaluator, suite)
        if recast is not None:
            results.append(recast)
        if mutations and suite.relations:
            results.append(mutation_probe(evaluator, suite, seed))
    return results
