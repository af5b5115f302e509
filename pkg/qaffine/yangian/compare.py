# qaffine/yangian/compare.py

"""
Structural comparison and printing of rational suites.
"""

from collections import defaultdict
from typing import Dict, List, Optional, Tuple
import logging

from qaffine.core.report import CheckResult, Report, timed
from qaffine.relations.model import Delta, Relation, RelationSuite, Term
from qaffine.relations.printer import format_factor, format_suite
from qaffine.yangian.degenerate import RationalRelation, RationalSuite, RationalTerm
from qaffine.yangian.linear import LinearFactorProduct, LinearForm

logger = logging.getLogger(__name__)

GROUP = "degenerate"


def _factor_key(factor) -> str:
    if isinstance(factor, LinearForm):
        return format_factor(Delta(factor.to_expr()))
    return format_factor(factor)


def _signed_terms(relation: RationalRelation) -> Dict[Tuple[str, ...], List[LinearFactorProduct]]:
    """lhs - rhs grouped by the ordered factor product."""
    grouped: Dict[Tuple[str, ...], List[LinearFactorProduct]] = defaultdict(list)
    for term in relation.lhs:
        grouped[tuple(_factor_key(f) for f in term.factors)].append(term.coefficient)
    for term in relation.rhs:
        grouped[tuple(_factor_key(f) for f in term.factors)].append(-term.coefficient)
    return grouped


def _sorted_values(values: List[LinearFactorProduct]) -> List[LinearFactorProduct]:
    return sorted(values, key=repr)


def _mismatch(first: RationalRelation, second: RationalRelation) -> Optional[str]:
    a = _signed_terms(first)
    b = _signed_terms(second)
    for key in sorted(set(a) | set(b)):
        product = " ".join(key) or "1"
        if key not in a or key not in b:
            side = "first" if key not in a else "second"
            return f"term {product} is missing from the {side} suite"
        if _sorted_values(a[key]) != _sorted_values(b[key]):
            shown_a = ", ".join(str(v) if v.constant > 0 else f"-({-v})" for v in a[key])
            shown_b = ", ".join(str(v) if v.constant > 0 else f"-({-v})" for v in b[key])
            return f"coefficient of {product}: {shown_a} vs {shown_b}"
    return None


def compare_relations(first: RationalRelation, second: RationalRelation, group: str = GROUP) -> CheckResult:
    with timed() as elapsed:
        problem = _mismatch(first, second)
    if problem is None:
        return CheckResult.passed(first.label, detail="structurally equal", group=group,
                                  elapsed_ms=elapsed["elapsed_ms"])
    logger.info(f"{group}/{first.label}: {problem}")
    return CheckResult.failed(first.label, detail=problem, group=group, elapsed_ms=elapsed["elapsed_ms"])


def compare_suites(lhs: RationalSuite, rhs: RationalSuite) -> Report:
    """
    Relation-by-relation structural equality, matched by label.

    A label present in only one suite fails, as does a difference in the
    current names the two suites bind.
    """
    report = Report(f"compare {lhs.name} with {rhs.name}")
    first = {r.label: r for r in lhs.relations}
    second = {r.label: r for r in rhs.relations}
    names_a = sorted({n for r in lhs.relations for n in r.current_names()})
    names_b = sorted({n for r in rhs.relations for n in r.current_names()})
    if names_a != names_b:
        report.add(CheckResult.failed("current-names", group=GROUP,
                                      detail=f"{', '.join(names_a)} vs {', '.join(names_b)}"))
    for label in sorted(set(first) | set(second)):
        if label not in first or label not in second:
            missing = lhs.name if label not in first else rhs.name
            report.add(CheckResult.failed(label, detail=f"missing from suite '{missing}'", group=GROUP))
            continue
        report.add(compare_relations(first[label], second[label]))
    return report


def _term(term: RationalTerm) -> Term:
    coefficient = term.coefficient
    sign = 1
    if coefficient.constant < 0:
        sign, coefficient = -1, -coefficient
    factors = tuple(Delta(f.to_expr()) if isinstance(f, LinearForm) else f for f in term.factors)
    return Term(sign, coefficient.to_expr(), factors)


def as_relation_suite(suite: RationalSuite) -> RelationSuite:
    """The rational suite as a printable relation suite in u, v, h."""
    relations = tuple(Relation(r.label, tuple(_term(t) for t in r.lhs), tuple(_term(t) for t in r.rhs))
                      for r in suite.relations)
    return RelationSuite(suite.name, relations)


def print_rational_suite(suite: RationalSuite) -> str:
    """Suite text that parses back to the same rational suite."""
    return format_suite(as_relation_suite(suite))
