# qaffine/relations/mutation.py

"""
Seeded single-token mutations of relation coefficients, used to show that a
suite is not satisfied vacuously at the chosen cutoff.
"""

from fractions import Fraction
from typing import List, Tuple
import logging
import random

from qaffine.core.report import FAIL, SKIPPED, CheckResult
from qaffine.relations.model import BinOp, Exponent, Pow, Relation, RelationSuite, Term, Var

logger = logging.getLogger(__name__)

SIGN_FLIP = "sign-flip"
Q_SHIFT = "q-shift"
MUTATIONS = (SIGN_FLIP, Q_SHIFT)
GROUP = "mutations"


def _q_shifted(term: Term) -> Term:
    q = Pow(Var("q"), Exponent(Fraction(1)))
    coefficient = q if term.coefficient is None else BinOp("*", term.coefficient, q)
    return Term(term.sign, coefficient, term.factors, term.expand)


def mutate_relation(relation: Relation, rng: random.Random) -> Tuple[Relation, str]:
    """
    Flips the sign of one term or multiplies its coefficient by q.

    Returns:
        (mutated relation, description of the mutation).

    Raises:
        ValueError: If the relation has no terms.
    """
    terms = [("lhs", i) for i in range(len(relation.lhs))] + [("rhs", i) for i in range(len(relation.rhs))]
    if not terms:
        raise ValueError(f"relation '{relation.label}' has no terms to mutate")
    side, index = rng.choice(terms)
    kind = rng.choice(MUTATIONS)
    sides = {"lhs": list(relation.lhs), "rhs": list(relation.rhs)}
    original = sides[side][index]
    sides[side][index] = original.negated() if kind == SIGN_FLIP else _q_shifted(original)
    mutated = Relation(relation.label, tuple(sides["lhs"]), tuple(sides["rhs"]),
                       relation.cleared, relation.expand, relation.line)
    description = f"{kind} of {side} term {index + 1} in '{relation.label}'"
    logger.debug(f"Mutation: {description}.")
    return mutated, description


def mutate_suite(suite: RelationSuite, seed: int) -> Tuple[RelationSuite, str]:
    """Mutates one relation of the suite, chosen by the seed."""
    if not suite.relations:
        raise ValueError(f"suite '{suite.name}' has no relations to mutate")
    rng = random.Random(seed)
    relation = rng.choice(suite.relations)
    mutated, description = mutate_relation(relation, rng)
    return suite.replace_relation(mutated), description


def mutation_probe(evaluator, suite: RelationSuite, seed: int) -> CheckResult:
    """
    Tries relations in a seeded order, mutating each once, until a mutation
    fails; passes when some mutation is detected.

    Mutated relations that evaluate to skipped (every term vanishes, or no
    safe window) cannot detect anything and are passed over; when no
    relation of the suite can be checked the result is skipped.
    """
    name = f"mutation({suite.name})"
    rng = random.Random(seed)
    order = list(suite.relations)
    rng.shuffle(order)
    tried: List[str] = []
    for relation in order:
        if not relation.lhs and not relation.rhs:
            continue
        mutated, description = mutate_relation(relation, rng)
        result = evaluator.evaluate(mutated, suite.name)
        if result.status == SKIPPED:
            continue
        tried.append(description)
        if result.status == FAIL:
            logger.info(f"{suite.name}: mutation detected ({description}).")
            return CheckResult.passed(name, detail=f"detected {description}", group=GROUP)
    if not tried:
        logger.warning(f"{suite.name}: no relation can detect a mutation.")
        return CheckResult.skipped(name, "no relation of the suite is checkable", group=GROUP)
    logger.warning(f"{suite.name}: no mutation was detected.")
    return CheckResult.failed(name, detail=f"undetected: {'; '.join(tried)}", group=GROUP)
