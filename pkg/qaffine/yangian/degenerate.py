# qaffine/yangian/degenerate.py

"""
Degeneration Module for qaffine

Maps a trigonometric relation suite to its rational (super-Yangian double)
counterpart by reading z = e^u, w = e^v, q = e^h to first order:

    q^a X - q^b Y    ->  X' - Y' + (a - b) h     (X' the rational name of X)
    q^a - q^b        ->  (a - b) h               (so q - q^-1 -> 2h)
    q^r              ->  1
    delta(x/y q^k)   ->  delta(x' - y' + k h)

with z_± -> u_± = u ± h c/2 and w_± -> v_±. The map works on the written
coefficient trees, never on expanded rational functions, so a coefficient is
admissible only when it is a product and quotient of such atoms, numbers and
powers of q.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union
import logging

from qaffine.core.exceptions import NonFactorableCoefficient
from qaffine.relations.evaluator import delta_ratio
from qaffine.relations.model import (Arg, BinOp, CurrentRef, Delta, Exponent, Expr, Num, Pow,
                                     Relation, RelationSuite, Sum, Term, Var)
from qaffine.utils.configuration import Configuration
from qaffine.yangian.linear import RATIONAL_SPECTRAL, LinearFactorProduct, LinearForm

logger = logging.getLogger(__name__)

TRIGONOMETRIC_TO_RATIONAL = {
    "z": "u", "zp": "up", "zm": "um",
    "w": "v", "wp": "vp", "wm": "vm",
}

RationalFactor = Union[CurrentRef, LinearForm]


@dataclass(frozen=True)
class RationalTerm:
    """A signed coefficient (the sign lives in the constant) and ordered factors."""

    coefficient: LinearFactorProduct
    factors: Tuple[RationalFactor, ...]


@dataclass(frozen=True)
class RationalRelation:
    label: str
    lhs: Tuple[RationalTerm, ...]
    rhs: Tuple[RationalTerm, ...]

    def current_names(self) -> Tuple[str, ...]:
        names = []
        for term in self.lhs + self.rhs:
            for factor in term.factors:
                if isinstance(factor, CurrentRef) and factor.name not in names:
                    names.append(factor.name)
        return tuple(names)


@dataclass(frozen=True)
class RationalSuite:
    name: str
    relations: Tuple[RationalRelation, ...] = ()

    def __len__(self) -> int:
        return len(self.relations)

    def get(self, label: str) -> RationalRelation:
        for relation in self.relations:
            if relation.label == label:
                return relation
        raise KeyError(f"suite '{self.name}' has no relation '{label}'")


# ----------------------------------------------------------------------
# Trigonometric coefficients
# ----------------------------------------------------------------------

def _bound() -> int:
    return int(Configuration.get("yangian_exponent_bound"))


def _rational_name(name: str) -> str:
    try:
        return TRIGONOMETRIC_TO_RATIONAL[name]
    except KeyError:
        raise NonFactorableCoefficient(f"'{name}' is not a spectral variable") from None


def _check_exponent(exponent: Exponent, bound: int) -> Exponent:
    if abs(exponent.const) > bound or abs(exponent.c) > bound:
        raise NonFactorableCoefficient(f"q-exponent {exponent} is outside [-{bound}, {bound}]")
    return exponent


def _monomial(expr: Expr, bound: int) -> Tuple[Exponent, Optional[str]]:
    """Reads q^e * x (x a spectral variable, optional) from a summand."""
    if isinstance(expr, Num) and expr.value == 1:
        return Exponent(), None
    if isinstance(expr, Var):
        if expr.name == "q":
            return Exponent(const=1), None
        return Exponent(), _rational_name(expr.name)
    if isinstance(expr, Pow) and expr.base == Var("q"):
        return _check_exponent(expr.exponent, bound), None
    if isinstance(expr, BinOp):
        left, left_var = _monomial(expr.left, bound)
        right, right_var = _monomial(expr.right, bound)
        if left_var and right_var:
            raise NonFactorableCoefficient("a summand holds two spectral variables")
        if expr.op == "/":
            if right_var:
                raise NonFactorableCoefficient("a summand divides by a spectral variable")
            right = Exponent(-right.const, -right.c)
        total = Exponent(left.const + right.const, left.c + right.c)
        return _check_exponent(total, bound), left_var or right_var
    raise NonFactorableCoefficient(f"summand {expr!r} is not q^e or q^e times a spectral variable")


def _logarithm(exponent: Exponent, var: Optional[str]) -> LinearForm:
    form = LinearForm.of({"h": exponent.const, "hc": exponent.c})
    if var is not None:
        form = form + LinearForm.variable(var)
    return form


def _atom(expr: Sum, bound: int) -> LinearFactorProduct:
    if len(expr.items) == 1:
        sign, item = expr.items[0]
        value = degenerate_coefficient(item, bound)
        return -value if sign == "-" else value
    signs = [sign for sign, _ in expr.items]
    if len(expr.items) != 2 or sorted(signs) != ["+", "-"]:
        raise NonFactorableCoefficient("only differences of two q-monomials degenerate to linear factors")
    positive = next(item for sign, item in expr.items if sign == "+")
    negative = next(item for sign, item in expr.items if sign == "-")
    p_exp, p_var = _monomial(positive, bound)
    n_exp, n_var = _monomial(negative, bound)
    if (p_var is None) != (n_var is None):
        raise NonFactorableCoefficient("a difference mixes a spectral monomial with a constant")
    form = _logarithm(p_exp, p_var) - _logarithm(n_exp, n_var)
    if form.is_zero():
        raise NonFactorableCoefficient("a difference of equal monomials vanishes")
    return LinearFactorProduct.form(form)


def degenerate_coefficient(expr: Optional[Expr], bound: Optional[int] = None) -> LinearFactorProduct:
    """
    The rational image of a trigonometric coefficient tree.

    Raises:
        NonFactorableCoefficient: If the tree is not built from admissible atoms.
    """
    bound = _bound() if bound is None else bound
    if expr is None:
        return LinearFactorProduct.one()
    if isinstance(expr, Num):
        return LinearFactorProduct.const(expr.value)
    if isinstance(expr, Var):
        if expr.name == "q":
            return LinearFactorProduct.one()
        raise NonFactorableCoefficient(f"a bare spectral factor '{expr.name}' has no linear image")
    if isinstance(expr, Pow):
        if expr.base == Var("q"):
            _check_exponent(expr.exponent, bound)
            return LinearFactorProduct.one()
        if not expr.exponent.is_integer():
            raise NonFactorableCoefficient(f"non-integral power {expr.exponent} of a factor")
        return degenerate_coefficient(expr.base, bound) ** int(expr.exponent.const)
    if isinstance(expr, BinOp):
        left = degenerate_coefficient(expr.left, bound)
        right = degenerate_coefficient(expr.right, bound)
        return left * right if expr.op == "*" else left / right
    if isinstance(expr, Sum):
        return _atom(expr, bound)
    raise TypeError(f"not a coefficient expression: {expr!r}")


def degenerate_delta(delta: Delta, bound: Optional[int] = None) -> LinearForm:
    """delta(x/y * q^k) -> the monic form of x' - y' + k h."""
    bound = _bound() if bound is None else bound
    try:
        x, y, shift = delta_ratio(delta.argument)
    except ValueError as e:
        raise NonFactorableCoefficient(str(e)) from e
    _check_exponent(shift, bound)
    form = _logarithm(shift, _rational_name(x)) - LinearForm.variable(_rational_name(y))
    return form.monic()[1]


def _degenerate_factor(factor, bound: int) -> RationalFactor:
    if isinstance(factor, Delta):
        return degenerate_delta(factor, bound)
    return CurrentRef(factor.name, Arg(_rational_name(factor.arg.var), factor.arg.shift), factor.inverse)


def _degenerate_term(term: Term, bound: int) -> RationalTerm:
    coefficient = degenerate_coefficient(term.coefficient, bound)
    if term.sign < 0:
        coefficient = -coefficient
    return RationalTerm(coefficient, tuple(_degenerate_factor(f, bound) for f in term.factors))


def degenerate_relation(relation: Relation, bound: Optional[int] = None) -> RationalRelation:
    bound = _bound() if bound is None else bound
    return RationalRelation(relation.label,
                            tuple(_degenerate_term(t, bound) for t in relation.lhs),
                            tuple(_degenerate_term(t, bound) for t in relation.rhs))


def degenerate_suite(suite: RelationSuite, bound: Optional[int] = None) -> RationalSuite:
    """
    Degenerates every relation of a trigonometric suite.

    Raises:
        NonFactorableCoefficient: Naming the suite and relation at fault.
    """
    bound = _bound() if bound is None else bound
    relations = []
    for relation in suite.relations:
        try:
            relations.append(degenerate_relation(relation, bound))
        except NonFactorableCoefficient as e:
            logger.error(f"{suite.name}/{relation.label}: {e}")
            raise NonFactorableCoefficient(f"{suite.name}/{relation.label}: {e}") from e
    logger.info(f"Degenerated suite '{suite.name}' ({len(relations)} relations).")
    return RationalSuite(suite.name, tuple(relations))


# ----------------------------------------------------------------------
# Rational suites written in u, v, h
# ----------------------------------------------------------------------

def _linear(expr: Expr) -> LinearForm:
    """A summand or sum read as one linear form."""
    if isinstance(expr, Sum):
        total = LinearForm()
        for sign, item in expr.items:
            form = _linear(item)
            total = total - form if sign == "-" else total + form
        return total
    value = rational_coefficient(expr)
    if value.degree() != (1, 0):
        raise NonFactorableCoefficient(f"{expr!r} is not a multiple of a single linear form")
    return value.numerator[0][0].scaled(value.constant)


def rational_coefficient(expr: Optional[Expr]) -> LinearFactorProduct:
    """
    The factored value of a coefficient tree over u, v, h and their tags.

    Raises:
        NonFactorableCoefficient: For a sum that is not linear or a name that is
            not rational.
    """
    if expr is None:
        return LinearFactorProduct.one()
    if isinstance(expr, Num):
        return LinearFactorProduct.const(expr.value)
    if isinstance(expr, Var):
        if expr.name != "h" and expr.name not in RATIONAL_SPECTRAL:
            raise NonFactorableCoefficient(f"'{expr.name}' is not a rational variable")
        return LinearFactorProduct.form(LinearForm.variable(expr.name))
    if isinstance(expr, Pow):
        if not expr.exponent.is_integer():
            raise NonFactorableCoefficient(f"non-integral power {expr.exponent} in a rational coefficient")
        return rational_coefficient(expr.base) ** int(expr.exponent.const)
    if isinstance(expr, BinOp):
        left = rational_coefficient(expr.left)
        right = rational_coefficient(expr.right)
        return left * right if expr.op == "*" else left / right
    if isinstance(expr, Sum):
        form = _linear(expr)
        if form.is_zero():
            raise NonFactorableCoefficient("a linear factor vanishes")
        return LinearFactorProduct.form(form)
    raise TypeError(f"not a coefficient expression: {expr!r}")


def _rational_factor(factor) -> RationalFactor:
    if isinstance(factor, Delta):
        form = _linear(factor.argument)
        if form.is_zero():
            raise NonFactorableCoefficient("delta of a vanishing form")
        return form.monic()[1]
    if factor.arg.var not in RATIONAL_SPECTRAL:
        raise NonFactorableCoefficient(f"argument '{factor.arg.var}' of '{factor.name}' is not rational")
    return factor


def _rational_term(term: Term) -> RationalTerm:
    coefficient = rational_coefficient(term.coefficient)
    if term.sign < 0:
        coefficient = -coefficient
    return RationalTerm(coefficient, tuple(_rational_factor(f) for f in term.factors))


def rational_suite(suite: RelationSuite) -> RationalSuite:
    """
    Reads a parsed suite written in u, v, h (such as the built-in 'yangian').

    Raises:
        NonFactorableCoefficient: Naming the suite and relation at fault.
    """
    relations = []
    for relation in suite.relations:
        try:
            relations.append(RationalRelation(relation.label,
                                              tuple(_rational_term(t) for t in relation.lhs),
                                              tuple(_rational_term(t) for t in relation.rhs)))
        except NonFactorableCoefficient as e:
            logger.error(f"{suite.name}/{relation.label}: {e}")
            raise NonFactorableCoefficient(f"{suite.name}/{relation.label}: {e}") from e
    return RationalSuite(suite.name, tuple(relations))
