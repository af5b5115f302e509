# qaffine/yangian/linear.py

"""
Linear Factor Module for qaffine

Rational coefficients of the super-Yangian double are products of linear
forms in u, v, h and h*c (the central charge enters only through
u_± = u ± h c/2). A LinearFactorProduct keeps them factored: a rational
constant times a multiset of monic numerator forms over a multiset of monic
denominator forms, with common forms cancelled. Two products are equal
exactly when their normal forms are.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from qaffine.relations.model import BinOp, Expr, Num, Sum, Var
from qaffine.relations.printer import format_expr

# Order of the basis; the first nonzero coefficient of a monic form is 1.
BASIS = ("u", "v", "h", "hc")

# Spectral names of rational suites: (variable, multiple of h c / 2).
RATIONAL_SPECTRAL = {
    "u": ("u", 0), "up": ("u", 1), "um": ("u", -1),
    "v": ("v", 0), "vp": ("v", 1), "vm": ("v", -1),
}
_TAG_SUFFIX = {0: "", 1: "p", -1: "m"}


@dataclass(frozen=True)
class LinearForm:
    """sum of coefficient * basis element; stored as sorted nonzero pairs."""

    terms: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, coefficients: Dict[str, Fraction]) -> "LinearForm":
        unknown = set(coefficients) - set(BASIS)
        if unknown:
            raise ValueError(f"not a basis element: {sorted(unknown)}")
        return cls(tuple((k, Fraction(coefficients[k])) for k in BASIS if coefficients.get(k, 0) != 0))

    @classmethod
    def variable(cls, name: str) -> "LinearForm":
        """u, v or h, or a tagged spectral name such as up = u + h c/2."""
        if name == "h":
            return cls.of({"h": 1})
        var, half = RATIONAL_SPECTRAL[name]
        return cls.of({var: 1, "hc": Fraction(half, 2)})

    def coefficient(self, key: str) -> Fraction:
        return dict(self.terms).get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LinearForm") -> "LinearForm":
        total: Dict[str, Fraction] = dict(self.terms)
        for key, value in other.terms:
            total[key] = total.get(key, Fraction(0)) + value
        return LinearForm.of(total)

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scaled(self, factor: Fraction) -> "LinearForm":
        return LinearForm.of({k: v * factor for k, v in self.terms})

    def monic(self) -> Tuple[Fraction, "LinearForm"]:
        """(lead, form / lead) with lead the first nonzero coefficient."""
        if self.is_zero():
            raise ZeroDivisionError("the zero form has no monic normalization")
        lead = self.terms[0][1]
        return lead, self.scaled(1 / lead)

    def __str__(self) -> str:
        return format_expr(self.to_expr())

    def to_expr(self) -> Expr:
        """
        The form written with u, v and their ± tags.

        Raises:
            ValueError: If the h c part cannot be carried by the tags.
        """
        cu, cv, ch, chc = (self.coefficient(k) for k in BASIS)
        tags = _tags_for(cu, cv, chc)
        if tags is None:
            raise ValueError(f"the h*c part of {dict(self.terms)} cannot be written with u/v tags")
        items: List[Tuple[str, Expr]] = []
        for coefficient, name in ((cu, "u" + _TAG_SUFFIX[tags[0]]),
                                  (cv, "v" + _TAG_SUFFIX[tags[1]]),
                                  (ch, "h")):
            if coefficient:
                items.append(_signed_item(coefficient, Var(name)))
        if len(items) == 1 and items[0][0] == "+":
            return items[0][1]
        return Sum(tuple(items))


def _tags_for(cu: Fraction, cv: Fraction, chc: Fraction) -> Optional[Tuple[int, int]]:
    for su in (0, 1, -1):
        if su and not cu:
            continue
        for sv in (0, 1, -1):
            if sv and not cv:
                continue
            if cu * su / 2 + cv * sv / 2 == chc:
                return su, sv
    return None


def _signed_item(coefficient: Fraction, var: Var) -> Tuple[str, Expr]:
    sign = "+" if coefficient > 0 else "-"
    magnitude = abs(coefficient)
    if magnitude == 1:
        return sign, var
    expr: Expr = Num(magnitude.numerator)
    if magnitude.denominator != 1:
        expr = BinOp("/", expr, Num(magnitude.denominator))
    return sign, BinOp("*", expr, var)


def _sorted(counter: Counter) -> Tuple[Tuple[LinearForm, int], ...]:
    return tuple(sorted(((f, n) for f, n in counter.items() if n > 0), key=lambda p: p[0].terms))


@dataclass(frozen=True)
class LinearFactorProduct:
    """
    constant * prod(numerator) / prod(denominator), forms monic and cancelled.

    Build instances with ``LinearFactorProduct.make``; the constructor does
    not normalize.
    """

    constant: Fraction
    numerator: Tuple[Tuple[LinearForm, int], ...] = ()
    denominator: Tuple[Tuple[LinearForm, int], ...] = ()

    @classmethod
    def make(cls, constant, numerator: Iterable[LinearForm] = (),
             denominator: Iterable[LinearForm] = ()) -> "LinearFactorProduct":
        constant = Fraction(constant)
        top: Counter = Counter()
        bottom: Counter = Counter()
        for form in numerator:
            lead, monic = form.monic()
            constant *= lead
            top[monic] += 1
        for form in denominator:
            lead, monic = form.monic()
            constant /= lead
            bottom[monic] += 1
        common = top & bottom
        top -= common
        bottom -= common
        if constant == 0:
            return cls(Fraction(0))
        return cls(constant, _sorted(top), _sorted(bottom))

    @classmethod
    def one(cls) -> "LinearFactorProduct":
        return cls(Fraction(1))

    @classmethod
    def const(cls, value) -> "LinearFactorProduct":
        return cls.make(value)

    @classmethod
    def form(cls, form: LinearForm) -> "LinearFactorProduct":
        return cls.make(1, [form])

    def _forms(self, part) -> List[LinearForm]:
        return [f for f, n in part for _ in range(n)]

    def __mul__(self, other: "LinearFactorProduct") -> "LinearFactorProduct":
        return LinearFactorProduct.make(self.constant * other.constant,
                                        self._forms(self.numerator) + other._forms(other.numerator),
                                        self._forms(self.denominator) + other._forms(other.denominator))

    def __truediv__(self, other: "LinearFactorProduct") -> "LinearFactorProduct":
        if other.constant == 0:
            raise ZeroDivisionError("division by a zero coefficient")
        return LinearFactorProduct.make(self.constant / other.constant,
                                        self._forms(self.numerator) + other._forms(other.denominator),
                                        self._forms(self.denominator) + other._forms(other.numerator))

    def __pow__(self, exponent: int) -> "LinearFactorProduct":
        if exponent < 0:
            return LinearFactorProduct.one() / (self ** -exponent)
        result = LinearFactorProduct.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __neg__(self) -> "LinearFactorProduct":
        return LinearFactorProduct(-self.constant, self.numerator, self.denominator)

    def is_one(self) -> bool:
        return self.constant == 1 and not self.numerator and not self.denominator

    def degree(self) -> Tuple[int, int]:
        """(number of numerator forms, number of denominator forms)."""
        return sum(n for _, n in self.numerator), sum(n for _, n in self.denominator)

    def to_expr(self) -> Optional[Expr]:
        """
        The product as a coefficient tree; None for the constant 1.

        Raises:
            ValueError: If the constant is not positive; signs belong to terms.
        """
        if self.is_one():
            return None
        if self.constant <= 0:
            raise ValueError(f"cannot write the coefficient {self.constant} without a term sign")
        top: List[Expr] = []
        constant = self.constant
        if constant.numerator != 1 or not self.numerator:
            top.append(Num(constant.numerator))
        top.extend(f.to_expr() for f in self._forms(self.numerator))
        expr = _product(top)
        bottom: List[Expr] = []
        if constant.denominator != 1:
            bottom.append(Num(constant.denominator))
        bottom.extend(f.to_expr() for f in self._forms(self.denominator))
        if bottom:
            expr = BinOp("/", expr, _product(bottom))
        return expr

    def __str__(self) -> str:
        expr = self.to_expr()
        return "1" if expr is None else format_expr(expr)


def _product(items: List[Expr]) -> Expr:
    acc = items[0]
    for item in items[1:]:
        acc = BinOp("*", acc, item)
    return acc
