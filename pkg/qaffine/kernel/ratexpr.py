# qaffine/kernel/ratexpr.py

"""
Rational Expression Module for qaffine

A RatExpr is an unreduced quotient of two Laurent polynomials. No gcd is ever
taken: equality is decided by cross-multiplication, and the only
normalizations applied are folding a monomial denominator into the numerator
and making the denominator's leading coefficient 1.
"""

from fractions import Fraction
from typing import Mapping, Union
import logging

from sympy.polys.domains import QQ

from qaffine.kernel.mpoly import MPoly, qq

logger = logging.getLogger(__name__)


class RatExpr:
    """
    Immutable quotient num/den of Laurent polynomials with den != 0.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[MPoly, int, Fraction], den: Union[MPoly, int, Fraction, None] = None):
        if not isinstance(num, MPoly):
            num = MPoly.constant(num)
        if den is None:
            den = MPoly.one()
        elif not isinstance(den, MPoly):
            den = MPoly.constant(den)
        if den.is_zero():
            logger.error("Attempted to build a rational expression with a zero denominator.")
            raise ZeroDivisionError("rational expression with zero denominator")
        if num.is_zero():
            den = MPoly.one()
        elif den.is_monomial():
            num = num * den.inverse_monomial()
            den = MPoly.one()
        else:
            lead = den.leading_coefficient()
            monomial_part = MPoly.monomial(den.shift, lead)
            if not monomial_part.is_one():
                inverse = monomial_part.inverse_monomial()
                num = num * inverse
                den = den * inverse
        self.num = num
        self.den = den

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatExpr":
        return cls(MPoly.zero())

    @classmethod
    def one(cls) -> "RatExpr":
        return cls(MPoly.one())

    @classmethod
    def constant(cls, value) -> "RatExpr":
        return cls(MPoly.constant(value))

    @classmethod
    def var(cls, name: str, power: int = 1) -> "RatExpr":
        return cls(MPoly.var(name, power))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatExpr):
            return other
        if isinstance(other, MPoly):
            return RatExpr(other)
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            return RatExpr(MPoly.constant(other))
        return None

    # ------------------------------------------------------------------
    # Predicates
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def free_variables(self):
        names = set(self.num.free_variables()) | set(self.den.free_variables())
        return tuple(sorted(names))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatExpr(self.num + other.num, self.den)
        return RatExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatExpr":
        result = RatExpr.__new__(RatExpr)
        result.num = -self.num
        result.den = self.den
        return result

    def __sub__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatExpr.zero()
        if self.den.is_one() and other.den.is_one():
            result = RatExpr.__new__(RatExpr)
            result.num = self.num * other.num
            result.den = self.den
            return result
        return RatExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if self.num.is_zero():
            raise ZeroDivisionError("inverting a zero rational expression")
        return RatExpr(self.den, self.num)

    def __truediv__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatExpr":
        if n < 0:
            return self.inverse() ** (-n)
        return RatExpr(self.num ** n, self.den ** n)

    def scale(self, coeff) -> "RatExpr":
        result = RatExpr.__new__(RatExpr)
        result.num = self.num.scale(qq(coeff))
        result.den = self.den if result.num else MPoly.one()
        return result

    # ------------------------------------------------------------------
    # Substitutions
    # ------------------------------------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "RatExpr":
        return RatExpr(self.num.rename(mapping), self.den.rename(mapping))

    def substitute(self, name: str, value) -> "RatExpr":
        """
        Substitutes a rational constant for a variable.

        Raises:
            ZeroDivisionError: If the denominator vanishes at the value.
        """
        return RatExpr(self.num.substitute(name, value), self.den.substitute(name, value))

    def scale_variable(self, name: str, factor: MPoly) -> "RatExpr":
        return RatExpr(self.num.scale_variable(name, factor), self.den.scale_variable(name, factor))

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ratexpr_equal(self, other)

    __hash__ = None

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatExpr({self})"


def ratexpr_equal(p: RatExpr, q: RatExpr) -> bool:
    """
    Decides p == q by cross-multiplication.

    Args:
        p (RatExpr): First expression.
        q (RatExpr): Second expression.

    Returns:
        bool: True iff p.num*q.den - q.num*p.den is the zero polynomial.
    """
    if p.den == q.den:
        return p.num == q.num
    return (p.num * q.den - q.num * p.den).is_zero()
