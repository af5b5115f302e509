# qaffine/kernel/qpowers.py

"""Helpers for powers of q, written through the base variable s = q^(1/2)."""

from fractions import Fraction
from typing import Union

from qaffine.kernel.mpoly import MPoly
from qaffine.kernel.ratexpr import RatExpr


def q_power(exponent: Union[int, Fraction]) -> MPoly:
    """
    Returns q^exponent as a monomial in s.

    Raises:
        ValueError: If the exponent is not a multiple of 1/2.
    """
    doubled = Fraction(exponent) * 2
    if doubled.denominator != 1:
        raise ValueError(f"q^{exponent} is not a Laurent monomial in q^(1/2)")
    return MPoly.var("s", int(doubled))


def q_ratexpr(exponent: Union[int, Fraction]) -> RatExpr:
    return RatExpr(q_power(exponent))


def q_minus_q_inverse() -> RatExpr:
    """The ubiquitous q - q^-1."""
    return RatExpr(q_power(1) - q_power(-1))
