# qaffine/kernel/series.py

"""
Series Module for qaffine

This module provides the two one-dimensional series types of the kernel:

- LaurentSeries: the expansion of a rational expression in a ratio x/y, with
  rational-expression coefficients in the remaining variables (``expand``).
- FormalSeries: a truncated formal series in a single variable whose
  coefficients are any ring values (rational expressions or matrices). It
  records its support and the finite set of indices it knows exactly, and
  every binary operation keeps only the indices that stay exact.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Tuple
import logging

from qaffine.core.exceptions import EmptySafeWindow, NonExpandable, SeriesNotInvertible
from qaffine.kernel.mpoly import MPoly, var_index
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.support import Interval

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Expansion of rational expressions
# ----------------------------------------------------------------------

@dataclass
class LaurentSeries:
    """
    Truncated expansion sum_{n in window} coeffs[n] * (x/y)^n.

    Attributes:
        ratio: The pair (x, y) of variable names.
        window: Indices that were computed.
        coeffs: Nonzero coefficients by index.
        lowest: Lowest index of the full (untruncated) expansion.
    """

    ratio: Tuple[str, str]
    window: Interval
    coeffs: Dict[int, RatExpr] = field(default_factory=dict)
    lowest: int = 0

    def __getitem__(self, n: int) -> RatExpr:
        if n not in self.window:
            raise IndexError(f"index {n} outside the expansion window {self.window}")
        return self.coeffs.get(n, RatExpr.zero())

    def indices(self) -> List[int]:
        return sorted(self.coeffs)

    def to_formal(self, variable: str) -> "FormalSeries":
        """
        Re-indexes the expansion by the power of one of the two ratio variables.

        For ratio (x, y) and ``variable == y`` the term c_n (x/y)^n becomes
        (c_n x^n) * y^(-n); for ``variable == x`` it becomes (c_n y^(-n)) * x^n.
        Coefficients must not depend on the chosen variable.
        """
        x, y = self.ratio
        if variable not in (x, y):
            raise ValueError(f"variable '{variable}' is not part of ratio {x}/{y}")
        other = x if variable == y else y
        sign = -1 if variable == y else 1
        coeffs = {}
        for n, c in self.coeffs.items():
            if variable in c.free_variables():
                raise ValueError(f"coefficient {c} depends on '{variable}'")
            carried = RatExpr.var(other, n if other == x else -n)
            coeffs[sign * n] = c * carried
        if sign > 0:
            support = Interval(self.lowest, None)
        else:
            support = Interval(None, -self.lowest)
        known = frozenset(sign * n for n in self.window.points() if n >= self.lowest)
        return FormalSeries(variable, support, known, coeffs)


def _collect_in_ratio(poly: MPoly, x: str, y: str) -> Dict[int, MPoly]:
    """Writes poly(x = t*y) as sum_k P_k t^k with P_k free of x."""
    ix, iy = var_index(x), var_index(y)
    grouped: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for exps, coeff in poly.iter_terms():
        k = exps[ix]
        new = list(exps)
        new[ix] = 0
        new[iy] += k
        bucket = grouped.setdefault(k, {})
        key = tuple(new)
        bucket[key] = bucket.get(key, 0) + coeff
    return {k: MPoly.from_terms(terms) for k, terms in grouped.items()}


def expand(f: RatExpr, ratio: Tuple[str, str], window: Interval) -> LaurentSeries:
    """
    Expands a rational expression in powers of x/y.

    The denominator is collected as a Laurent polynomial in t = x/y; its
    lowest-order coefficient is inverted and the rest of the denominator is
    inverted as a geometric series.

    Args:
        f (RatExpr): The expression.
        ratio: (x, y), expanding in nonnegative powers of x/y beyond the
            lowest order.
        window (Interval): Finite index range to compute.

    Returns:
        LaurentSeries: The truncated expansion.

    Raises:
        NonExpandable: If the lowest denominator coefficient vanishes.
    """
    x, y = ratio
    if not window.is_bounded():
        raise ValueError("expansion window must be finite")
    num = _collect_in_ratio(f.num, x, y)
    den = _collect_in_ratio(f.den, x, y)
    den = {k: p for k, p in den.items() if not p.is_zero()}
    if not den:
        logger.error(f"Cannot expand {f}: zero denominator.")
        raise NonExpandable(f"denominator of {f} vanishes")
    k0 = min(den)
    lead = RatExpr(den[k0])
    if lead.is_zero():
        raise NonExpandable(f"lowest-order denominator coefficient of {f} vanishes")
    lead_inverse = lead.inverse()
    if f.num.is_zero():
        return LaurentSeries(ratio, window, {}, window.lo)
    nmin = min(num)
    lowest = nmin - k0
    top = window.hi
    # inverse of sum_j den[k0+j] t^j, truncated at order top - lowest
    depth = top - lowest
    inverse: List[RatExpr] = []
    for n in range(max(depth, -1) + 1):
        if n == 0:
            inverse.append(lead_inverse)
            continue
        acc = RatExpr.zero()
        for j in range(1, n + 1):
            d = den.get(k0 + j)
            if d is not None:
                acc = acc + RatExpr(d) * inverse[n - j]
        inverse.append(-(lead_inverse * acc))
    coeffs: Dict[int, RatExpr] = {}
    for n in range(max(window.lo, lowest), top + 1):
        acc = RatExpr.zero()
        # t^n coefficient of t^(-k0) * num(t) * inverse(t)
        for k, p in num.items():
            j = n + k0 - k
            if 0 <= j < len(inverse):
                acc = acc + RatExpr(p) * inverse[j]
        if not acc.is_zero():
            coeffs[n] = acc
    logger.debug(f"Expanded {f} in {x}/{y} on {window}: {len(coeffs)} nonzero coefficients.")
    return LaurentSeries(ratio, window, coeffs, lowest)


# ----------------------------------------------------------------------
# Formal series with truncation bookkeeping
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FormalSeries:
    """
    Truncated formal series sum_n coeffs[n] * var^n.

    Attributes:
        var: Name of the formal variable.
        support: Interval containing every index that can be nonzero.
        known: Finite set of indices whose coefficient is exact; indices in
            ``known`` but absent from ``coeffs`` are exact zeros.
        coeffs: Nonzero coefficients (ring values exposing ``is_zero``).
    """

    var: str
    support: Interval
    known: FrozenSet[int]
    coeffs: Dict[int, object] = field(default_factory=dict, compare=False)

    def is_determined(self, n: int) -> bool:
        return n in self.known or n not in self.support

    def __getitem__(self, n: int):
        if not self.is_determined(n):
            raise IndexError(f"coefficient {n} of the series in {self.var} is not known")
        return self.coeffs.get(n)

    def window(self) -> Interval:
        if not self.known:
            return Interval(1, 0)
        return Interval(min(self.known), max(self.known))

    @classmethod
    def constant(cls, var: str, value, known: Iterable[int]) -> "FormalSeries":
        """A series equal to value * var^0."""
        coeffs = {} if value.is_zero() else {0: value}
        return cls(var, Interval.point(0), frozenset(known) | {0}, coeffs)

    def map(self, fn: Callable[[object], object]) -> "FormalSeries":
        """Applies a coefficient-wise linear map."""
        coeffs = {}
        for n, c in self.coeffs.items():
            image = fn(c)
            if not image.is_zero():
                coeffs[n] = image
        return FormalSeries(self.var, self.support, self.known, coeffs)

    def map_indexed(self, fn: Callable[[int, object], object]) -> "FormalSeries":
        coeffs = {}
        for n, c in self.coeffs.items():
            image = fn(n, c)
            if not image.is_zero():
                coeffs[n] = image
        return FormalSeries(self.var, self.support, self.known, coeffs)

    def renamed(self, var: str) -> "FormalSeries":
        return FormalSeries(var, self.support, self.known, dict(self.coeffs))

    def _combine(self, other: "FormalSeries", sign: int) -> "FormalSeries":
        if self.var != other.var:
            raise ValueError(f"cannot add series in {self.var} and {other.var}")
        support = self.support.hull(other.support)
        candidates = self.known | other.known
        known = frozenset(n for n in candidates
                          if self.is_determined(n) and other.is_determined(n))
        coeffs = {}
        for n in known:
            a = self.coeffs.get(n)
            b = other.coeffs.get(n)
            if b is not None and sign < 0:
                b = -b
            if a is None:
                value = b
            elif b is None:
                value = a
            else:
                value = a + b
            if value is not None and not value.is_zero():
                coeffs[n] = value
        return FormalSeries(self.var, support, known, coeffs)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        return self._combine(other, 1)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self._combine(other, -1)

    def __neg__(self) -> "FormalSeries":
        return self.map(lambda c: -c)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        return series_mul(self, other)

    def scaled(self, value) -> "FormalSeries":
        """Multiplies every coefficient on the left by a scalar or matrix."""
        return self.map(lambda c: value * c)

    def q_shifted(self, factor_power: Callable[[int], object]) -> "FormalSeries":
        """
        Substitutes var -> var * q^k given ``factor_power(n) = (q^k)^n``.
        """
        return self.map_indexed(lambda n, c: factor_power(n) * c if n else c)

    def restricted(self, known: Iterable[int]) -> "FormalSeries":
        keep = frozenset(known) & self.known
        return FormalSeries(self.var, self.support, keep,
                            {n: c for n, c in self.coeffs.items() if n in keep})

    def equal_on_known(self, other: "FormalSeries") -> Tuple[bool, List[int]]:
        """
        Compares two series on the indices both know.

        Returns:
            (all_equal, differing indices); raises EmptySafeWindow when the
            common window is empty.
        """
        common = sorted(n for n in self.known | other.known
                        if self.is_determined(n) and other.is_determined(n))
        if not common:
            raise EmptySafeWindow(f"no common exact coefficients for series in {self.var}")
        bad = []
        for n in common:
            a = self.coeffs.get(n)
            b = other.coeffs.get(n)
            if a is None and b is None:
                continue
            if a is None:
                diff = -b
            elif b is None:
                diff = a
            else:
                diff = a - b
            if not diff.is_zero():
                bad.append(n)
        return not bad, bad


def series_mul(left: FormalSeries, right: FormalSeries) -> FormalSeries:
    """
    Cauchy product restricted to the indices where the sum is finite and every
    contributing coefficient is known.

    Raises:
        ValueError: If the series are in different variables.
    """
    if left.var != right.var:
        raise ValueError(f"cannot multiply series in {left.var} and {right.var}")
    support = left.support + right.support
    known = set()
    coeffs = {}
    for n in sorted({a + b for a in left.known for b in right.known}):
        terms = left.support.intersect((-right.support).shifted(n))
        if not terms.is_bounded():
            continue
        ok = True
        acc = None
        for i in terms.points():
            j = n - i
            if i not in left.known or j not in right.known:
                ok = False
                break
            a = left.coeffs.get(i)
            b = right.coeffs.get(j)
            if a is None or b is None:
                continue
            prod = a * b
            acc = prod if acc is None else acc + prod
        if ok:
            known.add(n)
            if acc is not None and not acc.is_zero():
                coeffs[n] = acc
    return FormalSeries(left.var, support, frozenset(known), coeffs)


def series_inverse(series: FormalSeries, invert: Callable[[object], object]) -> FormalSeries:
    """
    Inverts a one-sided series whose extreme coefficient is invertible.

    Args:
        series: A series whose support is bounded on at least one side.
        invert: Inverse of a single coefficient; raises SeriesNotInvertible
            for singular values.

    Returns:
        FormalSeries: The inverse, known on as many orders as the input is
        known without gaps.

    Raises:
        SeriesNotInvertible: For bilateral series or a vanishing or unknown
            leading coefficient.
    """
    sup = series.support
    if sup.lo is not None:
        direction, start = 1, sup.lo
    elif sup.hi is not None:
        direction, start = -1, sup.hi
    else:
        raise SeriesNotInvertible(f"series in {series.var} is bilateral")
    if start not in series.known:
        raise SeriesNotInvertible(f"leading coefficient of the series in {series.var} is unknown")
    lead = series.coeffs.get(start)
    if lead is None:
        raise SeriesNotInvertible(f"leading coefficient of the series in {series.var} vanishes")
    lead_inverse = invert(lead)
    if series.known:
        reach = max(direction * (n - start) for n in series.known)
    else:
        reach = 0
    depth = 0
    while depth < reach and series.is_determined(start + direction * (depth + 1)):
        depth += 1
    terms: List[object] = [lead_inverse]
    for k in range(1, depth + 1):
        acc = None
        for j in range(1, k + 1):
            c = series.coeffs.get(start + direction * j)
            if c is None:
                continue
            prod = c * terms[k - j]
            acc = prod if acc is None else acc + prod
        terms.append(_zero_like(lead_inverse) if acc is None else -(lead_inverse * acc))
    coeffs: Dict[int, object] = {}
    known = set()
    for k, value in enumerate(terms):
        index = -start + direction * k
        known.add(index)
        if not value.is_zero():
            coeffs[index] = value
    support = Interval(-start, None) if direction > 0 else Interval(None, -start)
    logger.debug(f"Inverted series in {series.var} to depth {depth}.")
    return FormalSeries(series.var, support, frozenset(known), coeffs)


def _zero_like(value):
    return value - value
