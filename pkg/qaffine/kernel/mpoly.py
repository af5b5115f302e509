# qaffine/kernel/mpoly.py

"""
Laurent Polynomial Module for qaffine

This module provides MPoly, a sparse multivariate Laurent polynomial over the
rationals in the fixed, ordered alphabet (s, z, w, a, u, v, h), where
s = q^(1/2). Arithmetic is delegated to sympy's sparse polynomial rings; an
MPoly is a ring element with nonnegative exponents times a monomial shift that
carries the negative powers.
"""

from fractions import Fraction
import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union
import logging

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

logger = logging.getLogger(__name__)

VARIABLES: Tuple[str, ...] = ("s", "z", "w", "a", "u", "v", "h")
NVARS = len(VARIABLES)
_INDEX: Dict[str, int] = {name: i for i, name in enumerate(VARIABLES)}

RING = ring(",".join(VARIABLES), QQ, lex)[0]

Exponents = Tuple[int, ...]
ZERO_EXPONENTS: Exponents = (0,) * NVARS

Scalar = Union[int, Fraction, "QQ.dtype"]


def rational(numerator: Union[int, Fraction, str], denominator: int = 1):
    """
    Builds an exact rational number of the coefficient field.

    Args:
        numerator: An integer, a Fraction, or a string such as "3/4".
        denominator (int): Denominator applied to an integer numerator.

    Returns:
        The rational as an element of sympy's QQ domain, reduced, with a
        positive denominator.
    """
    if isinstance(numerator, str):
        numerator = Fraction(numerator)
    if isinstance(numerator, Fraction):
        return QQ(numerator.numerator, numerator.denominator * denominator)
    if denominator == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return QQ(numerator, denominator)


def qq(value):
    """Coerces ints, Fractions and QQ elements into the QQ domain."""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def to_fraction(value) -> Fraction:
    """Converts a QQ element (or int) into a Python Fraction."""
    value = qq(value)
    return Fraction(int(value.numerator), int(value.denominator))


def var_index(name: str) -> int:
    """
    Returns the position of a variable in the alphabet.

    Raises:
        ValueError: If the name is not part of the alphabet.
    """
    try:
        return _INDEX[name]
    except KeyError:
        logger.error(f"Unknown polynomial variable '{name}'.")
        raise ValueError(f"unknown variable '{name}'; alphabet is {', '.join(VARIABLES)}")


def unit_exponents(name: str, power: int = 1) -> Exponents:
    exps = [0] * NVARS
    exps[var_index(name)] = power
    return tuple(exps)


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exps(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


class MPoly:
    """
    Immutable sparse Laurent polynomial with rational coefficients.

    The value is ``poly * x**shift`` where ``poly`` is a sympy ring element
    with no monomial content (no variable divides every term) and ``shift`` is
    a signed exponent vector. This normal form is unique, so equality is a
    structural comparison.
    """

    __slots__ = ("_poly", "_shift", "_hash")

    def __init__(self, poly=None, shift: Exponents = ZERO_EXPONENTS):
        if poly is None:
            poly = RING.zero
        if not poly:
            self._poly = RING.zero
            self._shift = ZERO_EXPONENTS
        else:
            mins = [min(m[i] for m in poly.keys()) for i in range(NVARS)]
            if any(mins):
                poly = RING.from_dict({_sub_exps(m, mins): c for m, c in poly.items()})
                shift = _add_exps(shift, tuple(mins))
            self._poly = poly
            self._shift = tuple(shift)
        self._hash = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def one(cls) -> "MPoly":
        return cls.constant(1)

    @classmethod
    def constant(cls, value) -> "MPoly":
        return cls(RING.ground_new(qq(value)))

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls.monomial(unit_exponents(name, power))

    @classmethod
    def monomial(cls, exponents: Exponents, coeff=1) -> "MPoly":
        coeff = qq(coeff)
        if not coeff:
            return cls()
        return cls(RING.ground_new(coeff), tuple(exponents))

    @classmethod
    def from_terms(cls, terms: Mapping[Exponents, object]) -> "MPoly":
        """
        Builds a polynomial from a map of signed exponent vectors to coefficients.

        Args:
            terms: Exponent tuple (length 7) to rational coefficient; zero
                coefficients are dropped.

        Returns:
            MPoly: The normalized polynomial.
        """
        cleaned = {}
        for exps, coeff in terms.items():
            coeff = qq(coeff)
            if coeff:
                cleaned[tuple(exps)] = coeff
        if not cleaned:
            return cls()
        mins = tuple(min(e[i] for e in cleaned) for i in range(NVARS))
        poly = RING.from_dict({_sub_exps(e, mins): c for e, c in cleaned.items()})
        return cls(poly, mins)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def poly(self):
        """The underlying sympy ring element (without the shift)."""
        return self._poly

    @property
    def shift(self) -> Exponents:
        return self._shift

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (self.is_monomial() and not any(self._shift))

    def constant_value(self):
        """Returns the value of a constant polynomial as a QQ element."""
        if self.is_zero():
            return QQ.zero
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return next(iter(self._poly.values()))

    def is_one(self) -> bool:
        return self.is_constant() and not self.is_zero() and self.constant_value() == QQ.one

    def __len__(self) -> int:
        return len(self._poly)

    def terms(self) -> List[Tuple[Exponents, object]]:
        """Returns (signed exponents, coefficient) pairs in descending lex order."""
        result = [(_add_exps(m, self._shift), c) for m, c in self._poly.items()]
        result.sort(key=lambda t: t[0], reverse=True)
        return result

    def iter_terms(self) -> Iterator[Tuple[Exponents, object]]:
        shift = self._shift
        for m, c in self._poly.items():
            yield _add_exps(m, shift), c

    def degree_bounds(self, name: str) -> Tuple[int, int]:
        """Lowest and highest exponent of a variable; (0, 0) for zero."""
        if self.is_zero():
            return 0, 0
        i = var_index(name)
        exps = [e[i] for e, _ in self.iter_terms()]
        return min(exps), max(exps)

    def free_variables(self) -> Tuple[str, ...]:
        used = set()
        for exps, _ in self.iter_terms():
            used.update(VARIABLES[i] for i, e in enumerate(exps) if e)
        return tuple(v for v in VARIABLES if v in used)

    def leading_coefficient(self):
        return self.terms()[0][1] if not self.is_zero() else QQ.zero

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            return MPoly.constant(other)
        return None

    def _lift(self, target_shift: Exponents):
        """Ring element equal to self * x**(-target_shift); target must be <= shift."""
        delta = _sub_exps(self._shift, target_shift)
        if not any(delta):
            return self._poly
        return RING.from_dict({_add_exps(m, delta): c for m, c in self._poly.items()})

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._shift == other._shift:
            return MPoly(self._poly + other._poly, self._shift)
        base = tuple(min(x, y) for x, y in zip(self._shift, other._shift))
        return MPoly(self._lift(base) + other._lift(base), base)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        result = MPoly.__new__(MPoly)
        result._poly = -self._poly
        result._shift = self._shift
        result._hash = None
        return result

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return MPoly()
        # products of content-free polynomials are content-free
        result = MPoly.__new__(MPoly)
        result._poly = self._poly * other._poly
        result._shift = _add_exps(self._shift, other._shift)
        result._hash = None
        return result

    __rmul__ = __mul__

    def scale(self, coeff) -> "MPoly":
        coeff = qq(coeff)
        if not coeff:
            return MPoly()
        result = MPoly.__new__(MPoly)
        result._poly = self._poly.mul_ground(coeff)
        result._shift = self._shift
        result._hash = None
        return result

    def __pow__(self, n: int) -> "MPoly":
        if n >= 0:
            return MPoly(self._poly ** n, tuple(n * e for e in self._shift))
        return self.inverse_monomial() ** (-n)

    def inverse_monomial(self) -> "MPoly":
        """
        Inverts a monomial.

        Raises:
            ZeroDivisionError: If the polynomial is not a single term.
        """
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        (exps, coeff), = self.terms()
        return MPoly.monomial(tuple(-e for e in exps), QQ.one / coeff)

    def exquo(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises sympy's ExactQuotientFailed when inexact."""
        return MPoly(self._poly.exquo(other._poly), _sub_exps(self._shift, other._shift))

    def divides(self, other: "MPoly") -> bool:
        """True if other / self is a Laurent polynomial."""
        if self.is_zero():
            return other.is_zero()
        try:
            other.exquo(self)
        except ExactQuotientFailed:
            return False
        return True

    # ------------------------------------------------------------------
    # Substitutions
    # ------------------------------------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        """
        Renames variables; several variables may be mapped onto one.

        Args:
            mapping: old name to new name.
        """
        targets = {var_index(k): var_index(v) for k, v in mapping.items()}
        terms: Dict[Exponents, object] = {}
        for exps, coeff in self.iter_terms():
            new = [0] * NVARS
            for i, e in enumerate(exps):
                new[targets.get(i, i)] += e
            key = tuple(new)
            terms[key] = terms.get(key, QQ.zero) + coeff
        return MPoly.from_terms(terms)

    def substitute(self, name: str, value) -> "MPoly":
        """
        Replaces a variable by a nonzero rational constant.
        """
        value = qq(value)
        if not value:
            raise ZeroDivisionError("substituting zero into a Laurent polynomial")
        i = var_index(name)
        terms: Dict[Exponents, object] = {}
        for exps, coeff in self.iter_terms():
            e = exps[i]
            key = exps[:i] + (0,) + exps[i + 1:]
            factor = value ** e if e >= 0 else (QQ.one / value) ** (-e)
            terms[key] = terms.get(key, QQ.zero) + coeff * factor
        return MPoly.from_terms(terms)

    def scale_variable(self, name: str, factor: "MPoly") -> "MPoly":
        """
        Replaces x by factor*x for a monomial factor (e.g. z -> q^k z).
        """
        if not factor.is_monomial():
            raise ValueError("scale_variable needs a monomial factor")
        i = var_index(name)
        (fexps, fcoeff), = factor.terms()
        terms: Dict[Exponents, object] = {}
        for exps, coeff in self.iter_terms():
            e = exps[i]
            key = tuple(x + e * f for x, f in zip(exps, fexps))
            scale = fcoeff ** e if e >= 0 else (QQ.one / fcoeff) ** (-e)
            terms[key] = terms.get(key, QQ.zero) + coeff * scale
        return MPoly.from_terms(terms)

    def euler_derivative(self, name: str) -> "MPoly":
        """Applies x*d/dx in the named variable."""
        i = var_index(name)
        return MPoly.from_terms({exps: coeff * exps[i] for exps, coeff in self.iter_terms()})

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._shift, frozenset(self._poly.items())))
        return self._hash

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for exps, coeff in self.terms():
            frac = to_fraction(coeff)
            sign = "-" if frac < 0 else "+"
            frac = abs(frac)
            factors = []
            for name, e in zip(VARIABLES, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            if frac != 1 or not factors:
                factors.insert(0, str(frac))
            pieces.append((sign, "*".join(factors)))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MPoly({self})"


def mpoly_sum(items: Iterable[MPoly]) -> MPoly:
    total = MPoly()
    for item in items:
        total = total + item
    return total


_TERM_SPLIT = re.compile(r"\s+(?=[+-]\s)")
_FACTOR = re.compile(r"^([a-z])(?:\^(-?\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_mpoly(text: str) -> MPoly:
    """
    Parses the canonical text form produced by ``str(MPoly)``.

    Example: ``"2*s^3*z^-1 - 1/2*w + 1"``.

    Raises:
        ValueError: On any token outside the canonical form.
    """
    text = text.strip()
    if text in ("", "0"):
        return MPoly.zero()
    terms: Dict[Exponents, object] = {}
    for chunk in _TERM_SPLIT.split(text):
        chunk = chunk.strip()
        sign = 1
        if chunk[:1] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:].strip()
        coeff = Fraction(sign)
        exps = [0] * NVARS
        for factor in chunk.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            match = _FACTOR.match(factor)
            if not match:
                logger.error(f"Unexpected token '{factor}' in polynomial '{text}'.")
                raise ValueError(f"unexpected token '{factor}' in polynomial '{text}'")
            exps[var_index(match.group(1))] += int(match.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return MPoly.from_terms(terms)
