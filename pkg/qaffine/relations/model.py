# qaffine/relations/model.py

"""
Relation Model Module for qaffine

Syntax tree of relation suites. Coefficients are kept as expression trees
(not as rational expressions) so that a suite prints back to the text it was
parsed from and so that the yangian module can read off linear factors.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

PLUS_SIGN = "+"
MINUS_SIGN = "-"
DIRECTIONS = ("w/z", "z/w")


@dataclass(frozen=True)
class Exponent:
    """A q-exponent const + coeff_c * c, with c the central charge."""

    const: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def at(self, central_charge: int = 0) -> Fraction:
        return self.const + self.c * central_charge

    def is_integer(self) -> bool:
        return self.c == 0 and self.const.denominator == 1

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.const.numerator)
        if self.const == 0 and self.c == 1:
            return "c"
        parts = []
        if self.c:
            parts.append(_signed_multiple(self.c, "c"))
        if self.const or not parts:
            text = str(abs(self.const))
            parts.append(("-" if self.const < 0 else "+") + text)
        joined = "".join(parts)
        return "(" + (joined[1:] if joined.startswith("+") else joined) + ")"


def _signed_multiple(value: Fraction, name: str) -> str:
    sign = "-" if value < 0 else "+"
    magnitude = abs(value)
    if magnitude == 1:
        return f"{sign}{name}"
    return f"{sign}{magnitude}*{name}"


# ----------------------------------------------------------------------
# Coefficient expressions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Exponent


@dataclass(frozen=True)
class BinOp:
    """Left-associative product ('*') or quotient ('/')."""

    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sum:
    """Signed summands; only ever written inside parentheses."""

    items: Tuple[Tuple[str, "Expr"], ...]


Expr = Union[Num, Var, Pow, BinOp, Sum]


# ----------------------------------------------------------------------
# Terms and relations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Arg:
    """A current argument var * q^shift."""

    var: str
    shift: Exponent = Exponent()


@dataclass(frozen=True)
class CurrentRef:
    name: str
    arg: Arg
    inverse: bool = False


@dataclass(frozen=True)
class Delta:
    """delta(argument) with argument either x/y * q^k or a linear form in u, v, h."""

    argument: Expr


Factor = Union[CurrentRef, Delta]


@dataclass(frozen=True)
class Term:
    sign: int
    coefficient: Optional[Expr]
    factors: Tuple[Factor, ...]
    expand: Optional[str] = None

    def currents(self) -> Tuple[CurrentRef, ...]:
        return tuple(f for f in self.factors if isinstance(f, CurrentRef))

    def negated(self) -> "Term":
        return Term(-self.sign, self.coefficient, self.factors, self.expand)


@dataclass(frozen=True)
class Relation:
    """
    lhs = rhs, each side a signed sum of terms.

    ``cleared`` multiplies every term by the denominators of the other
    terms; ``expand`` sets the default expansion direction of the relation.
    """

    label: str
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]
    cleared: bool = False
    expand: Optional[str] = None
    line: int = field(default=0, compare=False)

    def terms(self) -> Tuple[Tuple[int, Term], ...]:
        """Every term with side sign +1 (lhs) or -1 (rhs)."""
        return tuple((1, t) for t in self.lhs) + tuple((-1, t) for t in self.rhs)

    def current_names(self) -> Tuple[str, ...]:
        names = []
        for _, term in self.terms():
            for ref in term.currents():
                if ref.name not in names:
                    names.append(ref.name)
        return tuple(names)


@dataclass(frozen=True)
class RelationSuite:
    name: str
    relations: Tuple[Relation, ...] = ()
    central_charge: int = 0

    def __len__(self) -> int:
        return len(self.relations)

    def get(self, label: str) -> Relation:
        for relation in self.relations:
            if relation.label == label:
                return relation
        raise KeyError(f"suite '{self.name}' has no relation '{label}'")

    def replace_relation(self, relation: Relation) -> "RelationSuite":
        relations = tuple(relation if r.label == relation.label else r for r in self.relations)
        return RelationSuite(self.name, relations, self.central_charge)
