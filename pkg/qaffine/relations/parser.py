# qaffine/relations/parser.py

"""
Relation Parser Module for qaffine

Parses relation-suite text into the model of qaffine.relations.model using
Lark. Syntax errors, including those found while building the tree, are
raised as DSLSyntaxError carrying the 1-based line and column.
"""

from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union
import logging

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from qaffine.core.exceptions import DSLSyntaxError
from qaffine.relations.grammar import GRAMMAR
from qaffine.relations.model import (Arg, BinOp, CurrentRef, Delta, Exponent, Num, Pow,
                                     Relation, RelationSuite, Sum, Term, Var)

logger = logging.getLogger(__name__)

_FACTOR_TYPES = (CurrentRef, Delta)


class _Tag:
    """An @expand(x/y) tag inside a product chain."""

    def __init__(self, direction: str):
        self.direction = direction


class _Cleared:
    pass


def _direction(items) -> str:
    x, y = (str(t) for t in items)
    if x == y:
        raise DSLSyntaxError(f"expansion direction {x}/{y} names one variable twice",
                             items[0].line, items[0].column)
    return f"{x}/{y}"


def _signed(items) -> List[Tuple[str, object]]:
    """Pairs each element of 'ADDOP? x (ADDOP x)*' with its sign."""
    pairs = []
    sign = "+"
    for item in items:
        if isinstance(item, Token) and item.type == "ADDOP":
            sign = str(item)
            continue
        pairs.append((sign, item))
        sign = "+"
    return pairs


class SuiteTransformer(Transformer):
    """Turns the Lark parse tree into RelationSuite objects."""

    def __init__(self, source: Optional[str] = None):
        super().__init__()
        self.source = source

    def _error(self, message: str, meta=None) -> DSLSyntaxError:
        line = getattr(meta, "line", 0) if meta is not None else 0
        column = getattr(meta, "column", 0) if meta is not None else 0
        return DSLSyntaxError(message, line, column, self.source)

    # -- top level -----------------------------------------------------

    def start(self, items) -> List[RelationSuite]:
        loose = [item for item in items if isinstance(item, Relation)]
        suites = [item for item in items if isinstance(item, RelationSuite)]
        if loose:
            suites.insert(0, self._build_suite("", loose))
        return suites

    def suite(self, items) -> RelationSuite:
        return self._build_suite(str(items[0]), items[1:])

    def _build_suite(self, name: str, relations: List[Relation]) -> RelationSuite:
        labelled = []
        seen = set()
        for index, relation in enumerate(relations, start=1):
            if not relation.label:
                relation = Relation(f"r{index}", relation.lhs, relation.rhs, relation.cleared,
                                    relation.expand, relation.line)
            if relation.label in seen:
                raise DSLSyntaxError(f"duplicate relation label '{relation.label}' in suite '{name}'",
                                     relation.line, 1, self.source)
            seen.add(relation.label)
            labelled.append(relation)
        return RelationSuite(name, tuple(labelled))

    @v_args(meta=True)
    def relation(self, meta, items) -> Relation:
        label = ""
        cleared = False
        expand = None
        sides = []
        for item in items:
            if isinstance(item, str):
                label = item
            elif isinstance(item, _Cleared):
                cleared = True
            elif isinstance(item, _Tag):
                expand = item.direction
            else:
                sides.append(item)
        lhs, rhs = sides
        return Relation(label, tuple(lhs), tuple(rhs), cleared, expand, meta.line)

    def label(self, items) -> str:
        return str(items[0])

    def cleared(self, items) -> _Cleared:
        return _Cleared()

    def expand(self, items) -> _Tag:
        return _Tag(_direction(items))

    # -- sums and product chains ---------------------------------------

    @v_args(meta=True)
    def sum(self, meta, items) -> List[Term]:
        terms = []
        for sign, chain in _signed(items):
            term = self._term(chain, -1 if sign == "-" else 1, meta)
            if term is not None:
                terms.append(term)
        return terms

    @v_args(meta=True)
    def expr(self, meta, items):
        pairs = []
        for sign, chain in _signed(items):
            pairs.append((sign, self._coefficient_only(chain, meta)))
        if len(pairs) == 1 and pairs[0][0] == "+":
            return pairs[0][1]
        return Sum(tuple(pairs))

    def first(self, items):
        return [("", items[0])]

    def mul(self, items):
        return items[0] + [("*", items[1])]

    mul_call = mul

    def div(self, items):
        return items[0] + [("/", items[1])]

    def juxtapose(self, items):
        return items[0] + [(" ", items[1])]

    def tagged(self, items):
        return items[0] + [("@", items[1])]

    def _coefficient_only(self, chain, meta):
        for _, node in chain:
            if isinstance(node, _FACTOR_TYPES) or isinstance(node, _Tag):
                raise self._error("currents and @expand are not allowed inside parentheses", meta)
        return self._fold(chain)

    @staticmethod
    def _fold(chain):
        acc = chain[0][1]
        for op, node in chain[1:]:
            acc = BinOp(op, acc, node)
        return acc

    def _term(self, chain, sign: int, meta) -> Optional[Term]:
        coefficient_part = []
        factors = []
        expand = None
        for op, node in chain:
            if isinstance(node, _Tag):
                if expand is not None:
                    raise self._error("a term carries at most one @expand tag", meta)
                expand = node.direction
            elif isinstance(node, _FACTOR_TYPES):
                if op == "/":
                    raise self._error("cannot divide by a current; use NAME^-1(arg)", meta)
                factors.append(node)
            else:
                if factors:
                    raise self._error("the coefficient must precede the currents of a term", meta)
                if op == " ":
                    raise self._error("coefficient factors must be joined by '*' or '/'", meta)
                coefficient_part.append((op, node))
        coefficient = self._fold(coefficient_part) if coefficient_part else None
        if not factors and coefficient == Num(0):
            return None
        return Term(sign, coefficient, tuple(factors), expand)

    # -- atoms ---------------------------------------------------------

    def number(self, items) -> Num:
        return Num(int(items[0]))

    def var(self, items) -> Var:
        return Var(str(items[0]))

    def name_power(self, items) -> Pow:
        return Pow(Var(str(items[0])), items[1])

    def base_power(self, items) -> Pow:
        return Pow(items[0], items[1])

    def current(self, items) -> CurrentRef:
        return CurrentRef(str(items[0]), self._arg(items[1], items[0]))

    def current_power(self, items) -> CurrentRef:
        name, exponent, argument = items
        if exponent != Exponent(Fraction(-1)):
            raise DSLSyntaxError(f"current '{name}' may only carry the power -1, got {exponent}",
                                 name.line, name.column, self.source)
        return CurrentRef(str(name), self._arg(argument, name), inverse=True)

    def delta(self, items) -> Delta:
        return Delta(items[0])

    def _arg(self, expr, name: Token) -> Arg:
        if isinstance(expr, Var):
            return Arg(expr.name)
        if isinstance(expr, BinOp) and expr.op == "*" and isinstance(expr.left, Var):
            if expr.right == Var("q"):
                return Arg(expr.left.name, Exponent(Fraction(1)))
            if isinstance(expr.right, Pow) and expr.right.base == Var("q"):
                return Arg(expr.left.name, expr.right.exponent)
        raise DSLSyntaxError(f"argument of '{name}' must be a variable optionally times a power of q",
                             name.line, name.column, self.source)

    # -- exponents -----------------------------------------------------

    def int_exponent(self, items) -> Exponent:
        return Exponent(Fraction(int(items[0])))

    def c_exponent(self, items) -> Exponent:
        return Exponent(Fraction(0), Fraction(1))

    def sum_exponent(self, items) -> Exponent:
        const, c = Fraction(0), Fraction(0)
        for sign, part in _signed(items):
            factor = -1 if sign == "-" else 1
            const += factor * part.const
            c += factor * part.c
        return Exponent(const, c)

    def exp_int(self, items) -> Exponent:
        return Exponent(Fraction(int(items[0])))

    def exp_fraction(self, items) -> Exponent:
        return Exponent(Fraction(int(items[0]), int(items[1])))

    def exp_c_multiple(self, items) -> Exponent:
        return Exponent(Fraction(0), Fraction(int(items[0])))

    def exp_c_fraction(self, items) -> Exponent:
        return Exponent(Fraction(0), Fraction(int(items[0]), int(items[1])))

    def exp_c(self, items) -> Exponent:
        return Exponent(Fraction(0), Fraction(1))


class SuiteParser:
    """
    Parses suite sources; one Lark LALR parser is shared by all instances.
    """

    _lark: Optional[Lark] = None

    @classmethod
    def _parser(cls) -> Lark:
        if cls._lark is None:
            cls._lark = Lark(GRAMMAR, parser="lalr", propagate_positions=True)
        return cls._lark

    def parse(self, text: str, source: Optional[str] = None) -> List[RelationSuite]:
        """
        Parses every suite in ``text``.

        Relations before the first ``suite`` header form a suite named ''.

        Raises:
            DSLSyntaxError: With the line and column of the first error.
        """
        try:
            tree = self._parser().parse(text)
            suites = SuiteTransformer(source).transform(tree)
        except UnexpectedInput as e:
            line, column = e.line, e.column
            if not isinstance(line, int) or line < 1:
                lines = text.splitlines() or [""]
                line, column = len(lines), len(lines[-1]) + 1
            logger.error(f"Syntax error in {source or 'suite text'} at {line}:{column}.")
            raise DSLSyntaxError(_describe(e), line, column, source) from e
        except VisitError as e:
            if isinstance(e.orig_exc, DSLSyntaxError):
                logger.error(f"Invalid suite text: {e.orig_exc}")
                raise e.orig_exc from e
            raise
        logger.debug(f"Parsed {len(suites)} suites from {source or 'suite text'}.")
        return suites

    def parse_file(self, path: Union[str, Path]) -> List[RelationSuite]:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            logger.error(f"Cannot read suite file '{path}': {e}")
            raise DSLSyntaxError(f"cannot read suite file: {e}", 0, 0, str(path)) from e
        return self.parse(text, str(path))


def _describe(error: UnexpectedInput) -> str:
    token = getattr(error, "token", None)
    if token is not None:
        if token.type == "$END":
            return "unexpected end of input"
        return f"unexpected '{token}'"
    char = getattr(error, "char", None)
    if char is not None:
        return f"unexpected character '{char}'"
    return "unexpected end of input"


def parse_suites(text: str, source: Optional[str] = None) -> List[RelationSuite]:
    return SuiteParser().parse(text, source)


def parse_suite(text: str, source: Optional[str] = None) -> RelationSuite:
    """
    Parses text holding at most one suite; empty text gives an empty suite.

    Raises:
        DSLSyntaxError: On a syntax error or when the text holds several suites.
    """
    suites = parse_suites(text, source)
    if not suites:
        return RelationSuite("")
    if len(suites) > 1:
        raise DSLSyntaxError(f"expected one suite, found {len(suites)}", 1, 1, source)
    return suites[0]


def parse_relation(text: str) -> Relation:
    """Parses a single relation; the trailing ';' is optional."""
    text = text.strip()
    if not text.endswith(";"):
        text += ";"
    suite = parse_suite(text)
    if len(suite) != 1:
        raise DSLSyntaxError(f"expected one relation, found {len(suite)}", 1, 1)
    return suite.relations[0]
