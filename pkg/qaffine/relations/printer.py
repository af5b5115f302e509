# qaffine/relations/printer.py

"""Prints suites back to the text accepted by qaffine.relations.parser."""

from typing import Iterable, Sequence

from qaffine.relations.model import (Arg, BinOp, CurrentRef, Delta, Expr, Num, Pow, Relation,
                                     RelationSuite, Sum, Term, Var)


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Pow):
        base = expr.base
        text = format_expr(base)
        if not isinstance(base, (Var, Num, Sum)):
            text = f"({text})"
        return f"{text}^{expr.exponent}"
    if isinstance(expr, BinOp):
        left = format_expr(expr.left)
        right = format_expr(expr.right)
        if isinstance(expr.right, BinOp):
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Sum):
        parts = []
        for index, (sign, item) in enumerate(expr.items):
            text = format_expr(item)
            if index == 0:
                parts.append(text if sign == "+" else f"-{text}")
            else:
                parts.append(f"{sign} {text}")
        return "(" + " ".join(parts) + ")"
    raise TypeError(f"not an expression: {expr!r}")


def format_arg(arg: Arg) -> str:
    if arg.shift.const == 0 and arg.shift.c == 0:
        return arg.var
    return f"{arg.var}*q^{arg.shift}"


def format_factor(factor) -> str:
    if isinstance(factor, CurrentRef):
        power = "^-1" if factor.inverse else ""
        return f"{factor.name}{power}({format_arg(factor.arg)})"
    if isinstance(factor, Delta):
        text = format_expr(factor.argument)
        if text.startswith("(") and text.endswith(")") and isinstance(factor.argument, Sum):
            text = text[1:-1]
        return f"delta({text})"
    raise TypeError(f"not a factor: {factor!r}")


def format_term(term: Term) -> str:
    parts = []
    if term.coefficient is not None:
        parts.append(format_expr(term.coefficient))
    if term.expand is not None:
        parts.append(f"@expand({term.expand})")
    factors = " ".join(format_factor(f) for f in term.factors)
    if factors:
        if term.coefficient is not None:
            return " ".join(parts) + " * " + factors
        return " ".join([factors] + parts)
    return " ".join(parts)


def format_side(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    pieces = []
    for index, term in enumerate(terms):
        body = format_term(term)
        if index == 0:
            pieces.append(body if term.sign > 0 else f"-{body}")
        else:
            pieces.append(("+ " if term.sign > 0 else "- ") + body)
    return " ".join(pieces)


def format_relation(relation: Relation) -> str:
    head = [f"[{relation.label}]"]
    if relation.cleared:
        head.append("@cleared")
    if relation.expand is not None:
        head.append(f"@expand({relation.expand})")
    return " ".join(head) + f" {format_side(relation.lhs)} = {format_side(relation.rhs)};"


def format_suite(suite: RelationSuite) -> str:
    lines = []
    if suite.name:
        lines.append(f"suite {suite.name};")
    lines.extend(format_relation(r) for r in suite.relations)
    return "\n".join(lines) + "\n"


def format_suites(suites: Iterable[RelationSuite]) -> str:
    return "\n".join(format_suite(s) for s in suites)
